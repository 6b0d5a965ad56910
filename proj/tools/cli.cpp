#include "cli.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "CLI11.hpp"

#include "anrot/continued_fraction.hpp"
#include "anrot/errors.hpp"
#include "anrot/num.hpp"
#include "anrot/oracle.hpp"
#include "anrot/prng.hpp"
#include "anrot/skew.hpp"
#include "anrot/two_particle.hpp"
#include "config.hpp"
#include "json_out.hpp"

namespace anrot::tool {

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    long steps = 0;
    bool steps_set = false;
    bool oracle_check = false;
    int threads = 0;
    bool threads_set = false;
};

RunConfig load_with_overrides(const CommonOpts& opts) {
    RunConfig cfg = load_config(opts.config_path);
    if (opts.seed_set) cfg.seed = opts.seed;
    if (opts.steps_set) cfg.steps = opts.steps;
    if (opts.threads_set) cfg.threads = opts.threads;
    cfg.oracle_check = cfg.oracle_check || opts.oracle_check;
    return cfg;
}

std::ofstream open_out(const CommonOpts& opts, const std::string& name) {
    fs::create_directories(opts.out_dir);
    const fs::path path = fs::path(opts.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path.string());
    return f;
}

void require_valid(const PhysicalParams& p, const Integrals& ints) {
    const ValidationReport rep = validate_params(p, ints);
    if (!rep.ok()) throw ConfigError("invalid configuration:\n" + rep.summary());
}

void write_validation(JsonWriter& w, const ValidationReport& rep) {
    w.key("valid").value(rep.ok());
    w.key("entries").begin_array();
    for (const auto& e : rep.entries) {
        w.begin_object();
        w.key("severity").value(e.severity == Severity::Error ? "error" : "warning");
        w.key("code").value(e.code);
        w.key("message").value(e.message);
        w.end_object();
    }
    w.end_array();
}

void write_classification(JsonWriter& w, const NumberClassification& cls) {
    w.key("value").value(cls.value);
    w.key("kind").value(to_string(cls.kind));
    w.key("evidence").value("numerical evidence only; double precision cannot prove irrationality");
    if (cls.kind == NumberKind::Rational) {
        w.key("p").value(static_cast<long long>(cls.p));
        w.key("q").value(static_cast<long long>(cls.q));
    }
    w.key("convergent_error").value(cls.convergent_error);
    w.key("partial_quotients").begin_array();
    for (auto a : cls.partial_quotients) w.value(static_cast<long long>(a));
    w.end_array();
}

// ---- verbs -----------------------------------------------------------------

int cmd_validate(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = load_with_overrides(opts);
    const ValidationReport rep = validate_params(cfg.params, cfg.integrals);
    JsonWriter w(out);
    w.begin_object();
    write_validation(w, rep);
    w.end_object();
    out << "\n";
    return rep.ok() ? 0 : 2;
}

int cmd_classify(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = load_with_overrides(opts);
    const NumberClassification cls = classify_gamma(cfg.params, 40);
    std::ofstream f = open_out(opts, "classification.json");
    JsonWriter w(f);
    w.begin_object();
    w.key("gamma_norm").value(cls.value);
    write_classification(w, cls);
    w.end_object();
    f << "\n";
    out << "gamma_norm = " << json_num(cls.value) << " (" << to_string(cls.kind) << ")\n";
    return 0;
}

int cmd_base(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = load_with_overrides(opts);
    if (cfg.mode != SystemMode::DoubleRotor)
        throw ConfigError("base requires mode = double_rotor");
    require_valid(cfg.params, cfg.integrals);

    const VelocityCircle c = build_circle(cfg.params, cfg.integrals);
    const ArcSet u = compute_U(c, cfg.params, cfg.integrals);
    const NumberClassification cls = classify_gamma(cfg.params, 40);

    {  // circle summary
        std::ofstream f = open_out(opts, "circle.json");
        JsonWriter w(f);
        w.begin_object();
        w.key("center").begin_array().value(c.center.x).value(c.center.y).value(c.center.z)
            .end_array();
        w.key("radius").value(c.radius);
        w.key("gamma_norm").value(c.gamma_norm);
        w.key("classification").begin_object();
        write_classification(w, cls);
        w.end_object();
        w.key("u_arcs").begin_array();
        for (const Arc& a : u.arcs())
            w.begin_object().key("lo").value(a.lo).key("len").value(a.len).end_object();
        w.end_array();
        w.key("u_measure").value(u.measure());
        w.end_object();
        f << "\n";
    }

    // orbit
    std::vector<SkewState> orbit;
    orbit.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    SkewState st{mod1(cfg.s0), mod1(cfg.phi0), 0, 0.0};
    orbit.push_back(st);
    for (long k = 0; k < cfg.steps; ++k) {
        st = skew_step(st, c, u, cfg.params, cfg.integrals);
        orbit.push_back(st);
    }
    {
        std::ofstream f = open_out(opts, "orbit.csv");
        f << "step,s,phi,winding,clock\n";
        for (std::size_t k = 0; k < orbit.size(); ++k)
            f << k << ',' << json_num(orbit[k].s) << ',' << json_num(orbit[k].phi) << ','
              << orbit[k].winding << ',' << json_num(orbit[k].clock) << '\n';
    }

    // diagnostics
    const auto period = detect_period({mod1(cfg.s0), Sheet::O}, c, u,
                                      std::min<long>(cfg.steps, 1000000));
    std::optional<MeanAlphaResult> mean;
    if (u.empty()) mean = mean_alpha(c, u, cfg.params, cfg.integrals, 1 << 14);
    std::optional<std::pair<double, double>> ga;
    if (mean) ga = std::pair{c.gamma_norm, mean->value};
    const OrbitDiagnostics diag = equidistribution_test(orbit, 64, ga);

    {
        std::ofstream f = open_out(opts, "diagnostics.json");
        JsonWriter w(f);
        w.begin_object();
        w.key("gamma_norm").value(c.gamma_norm);
        w.key("u_empty").value(u.empty());
        if (period)
            w.key("period").value(static_cast<long long>(*period));
        else
            w.key("period").null();
        if (mean) {
            w.key("mean_alpha").value(mean->value);
            w.key("mean_alpha_refinement_error").value(mean->richardson_error);
            w.key("mean_alpha_symmetry_error").value(mean->symmetry_error);
        }
        w.key("rotation_estimate").value(diag.rotation_estimate);
        w.key("discrepancy").value(diag.discrepancy);
        w.key("chi_square").value(diag.chi_square);
        if (diag.dependence) {
            w.key("rational_dependence").begin_object();
            w.key("p").value(diag.dependence->p);
            w.key("q").value(diag.dependence->q);
            w.key("residual").value(diag.dependence->residual);
            w.end_object();
        } else {
            w.key("rational_dependence").null();
        }
        w.end_object();
        f << "\n";
    }
    out << "base: wrote circle.json, orbit.csv, diagnostics.json\n";
    return 0;
}

int cmd_single(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = load_with_overrides(opts);
    if (cfg.mode != SystemMode::SingleRotor)
        throw ConfigError("single requires mode = single_rotor");
    if (!cfg.integrals.vn) throw ConfigError("missing field: integrals.vn");
    SingleRotorState st =
        make_single_rotor_state(cfg.vt0, cfg.omega0, *cfg.integrals.vn, cfg.params);
    const double angle = fiber_rotation_angle(st, cfg.params);
    const NumberClassification rot = classify_number(mod1(angle / kTwoPi), 40);

    {
        std::ofstream f = open_out(opts, "orbit.csv");
        f << "step,phase,vt,omega,phi,winding\n";
        SingleRotorState cur = st;
        for (long k = 0; k <= cfg.steps; ++k) {
            f << k << ',' << (cur.phase == Phase::Inner ? "inner" : "outer") << ','
              << json_num(cur.vt) << ',' << json_num(cur.omega) << ',' << json_num(cur.phi) << ','
              << cur.winding << '\n';
            cur = single_step(cur, cfg.params);
        }
    }
    {
        std::ofstream f = open_out(opts, "summary.json");
        JsonWriter w(f);
        w.begin_object();
        w.key("N").value(single_rotor_momentum(st, cfg.params));
        w.key("E").value(single_rotor_energy(st, cfg.params));
        w.key("vn").value(st.vn);
        w.key("rotation_angle_rad").value(angle);
        w.key("rotation_number").begin_object();
        write_classification(w, rot);
        w.end_object();
        w.end_object();
        f << "\n";
    }
    out << "single: wrote orbit.csv, summary.json\n";
    return 0;
}

int cmd_two(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = load_with_overrides(opts);
    if (cfg.mode != SystemMode::TwoParticle)
        throw ConfigError("two requires mode = two_particle");
    const PersistenceReport rep =
        persistence_experiment(cfg.eps, cfg.params.R, cfg.params.eta1, cfg.integrals.N,
                               cfg.integrals.E, cfg.n_samples, cfg.seed);

    double oracle_dev_s = -1.0, oracle_dev_t = -1.0;
    if (cfg.oracle_check && !rep.samples.empty()) {
        const PersistenceSample& sm = rep.samples.front();
        const TwoParticleInitial init =
            make_two_particle_initial(rep.base, sm.s0, sm.t0, cfg.psi1, cfg.psi2);
        PhysicalParams op{SystemMode::TwoParticle, cfg.params.R, cfg.params.eta1, {}};
        std::vector<CollisionEvent> events;
        // enough events to cover the window: each reduced step is one
        // v-collision, one odd u-collision, and two outer bounces
        run(init.state, op, 16 * (rep.n_eps + 2), [&](const CollisionEvent& e, const CartesianState&) {
            events.push_back(e);
        });
        const auto section = extract_v_section(events, rep.base, init.last_u_time);
        TwoParticleState st{sm.s0, sm.t0};
        oracle_dev_s = oracle_dev_t = 0.0;
        for (int k = 0; k < rep.n_eps && k < static_cast<int>(section.size()); ++k) {
            auto [next, branch] = two_step(st, rep.base);
            (void)branch;
            oracle_dev_s = std::max(oracle_dev_s, circ_dist(section[k].s, next.s));
            oracle_dev_t = std::max(oracle_dev_t, circ_dist(section[k].t, next.t));
            st = next;
        }
    }

    {
        std::ofstream f = open_out(opts, "persistence.json");
        JsonWriter w(f);
        w.begin_object();
        w.key("eps").value(rep.eps);
        w.key("n_epsilon").value(rep.n_eps);
        w.key("k_prime").value(rep.k_prime);
        w.key("gamma_norm").value(rep.base.gamma_norm);
        w.key("all_ok").value(rep.all_ok);
        if (cfg.oracle_check) {
            w.key("oracle_max_dev_s").value(oracle_dev_s);
            w.key("oracle_max_dev_t").value(oracle_dev_t);
        }
        w.key("samples").begin_array();
        for (const auto& sm : rep.samples) {
            w.begin_object();
            w.key("s0").value(sm.s0);
            w.key("t0").value(sm.t0);
            w.key("survived_steps").value(sm.survived_steps);
            w.key("bounds_ok").value(sm.bounds_ok);
            w.key("s_track_ok").value(sm.s_track_ok);
            if (sm.first_even_step)
                w.key("first_even_step").value(*sm.first_even_step);
            else
                w.key("first_even_step").null();
            w.key("excluded").value(sm.excluded);
            w.end_object();
        }
        w.end_array();
        w.end_object();
        f << "\n";
    }
    out << "two: n_epsilon = " << rep.n_eps << ", k_prime = " << json_num(rep.k_prime)
        << (rep.all_ok ? ", all samples survived\n" : ", FAILURES present\n");
    return 0;
}

int cmd_oracle(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = load_with_overrides(opts);
    CartesianState cs;
    std::optional<VelocityCircle> circle;
    std::optional<TwoParticleBase> base;
    switch (cfg.mode) {
        case SystemMode::SingleRotor: {
            if (!cfg.integrals.vn) throw ConfigError("missing field: integrals.vn");
            cs = make_single_rotor_initial(
                make_single_rotor_state(cfg.vt0, cfg.omega0, *cfg.integrals.vn, cfg.params),
                cfg.params, cfg.psi1);
            break;
        }
        case SystemMode::DoubleRotor: {
            require_valid(cfg.params, cfg.integrals);
            circle = build_circle(cfg.params, cfg.integrals);
            cs = make_double_rotor_initial(*circle, cfg.params, cfg.integrals, cfg.s0, cfg.phi0);
            break;
        }
        case SystemMode::TwoParticle: {
            if (!cfg.integrals.vn || !cfg.integrals.un)
                throw ConfigError("missing field: integrals.vn / integrals.un");
            base = build_two_particle_base(cfg.params.R, cfg.params.eta1, cfg.integrals.N,
                                           cfg.integrals.E, *cfg.integrals.vn, *cfg.integrals.un);
            cs = make_two_particle_initial(*base, cfg.s0, cfg.t0, cfg.psi1, cfg.psi2).state;
            break;
        }
    }

    std::ofstream f = open_out(opts, "events.csv");
    f << "event_index,time,particle,wall,s,px,py,pre_vx,pre_vy,post_vx,post_vy,"
         "pre_omega_inner,post_omega_inner,pre_omega_outer,post_omega_outer\n";
    run(cs, cfg.params, cfg.steps, [&](const CollisionEvent& e, const CartesianState&) {
        f << e.index << ',' << json_num(e.time) << ',' << e.particle << ','
          << (e.wall == Wall::Inner ? "inner" : "outer") << ',';
        if (circle && e.wall == Wall::Outer) {
            const Vec2 n = e.point;
            const Vec2 t = perp(n);
            const RescaledVelocity rv =
                rescale(dot(e.vel_post, t), e.omega_inner_post, e.omega_outer_post,
                        std::fabs(dot(e.vel_post, n)), cfg.params);
            f << json_num(s_of_velocity(rv, *circle));
        }
        f << ',' << json_num(e.point.x) << ',' << json_num(e.point.y) << ','
          << json_num(e.vel_pre.x) << ',' << json_num(e.vel_pre.y) << ','
          << json_num(e.vel_post.x) << ',' << json_num(e.vel_post.y) << ','
          << json_num(e.omega_inner_pre) << ',' << json_num(e.omega_inner_post) << ','
          << json_num(e.omega_outer_pre) << ',' << json_num(e.omega_outer_post) << '\n';
    });
    out << "oracle: wrote events.csv\n";
    return 0;
}

struct SweepRow {
    double eta1, eta2, N, E, F, lambda;
    double gamma_norm;
    bool rational;
    bool u_empty;
    long period;  // -1 when none found
};

int cmd_sweep(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = load_with_overrides(opts);
    if (cfg.mode != SystemMode::DoubleRotor)
        throw ConfigError("sweep requires mode = double_rotor");
    const SweepSpec& sw = cfg.sweep;
    const long total = sw.total_cells();
    std::vector<SweepRow> rows(static_cast<std::size_t>(total));

    std::atomic<long> next_cell{0};
    const auto worker = [&]() {
        for (;;) {
            const long idx = next_cell.fetch_add(1);
            if (idx >= total) return;
            // row-major: eta1 slowest, then eta2, then lambda
            const long i1 = idx / (sw.eta2.cells * sw.lambda.cells);
            const long i2 = (idx / sw.lambda.cells) % sw.eta2.cells;
            const long i3 = idx % sw.lambda.cells;
            SweepRow& row = rows[static_cast<std::size_t>(idx)];
            row.eta1 = sw.eta1.at(i1);
            row.eta2 = sw.eta2.at(i2);
            row.lambda = sw.lambda.at(i3);
            row.N = cfg.integrals.N;
            row.E = cfg.integrals.E;
            row.F = row.lambda * row.E;
            PhysicalParams p{SystemMode::DoubleRotor, cfg.params.R, row.eta1, row.eta2};
            const NumberClassification cls = classify_gamma(p, 40);
            row.gamma_norm = cls.value;
            row.rational = (cls.kind == NumberKind::Rational);
            const Integrals ints{row.N, row.E, row.F, {}, {}};
            row.period = -1;
            row.u_empty = false;
            try {
                const VelocityCircle c = build_circle(p, ints);
                row.u_empty = u_set_is_empty(c, p, ints);
                const ArcSet u = row.u_empty ? ArcSet{} : compute_U(c, p, ints);
                const auto period =
                    detect_period({0.1234567891, Sheet::O}, c, u, sw.max_period_steps);
                if (period) row.period = *period;
            } catch (const EmptyCircleError&) {
                row.gamma_norm = std::nan("");
            }
        }
    };

    int n_threads = cfg.threads > 0 ? cfg.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, 16));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ofstream f = open_out(opts, "sweep.csv");
    f << "eta1,eta2,N,E,F,lambda,gamma_norm,rational,u_empty,period\n";
    for (const SweepRow& r : rows)
        f << json_num(r.eta1) << ',' << json_num(r.eta2) << ',' << json_num(r.N) << ','
          << json_num(r.E) << ',' << json_num(r.F) << ',' << json_num(r.lambda) << ','
          << json_num(r.gamma_norm) << ',' << (r.rational ? 1 : 0) << ','
          << (r.u_empty ? 1 : 0) << ',' << r.period << '\n';
    out << "sweep: wrote sweep.csv (" << total << " cells)\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"annulus billiard with rotor-coupled boundaries: reduced maps and "
                 "event-driven simulation"};
    app.require_subcommand(1);

    CommonOpts opts;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "JSON configuration file")->required();
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--seed", opts.seed, "override the config seed")
            ->each([&](const std::string&) { opts.seed_set = true; });
        sub->add_option("--steps", opts.steps, "override the config step count")
            ->each([&](const std::string&) { opts.steps_set = true; });
        sub->add_option("--threads", opts.threads, "worker threads (0 = hardware)")
            ->each([&](const std::string&) { opts.threads_set = true; });
        sub->add_flag("--oracle-check", opts.oracle_check,
                      "cross-check against the event-driven simulation");
    };

    CLI::App* c_base = app.add_subcommand("base", "double-rotor base and skew-product run");
    CLI::App* c_single = app.add_subcommand("single", "single-rotor orbit");
    CLI::App* c_two = app.add_subcommand("two", "two-particle persistence experiment");
    CLI::App* c_oracle = app.add_subcommand("oracle", "event-driven Cartesian run");
    CLI::App* c_classify = app.add_subcommand("classify", "rotation-angle classification");
    CLI::App* c_sweep = app.add_subcommand("sweep", "parameter-grid sweep");
    CLI::App* c_validate = app.add_subcommand("validate", "validate a configuration");
    for (CLI::App* sub : {c_base, c_single, c_two, c_oracle, c_classify, c_sweep, c_validate})
        add_common(sub);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(c_base)) return cmd_base(opts, out);
        if (app.got_subcommand(c_single)) return cmd_single(opts, out);
        if (app.got_subcommand(c_two)) return cmd_two(opts, out);
        if (app.got_subcommand(c_oracle)) return cmd_oracle(opts, out);
        if (app.got_subcommand(c_classify)) return cmd_classify(opts, out);
        if (app.got_subcommand(c_sweep)) return cmd_sweep(opts, out);
        if (app.got_subcommand(c_validate)) return cmd_validate(opts, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionUnmetError& e) {
        err << "precondition unmet: " << e.what() << "\n";
        return 3;
    } catch (const OutOfRangeError& e) {
        err << "out of range: " << e.what() << "\n";
        return 3;
    } catch (const NumericalDriftError& e) {
        err << "numerical drift: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace anrot::tool
