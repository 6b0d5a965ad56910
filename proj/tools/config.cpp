#include "config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace anrot::tool {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::pair<int, int> offset_to_line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

double need_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where + " must be a number");
    return j.get<double>();
}

SystemMode parse_mode(const std::string& s) {
    if (s == "single_rotor") return SystemMode::SingleRotor;
    if (s == "double_rotor") return SystemMode::DoubleRotor;
    if (s == "two_particle") return SystemMode::TwoParticle;
    fail("mode must be one of single_rotor, double_rotor, two_particle (got \"" + s + "\")");
}

SweepAxis parse_axis(const json& j, const std::string& where) {
    SweepAxis ax;
    if (j.is_number()) {
        ax.from = ax.to = j.get<double>();
        ax.fixed = true;
        return ax;
    }
    if (!j.is_object()) fail(where + " must be a number or {from, to, cells}");
    if (!j.contains("from") || !j.contains("to") || !j.contains("cells"))
        fail(where + " needs from, to, and cells");
    ax.from = need_number(j["from"], where + ".from");
    ax.to = need_number(j["to"], where + ".to");
    ax.cells = j["cells"].get<long>();
    if (ax.cells < 1) fail(where + ".cells must be >= 1");
    ax.fixed = (ax.cells == 1);
    return ax;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = offset_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        fail(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
             ": JSON syntax error: " + e.what());
    }
    if (!j.is_object()) fail("config root must be a JSON object");

    RunConfig cfg;
    if (!j.contains("mode") || !j["mode"].is_string()) fail("missing string field: mode");
    cfg.mode = parse_mode(j["mode"].get<std::string>());
    cfg.params.mode = cfg.mode;

    if (!j.contains("params") || !j["params"].is_object()) fail("missing object field: params");
    const json& pp = j["params"];
    if (!pp.contains("R")) fail("missing field: params.R");
    cfg.params.R = need_number(pp["R"], "params.R");
    if (!pp.contains("eta1")) {
        if (pp.contains("eta"))
            cfg.params.eta1 = need_number(pp["eta"], "params.eta");
        else
            fail("missing field: params.eta1");
    } else {
        cfg.params.eta1 = need_number(pp["eta1"], "params.eta1");
    }
    if (pp.contains("eta2")) cfg.params.eta2 = need_number(pp["eta2"], "params.eta2");

    if (j.contains("integrals")) {
        const json& ii = j["integrals"];
        if (!ii.is_object()) fail("integrals must be an object");
        if (ii.contains("N")) cfg.integrals.N = need_number(ii["N"], "integrals.N");
        if (ii.contains("E")) cfg.integrals.E = need_number(ii["E"], "integrals.E");
        if (ii.contains("F")) cfg.integrals.F = need_number(ii["F"], "integrals.F");
        if (ii.contains("vn")) cfg.integrals.vn = need_number(ii["vn"], "integrals.vn");
        if (ii.contains("un")) cfg.integrals.un = need_number(ii["un"], "integrals.un");
    }

    if (j.contains("initial")) {
        const json& in0 = j["initial"];
        if (!in0.is_object()) fail("initial must be an object");
        if (in0.contains("s")) cfg.s0 = need_number(in0["s"], "initial.s");
        if (in0.contains("phi")) cfg.phi0 = need_number(in0["phi"], "initial.phi");
        if (in0.contains("sheet")) {
            cfg.sheet = in0["sheet"].get<std::string>();
            if (cfg.sheet != "I" && cfg.sheet != "O") fail("initial.sheet must be \"I\" or \"O\"");
        }
        if (in0.contains("t")) cfg.t0 = need_number(in0["t"], "initial.t");
        if (in0.contains("vt")) cfg.vt0 = need_number(in0["vt"], "initial.vt");
        if (in0.contains("omega")) cfg.omega0 = need_number(in0["omega"], "initial.omega");
        if (in0.contains("psi1")) cfg.psi1 = need_number(in0["psi1"], "initial.psi1");
        if (in0.contains("psi2")) cfg.psi2 = need_number(in0["psi2"], "initial.psi2");
    }

    if (j.contains("steps")) cfg.steps = j["steps"].get<long>();
    if (cfg.steps < 1) fail("steps must be >= 1");
    if (j.contains("eps")) cfg.eps = need_number(j["eps"], "eps");
    if (j.contains("n_samples")) cfg.n_samples = j["n_samples"].get<int>();
    if (cfg.n_samples < 1) fail("n_samples must be >= 1");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();

    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        if (!sw.is_object()) fail("sweep must be an object");
        if (sw.contains("eta1")) cfg.sweep.eta1 = parse_axis(sw["eta1"], "sweep.eta1");
        if (sw.contains("eta2")) cfg.sweep.eta2 = parse_axis(sw["eta2"], "sweep.eta2");
        if (sw.contains("lambda")) cfg.sweep.lambda = parse_axis(sw["lambda"], "sweep.lambda");
        if (sw.contains("max_period_steps"))
            cfg.sweep.max_period_steps = sw["max_period_steps"].get<long>();
        if (cfg.sweep.total_cells() > 1000000) fail("sweep grid exceeds 10^6 cells");
    }
    return cfg;
}

}  // namespace anrot::tool
