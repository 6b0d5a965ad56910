#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "anrot/model.hpp"

namespace anrot::tool {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepAxis {
    double from = 0.0;
    double to = 0.0;
    long cells = 1;
    bool fixed = true;  // single value (from) when true

    double at(long i) const {
        if (fixed || cells <= 1) return from;
        return from + (to - from) * static_cast<double>(i) / static_cast<double>(cells - 1);
    }
};

struct SweepSpec {
    SweepAxis eta1{1.0, 1.0, 1, true};
    SweepAxis eta2{1.0, 1.0, 1, true};
    SweepAxis lambda{8.0, 8.0, 1, true};  // F / E
    long max_period_steps = 1000;
    long total_cells() const { return eta1.cells * eta2.cells * lambda.cells; }
};

// One parsed configuration file. Verbs read the slices they need.
struct RunConfig {
    SystemMode mode = SystemMode::DoubleRotor;
    PhysicalParams params;
    Integrals integrals;

    // initial conditions (verb-specific)
    double s0 = 0.0;
    double phi0 = 0.0;
    std::string sheet = "O";
    double t0 = 0.5;
    double vt0 = 1.0;
    double omega0 = 0.0;
    double psi1 = 0.0;
    double psi2 = 2.0;

    long steps = 10000;
    double eps = 0.01;
    int n_samples = 100;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware default
    bool oracle_check = false;

    SweepSpec sweep;
};

// Parses the JSON config. Syntax errors carry line:column positions;
// semantic errors name the offending field. Throws ConfigError.
RunConfig load_config(const std::string& path);

}  // namespace anrot::tool
