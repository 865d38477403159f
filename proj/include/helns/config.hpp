#pragma once

#include <cstdint>
#include <string>

#include "helns/field.hpp"
#include "helns/monitor.hpp"
#include "helns/solver.hpp"

namespace helns {

// Flat key=value run configuration. Unknown keys are rejected; missing keys
// take the defaults below.
struct RunConfig {
    int n = 32;
    double nu = 1.0;
    double t_end = 1.0;
    double dt_max = 0.01;
    double cfl = 0.5;
    int output_every = 1;
    std::string init = "abc";  // abc | taylor_green | random
    double abc_A = 1.0, abc_B = 1.0, abc_C = 1.0;
    std::uint64_t seed = 1;
    double slope = -2.0;
    double helicity_fraction = 0.5;
    int k_min = 1;
    int k_max = 4;
    std::string a_schedule = "const:0";  // const:<value> | neg_inf | table:<path>
    std::string out_dir = "out";

    SolverConfig solver() const;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

// const:<value> | neg_inf | table:<path>; table files hold "t a" lines.
Schedule parse_schedule(const std::string& spec);

VectorField build_initial_condition(const RunConfig& cfg);

}  // namespace helns
