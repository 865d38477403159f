#include "helns/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helns/errors.hpp"
#include "helns/initial_conditions.hpp"

namespace helns {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("invalid numeric value for " + key + ": '" + v + "'");
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("invalid integer value for " + key + ": '" + v + "'");
    return x;
}

}  // namespace

SolverConfig RunConfig::solver() const {
    SolverConfig s;
    s.nu = nu;
    s.t_end = t_end;
    s.dt_max = dt_max;
    s.cfl = cfl;
    s.output_every = output_every;
    return s;
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));

        if (key == "n") cfg.n = static_cast<int>(parse_int(key, value));
        else if (key == "nu") cfg.nu = parse_double(key, value);
        else if (key == "t_end") cfg.t_end = parse_double(key, value);
        else if (key == "dt_max") cfg.dt_max = parse_double(key, value);
        else if (key == "cfl") cfg.cfl = parse_double(key, value);
        else if (key == "output_every") cfg.output_every = static_cast<int>(parse_int(key, value));
        else if (key == "init") cfg.init = value;
        else if (key == "abc_A") cfg.abc_A = parse_double(key, value);
        else if (key == "abc_B") cfg.abc_B = parse_double(key, value);
        else if (key == "abc_C") cfg.abc_C = parse_double(key, value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "slope") cfg.slope = parse_double(key, value);
        else if (key == "helicity_fraction") cfg.helicity_fraction = parse_double(key, value);
        else if (key == "k_min") cfg.k_min = static_cast<int>(parse_int(key, value));
        else if (key == "k_max") cfg.k_max = static_cast<int>(parse_int(key, value));
        else if (key == "a_schedule") cfg.a_schedule = value;
        else if (key == "out_dir") cfg.out_dir = value;
        else throw ConfigError("unknown configuration key '" + key + "'");
    }
    if (cfg.init != "abc" && cfg.init != "taylor_green" && cfg.init != "random")
        throw ConfigError("init must be abc, taylor_green or random, got '" + cfg.init + "'");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

Schedule parse_schedule(const std::string& spec) {
    if (spec == "neg_inf") return Schedule::neg_inf();
    if (spec.rfind("const:", 0) == 0) {
        const std::string v = spec.substr(6);
        if (v == "-inf" || v == "neg_inf") return Schedule::neg_inf();
        return Schedule::constant(parse_double("a_schedule", v));
    }
    if (spec.rfind("table:", 0) == 0) {
        const std::string path = spec.substr(6);
        std::ifstream in(path);
        if (!in) throw IoError("cannot open schedule table " + path);
        std::vector<std::pair<double, double>> pts;
        std::string line;
        while (std::getline(in, line)) {
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::istringstream row(t);
            double time = 0.0, a = 0.0;
            if (!(row >> time >> a))
                throw ConfigError("schedule table rows must be '<t> <a>', got '" + t + "'");
            pts.emplace_back(time, a);
        }
        return Schedule::table(std::move(pts));
    }
    throw ConfigError("a_schedule must be const:<value>, neg_inf or table:<path>, got '" +
                      spec + "'");
}

VectorField build_initial_condition(const RunConfig& cfg) {
    const GridSpec g(cfg.n);
    if (cfg.init == "abc") return abc_flow(g, cfg.abc_A, cfg.abc_B, cfg.abc_C);
    if (cfg.init == "taylor_green") return taylor_green(g);
    return random_divfree(g, cfg.slope, cfg.helicity_fraction, cfg.k_min, cfg.k_max, cfg.seed);
}

}  // namespace helns
