#include "hydrostat/config.hpp"

#include <cerrno>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace hydrostat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || errno == ERANGE)
        throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
    return v;
}

long long to_integer(const std::string& key, const std::string& value) {
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0' || errno == ERANGE)
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    const long long v = to_integer(key, value);
    if (v < -2147483647LL || v > 2147483647LL) throw ConfigError("key '" + key + "': integer out of range");
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    return out;
}

}  // namespace

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = scenario_keys.find(key);
    return it == scenario_keys.end() ? fallback : to_double("scenario." + key, it->second);
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    const auto it = scenario_keys.find(key);
    return it == scenario_keys.end() ? fallback : to_int("scenario." + key, it->second);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = scenario_keys.find(key);
    return it == scenario_keys.end() ? fallback : to_bool("scenario." + key, it->second);
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = scenario_keys.find(key);
    return it == scenario_keys.end() ? fallback : it->second;
}

std::vector<double> RunConfig::get_list(const std::string& key, const std::vector<double>& fallback) const {
    const auto it = scenario_keys.find(key);
    return it == scenario_keys.end() ? fallback : to_list("scenario." + key, it->second);
}

void RunConfig::require_scenario_keys(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : scenario_keys)
        if (!allowed.count(key))
            throw ConfigError("unknown key 'scenario." + key + "' for scenario '" + scenario + "'");
}

std::string RunConfig::resolve(const std::string& path) const {
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

RunConfig parse_config(std::istream& in, const std::string& origin) {
    RunConfig c;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"grid.Lx", [&](auto& k, auto& v) { c.grid.Lx = to_double(k, v); }},
        {"grid.Ly", [&](auto& k, auto& v) { c.grid.Ly = to_double(k, v); }},
        {"grid.h", [&](auto& k, auto& v) { c.grid.h = to_double(k, v); }},
        {"grid.nx", [&](auto& k, auto& v) { c.grid.nx = to_int(k, v); }},
        {"grid.ny", [&](auto& k, auto& v) { c.grid.ny = to_int(k, v); }},
        {"grid.nz", [&](auto& k, auto& v) { c.grid.nz = to_int(k, v); }},
        {"physics.Re1", [&](auto& k, auto& v) { c.physics.Re1 = to_double(k, v); }},
        {"physics.Re2", [&](auto& k, auto& v) { c.physics.Re2 = to_double(k, v); }},
        {"physics.R_T", [&](auto& k, auto& v) { c.physics.R_T = to_double(k, v); }},
        {"physics.f", [&](auto& k, auto& v) { c.physics.f = to_double(k, v); }},
        {"physics.eps", [&](auto& k, auto& v) { c.physics.eps = to_double(k, v); }},
        {"physics.alpha_T", [&](auto& k, auto& v) { c.physics.alpha_T = to_double(k, v); }},
        {"physics.alpha_v", [&](auto& k, auto& v) { c.physics.alpha_v = to_double(k, v); }},
        {"physics.delta", [&](auto& k, auto& v) { c.physics.delta = to_double(k, v); }},
        {"step.cfl_adv", [&](auto& k, auto& v) { c.step.cfl_adv = to_double(k, v); }},
        {"step.cfl_diff", [&](auto& k, auto& v) { c.step.cfl_diff = to_double(k, v); }},
        {"step.dt_max", [&](auto& k, auto& v) { c.step.dt_max = to_double(k, v); }},
        {"step.dt_min", [&](auto& k, auto& v) { c.step.dt_min = to_double(k, v); }},
        {"step.t_end", [&](auto& k, auto& v) { c.step.t_end = to_double(k, v); }},
        {"step.projection_tol", [&](auto& k, auto& v) { c.step.projection_tol = to_double(k, v); }},
        {"step.max_poisson_iterations", [&](auto& k, auto& v) { c.step.max_poisson_iterations = to_int(k, v); }},
        {"scenario.name", [&](auto&, auto& v) { c.scenario = v; }},
        {"output.dir", [&](auto&, auto& v) { c.output_dir = v; }},
        {"output.snapshot_times", [&](auto& k, auto& v) { c.snapshot_times = to_list(k, v); }},
        {"seed",
         [&](auto& k, auto& v) {
             const long long s = to_integer(k, v);
             if (s < 0) throw ConfigError("key 'seed': must be non-negative");
             c.seed = static_cast<std::uint64_t>(s);
         }},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << origin << ":" << lineno << ": expected 'key = value'";
            throw ConfigError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream msg;
            msg << origin << ":" << lineno << ": empty key";
            throw ConfigError(msg.str());
        }
        const auto it = setters.find(key);
        if (it != setters.end()) {
            it->second(key, value);
        } else if (key.rfind("scenario.", 0) == 0) {
            c.scenario_keys[key.substr(9)] = value;
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    try {
        c.grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    try {
        c.physics.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    try {
        c.step.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (double t : c.snapshot_times)
        if (!(t >= 0.0)) throw ConfigError("key 'output.snapshot_times': times must be non-negative");
    if (c.output_dir.empty()) throw ConfigError("key 'output.dir': must not be empty");
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    RunConfig c = parse_config(in, path);
    const auto parent = std::filesystem::path(path).parent_path();
    c.base_dir = parent.empty() ? "." : parent.string();
    if (!std::filesystem::path(c.output_dir).is_absolute()) c.output_dir = c.resolve(c.output_dir);
    return c;
}

RunConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "<string>");
}

int worker_threads() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("HYDROSTAT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) n = std::min(n, static_cast<int>(std::min<long>(v, 1024)));
    }
    return n;
}

}  // namespace hydrostat
