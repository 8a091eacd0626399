#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydrostat/grid.hpp"
#include "hydrostat/params.hpp"
#include "hydrostat/stepper.hpp"

namespace hydrostat {

/// Malformed or invalid configuration; the message names the key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration.
///
///   grid.{Lx,Ly,h,nx,ny,nz}
///   physics.{Re1,Re2,R_T,f,eps,alpha_T,alpha_v,delta}
///   step.{cfl_adv,cfl_diff,dt_max,dt_min,t_end,projection_tol,max_poisson_iterations}
///   scenario.name and scenario.<key> (checked by the scenario)
///   output.dir, output.snapshot_times (comma list), seed
///
/// '#' starts a comment. Later keys override earlier ones.
struct RunConfig {
    GridSpec grid;
    PhysParams physics;
    StepConfig step;
    std::string scenario = "decay";
    std::map<std::string, std::string> scenario_keys;  ///< without the "scenario." prefix
    std::string output_dir = "hydrostat_out";
    std::vector<double> snapshot_times;
    std::uint64_t seed = 1;
    std::string base_dir = ".";  ///< directory of the config file, for relative paths

    /// Typed access to scenario keys with a default.
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    /// Throws ConfigError naming the first scenario key not in `allowed`.
    void require_scenario_keys(const std::set<std::string>& allowed) const;

    /// Resolves `path` against base_dir unless it is absolute.
    std::string resolve(const std::string& path) const;
};

RunConfig parse_config(std::istream& in, const std::string& origin = "<config>");
RunConfig parse_config_file(const std::string& path);
/// Parses `key = value` assignments given inline (same syntax as a file).
RunConfig parse_config_string(const std::string& text);

/// Hardware concurrency capped by HYDROSTAT_THREADS, at least 1.
int worker_threads();

}  // namespace hydrostat
