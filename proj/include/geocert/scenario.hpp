#pragma once

#include <map>
#include <string>
#include <vector>

#include "geocert/graph.hpp"
#include "geocert/manifold.hpp"
#include "geocert/types.hpp"

namespace geocert {

/// Thrown for malformed configs; maps to exit code 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Scenario {
    ManifoldModel model;
    std::vector<int> n_list;
    bool epsilon_standard = false;
    double epsilon_value = 0.0;
    double epsilon_coeff = 1.0;
    int seeds = 1;
    uint64_t seed_start = 0;
    std::vector<std::string> certifiers;
    AssumptionParams params;
    double lpi_r_max = 2.0;
    std::vector<double> heat_t = {4.0, 9.0, 16.0};
    int heat_pairs = 40;
    int wavelet_level = 0;
    int wavelet_l_lo = -3;
    double hamming_r_fraction = 0.35;  // chart radius as a fraction of r_bullet
    Openness vd_openness = Openness::open;
    std::map<std::string, std::string> resolved;  // every key after defaulting
};

Scenario parse_config_text(const std::string& text);
Scenario parse_config_file(const std::string& path);

double epsilon_for(const Scenario& s, int n);

struct PreflightItem {
    std::string name;
    bool pass;
    double lhs;
    double rhs;
};

std::vector<PreflightItem> preflight(const Scenario& s, int n);

struct RunResult {
    int exit_code = 0;        // 0 ok, 2 deterministic violation, 3 config error
    long long records = 0;
    std::map<std::string, double> pass_fraction;  // per certifier
};

/// Executes sample -> build -> certifiers for every (n, seed), writing
/// report.jsonl, per-certifier CSVs and the resolved config echo into out_dir.
RunResult run_scenario(const Scenario& s, const std::string& out_dir, int workers,
                       const std::vector<std::string>& only);

}  // namespace geocert
