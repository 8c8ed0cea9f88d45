#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "geocert/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"epsilon-graph metric-measure certifier"};
    std::string config_path;
    std::string out_dir = "out";
    int workers = 1;
    std::vector<std::string> only;
    app.add_option("--config", config_path, "scenario config file")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "worker threads");
    app.add_option("--only", only, "restrict to these certifiers");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto scenario = geocert::parse_config_file(config_path);
        const auto result = geocert::run_scenario(scenario, out_dir, workers, only);
        for (const auto& [cert, frac] : result.pass_fraction)
            std::printf("%-14s pass_fraction=%.4f\n", cert.c_str(), frac);
        std::printf("records=%lld exit=%d\n", result.records, result.exit_code);
        return result.exit_code;
    } catch (const geocert::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
