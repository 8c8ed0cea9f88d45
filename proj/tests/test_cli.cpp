#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "geocert/scenario.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

const std::string kSmallConfig =
    "manifold.kind = circle\n"
    "manifold.R = 1.0\n"
    "n = 200\n"
    "epsilon = 0.3\n"
    "seeds = 2\n"
    "certifiers = preflight,sandwich,distance,concentration,vd\n";

int run(const std::string& args) {
    const std::string cmd = std::string(CERTIFY_BIN) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("config parsing") {
    const auto s = geocert::parse_config_text(kSmallConfig);
    CHECK(s.n_list == std::vector<int>{200});
    CHECK(s.epsilon_value == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(s.seeds == 2);
    CHECK(s.certifiers.size() == 5);
    CHECK(std::stod(s.resolved.at("epsilon")) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(geocert::parse_config_text("bogus_key = 1\n"), geocert::ConfigError);
    CHECK_THROWS_AS(geocert::parse_config_text("n = -5\n"), geocert::ConfigError);
    CHECK_THROWS_AS(geocert::parse_config_text("manifold.kind = klein_bottle\n"),
                    geocert::ConfigError);
    CHECK_THROWS_AS(geocert::parse_config_text("epsilon\n"), geocert::ConfigError);
}

TEST_CASE("standard epsilon schedule") {
    const auto s = geocert::parse_config_text(
        "manifold.kind = flat_torus\nmanifold.L1 = 1\nmanifold.L2 = 1\n"
        "n = 500,1000\nepsilon.rule = standard\nepsilon.coeff = 3.0\n");
    const double e500 = geocert::epsilon_for(s, 500);
    const double e1000 = geocert::epsilon_for(s, 1000);
    CHECK(e500 == doctest::Approx(3.0 * std::sqrt(std::log(500.0) / 500.0)).epsilon(1e-13));
    CHECK(e1000 < e500);
}

TEST_CASE("cli runs a scenario and writes the report") {
    const auto cfg = write_config("geocert_cli_small.cfg", kSmallConfig);
    const fs::path out = fs::temp_directory_path() / "geocert_cli_out";
    fs::remove_all(out);
    CHECK(run("--config " + cfg.string() + " --out " + out.string() + " --workers 2") == 0);
    const std::string report = slurp(out / "report.jsonl");
    CHECK(report.find("\"record\":\"header\"") != std::string::npos);
    CHECK(report.find("\"certifier\":\"sandwich\"") != std::string::npos);
    CHECK(report.find("\"record\":\"summary\"") != std::string::npos);
    CHECK(fs::exists(out / "resolved_config.txt"));
    CHECK(fs::exists(out / "sandwich.csv"));
    const std::string resolved = slurp(out / "resolved_config.txt");
    CHECK(resolved.find("lambda1") != std::string::npos);
    CHECK(resolved.find("seed.start") != std::string::npos);
}

TEST_CASE("identical runs are byte identical") {
    const auto cfg = write_config("geocert_cli_repro.cfg", kSmallConfig);
    const fs::path a = fs::temp_directory_path() / "geocert_cli_a";
    const fs::path b = fs::temp_directory_path() / "geocert_cli_b";
    fs::remove_all(a);
    fs::remove_all(b);
    REQUIRE(run("--config " + cfg.string() + " --out " + a.string() + " --workers 1") == 0);
    REQUIRE(run("--config " + cfg.string() + " --out " + b.string() + " --workers 3") == 0);
    CHECK(slurp(a / "report.jsonl") == slurp(b / "report.jsonl"));
}

TEST_CASE("bad configs exit with code 3") {
    const auto cfg = write_config("geocert_cli_bad.cfg", "unknown_key = 1\n");
    const fs::path out = fs::temp_directory_path() / "geocert_cli_bad_out";
    CHECK(run("--config " + cfg.string() + " --out " + out.string()) == 3);
    CHECK(run("--config /nonexistent/path.cfg --out " + out.string()) == 3);
}

TEST_CASE("certifier filter restricts the records") {
    const auto cfg = write_config("geocert_cli_only.cfg", kSmallConfig);
    const fs::path out = fs::temp_directory_path() / "geocert_cli_only_out";
    fs::remove_all(out);
    REQUIRE(run("--config " + cfg.string() + " --out " + out.string() +
                " --only sandwich --only vd") == 0);
    const std::string report = slurp(out / "report.jsonl");
    CHECK(report.find("\"certifier\":\"sandwich\"") != std::string::npos);
    CHECK(report.find("\"certifier\":\"vd\"") != std::string::npos);
    CHECK(report.find("\"certifier\":\"distance\"") == std::string::npos);
}
