#include "geocert/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "geocert/concentration.hpp"
#include "geocert/distance_certifier.hpp"
#include "geocert/doubling.hpp"
#include "geocert/hamming.hpp"
#include "geocert/heat_spectral.hpp"
#include "geocert/poincare.hpp"
#include "geocert/rng.hpp"

namespace geocert {

using nlohmann::json;

namespace {

const std::vector<std::string> kAllCertifiers = {
    "preflight", "sandwich", "distance", "concentration", "vd",
    "lpi",       "hamming",  "heat",     "wavelet"};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Scenario parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        kv[key] = val;
    }

    static const std::set<std::string> known = {
        "manifold.kind", "manifold.R", "manifold.L1", "manifold.L2",
        "n", "epsilon", "epsilon.rule", "epsilon.coeff",
        "seeds", "seed.start", "certifiers",
        "lambda1", "lambda2", "delta", "p1", "p2", "p3",
        "Lstar_min", "Lstar_max",
        "lpi_ball_cap", "lpi_center_cap", "lpi_r_max",
        "pair_exhaustive_cap", "pair_sample_count",
        "heat.t", "heat.pairs", "wavelet.level", "wavelet.l_lo",
        "hamming.r_fraction", "vd.openness"};
    for (const auto& [k, v] : kv)
        if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");

    auto get = [&](const std::string& key, const std::string& fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };

    Scenario s;
    const std::string kind = get("manifold.kind", "circle");
    if (kind == "circle")
        s.model = make_circle(to_double("manifold.R", get("manifold.R", "1.0")));
    else if (kind == "sphere2")
        s.model = make_sphere2(to_double("manifold.R", get("manifold.R", "1.0")));
    else if (kind == "flat_torus")
        s.model = make_flat_torus(to_double("manifold.L1", get("manifold.L1", "1.0")),
                                  to_double("manifold.L2", get("manifold.L2", "1.0")));
    else
        throw ConfigError("config key 'manifold.kind': unknown manifold '" + kind + "'");

    for (const std::string& t : split_list(get("n", "1000"))) {
        const long long n = to_int("n", t);
        if (n < 2) throw ConfigError("config key 'n': need n >= 2");
        s.n_list.push_back(static_cast<int>(n));
    }
    if (s.n_list.empty()) throw ConfigError("config key 'n': empty list");

    const std::string rule = get("epsilon.rule", "explicit");
    if (rule == "standard") {
        s.epsilon_standard = true;
        s.epsilon_coeff = to_double("epsilon.coeff", get("epsilon.coeff", "1.0"));
    } else if (rule == "explicit") {
        s.epsilon_value = to_double("epsilon", get("epsilon", "0.2"));
        if (s.epsilon_value <= 0.0) throw ConfigError("config key 'epsilon': must be positive");
    } else {
        throw ConfigError("config key 'epsilon.rule': unknown rule '" + rule + "'");
    }

    s.seeds = static_cast<int>(to_int("seeds", get("seeds", "1")));
    if (s.seeds < 1) throw ConfigError("config key 'seeds': must be at least 1");
    s.seed_start = static_cast<uint64_t>(to_int("seed.start", get("seed.start", "0")));

    s.certifiers = split_list(get("certifiers", "preflight,sandwich,distance,concentration,vd"));
    for (const std::string& c : s.certifiers) {
        if (std::find(kAllCertifiers.begin(), kAllCertifiers.end(), c) == kAllCertifiers.end())
            throw ConfigError("config key 'certifiers': unknown certifier '" + c + "'");
    }

    s.params.lambda1 = to_double("lambda1", get("lambda1", fmt(1.0 / 3.0)));
    s.params.lambda2 = to_double("lambda2", get("lambda2", fmt(1.0 / 3.0)));
    s.params.delta = to_double("delta", get("delta", "0.5"));
    s.params.p1 = to_double("p1", get("p1", "0.1"));
    s.params.p2 = to_double("p2", get("p2", "0.1"));
    s.params.p3 = to_double("p3", get("p3", "0.1"));
    s.params.doubling_v = s.model.doubling_v;
    s.params.Lstar_min = to_double("Lstar_min", get("Lstar_min", "0"));
    s.params.Lstar_max = to_double("Lstar_max", get("Lstar_max", "0"));
    s.params.lpi_ball_cap = static_cast<int>(to_int("lpi_ball_cap", get("lpi_ball_cap", "800")));
    s.params.lpi_center_cap =
        static_cast<int>(to_int("lpi_center_cap", get("lpi_center_cap", "10")));
    s.params.pair_exhaustive_cap =
        static_cast<int>(to_int("pair_exhaustive_cap", get("pair_exhaustive_cap", "600")));
    s.params.pair_sample_count =
        static_cast<int>(to_int("pair_sample_count", get("pair_sample_count", "10000")));
    s.lpi_r_max = to_double("lpi_r_max", get("lpi_r_max", "2"));
    s.heat_t.clear();
    for (const std::string& t : split_list(get("heat.t", "4,9,16")))
        s.heat_t.push_back(to_double("heat.t", t));
    if (s.heat_t.empty()) throw ConfigError("config key 'heat.t': empty list");
    s.heat_pairs = static_cast<int>(to_int("heat.pairs", get("heat.pairs", "40")));
    s.wavelet_level = static_cast<int>(to_int("wavelet.level", get("wavelet.level", "0")));
    s.wavelet_l_lo = static_cast<int>(to_int("wavelet.l_lo", get("wavelet.l_lo", "-3")));
    s.hamming_r_fraction =
        to_double("hamming.r_fraction", get("hamming.r_fraction", "0.35"));
    const std::string openness = get("vd.openness", "open");
    if (openness == "open")
        s.vd_openness = Openness::open;
    else if (openness == "closed")
        s.vd_openness = Openness::closed;
    else
        throw ConfigError("config key 'vd.openness': expected open or closed");

    // resolved echo: every effective value, no implicit defaults left
    s.resolved["manifold.kind"] = kind;
    if (kind == "flat_torus") {
        s.resolved["manifold.L1"] = fmt(s.model.L1);
        s.resolved["manifold.L2"] = fmt(s.model.L2);
    } else {
        s.resolved["manifold.R"] = fmt(s.model.R);
    }
    {
        std::string ns;
        for (size_t i = 0; i < s.n_list.size(); ++i)
            ns += (i ? "," : "") + std::to_string(s.n_list[i]);
        s.resolved["n"] = ns;
    }
    s.resolved["epsilon.rule"] = rule;
    if (s.epsilon_standard)
        s.resolved["epsilon.coeff"] = fmt(s.epsilon_coeff);
    else
        s.resolved["epsilon"] = fmt(s.epsilon_value);
    s.resolved["seeds"] = std::to_string(s.seeds);
    s.resolved["seed.start"] = std::to_string(s.seed_start);
    {
        std::string cs;
        for (size_t i = 0; i < s.certifiers.size(); ++i) cs += (i ? "," : "") + s.certifiers[i];
        s.resolved["certifiers"] = cs;
    }
    s.resolved["lambda1"] = fmt(s.params.lambda1);
    s.resolved["lambda2"] = fmt(s.params.lambda2);
    s.resolved["delta"] = fmt(s.params.delta);
    s.resolved["p1"] = fmt(s.params.p1);
    s.resolved["p2"] = fmt(s.params.p2);
    s.resolved["p3"] = fmt(s.params.p3);
    s.resolved["Lstar_min"] =
        fmt(s.params.Lstar_min > 0 ? s.params.Lstar_min : default_Lstar_min(s.model.k));
    s.resolved["Lstar_max"] =
        fmt(s.params.Lstar_max > 0 ? s.params.Lstar_max : default_Lstar_max(s.model.k));
    s.resolved["lpi_ball_cap"] = std::to_string(s.params.lpi_ball_cap);
    s.resolved["lpi_center_cap"] = std::to_string(s.params.lpi_center_cap);
    s.resolved["lpi_r_max"] = fmt(s.lpi_r_max);
    s.resolved["pair_exhaustive_cap"] = std::to_string(s.params.pair_exhaustive_cap);
    s.resolved["pair_sample_count"] = std::to_string(s.params.pair_sample_count);
    {
        std::string ts;
        for (size_t i = 0; i < s.heat_t.size(); ++i) ts += (i ? "," : "") + fmt(s.heat_t[i]);
        s.resolved["heat.t"] = ts;
    }
    s.resolved["heat.pairs"] = std::to_string(s.heat_pairs);
    s.resolved["wavelet.level"] = std::to_string(s.wavelet_level);
    s.resolved["wavelet.l_lo"] = std::to_string(s.wavelet_l_lo);
    s.resolved["hamming.r_fraction"] = fmt(s.hamming_r_fraction);
    s.resolved["vd.openness"] = openness;
    return s;
}

Scenario parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

double epsilon_for(const Scenario& s, int n) {
    if (!s.epsilon_standard) return s.epsilon_value;
    return s.epsilon_coeff * std::pow(std::log(static_cast<double>(n)) / n, 1.0 / s.model.k);
}

std::vector<PreflightItem> preflight(const Scenario& s, int n) {
    std::vector<PreflightItem> items;
    const double eps = epsilon_for(s, n);
    const double cap = std::min(
        s.model.s0, (2.0 / 3.141592653589793) * s.model.r0 * std::sqrt(24.0 * s.params.lambda1));
    items.push_back({"A3_epsilon", eps < cap, eps, cap});
    const double thr = a3_sample_threshold(s.model, eps, s.params.lambda2, s.params.p1);
    items.push_back({"A3_sample_size", n >= thr, static_cast<double>(n), thr});

    const double Lmin_star =
        s.params.Lstar_min > 0 ? s.params.Lstar_min : default_Lstar_min(s.model.k);
    const double Lmax_star =
        s.params.Lstar_max > 0 ? s.params.Lstar_max : default_Lstar_max(s.model.k);
    const double k = s.model.k;
    const double lpi_n = 1.0 / ((1.0 - s.params.delta) * s.model.ahlfors_cl) *
                             std::pow(4.0 * std::sqrt(k + 3.0) * Lmax_star / (Lmin_star * eps), k) +
                         1.0;
    items.push_back({"lpi_sample_size", n >= lpi_n, static_cast<double>(n), lpi_n});
    items.push_back({"lpi_radius_window", s.model.r_bullet * (1.0 - s.params.lambda1) / eps >= 1.0,
                     s.model.r_bullet * (1.0 - s.params.lambda1) / eps, 1.0});
    if (s.epsilon_standard && s.n_list.size() >= 2) {
        bool increasing = true;
        double prev = 0.0;
        for (size_t i = 0; i < s.n_list.size(); ++i) {
            const int ni = s.n_list[i];
            const double ratio = ni * std::pow(epsilon_for(s, ni), k) / std::log(ni);
            if (i > 0 && ratio <= prev) increasing = false;
            prev = ratio;
        }
        const int n0 = s.n_list.front();
        items.push_back({"standard_schedule", increasing,
                         n0 * std::pow(epsilon_for(s, n0), k) / std::log(n0), prev});
    }
    return items;
}

namespace {

struct SeedOutput {
    std::string jsonl;
    std::map<std::string, std::string> csv_rows;  // certifier -> rows
    bool hard_violation = false;
    std::map<std::string, int> pass_count;
    std::map<std::string, int> total_count;
};

json violations_json(const DistanceReport& rep, size_t cap = 5) {
    json v = json::array();
    for (size_t i = 0; i < std::min(cap, rep.violations.size()); ++i) {
        const auto& x = rep.violations[i];
        v.push_back({{"i", x.i}, {"j", x.j}, {"lhs", x.lhs}, {"mid", x.mid}, {"rhs", x.rhs}});
    }
    return v;
}

SeedOutput run_one(const Scenario& s, int n, uint64_t seed,
                   const std::set<std::string>& enabled) {
    SeedOutput out;
    std::ostringstream lines;
    const double eps = epsilon_for(s, n);
    const ManifoldModel& model = s.model;
    const AssumptionParams& params = s.params;
    const double Lmin_star = params.Lstar_min > 0 ? params.Lstar_min : default_Lstar_min(model.k);
    const double Lmax_star = params.Lstar_max > 0 ? params.Lstar_max : default_Lstar_max(model.k);

    auto emit = [&](const std::string& certifier, json rec, bool counted_pass, bool count) {
        rec["seed"] = seed;
        rec["n"] = n;
        rec["epsilon"] = eps;
        rec["certifier"] = certifier;
        lines << rec.dump() << "\n";
        if (count) {
            ++out.total_count[certifier];
            if (counted_pass) ++out.pass_count[certifier];
        }
    };

    mat_t pts;
    EpsilonGraph g;
    try {
        pts = sample(model, n, seed);
        g = build_epsilon_graph(pts, eps);
    } catch (const std::exception& e) {
        emit("build", {{"verdict", "error"}, {"message", e.what()}}, false, false);
        out.jsonl = lines.str();
        return out;
    }
    const bool connected = is_connected(g);

    for (const std::string& cert : s.certifiers) {
        if (!enabled.count(cert)) continue;
        try {
            if (cert == "preflight") {
                json checks = json::array();
                bool all = true;
                for (const auto& item : preflight(s, n)) {
                    checks.push_back({{"name", item.name},
                                      {"pass", item.pass},
                                      {"lhs", item.lhs},
                                      {"rhs", item.rhs}});
                    all = all && item.pass;
                }
                checks.push_back({{"name", "connected"},
                                  {"pass", connected},
                                  {"lhs", connected ? 1.0 : 0.0},
                                  {"rhs", 1.0}});
                emit("preflight", {{"verdict", all && connected ? "pass" : "fail"},
                                   {"checks", checks}},
                     all && connected, true);
            } else if (cert == "sandwich") {
                const auto rep = check_sandwich_sp_ge(g, params, seed);
                if (!rep.pass) out.hard_violation = true;
                emit("sandwich",
                     {{"verdict", rep.pass ? "pass" : "fail"},
                      {"pairs_checked", rep.pairs_checked},
                      {"violations", violations_json(rep)},
                      {"max_slack", rep.max_slack}},
                     rep.pass, true);
                out.csv_rows["sandwich"] += std::to_string(seed) + "," + std::to_string(n) + "," +
                                            std::to_string(rep.pairs_checked) + "," +
                                            std::to_string(rep.violations.size()) + "\n";
            } else if (cert == "distance") {
                const auto rep = check_ge_vs_manifold(g, model, params, seed);
                const auto inc = check_ball_inclusions(g, model, params, {2.0, 3.0}, seed);
                const std::string verdict = !rep.assumptions_met ? "assumptions_unmet"
                                            : rep.pass           ? "pass"
                                                                 : "fail";
                emit("distance",
                     {{"verdict", verdict},
                      {"pairs_checked", rep.pairs_checked},
                      {"violation_fraction", rep.violation_fraction},
                      {"violations", violations_json(rep)},
                      {"inclusions_pass", inc.pass},
                      {"inclusion_checks", inc.pairs_checked}},
                     rep.pass && inc.pass, rep.assumptions_met);
                out.csv_rows["distance"] += std::to_string(seed) + "," + std::to_string(n) + "," +
                                            fmt(rep.violation_fraction) + "," +
                                            (inc.pass ? "1" : "0") + "\n";
            } else if (cert == "concentration") {
                const auto stat = uniform_sqrt_deviation(pts, model, params.p2);
                const bool within = stat.sup_value <= stat.bound;
                int deg_min = g.degrees[0], deg_max = g.degrees[0];
                for (int d : g.degrees) {
                    deg_min = std::min(deg_min, d);
                    deg_max = std::max(deg_max, d);
                }
                const double m_lo = model.ahlfors_cl * std::pow(eps, model.k);
                const double m_hi = model.ahlfors_cu * std::pow(eps, model.k);
                const auto db = degree_bounds(n, params.delta, std::min(m_lo, 1.0),
                                              std::min(m_hi, 1.0));
                const bool deg_ok = deg_min >= db.lower_threshold &&
                                    deg_max <= db.upper_threshold;
                emit("concentration",
                     {{"verdict", within ? "pass" : "fail"},
                      {"sup_value", stat.sup_value},
                      {"bound", stat.bound},
                      {"bound_proof_constant", stat.bound_proof},
                      {"deg_min", deg_min},
                      {"deg_max", deg_max},
                      {"deg_lower", db.lower_threshold},
                      {"deg_upper", db.upper_threshold},
                      {"deg_within", deg_ok},
                      {"deg_failure_prob", db.failure_prob}},
                     within, true);
                out.csv_rows["concentration"] += std::to_string(seed) + "," + std::to_string(n) +
                                                 "," + fmt(stat.sup_value) + "," + fmt(stat.bound) +
                                                 "," + (deg_ok ? "1" : "0") + "\n";
            } else if (cert == "vd") {
                if (!connected) throw std::runtime_error("requires a connected graph");
                const double floor =
                    std::max(mass_floor(n, params.p2), mass_floor_alt(n, params.p2));
                const double u = (s.vd_openness == Openness::open)
                                     ? exponent_u_open(params.lambda1, params.lambda2,
                                                       model.doubling_v)
                                     : exponent_u_closed(model.doubling_v);
                const auto grid = vd_radius_grid(g);
                const auto rep = certify_vd(g, MeasureKind::empirical, grid, floor, u,
                                            s.vd_openness);
                emit("vd",
                     {{"verdict", rep.pass ? "pass" : "fail"},
                      {"exponent_u", u},
                      {"mass_floor", floor},
                      {"balls_tested", rep.balls_tested},
                      {"qualifying_balls", rep.qualifying_balls},
                      {"max_ratio", rep.max_ratio},
                      {"cap", std::pow(2.0, u)},
                      {"violation_count", rep.violations.size()}},
                     rep.pass, true);
                out.csv_rows["vd"] += std::to_string(seed) + "," + std::to_string(n) + "," +
                                      fmt(rep.max_ratio) + "," + fmt(std::pow(2.0, u)) + "," +
                                      std::to_string(rep.qualifying_balls) + "\n";
            } else if (cert == "lpi") {
                if (!connected) throw std::runtime_error("requires a connected graph");
                const auto consts = lpi_constants(model, params, n, eps, 1.0 / n, 1.0 / n,
                                                  Lmin_star, Lmax_star);
                int pass = 0, total = 0, skipped = 0;
                double worst = 0.0;
                for (MeasureKind kind : {MeasureKind::empirical, MeasureKind::degree_volume}) {
                    const auto results =
                        certify_lpi(g, model, consts, kind, params, 1.0, s.lpi_r_max, seed);
                    for (const auto& r : results) {
                        if (r.skipped) {
                            ++skipped;
                            continue;
                        }
                        ++total;
                        if (r.pass) ++pass;
                        if (r.bound > 0.0) worst = std::max(worst, r.C_emp / r.bound);
                    }
                }
                const bool ok = total > 0 && pass == total;
                emit("lpi",
                     {{"verdict", ok ? "pass" : (total == 0 ? "report_only" : "fail")},
                      {"lambda", consts.lambda},
                      {"C_hat", consts.C_hat},
                      {"C_emp_bound", consts.C_emp_bound},
                      {"p4", consts.p4},
                      {"r_plus", consts.r_plus},
                      {"balls_pass", pass},
                      {"balls_total", total},
                      {"balls_skipped", skipped},
                      {"worst_ratio", worst}},
                     ok, total > 0);
                out.csv_rows["lpi"] += std::to_string(seed) + "," + std::to_string(n) + "," +
                                       std::to_string(pass) + "," + std::to_string(total) + "," +
                                       fmt(worst) + "\n";
            } else if (cert == "hamming") {
                const double r_M = s.hamming_r_fraction * model.r_bullet;
                const index_t center = static_cast<index_t>(Rng(seed, 0x68616d).uniform_int(n));
                const vec_t cpt = g.points.row(center).transpose();
                const auto chart = build_chart(model, cpt, r_M, Lmin_star, Lmax_star);
                const double gw = grid_width(model.k, chart.L_min(), eps);
                std::vector<index_t> ball;
                for (int v = 0; v < n; ++v) {
                    const vec_t pv = g.points.row(v).transpose();
                    if (geodesic_distance(model, cpt, pv) <= r_M) ball.push_back(v);
                }
                const auto grid = build_grid(chart, ball, g.points, gw);
                const auto occ =
                    verify_cell_occupancy_bounds(model, grid, chart, n, params.delta, eps);
                if (occ.N_min < 1) {
                    emit("hamming",
                         {{"verdict", "report_only"},
                          {"reason", "empty grid cell"},
                          {"cells", grid.cell_count()},
                          {"ball_size", ball.size()},
                          {"p8", occ.p8},
                          {"occupancy_precondition", occ.precondition_ok}},
                         false, false);
                } else {
                    const auto ens = build_ensemble(g, ball, chart, grid);
                    const double l_bound = model.k * grid.m;
                    const double ratio = 1.0 + static_cast<double>(ens.N_max) / ens.N_min;
                    const double b_bound =
                        ratio * ratio * model.k * std::pow(grid.m, model.k + 1);
                    const bool ok = ens.l_max <= l_bound && ens.b_max <= b_bound;
                    if (!ok) out.hard_violation = true;
                    emit("hamming",
                         {{"verdict", ok ? "pass" : "fail"},
                          {"grid_m", grid.m},
                          {"cells", grid.cell_count()},
                          {"ball_size", ball.size()},
                          {"N_min", ens.N_min},
                          {"N_max", ens.N_max},
                          {"l_max", ens.l_max},
                          {"l_max_bound", l_bound},
                          {"b_max", ens.b_max},
                          {"b_max_bound", b_bound},
                          {"load_conservation_gap",
                           std::fabs(ens.total_load - ens.total_expected_length)},
                          {"p8", occ.p8},
                          {"occupancy_lo", occ.occupancy_lo},
                          {"occupancy_precondition", occ.precondition_ok}},
                         ok, true);
                    out.csv_rows["hamming"] += std::to_string(seed) + "," + std::to_string(n) +
                                               "," + std::to_string(grid.m) + "," +
                                               std::to_string(ens.l_max) + "," + fmt(ens.b_max) +
                                               "," + fmt(b_bound) + "\n";
                }
            } else if (cert == "heat") {
                if (!connected) throw std::runtime_error("requires a connected graph");
                const auto sd = decompose(g);
                Rng rng(seed, 0x6865617470);
                std::vector<std::pair<index_t, index_t>> pairs;
                for (int i = 0; i < s.heat_pairs; ++i) {
                    pairs.push_back({static_cast<index_t>(rng.uniform_int(n)),
                                     static_cast<index_t>(rng.uniform_int(n))});
                }
                std::sort(pairs.begin(), pairs.end());
                const auto rep = subgaussian_envelope(g, sd, s.heat_t, pairs);
                emit("heat",
                     {{"verdict", rep.pass ? "pass" : "fail"},
                      {"slope", rep.slope},
                      {"intercept", rep.intercept},
                      {"max_positive_residual", rep.max_positive_residual},
                      {"points_used", rep.points_used},
                      {"points_dropped", rep.points_dropped},
                      {"sufficient_spread", rep.sufficient_spread}},
                     rep.pass, true);
                out.csv_rows["heat"] += std::to_string(seed) + "," + std::to_string(n) + "," +
                                        fmt(rep.slope) + "," + fmt(rep.intercept) + "\n";
            } else if (cert == "wavelet") {
                if (!connected) throw std::runtime_error("requires a connected graph");
                const auto sd = decompose(g);
                double frame_err = 0.0;
                for (int j = 0; j < n; ++j)
                    frame_err = std::max(
                        frame_err, std::fabs(frame_sum(sd.eigenvalues[j], s.wavelet_l_lo) - 1.0));
                const std::vector<double> edges = {0.0, 1.0, 2.0, 4.0, 8.0};
                const auto prof =
                    localization_profile(g, sd, s.wavelet_level, s.wavelet_l_lo, edges);
                const double near = prof.mean_abs[0];
                const double far = prof.mean_abs[2];
                const double ratio = near > 0.0 ? far / near : 0.0;
                const bool ok = frame_err <= 1e-8;
                emit("wavelet",
                     {{"verdict", ok ? "pass" : "fail"},
                      {"frame_error", frame_err},
                      {"level", s.wavelet_level},
                      {"near_mean", near},
                      {"far_mean", far},
                      {"localization_ratio", ratio},
                      {"bin_counts", prof.counts}},
                     ok, true);
                out.csv_rows["wavelet"] += std::to_string(seed) + "," + std::to_string(n) + "," +
                                           fmt(frame_err) + "," + fmt(ratio) + "\n";
            }
        } catch (const std::exception& e) {
            emit(cert, {{"verdict", "error"}, {"message", e.what()}}, false, false);
        }
    }
    out.jsonl = lines.str();
    return out;
}

}  // namespace

RunResult run_scenario(const Scenario& s, const std::string& out_dir, int workers,
                       const std::vector<std::string>& only) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::set<std::string> enabled(s.certifiers.begin(), s.certifiers.end());
    if (!only.empty()) {
        std::set<std::string> keep;
        for (const std::string& c : only) {
            if (std::find(kAllCertifiers.begin(), kAllCertifiers.end(), c) == kAllCertifiers.end())
                throw ConfigError("--only: unknown certifier '" + c + "'");
            if (enabled.count(c)) keep.insert(c);
        }
        enabled = keep;
    }

    struct Task {
        int n;
        uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int n : s.n_list)
        for (int i = 0; i < s.seeds; ++i) tasks.push_back({n, s.seed_start + i});

    std::vector<SeedOutput> outputs(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            outputs[i] = run_one(s, tasks[i].n, tasks[i].seed, enabled);
        }
    };
    workers = std::max(1, workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    RunResult result;
    std::ofstream report(fs::path(out_dir) / "report.jsonl", std::ios::binary);
    json header;
    header["record"] = "header";
    header["params"] = s.resolved;
    report << header.dump() << "\n";
    std::map<std::string, int> pass_count, total_count;
    bool hard = false;
    for (const auto& o : outputs) {
        report << o.jsonl;
        result.records += static_cast<long long>(std::count(o.jsonl.begin(), o.jsonl.end(), '\n'));
        hard = hard || o.hard_violation;
        for (const auto& [c, v] : o.pass_count) pass_count[c] += v;
        for (const auto& [c, v] : o.total_count) total_count[c] += v;
    }
    for (const auto& [c, total] : total_count) {
        json sum;
        sum["record"] = "summary";
        sum["certifier"] = c;
        sum["pass"] = pass_count[c];
        sum["total"] = total;
        const double frac = total > 0 ? static_cast<double>(pass_count[c]) / total : 0.0;
        sum["pass_fraction"] = frac;
        double floor = -1.0;
        if (c == "distance") floor = 1.0 - s.params.p1;
        if (c == "vd") floor = 1.0 - s.params.p1 - s.params.p2;
        if (c == "concentration") floor = 1.0 - s.params.p2;
        if (floor >= 0.0) sum["probability_floor"] = floor;
        sum["records"] = result.records;
        report << sum.dump() << "\n";
        result.pass_fraction[c] = frac;
    }
    report.close();

    // per-certifier CSVs
    static const std::map<std::string, std::string> csv_headers = {
        {"sandwich", "seed,n,pairs_checked,violations\n"},
        {"distance", "seed,n,violation_fraction,inclusions_pass\n"},
        {"concentration", "seed,n,sup_value,bound,deg_within\n"},
        {"vd", "seed,n,max_ratio,cap,qualifying_balls\n"},
        {"lpi", "seed,n,balls_pass,balls_total,worst_ratio\n"},
        {"hamming", "seed,n,grid_m,l_max,b_max,b_max_bound\n"},
        {"heat", "seed,n,slope,intercept\n"},
        {"wavelet", "seed,n,frame_error,localization_ratio\n"}};
    for (const auto& [cert, head] : csv_headers) {
        if (!enabled.count(cert)) continue;
        std::string body;
        for (const auto& o : outputs) {
            auto it = o.csv_rows.find(cert);
            if (it != o.csv_rows.end()) body += it->second;
        }
        if (body.empty()) continue;
        std::ofstream csv(fs::path(out_dir) / (cert + ".csv"), std::ios::binary);
        csv << head << body;
    }

    // resolved config echo
    {
        std::ofstream cfg(fs::path(out_dir) / "resolved_config.txt", std::ios::binary);
        for (const auto& [k, v] : s.resolved) cfg << k << " = " << v << "\n";
    }

    result.exit_code = hard ? 2 : 0;
    return result;
}

}  // namespace geocert
