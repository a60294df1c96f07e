#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "seqsteer/csv.hpp"
#include "seqsteer/nonlocality.hpp"
#include "seqsteer/parallel.hpp"
#include "seqsteer/sampler.hpp"
#include "seqsteer/scenarios.hpp"
#include "seqsteer/settings.hpp"
#include "seqsteer/version.hpp"

namespace {

using namespace seqsteer;
using nlohmann::json;

constexpr double kQuarterPi = std::numbers::pi / 4.0;

struct RunConfig {
    std::string scenario;
    std::string family = "xyz";
    std::optional<std::string> family2;
    std::optional<double> theta_a1;
    std::optional<double> theta_b1;
    double grid_start = 0.0;
    double grid_stop = kQuarterPi;
    long grid_count = 21;
    bool equal_strength = false;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::string quantity = "steering";
    std::optional<std::string> out;
    std::vector<double> alice_thetas;
    std::vector<double> bob_thetas;
};

// Fields set on the command line win over the config file.
bool flag_unset(const CLI::App& sub, const std::string& name) {
    const CLI::Option* opt = sub.get_option_no_throw(name);
    return opt == nullptr || opt->count() == 0;
}

void apply_config_file(RunConfig& cfg, const std::string& path, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j = json::parse(in);
    const auto take = [&](const char* key, const char* flag, auto& field) {
        using Field = std::remove_reference_t<decltype(field)>;
        if (j.contains(key) && flag_unset(sub, flag)) {
            if constexpr (std::is_same_v<Field, std::optional<std::string>> ||
                          std::is_same_v<Field, std::optional<double>> ||
                          std::is_same_v<Field, std::optional<std::uint64_t>>) {
                field = j[key].get<typename Field::value_type>();
            } else {
                field = j[key].get<Field>();
            }
        }
    };
    take("scenario", "--scenario", cfg.scenario);
    take("family", "--family", cfg.family);
    take("family2", "--family2", cfg.family2);
    take("theta_a1", "--theta-a1", cfg.theta_a1);
    take("theta_b1", "--theta-b1", cfg.theta_b1);
    take("equal_strength", "--equal-strength", cfg.equal_strength);
    take("shots", "--shots", cfg.shots);
    take("seed", "--seed", cfg.seed);
    take("quantity", "--quantity", cfg.quantity);
    take("out", "--out", cfg.out);
    take("alice_thetas", "--alice-thetas", cfg.alice_thetas);
    take("bob_thetas", "--bob-thetas", cfg.bob_thetas);
    if (j.contains("grid") && flag_unset(sub, "--grid")) {
        const json& g = j["grid"];
        if (g.contains("start")) cfg.grid_start = g["start"].get<double>();
        if (g.contains("stop")) cfg.grid_stop = g["stop"].get<double>();
        if (g.contains("count")) cfg.grid_count = g["count"].get<long>();
    }
}

void parse_grid_spec(const std::string& spec, RunConfig& cfg) {
    double start = 0.0, stop = 0.0;
    long count = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &start, &stop, &count, &tail) != 3) {
        throw std::runtime_error("grid spec must be start:stop:count, got '" + spec + "'");
    }
    cfg.grid_start = start;
    cfg.grid_stop = stop;
    cfg.grid_count = count;
}

std::vector<double> grid_points(const RunConfig& cfg) {
    if (cfg.grid_count < 1) throw std::runtime_error("grid count must be >= 1");
    if (!(cfg.grid_start >= 0.0 && cfg.grid_stop <= kQuarterPi + 1e-15 &&
          cfg.grid_start <= cfg.grid_stop)) {
        throw std::runtime_error("grid must satisfy 0 <= start <= stop <= pi/4");
    }
    std::vector<double> points(static_cast<std::size_t>(cfg.grid_count));
    for (std::size_t i = 0; i < points.size(); ++i) {
        points[i] = points.size() == 1
                        ? cfg.grid_start
                        : cfg.grid_start + (cfg.grid_stop - cfg.grid_start) *
                                               static_cast<double>(i) /
                                               static_cast<double>(points.size() - 1);
    }
    return points;
}

// Output sink: --out path or standard output.
class DataSink {
public:
    explicit DataSink(const std::optional<std::string>& path) {
        if (path) {
            file_.open(*path);
            if (!file_) throw std::runtime_error("cannot open output file '" + *path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_metadata(std::ostream& out, const std::string& detail) {
    out << "# seqsteer " << kVersion << "\n";
    out << "# generated: " << timestamp_utc() << "\n";
    if (!detail.empty()) out << "# " << detail << "\n";
}

int cmd_bound(const std::string& family_name) {
    const SettingFamily fam = family_by_name(family_name);
    const ClassicalBound detail = classical_bound_detail(fam.directions());
    std::string signs;
    for (int s : detail.maximizer.signs) signs += s > 0 ? '+' : '-';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", detail.bound);
    std::cout << "family=" << fam.name() << " n=" << fam.size() << " bound=" << buf
              << " signs=" << signs << "\n";
    return 0;
}

int cmd_window(const std::string& family_name) {
    const SettingFamily fam = family_by_name(family_name);
    const ViolationWindow w = double_violation_window(fam.directions(), fam.bound());
    if (w.empty()) {
        std::cout << "no double-steering window\n";
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "(%.4f, %.4f)", w.g_low, w.g_high);
        std::cout << buf << "\n";
    }
    return 0;
}

struct SweepPoint {
    double theta_a1;
    double theta_b1;
};

std::vector<SweepPoint> sweep_points(const RunConfig& cfg) {
    if (cfg.theta_a1.has_value() != cfg.theta_b1.has_value()) {
        throw std::runtime_error("fix both --theta-a1 and --theta-b1 or neither");
    }
    if (cfg.theta_a1 && cfg.theta_b1) {
        return {{*cfg.theta_a1, *cfg.theta_b1}};
    }
    const std::vector<double> grid = grid_points(cfg);
    std::vector<SweepPoint> points;
    if (cfg.equal_strength) {
        points.reserve(grid.size());
        for (double t : grid) points.push_back({t, t});
    } else {
        points.reserve(grid.size() * grid.size());
        for (double ta : grid)
            for (double tb : grid) points.push_back({ta, tb});
    }
    return points;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.scenario != "steering2x2" && cfg.scenario != "chsh2x2") {
        throw std::runtime_error("sweep requires scenario steering2x2 or chsh2x2");
    }
    const bool steering = cfg.scenario == "steering2x2";
    const SettingFamily fam1 = family_by_name(cfg.family);
    const SettingFamily fam2 = family_by_name(cfg.family2.value_or(cfg.family));
    const std::vector<SweepPoint> points = sweep_points(cfg);
    const SharedState state = SharedState::singlet();

    std::vector<std::string> rows(points.size());
    if (steering) {
        const SteeringTwoByTwo scenario(fam1, fam2);
        parallel_for(points.size(), [&](std::size_t i) {
            const auto [ta, tb] = points[i];
            const StrengthFactors fa = strength_factors(ta);
            const StrengthFactors fb = strength_factors(tb);
            const double s11 = scenario.s_first_pair(state, ta, tb);
            const double s22 = scenario.s_second_pair(state, ta, tb);
            const double o11 = analytic_steering_first_pair(fa.g, fb.g);
            const double o22 = analytic_steering_second_pair(fa.f, fb.f, fam1.directions(),
                                                             fam2.directions());
            const double agreement = std::max(std::abs(s11 - o11), std::abs(s22 - o22));
            std::vector<std::string> cells = {
                csv::format(ta), csv::format(tb), csv::format(fa.g), csv::format(fb.g),
                csv::format(s11), csv::format(s22), csv::format(o11), csv::format(o22),
                csv::format(agreement), csv::format(fam1.bound()), csv::format(fam2.bound()),
                s11 > fam1.bound() ? "1" : "0", s22 > fam2.bound() ? "1" : "0"};
            rows[i] = csv::join_row(cells);
        });
    } else {
        parallel_for(points.size(), [&](std::size_t i) {
            const auto [ta, tb] = points[i];
            const StrengthFactors fa = strength_factors(ta);
            const StrengthFactors fb = strength_factors(tb);
            const ChshChain chain({ta, 0.0}, {tb, 0.0});
            const double i11 = chain.bell_quantity(state, 0, 0);
            const double i22 = chain.bell_quantity(state, 1, 1);
            const double i12 = chain.bell_quantity(state, 0, 1);
            const double i21 = chain.bell_quantity(state, 1, 0);
            const ChshTwoSided o = analytic_chsh_two_sided(fa.f, fa.g, fb.f, fb.g, 1.0, 1.0);
            const double agreement =
                std::max(std::max(std::abs(i11 - o.i11), std::abs(i22 - o.i22)),
                         std::max(std::abs(i12 - o.i12), std::abs(i21 - o.i21)));
            std::vector<std::string> cells = {
                csv::format(ta), csv::format(tb), csv::format(fa.g), csv::format(fb.g),
                csv::format(i11), csv::format(i22), csv::format(i12), csv::format(i21),
                csv::format(o.i11), csv::format(o.i22), csv::format(o.i12), csv::format(o.i21),
                csv::format(agreement), "2",
                i11 > 2.0 ? "1" : "0", i22 > 2.0 ? "1" : "0",
                i12 > 2.0 ? "1" : "0", i21 > 2.0 ? "1" : "0"};
            rows[i] = csv::join_row(cells);
        });
    }

    DataSink sink(cfg.out);
    std::ostream& out = sink.stream();
    write_metadata(out, "scenario: " + cfg.scenario + " family=" + fam1.name() +
                            " family2=" + fam2.name());
    if (steering) {
        out << "theta_a1,theta_b1,g_a1,g_b1,s_pair11,s_pair22,s_pair11_oracle,s_pair22_oracle,"
               "oracle_agreement,bound1,bound2,violated11,violated22\n";
    } else {
        out << "theta_a1,theta_b1,g_a1,g_b1,i_11,i_22,i_12,i_21,i_11_oracle,i_22_oracle,"
               "i_12_oracle,i_21_oracle,oracle_agreement,bound,violated_11,violated_22,"
               "violated_12,violated_21\n";
    }
    for (const std::string& row : rows) out << row << "\n";
    return 0;
}

int cmd_sample(const RunConfig& cfg) {
    if (!cfg.shots || *cfg.shots < 1) throw std::runtime_error("sample requires --shots >= 1");
    if (!cfg.seed) throw std::runtime_error("sample requires --seed");
    if (cfg.quantity != "steering" && cfg.quantity != "chsh") {
        throw std::runtime_error("sample quantity must be steering or chsh");
    }
    const double ta = cfg.theta_a1.value_or(0.34);
    const double tb = cfg.theta_b1.value_or(0.34);

    std::vector<std::pair<std::string, EstimatedQuantity>> estimates;
    if (cfg.quantity == "steering") {
        const SettingFamily fam1 = family_by_name(cfg.family);
        const SettingFamily fam2 = family_by_name(cfg.family2.value_or(cfg.family));
        ShotConfig shot;
        shot.shots_per_combination = *cfg.shots;
        shot.seed = *cfg.seed;
        shot.families = {antipode(fam1), antipode(fam2), fam1, fam2};
        shot.chain.alice = {{0, ta}, {1, 0.0}};
        shot.chain.bob = {{2, tb}, {3, 0.0}};
        const CountTable counts = sample_counts(shot);
        estimates.emplace_back("s_pair11", estimate_steering(counts, 0, 0, fam1));
        estimates.emplace_back("s_pair22", estimate_steering(counts, 1, 1, fam2));
    } else {
        const ChshSettings cs = chsh_settings();
        ShotConfig shot;
        shot.shots_per_combination = *cfg.shots;
        shot.seed = *cfg.seed;
        shot.families = {
            SettingFamily("chsh-alice", {cs.alice[0], cs.alice[1]}),
            SettingFamily("chsh-bob", {cs.bob[0], cs.bob[1]}),
        };
        shot.chain.alice = {{0, ta}, {0, 0.0}};
        shot.chain.bob = {{1, tb}, {1, 0.0}};
        const CountTable counts = sample_counts(shot);
        estimates.emplace_back("i_11", estimate_chsh(counts, 0, 0));
        estimates.emplace_back("i_22", estimate_chsh(counts, 1, 1));
        estimates.emplace_back("i_12", estimate_chsh(counts, 0, 1));
        estimates.emplace_back("i_21", estimate_chsh(counts, 1, 0));
    }

    DataSink sink(cfg.out);
    std::ostream& out = sink.stream();
    write_metadata(out, "rng: " + std::string(kSamplerRngName));
    out << "quantity,value,std_error,shots,seed\n";
    for (const auto& [name, est] : estimates) {
        out << name << ',' << csv::format(est.value) << ',' << csv::format(est.std_error) << ','
            << est.shots_used << ',' << *cfg.seed << "\n";
    }
    return 0;
}

int cmd_chain(const RunConfig& cfg) {
    if (cfg.alice_thetas.empty() || cfg.bob_thetas.empty()) {
        throw std::runtime_error("chain requires --alice-thetas and --bob-thetas");
    }
    const ChshChain chain(cfg.alice_thetas, cfg.bob_thetas);
    DataSink sink(cfg.out);
    std::ostream& out = sink.stream();
    write_metadata(out, "");
    out << "r,s,i_chain,bound,violated\n";
    for (std::size_t r = 0; r < chain.n_alice(); ++r) {
        for (std::size_t s = 0; s < chain.n_bob(); ++s) {
            const double value = chain.analytic_bell_quantity(r, s);
            out << r + 1 << ',' << s + 1 << ',' << csv::format(value) << ",2,"
                << (value > 2.0 ? 1 : 0) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator and analytic cross-checks for nonlocality sharing under "
                 "two-sided sequential weak measurements"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string family_arg;
    std::string grid_spec;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        sub->add_option("--out", cfg.out, "output file (default: standard output)");
    };

    CLI::App* bound = app.add_subcommand("bound", "print the local-hidden-state bound of a family");
    bound->add_option("family", family_arg, "setting family (xyz, ico6, dod10)")->required();

    CLI::App* window =
        app.add_subcommand("window", "print the equal-strength double-steering window of a family");
    window->add_option("family", family_arg, "setting family (xyz, ico6, dod10)")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "sweep measurement strengths, CSV output");
    add_common(sweep);
    sweep->add_option("--scenario", cfg.scenario, "steering2x2 or chsh2x2");
    sweep->add_option("--family", cfg.family, "first-pair setting family");
    sweep->add_option("--family2", cfg.family2, "second-pair setting family (default: --family)");
    sweep->add_option("--grid", grid_spec, "theta grid as start:stop:count");
    sweep->add_flag("--equal-strength", cfg.equal_strength, "sweep the diagonal theta_a1 = theta_b1");
    sweep->add_option("--theta-a1", cfg.theta_a1, "fix theta_a1 (with --theta-b1: single row)");
    sweep->add_option("--theta-b1", cfg.theta_b1, "fix theta_b1");

    CLI::App* sample = app.add_subcommand("sample", "finite-shot Monte-Carlo estimates, CSV output");
    add_common(sample);
    sample->add_option("--quantity", cfg.quantity, "steering or chsh");
    sample->add_option("--family", cfg.family, "first-pair setting family");
    sample->add_option("--family2", cfg.family2, "second-pair setting family (default: --family)");
    sample->add_option("--theta-a1", cfg.theta_a1, "first Alice strength (default 0.34)");
    sample->add_option("--theta-b1", cfg.theta_b1, "first Bob strength (default 0.34)");
    sample->add_option("--shots", cfg.shots, "shots per setting combination");
    sample->add_option("--seed", cfg.seed, "master RNG seed");

    CLI::App* chain = app.add_subcommand("chain", "closed-form Bell quantities for an NxM chain");
    add_common(chain);
    chain->add_option("--alice-thetas", cfg.alice_thetas,
                      "comma-separated strengths, last must be 0")
        ->delimiter(',');
    chain->add_option("--bob-thetas", cfg.bob_thetas, "comma-separated strengths, last must be 0")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (!grid_spec.empty()) parse_grid_spec(grid_spec, cfg);
        if (!config_path.empty()) {
            apply_config_file(cfg, config_path, *app.get_subcommands().front());
        }

        if (bound->parsed()) return cmd_bound(family_arg);
        if (window->parsed()) return cmd_window(family_arg);
        if (sweep->parsed()) {
            if (cfg.scenario.empty()) cfg.scenario = "steering2x2";
            return cmd_sweep(cfg);
        }
        if (sample->parsed()) return cmd_sample(cfg);
        if (chain->parsed()) return cmd_chain(cfg);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
