// Acceptance suite: one check per release criterion, each printed as a
// single [PASS]/[FAIL] line. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "seqsteer/nonlocality.hpp"
#include "seqsteer/parallel.hpp"
#include "seqsteer/sampler.hpp"
#include "seqsteer/scenarios.hpp"
#include "seqsteer/settings.hpp"

using namespace seqsteer;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<double> theta_grid(std::size_t count) {
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = kQuarterPi * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return grid;
}

// ---- criterion 1: classical bounds ---------------------------------------

Check criterion_bounds() {
    Check c;
    const double b3 = classical_bound(family_xyz().directions());
    const double b6 = classical_bound(family_icosahedron().directions());
    const double b10 = classical_bound(family_dodecahedron().directions());
    c.require(std::abs(b3 - 1.0 / std::sqrt(3.0)) <= 1e-12, "B3 != 1/sqrt(3)");
    c.require(std::abs(b6 - 0.5393) <= 5e-4, "B6 outside 0.5393 +- 5e-4");
    c.require(std::abs(b10 - 0.5236) <= 5e-4, "B10 outside 0.5236 +- 5e-4");
    c.note("B3=" + fmt(b3) + " B6=" + fmt(b6) + " B10=" + fmt(b10));
    return c;
}

// ---- criterion 2: steering oracle/engine equivalence ----------------------

Check criterion_steering_grid() {
    Check c;
    const SharedState singlet = SharedState::singlet();
    const std::vector<double> grid = theta_grid(21);

    const std::vector<std::pair<SettingFamily, SettingFamily>> pairs = {
        {family_xyz(), family_xyz()},
        {family_icosahedron(), family_icosahedron()},
        {family_icosahedron(), family_dodecahedron()},
    };

    double worst11 = 0.0;
    double worst22 = 0.0;
    for (const auto& [fam1, fam2] : pairs) {
        const SteeringTwoByTwo scenario(fam1, fam2);
        std::vector<double> d11(grid.size() * grid.size());
        std::vector<double> d22(grid.size() * grid.size());
        parallel_for(grid.size() * grid.size(), [&](std::size_t idx) {
            const double ta = grid[idx / grid.size()];
            const double tb = grid[idx % grid.size()];
            const StrengthFactors fa = strength_factors(ta);
            const StrengthFactors fb = strength_factors(tb);
            d11[idx] = std::abs(scenario.s_first_pair(singlet, ta, tb) -
                                analytic_steering_first_pair(fa.g, fb.g));
            d22[idx] = std::abs(scenario.s_second_pair(singlet, ta, tb) -
                                analytic_steering_second_pair(fa.f, fb.f, fam1.directions(),
                                                              fam2.directions()));
        });
        for (double d : d11) worst11 = std::max(worst11, d);
        for (double d : d22) worst22 = std::max(worst22, d);
    }
    c.require(worst11 <= 1e-10, "first-pair disagreement above 1e-10");
    c.require(worst22 <= 1e-10, "second-pair disagreement above 1e-10");
    c.note("max|S11 diff|=" + fmt(worst11) + " max|S22 diff|=" + fmt(worst22));
    return c;
}

// ---- criterion 3: double-steering window ----------------------------------

Check criterion_window() {
    Check c;
    const SettingFamily fam = family_xyz();
    const ViolationWindow w = double_violation_window(fam.directions(), fam.bound());
    c.require(!w.empty(), "window is empty");
    c.require(std::abs(w.g_low - 0.7598) <= 1e-3, "g_low outside 0.7598 +- 1e-3");
    c.require(std::abs(w.g_high - 0.7962) <= 1e-3, "g_high outside 0.7962 +- 1e-3");
    c.note("window=(" + fmt(w.g_low) + ", " + fmt(w.g_high) + ")");
    return c;
}

// ---- criterion 4: simultaneous double steering at theta = 0.34 -------------

Check criterion_curves() {
    Check c;
    const SharedState singlet = SharedState::singlet();
    const double g = std::cos(0.68);
    const SettingFamily ico = family_icosahedron();
    const SettingFamily dod = family_dodecahedron();

    const SteeringTwoByTwo six(ico, ico);
    const double s11 = six.s_first_pair(singlet, 0.34, 0.34);
    const double s22_6 = six.s_second_pair(singlet, 0.34, 0.34);
    const double s22_10 = SteeringTwoByTwo(ico, dod).s_second_pair(singlet, 0.34, 0.34);

    c.require(std::abs(s11 - g * g) <= 1e-12, "S6 first pair != G^2");
    c.require(s11 > ico.bound() && s11 > 0.5393 - 5e-4, "S6 first pair does not violate");
    c.require(s22_6 > ico.bound() && s22_6 > 0.5393 - 5e-4, "S6 second pair does not violate");
    c.require(s22_10 > dod.bound() && s22_10 > 0.5236 - 5e-4, "S10 second pair does not violate");
    c.note("S6_11=" + fmt(s11) + " S6_22=" + fmt(s22_6) + " S10_22=" + fmt(s22_10));
    return c;
}

// ---- criterion 5: chsh equivalence and no double violation -----------------

Check criterion_chsh() {
    Check c;
    const SharedState singlet = SharedState::singlet();

    const double bare = ChshChain({0.0}, {0.0}).bell_quantity(singlet, 0, 0);
    c.require(std::abs(bare - 2.0 * std::numbers::sqrt2) <= 1e-12,
              "bare singlet quantity is not 2*sqrt(2)");

    const std::vector<double> grid = theta_grid(21);
    std::vector<double> diffs(grid.size() * grid.size());
    parallel_for(diffs.size(), [&](std::size_t idx) {
        const double ta = grid[idx / grid.size()];
        const double tb = grid[idx % grid.size()];
        const StrengthFactors fa = strength_factors(ta);
        const StrengthFactors fb = strength_factors(tb);
        const ChshChain chain({ta, 0.0}, {tb, 0.0});
        const ChshTwoSided o = analytic_chsh_two_sided(fa.f, fa.g, fb.f, fb.g, 1.0, 1.0);
        double d = std::abs(chain.bell_quantity(singlet, 0, 0) - o.i11);
        d = std::max(d, std::abs(chain.bell_quantity(singlet, 1, 1) - o.i22));
        d = std::max(d, std::abs(chain.bell_quantity(singlet, 0, 1) - o.i12));
        d = std::max(d, std::abs(chain.bell_quantity(singlet, 1, 0) - o.i21));
        diffs[idx] = d;
    });
    double worst = 0.0;
    for (double d : diffs) worst = std::max(worst, d);
    c.require(worst <= 1e-10, "engine/closed-form disagreement above 1e-10");

    c.require(no_double_chsh_equal_strength(theta_grid(1001)),
              "an equal-strength theta violates both pairs");
    c.note("bare=" + fmt(bare) + " max|I diff|=" + fmt(worst));
    return c;
}

// ---- criterion 6: general chain formula ------------------------------------

Check criterion_chain_formula() {
    Check c;
    const SharedState singlet = SharedState::singlet();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> theta(0.0, kQuarterPi);

    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const std::vector<double> tas = {theta(rng), theta(rng), 0.0};
        const std::vector<double> tbs = {theta(rng), theta(rng), 0.0};
        const ChshChain chain(tas, tbs);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t s = 0; s < 3; ++s) {
                worst = std::max(worst, std::abs(chain.bell_quantity(singlet, r, s) -
                                                 chain.analytic_bell_quantity(r, s)));
            }
        }
    }
    c.require(worst <= 1e-10, "N=M=3 disagreement above 1e-10");

    // N = 1 with a projective Alice reduces to the one-sided expression.
    std::vector<StrengthFactors> alice = {strength_factors(0.0)};
    std::vector<StrengthFactors> bob;
    for (double t : {0.24, 0.11, 0.0}) bob.push_back(strength_factors(t));
    double worst_one_sided = 0.0;
    for (std::size_t s = 1; s <= bob.size(); ++s) {
        double one_sided =
            2.0 * std::numbers::sqrt2 / std::pow(2.0, double(s - 1)) * bob[s - 1].g;
        for (std::size_t t = 0; t + 1 < s; ++t) one_sided *= 1.0 + bob[t].f;
        worst_one_sided =
            std::max(worst_one_sided, std::abs(analytic_chsh_chain(1, s, alice, bob) - one_sided));
    }
    c.require(worst_one_sided <= 1e-12, "N=1 does not reduce to the one-sided formula");
    c.note("max|engine-formula|=" + fmt(worst) + " over 20 strength vectors");
    return c;
}

// ---- criterion 7: probability hygiene ---------------------------------------

Check criterion_probability_hygiene() {
    Check c;
    const SharedState singlet = SharedState::singlet();
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> theta(0.0, kQuarterPi);

    const auto random_unit = [&] {
        for (;;) {
            const double x = gauss(rng), y = gauss(rng), z = gauss(rng);
            const double n = std::sqrt(x * x + y * y + z * z);
            if (n > 1e-6) return BlochVector(x / n, y / n, z / n);
        }
    };
    const auto random_side = [&](std::size_t len) {
        std::vector<MeasurementSetting> side;
        for (std::size_t k = 0; k < len; ++k) {
            side.emplace_back(random_unit(), k + 1 == len ? 0.0 : theta(rng));
        }
        return side;
    };

    double worst_total = 0.0;
    double worst_negative = 0.0;
    double worst_marginal = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const auto alice = random_side(1 + rng() % 3);
        const auto bob = random_side(1 + rng() % 3);
        const JointDistribution jd = joint_distribution(singlet, alice, bob);
        worst_total = std::max(worst_total, std::abs(jd.total() - 1.0));
        for (std::size_t i = 0; i < jd.size(); ++i) {
            worst_negative = std::max(worst_negative, -jd.raw(i));
        }

        // marginal of the first Alice with every downstream setting replaced
        auto alice2 = alice;
        auto bob2 = bob;
        for (std::size_t k = 1; k < alice2.size(); ++k) {
            alice2[k] = MeasurementSetting(random_unit(), alice2[k].theta);
        }
        for (std::size_t k = 0; k < bob2.size(); ++k) {
            bob2[k] = MeasurementSetting(random_unit(), bob2[k].theta);
        }
        const JointDistribution jd2 = joint_distribution(singlet, alice2, bob2);
        double p1 = 0.0, p2 = 0.0;
        for (std::size_t i = 0; i < jd.size(); ++i) {
            if (JointDistribution::outcome_sign(i, 0) == +1) p1 += jd.probability(i);
        }
        for (std::size_t i = 0; i < jd2.size(); ++i) {
            if (JointDistribution::outcome_sign(i, 0) == +1) p2 += jd2.probability(i);
        }
        worst_marginal = std::max(worst_marginal, std::abs(p1 - p2));
    }
    c.require(worst_total <= 1e-12, "joint distribution drifts from total 1");
    c.require(worst_negative <= 1e-15, "raw probability below -1e-15");
    c.require(worst_marginal <= 1e-12, "no-signalling marginal drift above 1e-12");
    c.note("max|sum-1|=" + fmt(worst_total) + " max(-p)=" + fmt(worst_negative) +
           " max marginal drift=" + fmt(worst_marginal));
    return c;
}

// ---- criterion 8: sampler statistics ----------------------------------------

Check criterion_sampler() {
    Check c;
    const SharedState singlet = SharedState::singlet();
    const SettingFamily ico = family_icosahedron();
    const SteeringTwoByTwo scenario(ico, ico);
    const double engine11 = scenario.s_first_pair(singlet, 0.34, 0.34);
    const double engine22 = scenario.s_second_pair(singlet, 0.34, 0.34);
    const double engine_chsh = 2.0 * std::numbers::sqrt2;

    const auto steering_cfg = [&](std::uint64_t shots, std::uint64_t seed) {
        ShotConfig cfg;
        cfg.shots_per_combination = shots;
        cfg.seed = seed;
        cfg.families = {antipode(ico), antipode(ico), ico, ico};
        cfg.chain.alice = {{0, 0.34}, {1, 0.0}};
        cfg.chain.bob = {{2, 0.34}, {3, 0.0}};
        return cfg;
    };
    const auto chsh_cfg = [&](std::uint64_t shots, std::uint64_t seed) {
        const ChshSettings cs = chsh_settings();
        ShotConfig cfg;
        cfg.shots_per_combination = shots;
        cfg.seed = seed;
        cfg.families = {SettingFamily("chsh-alice", {cs.alice[0], cs.alice[1]}),
                        SettingFamily("chsh-bob", {cs.bob[0], cs.bob[1]})};
        cfg.chain.alice = {{0, 0.0}};
        cfg.chain.bob = {{1, 0.0}};
        return cfg;
    };

    int bad_pulls = 0;
    int bad_ratios = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const CountTable big = sample_counts(steering_cfg(1000000, seed));
        const EstimatedQuantity s11 = estimate_steering(big, 0, 0, ico);
        const EstimatedQuantity s22 = estimate_steering(big, 1, 1, ico);
        if (std::abs(s11.value - engine11) > 4.0 * s11.std_error) ++bad_pulls;
        if (std::abs(s22.value - engine22) > 4.0 * s22.std_error) ++bad_pulls;

        const CountTable big_chsh = sample_counts(chsh_cfg(1000000, seed));
        const EstimatedQuantity i_big = estimate_chsh(big_chsh, 0, 0);
        if (std::abs(i_big.value - engine_chsh) > 4.0 * i_big.std_error) ++bad_pulls;

        const CountTable small = sample_counts(steering_cfg(10000, seed));
        const double ratio = estimate_steering(small, 0, 0, ico).std_error / s11.std_error;
        if (!(ratio >= 6.7 && ratio <= 15.0)) ++bad_ratios;

        const CountTable small_chsh = sample_counts(chsh_cfg(10000, seed));
        const double chsh_ratio =
            estimate_chsh(small_chsh, 0, 0).std_error / i_big.std_error;
        if (!(chsh_ratio >= 6.7 && chsh_ratio <= 15.0)) ++bad_ratios;
    }
    c.require(bad_pulls == 0, std::to_string(bad_pulls) + " estimates beyond 4 standard errors");
    c.require(bad_ratios == 0, std::to_string(bad_ratios) + " error ratios outside [6.7, 15]");
    c.note("20 seeds at 1e6 shots, engine S6=(" + fmt(engine11) + ", " + fmt(engine22) + ")");
    return c;
}

// ---- criterion 9: determinism ------------------------------------------------

Check criterion_determinism() {
    Check c;
    const SettingFamily xyz = family_xyz();
    ShotConfig cfg;
    cfg.shots_per_combination = 10000;
    cfg.seed = 20240815;
    cfg.families = {antipode(xyz), antipode(xyz), xyz, xyz};
    cfg.chain.alice = {{0, 0.3}, {1, 0.0}};
    cfg.chain.bob = {{2, 0.3}, {3, 0.0}};

    const CountTable t1 = sample_counts(cfg);
    const CountTable t2 = sample_counts(cfg);
    c.require(t1 == t2, "identical seeds give different count tables");

    std::stringstream csv1, csv2;
    write_counts_csv(csv1, t1);
    write_counts_csv(csv2, t2);
    c.require(csv1.str() == csv2.str(), "identical seeds give different CSV bytes");

    cfg.seed += 1;
    c.require(!(sample_counts(cfg) == t1), "distinct seeds give identical tables");
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Check()> run;
        double time_limit_s;  // 0 = no limit
    };

    const std::vector<Criterion> criteria = {
        {1, "classical bounds", criterion_bounds, 1.0},
        {2, "steering oracle/engine equivalence", criterion_steering_grid, 30.0},
        {3, "double-steering window", criterion_window, 0.0},
        {4, "simultaneous double steering at theta=0.34", criterion_curves, 0.0},
        {5, "chsh equivalence and exclusion", criterion_chsh, 0.0},
        {6, "general chain formula", criterion_chain_formula, 0.0},
        {7, "probability hygiene", criterion_probability_hygiene, 0.0},
        {8, "sampler statistics", criterion_sampler, 0.0},
        {9, "determinism", criterion_determinism, 0.0},
    };

    int failures = 0;
    for (const Criterion& crit : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = crit.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (crit.time_limit_s > 0.0 && elapsed > crit.time_limit_s) {
            result.ok = false;
            result.detail += (result.detail.empty() ? "" : "; ") + std::string("over the ") +
                             fmt(crit.time_limit_s) + "s budget";
        }
        if (!result.ok) ++failures;
        std::printf("[%s] criterion %d: %s (%s) [%.2fs]\n", result.ok ? "PASS" : "FAIL", crit.id,
                    crit.name, result.detail.c_str(), elapsed);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
    return failures == 0 ? 0 : 1;
}
