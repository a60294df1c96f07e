#include "seqsteer/sampler.hpp"

#include <gsl/gsl_randist.h>
#include <gsl/gsl_rng.h>

#include <cmath>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "seqsteer/csv.hpp"
#include "seqsteer/nonlocality.hpp"
#include "seqsteer/parallel.hpp"

namespace seqsteer {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x9E3779B97F4A7C15ULL));
}

struct RngDeleter {
    void operator()(gsl_rng* r) const { gsl_rng_free(r); }
};

using RngPtr = std::unique_ptr<gsl_rng, RngDeleter>;

std::vector<std::size_t> family_sizes(const std::vector<ObserverSpec>& side,
                                      std::span<const SettingFamily> families) {
    std::vector<std::size_t> sizes;
    sizes.reserve(side.size());
    for (const ObserverSpec& o : side) sizes.push_back(families[o.family_index].size());
    return sizes;
}

// Visits every setting combination in the canonical row-major order.
template <typename Visit>
void for_each_combo(std::span<const std::size_t> sizes, Visit&& visit) {
    std::vector<std::size_t> idx(sizes.size(), 0);
    std::size_t combo = 0;
    for (;;) {
        visit(combo, std::span<const std::size_t>(idx));
        ++combo;
        if (sizes.empty()) return;
        std::size_t k = sizes.size();
        while (k > 0) {
            --k;
            if (++idx[k] < sizes[k]) break;
            idx[k] = 0;
            if (k == 0) return;
        }
    }
}

JointDistribution combo_distribution(const ShotConfig& config, const SharedState& state,
                                     std::span<const std::size_t> idx) {
    const std::size_t n = config.chain.alice.size();
    std::vector<MeasurementSetting> alice;
    std::vector<MeasurementSetting> bob;
    alice.reserve(n);
    bob.reserve(config.chain.bob.size());
    for (std::size_t k = 0; k < n; ++k) {
        const SettingFamily& fam = config.families[config.chain.alice[k].family_index];
        alice.emplace_back(fam.direction(idx[k]), config.chain.alice[k].theta);
    }
    for (std::size_t k = 0; k < config.chain.bob.size(); ++k) {
        const SettingFamily& fam = config.families[config.chain.bob[k].family_index];
        bob.emplace_back(fam.direction(idx[n + k]), config.chain.bob[k].theta);
    }
    return joint_distribution(state, alice, bob);
}

std::vector<std::size_t> all_sizes(const ShotConfig& config) {
    std::vector<std::size_t> sizes = family_sizes(config.chain.alice, config.families);
    const std::vector<std::size_t> bob = family_sizes(config.chain.bob, config.families);
    sizes.insert(sizes.end(), bob.begin(), bob.end());
    return sizes;
}

void validate_config(const ShotConfig& config) {
    if (config.shots_per_combination < 1) {
        throw std::invalid_argument("ShotConfig: shots_per_combination must be >= 1");
    }
    config.chain.validate(config.families.size());
}

std::vector<std::size_t> decode_combo(std::span<const std::size_t> sizes, std::size_t combo) {
    std::vector<std::size_t> idx(sizes.size());
    for (std::size_t k = sizes.size(); k-- > 0;) {
        idx[k] = combo % sizes[k];
        combo /= sizes[k];
    }
    return idx;
}

// Combinations are independent substreams, so they can be filled in
// parallel; the result depends only on (seed, combination index).
template <typename FillCounts>
CountTable build_table(const ShotConfig& config, const SharedState& state, FillCounts&& fill) {
    validate_config(config);
    const std::vector<std::size_t> sizes = all_sizes(config);
    const std::size_t outcomes =
        std::size_t{1} << (config.chain.alice.size() + config.chain.bob.size());
    std::size_t combos = 1;
    for (std::size_t s : sizes) combos *= s;

    std::vector<std::vector<double>> counts(combos);
    parallel_for(combos, [&](std::size_t combo) {
        const std::vector<std::size_t> idx = decode_combo(sizes, combo);
        const JointDistribution jd = combo_distribution(config, state, idx);
        std::vector<double> row(outcomes);
        fill(combo, jd, row);
        counts[combo] = std::move(row);
    });

    return CountTable(family_sizes(config.chain.alice, config.families),
                      family_sizes(config.chain.bob, config.families),
                      config.shots_per_combination, config.seed, std::string(kSamplerRngName),
                      std::move(counts));
}

// Per-combination correlation estimate with Poissonian error propagation.
struct CorrelationEstimate {
    double value;
    double variance;
};

CorrelationEstimate combo_correlation(const CountTable& counts, std::size_t combo,
                                      std::size_t sign_bit_a, std::size_t sign_bit_b) {
    const std::size_t outcomes = counts.outcome_count();
    double total = 0.0;
    double signed_sum = 0.0;
    for (std::size_t o = 0; o < outcomes; ++o) {
        const double c = counts.count(combo, o);
        total += c;
        signed_sum += JointDistribution::outcome_sign(o, sign_bit_a) *
                      JointDistribution::outcome_sign(o, sign_bit_b) * c;
    }
    if (total <= 0.0) throw std::logic_error("estimate: empty combination");
    const double value = signed_sum / total;
    double variance = 0.0;
    for (std::size_t o = 0; o < outcomes; ++o) {
        const double s = JointDistribution::outcome_sign(o, sign_bit_a) *
                         JointDistribution::outcome_sign(o, sign_bit_b);
        const double dev = s - value;
        variance += dev * dev * (counts.count(combo, o) + 1.0);
    }
    return {value, variance / (total * total)};
}

}  // namespace

CountTable::CountTable(std::vector<std::size_t> alice_sizes, std::vector<std::size_t> bob_sizes,
                       std::uint64_t shots, std::uint64_t seed, std::string rng_name,
                       std::vector<std::vector<double>> counts)
    : alice_sizes_(std::move(alice_sizes)), bob_sizes_(std::move(bob_sizes)), shots_(shots),
      seed_(seed), rng_name_(std::move(rng_name)), counts_(std::move(counts)) {
    std::size_t combos = 1;
    for (std::size_t s : alice_sizes_) combos *= s;
    for (std::size_t s : bob_sizes_) combos *= s;
    if (counts_.size() != combos) throw std::invalid_argument("CountTable: wrong combination count");
    const std::size_t outcomes = std::size_t{1} << (alice_sizes_.size() + bob_sizes_.size());
    for (const auto& row : counts_) {
        if (row.size() != outcomes) throw std::invalid_argument("CountTable: wrong outcome count");
    }
}

std::size_t CountTable::combo_index(std::span<const std::size_t> alice_settings,
                                    std::span<const std::size_t> bob_settings) const {
    if (alice_settings.size() != alice_sizes_.size() || bob_settings.size() != bob_sizes_.size()) {
        throw std::invalid_argument("CountTable::combo_index: wrong observer count");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < alice_settings.size(); ++k) {
        if (alice_settings[k] >= alice_sizes_[k]) throw std::out_of_range("setting index");
        index = index * alice_sizes_[k] + alice_settings[k];
    }
    for (std::size_t k = 0; k < bob_settings.size(); ++k) {
        if (bob_settings[k] >= bob_sizes_[k]) throw std::out_of_range("setting index");
        index = index * bob_sizes_[k] + bob_settings[k];
    }
    return index;
}

std::vector<std::size_t> CountTable::combo_settings(std::size_t combo) const {
    std::vector<std::size_t> sizes(alice_sizes_.begin(), alice_sizes_.end());
    sizes.insert(sizes.end(), bob_sizes_.begin(), bob_sizes_.end());
    std::vector<std::size_t> idx(sizes.size());
    for (std::size_t k = sizes.size(); k-- > 0;) {
        idx[k] = combo % sizes[k];
        combo /= sizes[k];
    }
    return idx;
}

CountTable sample_counts(const ShotConfig& config, const SharedState& state) {
    return build_table(config, state,
                       [&](std::size_t combo, const JointDistribution& jd, std::vector<double>& row) {
                           std::vector<double> p(jd.size());
                           for (std::size_t o = 0; o < jd.size(); ++o) p[o] = jd.probability(o);
                           std::vector<unsigned int> n(jd.size());
                           RngPtr rng(gsl_rng_alloc(gsl_rng_mt19937));
                           gsl_rng_set(rng.get(), substream_seed(config.seed, combo));
                           gsl_ran_multinomial(rng.get(), static_cast<std::size_t>(p.size()),
                                               static_cast<unsigned int>(config.shots_per_combination),
                                               p.data(), n.data());
                           for (std::size_t o = 0; o < jd.size(); ++o) row[o] = n[o];
                       });
}

CountTable exact_frequency_table(const ShotConfig& config, const SharedState& state) {
    const double shots = static_cast<double>(config.shots_per_combination);
    return build_table(config, state,
                       [&](std::size_t, const JointDistribution& jd, std::vector<double>& row) {
                           for (std::size_t o = 0; o < jd.size(); ++o) {
                               row[o] = shots * jd.probability(o);
                           }
                       });
}

EstimatedQuantity estimate_steering(const CountTable& counts, std::size_t alice_index,
                                    std::size_t bob_index, const SettingFamily& family) {
    const auto a_sizes = counts.alice_sizes();
    const auto b_sizes = counts.bob_sizes();
    if (a_sizes.size() != b_sizes.size()) {
        throw std::invalid_argument("estimate_steering: chain is not rank-paired");
    }
    if (alice_index != bob_index || alice_index >= a_sizes.size()) {
        throw std::invalid_argument("estimate_steering: steering pairs observers of equal rank");
    }
    for (std::size_t t = 0; t < a_sizes.size(); ++t) {
        if (a_sizes[t] != b_sizes[t]) {
            throw std::invalid_argument("estimate_steering: family sizes differ across the pair");
        }
    }
    const std::size_t rank = alice_index;
    const std::size_t n = a_sizes[rank];
    if (family.size() != n) {
        throw std::invalid_argument("estimate_steering: family size does not match the count table");
    }

    // Pool the combinations where every rank has matched setting indices;
    // those are the coincidences of the shared-direction protocol.
    double c_sum = 0.0;
    double var_sum = 0.0;
    double shots_used = 0.0;
    std::vector<std::size_t> matched(a_sizes.size());
    std::vector<std::size_t> other_ranks;
    std::vector<std::size_t> other_sizes;
    std::size_t pool = 1;  // matched assignments of the other ranks
    for (std::size_t t = 0; t < a_sizes.size(); ++t) {
        if (t == rank) continue;
        other_ranks.push_back(t);
        other_sizes.push_back(a_sizes[t]);
        pool *= a_sizes[t];
    }
    for (std::size_t m = 0; m < n; ++m) {
        double c_m = 0.0;
        double var_m = 0.0;

        for_each_combo(other_sizes, [&](std::size_t, std::span<const std::size_t> other_idx) {
            matched[rank] = m;
            for (std::size_t p = 0; p < other_ranks.size(); ++p) matched[other_ranks[p]] = other_idx[p];
            const std::size_t combo = counts.combo_index(matched, matched);
            const CorrelationEstimate est =
                combo_correlation(counts, combo, rank, a_sizes.size() + rank);
            c_m += est.value;
            var_m += est.variance;
            shots_used += static_cast<double>(counts.shots());
        });
        c_m /= static_cast<double>(pool);
        var_m /= static_cast<double>(pool) * static_cast<double>(pool);
        c_sum += c_m;
        var_sum += var_m;
    }
    const double nd = static_cast<double>(n);
    return {std::abs(c_sum) / nd, std::sqrt(var_sum) / nd,
            static_cast<std::uint64_t>(shots_used)};
}

EstimatedQuantity estimate_chsh(const CountTable& counts, std::size_t alice_index,
                                std::size_t bob_index) {
    const auto a_sizes = counts.alice_sizes();
    const auto b_sizes = counts.bob_sizes();
    if (alice_index >= a_sizes.size() || bob_index >= b_sizes.size()) {
        throw std::out_of_range("estimate_chsh: observer index out of range");
    }
    if (a_sizes[alice_index] != 2 || b_sizes[bob_index] != 2) {
        throw std::invalid_argument("estimate_chsh: the pair needs 2-setting families");
    }

    double c[2][2] = {};
    double var[2][2] = {};
    std::size_t shots_pooled = 0;
    std::vector<std::size_t> idx(a_sizes.size() + b_sizes.size());
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            // Pool over all other observers' setting combinations.
            std::vector<std::size_t> other_sizes;
            std::vector<std::size_t> slots;  // positions in idx
            for (std::size_t t = 0; t < a_sizes.size(); ++t) {
                if (t != alice_index) {
                    other_sizes.push_back(a_sizes[t]);
                    slots.push_back(t);
                }
            }
            for (std::size_t t = 0; t < b_sizes.size(); ++t) {
                if (t != bob_index) {
                    other_sizes.push_back(b_sizes[t]);
                    slots.push_back(a_sizes.size() + t);
                }
            }
            double pooled = 0.0;
            double pooled_var = 0.0;
            std::size_t pool = 0;
            for_each_combo(other_sizes, [&](std::size_t, std::span<const std::size_t> other_idx) {
                idx[alice_index] = x;
                idx[a_sizes.size() + bob_index] = y;
                for (std::size_t p = 0; p < slots.size(); ++p) idx[slots[p]] = other_idx[p];
                const std::size_t combo = counts.combo_index(
                    std::span<const std::size_t>(idx).first(a_sizes.size()),
                    std::span<const std::size_t>(idx).subspan(a_sizes.size()));
                const CorrelationEstimate est =
                    combo_correlation(counts, combo, alice_index, a_sizes.size() + bob_index);
                pooled += est.value;
                pooled_var += est.variance;
                ++pool;
            });
            c[x][y] = pooled / static_cast<double>(pool);
            var[x][y] = pooled_var / (static_cast<double>(pool) * static_cast<double>(pool));
            shots_pooled = pool;
        }
    }

    const double value = chsh_quantity(c[0][0], c[0][1], c[1][0], c[1][1]);
    const double std_error = std::sqrt(var[0][0] + var[0][1] + var[1][0] + var[1][1]);
    return {value, std_error, 4 * shots_pooled * counts.shots()};
}

void write_counts_csv(std::ostream& out, const CountTable& table) {
    const std::size_t n_alice = table.alice_sizes().size();
    const std::size_t n_bob = table.bob_sizes().size();
    out << "# rng: " << table.rng_name() << "\n";
    out << "# seed: " << table.seed() << "\n";
    out << "# shots-per-combination: " << table.shots() << "\n";
    for (std::size_t k = 0; k < n_alice; ++k) out << "a" << k + 1 << "_setting,";
    for (std::size_t k = 0; k < n_bob; ++k) out << "b" << k + 1 << "_setting,";
    out << "outcomes,count\n";
    for (std::size_t combo = 0; combo < table.combo_count(); ++combo) {
        const std::vector<std::size_t> idx = table.combo_settings(combo);
        for (std::size_t o = 0; o < table.outcome_count(); ++o) {
            for (std::size_t k = 0; k < idx.size(); ++k) out << idx[k] << ',';
            std::string outcome;
            for (std::size_t k = 0; k < n_alice + n_bob; ++k) {
                outcome += JointDistribution::outcome_sign(o, k) > 0 ? '+' : '-';
            }
            out << outcome << ',' << csv::format(table.count(combo, o)) << '\n';
        }
    }
}

}  // namespace seqsteer
