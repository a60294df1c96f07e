#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "seqsteer/engine.hpp"

namespace seqsteer {

// Multinomial counts drawn per setting combination: "gsl_ran_multinomial"
// over a gsl mt19937 stream whose seed is derived from the master seed and
// the combination index with splitmix64, so combinations are independent
// substreams and results do not depend on evaluation order.
inline constexpr std::string_view kSamplerRngName = "gsl-mt19937/splitmix64-substreams";

struct ShotConfig {
    std::uint64_t shots_per_combination;
    std::uint64_t seed;
    ObserverChain chain;
    std::vector<SettingFamily> families;
};

// Counts per (setting combination, outcome string). Combinations enumerate
// the product of per-observer family sizes in row-major order, Alice
// observers first, the last Bob observer varying fastest. Outcome strings
// use the JointDistribution encoding. Counts are stored as doubles so exact
// frequencies can be injected for plug-in tests; sampled tables hold
// integer values.
class CountTable {
public:
    CountTable(std::vector<std::size_t> alice_sizes, std::vector<std::size_t> bob_sizes,
               std::uint64_t shots, std::uint64_t seed, std::string rng_name,
               std::vector<std::vector<double>> counts);

    std::span<const std::size_t> alice_sizes() const { return alice_sizes_; }
    std::span<const std::size_t> bob_sizes() const { return bob_sizes_; }
    std::uint64_t shots() const { return shots_; }
    std::uint64_t seed() const { return seed_; }
    const std::string& rng_name() const { return rng_name_; }

    std::size_t combo_count() const { return counts_.size(); }
    std::size_t outcome_count() const { return counts_.empty() ? 0 : counts_[0].size(); }
    double count(std::size_t combo, std::size_t outcome) const {
        return counts_.at(combo).at(outcome);
    }

    std::size_t combo_index(std::span<const std::size_t> alice_settings,
                            std::span<const std::size_t> bob_settings) const;
    // Inverse of combo_index: per-observer setting indices, Alice then Bob.
    std::vector<std::size_t> combo_settings(std::size_t combo) const;

    bool operator==(const CountTable&) const = default;

private:
    std::vector<std::size_t> alice_sizes_;
    std::vector<std::size_t> bob_sizes_;
    std::uint64_t shots_;
    std::uint64_t seed_;
    std::string rng_name_;
    std::vector<std::vector<double>> counts_;
};

CountTable sample_counts(const ShotConfig& config, const SharedState& state = SharedState::singlet());

// Exact probabilities scaled by the shot count instead of sampled; the
// plug-in estimators reproduce engine values on such a table.
CountTable exact_frequency_table(const ShotConfig& config,
                                 const SharedState& state = SharedState::singlet());

struct EstimatedQuantity {
    double value;
    double std_error;
    std::uint64_t shots_used;
};

// Plug-in steering estimate for rank pair (i, i) on a rank-paired chain
// (equal observer counts per side, matched family sizes). Only combinations
// whose Alice and Bob setting indices agree at every rank contribute,
// mirroring the shared-direction steering protocol; per-combination errors
// use Poissonian counting statistics (variance from counts + 1, which keeps
// single-shot tables finite) propagated through the mean of C estimates.
EstimatedQuantity estimate_steering(const CountTable& counts, std::size_t alice_index,
                                    std::size_t bob_index, const SettingFamily& family);

// Plug-in CHSH estimate for pair (i, j); both observers need 2-setting
// families. Other observers' settings are pooled uniformly (independent
// unbiased inputs).
EstimatedQuantity estimate_chsh(const CountTable& counts, std::size_t alice_index,
                                std::size_t bob_index);

// Columns: one setting index per observer, the outcome string (one +/- per
// observer, Alice first), and the count.
void write_counts_csv(std::ostream& out, const CountTable& table);

}  // namespace seqsteer
