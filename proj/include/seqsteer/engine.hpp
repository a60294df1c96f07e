#pragma once

#include <span>
#include <vector>

#include "seqsteer/linalg.hpp"
#include "seqsteer/measurement.hpp"
#include "seqsteer/settings.hpp"

namespace seqsteer {

// Two-qubit state shared between the Alice and Bob chains. Validated at
// construction: Hermitian, unit trace, positive semidefinite.
class SharedState {
public:
    explicit SharedState(ComplexMatrix rho);

    static SharedState singlet();

    const ComplexMatrix& rho() const { return rho_; }

private:
    ComplexMatrix rho_;
};

// One observer in a chain: which family it draws settings from, and its
// measurement strength. The last observer per side must be projective.
struct ObserverSpec {
    std::size_t family_index;
    double theta;
};

struct ObserverChain {
    std::vector<ObserverSpec> alice;
    std::vector<ObserverSpec> bob;

    void validate(std::size_t family_count) const;
};

// Joint outcome distribution for fixed settings. Outcome strings are encoded
// little-endian by observer index, Alice observers in bits 0..N-1 and Bob
// observers in bits N..N+M-1; bit value 0 means outcome +1, bit 1 means -1.
class JointDistribution {
public:
    JointDistribution(std::size_t n_alice, std::size_t n_bob, std::vector<double> raw);

    std::size_t n_alice() const { return n_alice_; }
    std::size_t n_bob() const { return n_bob_; }
    std::size_t size() const { return raw_.size(); }

    // Clipped to 0; raw values may carry ~-1e-16 floating-point noise.
    double probability(std::size_t index) const;
    double raw(std::size_t index) const { return raw_.at(index); }
    double total() const;

    static int outcome_sign(std::size_t index, std::size_t bit) {
        return (index >> bit) & 1 ? -1 : +1;
    }
    static std::size_t index_of(std::span<const int> alice_outcomes,
                                std::span<const int> bob_outcomes);

private:
    std::size_t n_alice_;
    std::size_t n_bob_;
    std::vector<double> raw_;
};

// P(a_1..a_N, b_1..b_M) = Tr[(H_A (x) H_B) rho] for every outcome string.
// The last setting on each side must be projective (theta = 0).
JointDistribution joint_distribution(const SharedState& state,
                                     std::span<const MeasurementSetting> alice_settings,
                                     std::span<const MeasurementSetting> bob_settings);

// Correlation values of one observer pair over a grid of their settings.
struct CorrelationTable {
    std::size_t alice_index;
    std::size_t bob_index;
    std::size_t n_x;
    std::size_t n_y;
    std::vector<double> values;  // row-major [x][y], each in [-1, 1]

    CorrelationTable(std::size_t alice_index, std::size_t bob_index, std::size_t n_x,
                     std::size_t n_y, std::vector<double> values);

    double at(std::size_t x, std::size_t y) const { return values.at(x * n_y + y); }
    std::vector<double> diagonal() const;
};

// C(x_i, y_j) = sum_{outcomes} a_i b_j P, averaged uniformly and
// independently over every other observer's setting family. Observer i
// measures along xi and observer j along yj with their chain strengths.
double pair_correlation(const SharedState& state, const ObserverChain& chain, std::size_t i,
                        std::size_t j, const BlochVector& xi, const BlochVector& yj,
                        std::span<const SettingFamily> families);

// The Hermitian observable W with Tr[W rho] = pair_correlation(rho) for
// every state; spectrum within [-1, 1].
ComplexMatrix correlation_observable(const ObserverChain& chain, std::size_t i, std::size_t j,
                                     const BlochVector& xi, const BlochVector& yj,
                                     std::span<const SettingFamily> families);

// State after the first observer pair measured nonselectively along a shared
// direction drawn uniformly from the family, Bob along +k and Alice along -k:
//   (1/n) sum_k sum_{o_a, o_b} (M_a (x) M_b) rho (M_a (x) M_b)^dag.
ComplexMatrix post_first_round_state(const SharedState& state,
                                     std::span<const BlochVector> family, double theta_a,
                                     double theta_b);

}  // namespace seqsteer
