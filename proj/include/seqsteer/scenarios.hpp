#pragma once

#include <vector>

#include "seqsteer/engine.hpp"
#include "seqsteer/nonlocality.hpp"

namespace seqsteer {

// Two Alices and two Bobs sharing a state; the first pair measures weakly
// along a shared direction drawn from family1 (Alice the antipode, so the
// singlet correlations enter the steering sum positively), the second pair
// projectively along family2.
class SteeringTwoByTwo {
public:
    SteeringTwoByTwo(SettingFamily family1, SettingFamily family2);

    const SettingFamily& family1() const { return family1_; }
    const SettingFamily& family2() const { return family2_; }

    // Matched-setting correlation diagonals, computed through the engine.
    std::vector<double> correlations_first_pair(const SharedState& state, double theta_a1,
                                                double theta_b1) const;
    std::vector<double> correlations_second_pair(const SharedState& state, double theta_a1,
                                                 double theta_b1) const;

    double s_first_pair(const SharedState& state, double theta_a1, double theta_b1) const;
    double s_second_pair(const SharedState& state, double theta_a1, double theta_b1) const;

private:
    SettingFamily family1_;
    SettingFamily family2_;
};

// N Alices and M Bobs performing a Bell test: every Alice draws from the
// CHSH Alice pair, every Bob from the CHSH Bob pair, settings independent
// and unbiased. Strength vectors must end projectively on each side.
class ChshChain {
public:
    ChshChain(std::vector<double> alice_thetas, std::vector<double> bob_thetas);

    std::size_t n_alice() const { return alice_thetas_.size(); }
    std::size_t n_bob() const { return bob_thetas_.size(); }
    const std::vector<double>& alice_thetas() const { return alice_thetas_; }
    const std::vector<double>& bob_thetas() const { return bob_thetas_; }

    // 2x2 correlation table of pair (r, s), 0-based observer indices.
    CorrelationTable correlations(const SharedState& state, std::size_t r, std::size_t s) const;
    double bell_quantity(const SharedState& state, std::size_t r, std::size_t s) const;

    // Closed-form route for the same pair.
    double analytic_bell_quantity(std::size_t r, std::size_t s) const;

private:
    std::vector<double> alice_thetas_;
    std::vector<double> bob_thetas_;
    ObserverChain chain_;
    std::vector<SettingFamily> families_;
};

}  // namespace seqsteer
