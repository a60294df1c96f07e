#include "seqsteer/scenarios.hpp"

#include <stdexcept>

namespace seqsteer {

SteeringTwoByTwo::SteeringTwoByTwo(SettingFamily family1, SettingFamily family2)
    : family1_(std::move(family1)), family2_(std::move(family2)) {}

std::vector<double> SteeringTwoByTwo::correlations_first_pair(const SharedState& state,
                                                              double theta_a1,
                                                              double theta_b1) const {
    // Chain: A1/B1 weak, A2/B2 projective. Alice observers draw from the
    // antipodal families; downstream settings marginalize out exactly.
    const std::vector<SettingFamily> families = {family1_, family2_, antipode(family1_),
                                                 antipode(family2_)};
    ObserverChain chain;
    chain.alice = {{2, theta_a1}, {3, 0.0}};
    chain.bob = {{0, theta_b1}, {1, 0.0}};

    std::vector<double> diag;
    diag.reserve(family1_.size());
    for (std::size_t m = 0; m < family1_.size(); ++m) {
        const BlochVector& u = family1_.direction(m);
        diag.push_back(pair_correlation(state, chain, 0, 0, u.antipode(), u, families));
    }
    return diag;
}

std::vector<double> SteeringTwoByTwo::correlations_second_pair(const SharedState& state,
                                                               double theta_a1,
                                                               double theta_b1) const {
    // The first round measures along one shared direction per run, so the
    // second pair sees the family-averaged post-measurement state.
    const SharedState after(post_first_round_state(state, family1_.directions(), theta_a1, theta_b1));

    const std::vector<SettingFamily> families = {family2_, antipode(family2_)};
    ObserverChain chain;
    chain.alice = {{1, 0.0}};
    chain.bob = {{0, 0.0}};

    std::vector<double> diag;
    diag.reserve(family2_.size());
    for (std::size_t m = 0; m < family2_.size(); ++m) {
        const BlochVector& v = family2_.direction(m);
        diag.push_back(pair_correlation(after, chain, 0, 0, v.antipode(), v, families));
    }
    return diag;
}

double SteeringTwoByTwo::s_first_pair(const SharedState& state, double theta_a1,
                                      double theta_b1) const {
    return steering_quantity(correlations_first_pair(state, theta_a1, theta_b1));
}

double SteeringTwoByTwo::s_second_pair(const SharedState& state, double theta_a1,
                                       double theta_b1) const {
    return steering_quantity(correlations_second_pair(state, theta_a1, theta_b1));
}

ChshChain::ChshChain(std::vector<double> alice_thetas, std::vector<double> bob_thetas)
    : alice_thetas_(std::move(alice_thetas)), bob_thetas_(std::move(bob_thetas)) {
    const ChshSettings s = chsh_settings();
    families_.emplace_back("chsh-alice", std::vector<BlochVector>{s.alice[0], s.alice[1]});
    families_.emplace_back("chsh-bob", std::vector<BlochVector>{s.bob[0], s.bob[1]});
    for (double t : alice_thetas_) chain_.alice.push_back({0, t});
    for (double t : bob_thetas_) chain_.bob.push_back({1, t});
    chain_.validate(families_.size());
}

CorrelationTable ChshChain::correlations(const SharedState& state, std::size_t r,
                                         std::size_t s) const {
    const ChshSettings cs = chsh_settings();
    std::vector<double> values;
    values.reserve(4);
    for (const BlochVector& x : cs.alice) {
        for (const BlochVector& y : cs.bob) {
            values.push_back(pair_correlation(state, chain_, r, s, x, y, families_));
        }
    }
    return CorrelationTable(r, s, 2, 2, std::move(values));
}

double ChshChain::bell_quantity(const SharedState& state, std::size_t r, std::size_t s) const {
    const CorrelationTable c = correlations(state, r, s);
    return chsh_quantity(c.at(0, 0), c.at(0, 1), c.at(1, 0), c.at(1, 1));
}

double ChshChain::analytic_bell_quantity(std::size_t r, std::size_t s) const {
    std::vector<StrengthFactors> fa;
    std::vector<StrengthFactors> fb;
    for (double t : alice_thetas_) fa.push_back(strength_factors(t));
    for (double t : bob_thetas_) fb.push_back(strength_factors(t));
    return analytic_chsh_chain(r + 1, s + 1, fa, fb);
}

}  // namespace seqsteer
