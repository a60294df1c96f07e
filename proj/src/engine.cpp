#include "seqsteer/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace seqsteer {

namespace {

std::vector<ComplexMatrix> all_side_operators(std::span<const MeasurementSetting> settings) {
    const std::size_t n = settings.size();
    std::vector<ComplexMatrix> out;
    out.reserve(std::size_t{1} << n);
    std::vector<int> outcomes(n);
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        for (std::size_t k = 0; k < n; ++k) outcomes[k] = JointDistribution::outcome_sign(bits, k);
        out.push_back(side_chain_operator(settings, outcomes));
    }
    return out;
}

void require_projective_last(std::span<const MeasurementSetting> settings, const char* side) {
    if (settings.empty()) {
        throw std::invalid_argument(std::string(side) + " side has no observers");
    }
    if (settings.back().theta != 0.0) {
        throw std::invalid_argument(std::string("last ") + side +
                                    " observer must be projective (theta = 0)");
    }
}

// Uniform average over the Cartesian product of the given family sizes;
// visit(indices) is called once per assignment.
void for_each_assignment(std::span<const std::size_t> sizes,
                         const std::function<void(std::span<const std::size_t>)>& visit) {
    std::vector<std::size_t> idx(sizes.size(), 0);
    for (;;) {
        visit(idx);
        std::size_t k = sizes.size();
        while (k > 0) {
            --k;
            if (++idx[k] < sizes[k]) break;
            idx[k] = 0;
            if (k == 0) return;
        }
        if (sizes.empty()) return;
    }
}

struct PairContext {
    std::vector<std::size_t> other_alice;  // observer indices averaged over
    std::vector<std::size_t> other_bob;
    std::vector<std::size_t> sizes;  // family sizes, alice others then bob others
    double weight;
};

PairContext make_pair_context(const ObserverChain& chain, std::size_t i, std::size_t j,
                              std::span<const SettingFamily> families) {
    chain.validate(families.size());
    if (i >= chain.alice.size() || j >= chain.bob.size()) {
        throw std::out_of_range("pair_correlation: observer index out of range");
    }
    PairContext ctx;
    ctx.weight = 1.0;
    for (std::size_t k = 0; k < chain.alice.size(); ++k) {
        if (k == i) continue;
        ctx.other_alice.push_back(k);
        ctx.sizes.push_back(families[chain.alice[k].family_index].size());
        ctx.weight /= static_cast<double>(ctx.sizes.back());
    }
    for (std::size_t k = 0; k < chain.bob.size(); ++k) {
        if (k == j) continue;
        ctx.other_bob.push_back(k);
        ctx.sizes.push_back(families[chain.bob[k].family_index].size());
        ctx.weight /= static_cast<double>(ctx.sizes.back());
    }
    return ctx;
}

void build_settings(const ObserverChain& chain, const PairContext& ctx, std::size_t i,
                    std::size_t j, const BlochVector& xi, const BlochVector& yj,
                    std::span<const SettingFamily> families, std::span<const std::size_t> assignment,
                    std::vector<MeasurementSetting>& alice_out,
                    std::vector<MeasurementSetting>& bob_out) {
    alice_out.clear();
    bob_out.clear();
    for (std::size_t k = 0; k < chain.alice.size(); ++k) {
        if (k == i) {
            alice_out.emplace_back(xi, chain.alice[k].theta);
        } else {
            const std::size_t pos =
                static_cast<std::size_t>(std::find(ctx.other_alice.begin(), ctx.other_alice.end(), k) -
                                         ctx.other_alice.begin());
            const SettingFamily& fam = families[chain.alice[k].family_index];
            alice_out.emplace_back(fam.direction(assignment[pos]), chain.alice[k].theta);
        }
    }
    for (std::size_t k = 0; k < chain.bob.size(); ++k) {
        if (k == j) {
            bob_out.emplace_back(yj, chain.bob[k].theta);
        } else {
            const std::size_t pos =
                static_cast<std::size_t>(std::find(ctx.other_bob.begin(), ctx.other_bob.end(), k) -
                                         ctx.other_bob.begin());
            const SettingFamily& fam = families[chain.bob[k].family_index];
            bob_out.emplace_back(fam.direction(assignment[ctx.other_alice.size() + pos]),
                                 chain.bob[k].theta);
        }
    }
}

}  // namespace

SharedState::SharedState(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (rho_.dim() != 4) throw std::invalid_argument("SharedState expects a 4x4 density matrix");
    validate_density_matrix(rho_, "SharedState");
}

SharedState SharedState::singlet() {
    ComplexMatrix rho(4);
    rho.at(1, 1) = 0.5;
    rho.at(2, 2) = 0.5;
    rho.at(1, 2) = -0.5;
    rho.at(2, 1) = -0.5;
    return SharedState(std::move(rho));
}

void ObserverChain::validate(std::size_t family_count) const {
    if (alice.empty() || bob.empty()) {
        throw std::invalid_argument("ObserverChain: both sides need at least one observer");
    }
    for (const auto* side : {&alice, &bob}) {
        for (const ObserverSpec& o : *side) {
            if (!(o.theta >= 0.0 && o.theta <= 0.25 * std::numbers::pi)) {
                throw std::domain_error("ObserverChain: theta outside [0, pi/4]");
            }
            if (o.family_index >= family_count) {
                throw std::out_of_range("ObserverChain: family index out of range");
            }
        }
        if (side->back().theta != 0.0) {
            throw std::invalid_argument("ObserverChain: last observer per side must be projective");
        }
    }
}

JointDistribution::JointDistribution(std::size_t n_alice, std::size_t n_bob,
                                     std::vector<double> raw)
    : n_alice_(n_alice), n_bob_(n_bob), raw_(std::move(raw)) {
    if (raw_.size() != (std::size_t{1} << (n_alice_ + n_bob_))) {
        throw std::invalid_argument("JointDistribution: wrong entry count");
    }
}

double JointDistribution::probability(std::size_t index) const {
    return std::max(0.0, raw_.at(index));
}

double JointDistribution::total() const {
    double s = 0.0;
    for (std::size_t i = 0; i < raw_.size(); ++i) s += probability(i);
    return s;
}

std::size_t JointDistribution::index_of(std::span<const int> alice_outcomes,
                                        std::span<const int> bob_outcomes) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < alice_outcomes.size(); ++k) {
        if (alice_outcomes[k] < 0) index |= std::size_t{1} << k;
    }
    for (std::size_t k = 0; k < bob_outcomes.size(); ++k) {
        if (bob_outcomes[k] < 0) index |= std::size_t{1} << (alice_outcomes.size() + k);
    }
    return index;
}

JointDistribution joint_distribution(const SharedState& state,
                                     std::span<const MeasurementSetting> alice_settings,
                                     std::span<const MeasurementSetting> bob_settings) {
    require_projective_last(alice_settings, "alice");
    require_projective_last(bob_settings, "bob");

    const std::vector<ComplexMatrix> ha = all_side_operators(alice_settings);
    const std::vector<ComplexMatrix> hb = all_side_operators(bob_settings);

    std::vector<double> raw(ha.size() * hb.size());
    for (std::size_t b = 0; b < hb.size(); ++b) {
        for (std::size_t a = 0; a < ha.size(); ++a) {
            const ComplexMatrix op = tensor_product(ha[a], hb[b]);
            Complex tr = 0.0;
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) tr += op.at(r, c) * state.rho().at(c, r);
            raw[(b << alice_settings.size()) | a] = std::real(tr);
        }
    }
    return JointDistribution(alice_settings.size(), bob_settings.size(), std::move(raw));
}

CorrelationTable::CorrelationTable(std::size_t alice_index_, std::size_t bob_index_,
                                   std::size_t n_x_, std::size_t n_y_, std::vector<double> values_)
    : alice_index(alice_index_), bob_index(bob_index_), n_x(n_x_), n_y(n_y_),
      values(std::move(values_)) {
    if (values.size() != n_x * n_y) {
        throw std::invalid_argument("CorrelationTable: wrong value count");
    }
    for (double c : values) {
        if (std::abs(c) > 1.0 + 1e-12) {
            throw std::invalid_argument("CorrelationTable: |C| exceeds 1");
        }
    }
}

std::vector<double> CorrelationTable::diagonal() const {
    if (n_x != n_y) throw std::logic_error("CorrelationTable::diagonal: table is not square");
    std::vector<double> d(n_x);
    for (std::size_t m = 0; m < n_x; ++m) d[m] = at(m, m);
    return d;
}

double pair_correlation(const SharedState& state, const ObserverChain& chain, std::size_t i,
                        std::size_t j, const BlochVector& xi, const BlochVector& yj,
                        std::span<const SettingFamily> families) {
    const PairContext ctx = make_pair_context(chain, i, j, families);

    double corr = 0.0;
    std::vector<MeasurementSetting> alice_settings;
    std::vector<MeasurementSetting> bob_settings;
    for_each_assignment(ctx.sizes, [&](std::span<const std::size_t> assignment) {
        build_settings(chain, ctx, i, j, xi, yj, families, assignment, alice_settings, bob_settings);
        const JointDistribution jd = joint_distribution(state, alice_settings, bob_settings);
        double c = 0.0;
        for (std::size_t idx = 0; idx < jd.size(); ++idx) {
            c += JointDistribution::outcome_sign(idx, i) *
                 JointDistribution::outcome_sign(idx, chain.alice.size() + j) * jd.raw(idx);
        }
        corr += ctx.weight * c;
    });
    return corr;
}

ComplexMatrix correlation_observable(const ObserverChain& chain, std::size_t i, std::size_t j,
                                     const BlochVector& xi, const BlochVector& yj,
                                     std::span<const SettingFamily> families) {
    const PairContext ctx = make_pair_context(chain, i, j, families);

    ComplexMatrix w(4);
    std::vector<MeasurementSetting> alice_settings;
    std::vector<MeasurementSetting> bob_settings;
    for_each_assignment(ctx.sizes, [&](std::span<const std::size_t> assignment) {
        build_settings(chain, ctx, i, j, xi, yj, families, assignment, alice_settings, bob_settings);
        const std::vector<ComplexMatrix> ha = all_side_operators(alice_settings);
        const std::vector<ComplexMatrix> hb = all_side_operators(bob_settings);
        for (std::size_t a = 0; a < ha.size(); ++a) {
            const int sa = JointDistribution::outcome_sign(a, i);
            for (std::size_t b = 0; b < hb.size(); ++b) {
                const int sb = JointDistribution::outcome_sign(b, j);
                w += (ctx.weight * sa * sb) * tensor_product(ha[a], hb[b]);
            }
        }
    });
    return w;
}

ComplexMatrix post_first_round_state(const SharedState& state,
                                     std::span<const BlochVector> family, double theta_a,
                                     double theta_b) {
    if (family.empty()) throw std::invalid_argument("post_first_round_state: empty family");
    ComplexMatrix out(4);
    for (const BlochVector& k : family) {
        const KrausPair ma = kraus_pair(MeasurementSetting(k.antipode(), theta_a));
        const KrausPair mb = kraus_pair(MeasurementSetting(k, theta_b));
        for (int sa : {+1, -1}) {
            for (int sb : {+1, -1}) {
                const ComplexMatrix joint = tensor_product(ma.outcome(sa), mb.outcome(sb));
                out += joint * state.rho() * joint.adjoint();
            }
        }
    }
    out *= 1.0 / static_cast<double>(family.size());
    return out;
}

}  // namespace seqsteer
