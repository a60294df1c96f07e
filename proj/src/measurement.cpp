#include "seqsteer/measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace seqsteer {

namespace {

void require_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 4.0)) {
        throw std::domain_error("measurement strength theta must lie in [0, pi/4], got " +
                                std::to_string(theta));
    }
}

}  // namespace

MeasurementSetting::MeasurementSetting(BlochVector direction_, double theta_)
    : direction(direction_), theta(theta_) {
    require_theta(theta);
}

StrengthFactors strength_factors(double theta) {
    require_theta(theta);
    return {std::sin(2.0 * theta), std::cos(2.0 * theta)};
}

ComplexMatrix projector(const BlochVector& direction, int outcome) {
    const BasisPair basis = bloch_to_basis(direction);
    return outer(outcome > 0 ? basis.plus : basis.minus);
}

KrausPair kraus_pair(const MeasurementSetting& s) {
    const BasisPair basis = bloch_to_basis(s.direction);
    const ComplexMatrix p_plus = outer(basis.plus);
    const ComplexMatrix p_minus = outer(basis.minus);
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    return {c * p_plus + sn * p_minus, c * p_minus + sn * p_plus};
}

ComplexMatrix side_chain_operator(std::span<const MeasurementSetting> settings,
                                  std::span<const int> outcomes) {
    if (settings.empty()) throw std::invalid_argument("side_chain_operator: empty settings");
    if (settings.size() != outcomes.size()) {
        throw std::invalid_argument("side_chain_operator: settings/outcomes length mismatch");
    }
    const std::size_t n = settings.size();
    ComplexMatrix h = projector(settings[n - 1].direction, outcomes[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) {
        const ComplexMatrix m = kraus_pair(settings[k]).outcome(outcomes[k]);
        h = m.adjoint() * h * m;
    }
    return h;
}

ComplexMatrix nonselective_decoherence(const ComplexMatrix& rho, const MeasurementSetting& s) {
    if (rho.dim() != 2) throw std::invalid_argument("nonselective_decoherence expects a 2x2 state");
    validate_density_matrix(rho, "nonselective_decoherence");
    const double f = strength_factors(s.theta).f;
    const ComplexMatrix p_plus = projector(s.direction, +1);
    const ComplexMatrix p_minus = projector(s.direction, -1);
    return f * rho + (1.0 - f) * (p_plus * rho * p_plus + p_minus * rho * p_minus);
}

void validate_density_matrix(const ComplexMatrix& rho, const char* context) {
    const std::string where(context);
    if (rho.hermiticity_defect() > 1e-10) {
        throw std::invalid_argument(where + ": state is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > 1e-12) {
        throw std::invalid_argument(where + ": state trace deviates from 1");
    }
    if (hermitian_min_eigenvalue(rho) < -1e-12) {
        throw std::invalid_argument(where + ": state is not positive semidefinite");
    }
}

}  // namespace seqsteer
