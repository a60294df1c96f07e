#pragma once

#include <span>

#include "seqsteer/linalg.hpp"

namespace seqsteer {

// One measurement: a Bloch direction plus the strength parameter theta.
// theta = 0 is projective, theta = pi/4 performs no measurement.
struct MeasurementSetting {
    BlochVector direction;
    double theta;

    MeasurementSetting(BlochVector direction, double theta);
};

// Kraus operators of the unbiased weak measurement,
//   M(+1) = cos(theta) P+ + sin(theta) P-,  M(-1) = cos(theta) P- + sin(theta) P+,
// both Hermitian PSD with M+^2 + M-^2 = I.
struct KrausPair {
    ComplexMatrix m_plus;
    ComplexMatrix m_minus;

    const ComplexMatrix& outcome(int sign) const { return sign > 0 ? m_plus : m_minus; }
};

// Quality factor f = sin(2 theta) and information gain g = cos(2 theta);
// this family sits on the optimal trade-off f^2 + g^2 = 1.
struct StrengthFactors {
    double f;
    double g;
};

StrengthFactors strength_factors(double theta);

ComplexMatrix projector(const BlochVector& direction, int outcome);

KrausPair kraus_pair(const MeasurementSetting& s);

// Positive chain operator for one side of the experiment: the last entry is
// applied projectively (its theta is not used), earlier entries as Kraus
// operators, conjugated outside-in:
//   H = M(o1)^dag ... M(o_{N-1})^dag P(o_N) M(o_{N-1}) ... M(o1).
ComplexMatrix side_chain_operator(std::span<const MeasurementSetting> settings,
                                  std::span<const int> outcomes);

// Outcome-averaged state after a weak measurement:
//   f rho + (1-f) (P+ rho P+ + P- rho P-),
// which equals sum_o M(o) rho M(o)^dag. Selective post-measurement states
// are obtained by conjugating with the individual Kraus operators instead.
ComplexMatrix nonselective_decoherence(const ComplexMatrix& rho, const MeasurementSetting& s);

// Throws unless rho is Hermitian (1e-10), unit trace (1e-12) and PSD
// (smallest eigenvalue >= -1e-12).
void validate_density_matrix(const ComplexMatrix& rho, const char* context);

}  // namespace seqsteer
