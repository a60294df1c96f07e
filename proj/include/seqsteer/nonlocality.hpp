#pragma once

#include <span>
#include <vector>

#include "seqsteer/linalg.hpp"
#include "seqsteer/measurement.hpp"

namespace seqsteer {

enum class InequalityKind { steering, chsh };

// A quantity together with its classical bound and the violation verdict.
struct NonlocalityResult {
    InequalityKind kind;
    double value;
    double bound;
    bool violated;
    double margin;

    static NonlocalityResult steering(double value, double bound);
    static NonlocalityResult chsh(double value);
};

// S_n = |sum_m C_m| / n over the matched-setting diagonal.
double steering_quantity(std::span<const double> matched_correlations);

// I = |c00 + c01 + c10 - c11|.
double chsh_quantity(double c00, double c01, double c10, double c11);

// Sign assignment A_m in {-1,+1} declared by the steering party.
struct SignAssignment {
    std::vector<int> signs;
};

struct ClassicalBound {
    double bound;
    SignAssignment maximizer;
};

// Local-hidden-state bound B_n = max_{A} lambda_max((1/n) sum_m A_m u_m.sigma),
// by exhaustive enumeration of all 2^n sign vectors (n <= 20). Every sign
// vector is evaluated along two routes, the 2x2 eigenvalue solver and the
// qubit identity lambda_max = |sum A_m u_m|/n, which must agree to 1e-12.
ClassicalBound classical_bound_detail(std::span<const BlochVector> directions);
double classical_bound(std::span<const BlochVector> directions);

// Closed forms for the two-Alice/two-Bob scenario with projective last
// observers. g/f arguments are information-gain and quality factors.
double analytic_steering_first_pair(double g_a1, double g_b1);

// Steering of the second pair after the first pair measured along a shared
// random direction from family1 (n2 matched settings from family2):
//   1 - 4 (1 - f_a1 f_b1 / 2) * T1/(n1 n2) - 2 f_a1 f_b1 * T2/(n1 n2)
// with T1 = sum_{k,l} |<k+|l+>|^2 |<k-|l+>|^2 and
// T2 = sum_{k,l} Re[<l-|k+><l+|k-><k-|l-><k+|l+>] over the family bases.
double analytic_steering_second_pair(double f_a1, double f_b1,
                                     std::span<const BlochVector> family1,
                                     std::span<const BlochVector> family2);

struct ChshTwoSided {
    double i11;
    double i22;
    double i12;  // first Alice vs last Bob
    double i21;  // last Alice vs first Bob
};

ChshTwoSided analytic_chsh_two_sided(double f_a1, double g_a1, double f_b1, double g_b1,
                                     double g_a2, double g_b2);

// Bell quantity between the r-th Alice and s-th Bob (1-based) in an N x M
// chain of optimal weak measurements under unbiased inputs:
//   2 sqrt(2) / 2^{r+s-2} * prod_{t<r}(1+f_At) g_Ar * prod_{t<s}(1+f_Bt) g_Bs.
double analytic_chsh_chain(std::size_t r, std::size_t s,
                           std::span<const StrengthFactors> alice,
                           std::span<const StrengthFactors> bob);

// Range of information gains g = cos(2 theta) for which both observer pairs
// violate the steering bound at equal strength with matched families:
// g_low solves g^2 = bound, g_high solves second-pair steering = bound
// (bisection to 1e-9). Empty when g_low >= g_high.
struct ViolationWindow {
    double g_low;
    double g_high;

    bool empty() const { return !(g_low < g_high); }
};

ViolationWindow double_violation_window(std::span<const BlochVector> family, double bound);

// True iff no theta in the grid yields i11 > 2 and i22 > 2 simultaneously
// at equal strengths with projective last observers.
bool no_double_chsh_equal_strength(std::span<const double> theta_grid);

}  // namespace seqsteer
