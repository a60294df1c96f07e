#include "seqsteer/nonlocality.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace seqsteer {

NonlocalityResult NonlocalityResult::steering(double value, double bound) {
    if (!(bound > 0.0 && bound <= 1.0)) {
        throw std::domain_error("steering bound must lie in (0, 1]");
    }
    return {InequalityKind::steering, value, bound, value > bound, value - bound};
}

NonlocalityResult NonlocalityResult::chsh(double value) {
    return {InequalityKind::chsh, value, 2.0, value > 2.0, value - 2.0};
}

double steering_quantity(std::span<const double> matched_correlations) {
    if (matched_correlations.empty()) {
        throw std::invalid_argument("steering_quantity: empty correlation list");
    }
    double sum = 0.0;
    for (double c : matched_correlations) sum += c;
    return std::abs(sum) / static_cast<double>(matched_correlations.size());
}

double chsh_quantity(double c00, double c01, double c10, double c11) {
    return std::abs(c00 + c01 + c10 - c11);
}

ClassicalBound classical_bound_detail(std::span<const BlochVector> directions) {
    const std::size_t n = directions.size();
    if (n < 1 || n > 20) {
        throw std::invalid_argument("classical_bound: need between 1 and 20 directions");
    }

    // Gray-code walk over all sign vectors, maintaining the running vector
    // sum so each step flips a single term.
    double sx = 0.0, sy = 0.0, sz = 0.0;
    for (const BlochVector& u : directions) {
        sx += u.x;
        sy += u.y;
        sz += u.z;
    }
    std::vector<int> signs(n, +1);

    double best = -1.0;
    SignAssignment best_signs;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 0;; ++step) {
        const double norm_route = std::sqrt(sx * sx + sy * sy + sz * sz) / static_cast<double>(n);

        ComplexMatrix op(2);
        op.at(0, 0) = sz;
        op.at(0, 1) = Complex(sx, -sy);
        op.at(1, 0) = Complex(sx, sy);
        op.at(1, 1) = -sz;
        op *= 1.0 / static_cast<double>(n);
        const double eigen_route = hermitian_max_eigenvalue(op);

        if (std::abs(norm_route - eigen_route) > 1e-12) {
            throw std::logic_error("classical_bound: eigenvalue and Bloch-norm routes disagree");
        }
        if (eigen_route > best) {
            best = eigen_route;
            best_signs.signs = signs;
        }

        if (step + 1 == total) break;
        // Index of the bit that flips between consecutive Gray codes.
        const std::uint64_t flip = std::countr_zero(step + 1);
        const BlochVector& u = directions[flip];
        const double delta = -2.0 * signs[flip];
        sx += delta * u.x;
        sy += delta * u.y;
        sz += delta * u.z;
        signs[flip] = -signs[flip];
    }
    return {best, best_signs};
}

double classical_bound(std::span<const BlochVector> directions) {
    return classical_bound_detail(directions).bound;
}

double analytic_steering_first_pair(double g_a1, double g_b1) { return g_a1 * g_b1; }

double analytic_steering_second_pair(double f_a1, double f_b1,
                                     std::span<const BlochVector> family1,
                                     std::span<const BlochVector> family2) {
    if (family1.empty() || family2.empty()) {
        throw std::invalid_argument("analytic_steering_second_pair: empty family");
    }
    double t1 = 0.0;
    double t2 = 0.0;
    for (const BlochVector& k : family1) {
        const BasisPair kb = bloch_to_basis(k);
        for (const BlochVector& l : family2) {
            const BasisPair lb = bloch_to_basis(l);
            t1 += std::norm(inner(kb.plus, lb.plus)) * std::norm(inner(kb.minus, lb.plus));
            t2 += std::real(inner(lb.minus, kb.plus) * inner(lb.plus, kb.minus) *
                            inner(kb.minus, lb.minus) * inner(kb.plus, lb.plus));
        }
    }
    const double nn = static_cast<double>(family1.size()) * static_cast<double>(family2.size());
    const double ff = f_a1 * f_b1;
    return 1.0 - 4.0 * (1.0 - 0.5 * ff) * t1 / nn - 2.0 * ff * t2 / nn;
}

ChshTwoSided analytic_chsh_two_sided(double f_a1, double g_a1, double f_b1, double g_b1,
                                     double g_a2, double g_b2) {
    const double r2 = std::numbers::sqrt2;
    ChshTwoSided out;
    out.i11 = 2.0 * r2 * g_a1 * g_b1;
    out.i22 = 0.5 * r2 * (1.0 + f_a1) * g_a2 * (1.0 + f_b1) * g_b2;
    out.i12 = r2 * g_a1 * (1.0 + f_b1) * g_b2;
    out.i21 = r2 * g_b1 * (1.0 + f_a1) * g_a2;
    return out;
}

double analytic_chsh_chain(std::size_t r, std::size_t s,
                           std::span<const StrengthFactors> alice,
                           std::span<const StrengthFactors> bob) {
    if (r < 1 || r > alice.size() || s < 1 || s > bob.size()) {
        throw std::out_of_range("analytic_chsh_chain: observer index out of range");
    }
    double value = 2.0 * std::numbers::sqrt2 / std::pow(2.0, static_cast<double>(r + s - 2));
    for (std::size_t t = 0; t + 1 < r; ++t) value *= 1.0 + alice[t].f;
    value *= alice[r - 1].g;
    for (std::size_t t = 0; t + 1 < s; ++t) value *= 1.0 + bob[t].f;
    value *= bob[s - 1].g;
    return value;
}

ViolationWindow double_violation_window(std::span<const BlochVector> family, double bound) {
    if (family.empty()) throw std::invalid_argument("double_violation_window: empty family");
    if (!(bound > 0.0 && bound <= 1.0)) {
        throw std::domain_error("double_violation_window: bound must lie in (0, 1]");
    }

    const auto second_pair = [&](double g) {
        const double f = std::sqrt(std::max(0.0, 1.0 - g * g));
        return analytic_steering_second_pair(f, f, family, family);
    };

    const double g_low = std::sqrt(bound);
    double g_high;
    if (second_pair(1.0) > bound) {
        g_high = 1.0;
    } else if (!(second_pair(0.0) > bound)) {
        g_high = 0.0;
    } else {
        double lo = 0.0, hi = 1.0;  // second_pair(lo) > bound >= second_pair(hi)
        while (hi - lo > 1e-9) {
            const double mid = 0.5 * (lo + hi);
            (second_pair(mid) > bound ? lo : hi) = mid;
        }
        g_high = 0.5 * (lo + hi);
    }
    return {g_low, g_high};
}

bool no_double_chsh_equal_strength(std::span<const double> theta_grid) {
    for (double theta : theta_grid) {
        const StrengthFactors sf = strength_factors(theta);
        const ChshTwoSided v = analytic_chsh_two_sided(sf.f, sf.g, sf.f, sf.g, 1.0, 1.0);
        if (v.i11 > 2.0 && v.i22 > 2.0) return false;
    }
    return true;
}

}  // namespace seqsteer
