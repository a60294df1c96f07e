#include "seqsteer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seqsteer {

namespace {

void require_dim(std::size_t dim) {
    if (dim != 2 && dim != 4) {
        throw std::invalid_argument("ComplexMatrix dim must be 2 or 4, got " + std::to_string(dim));
    }
}

// Cyclic Jacobi eigenvalue iteration for a small real symmetric matrix,
// stored row-major in a. Destroys a, returns eigenvalues unsorted.
std::vector<double> jacobi_symmetric_eigenvalues(std::vector<double>& a, std::size_t n) {
    auto off_norm2 = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
        return s;
    };
    double scale = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(a[i]));
    const double stop = std::max(scale * scale, 1.0) * 1e-32;

    for (int sweep = 0; sweep < 100 && off_norm2() > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) <= scale * 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
    return eig;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { require_dim(dim); }

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::abs(e_[i]));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c) d = std::max(d, std::abs(at(r, c) - std::conj(at(c, r))));
    return d;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw std::invalid_argument("matrix dimension mismatch in +");
    for (std::size_t i = 0; i < dim_ * dim_; ++i) e_[i] += rhs.e_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw std::invalid_argument("matrix dimension mismatch in -");
    for (std::size_t i = 0; i < dim_ * dim_; ++i) e_[i] -= rhs.e_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (std::size_t i = 0; i < dim_ * dim_; ++i) e_[i] *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("matrix dimension mismatch in *");
    const std::size_t n = lhs.dim_;
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex l = lhs.at(r, k);
            if (l == Complex(0.0)) continue;
            for (std::size_t c = 0; c < n; ++c) out.at(r, c) += l * rhs.at(k, c);
        }
    }
    return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("tensor_product expects two 2x2 matrices");
    }
    ComplexMatrix out(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) out.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch in max_abs_diff");
    double d = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) d = std::max(d, std::abs(a.at(r, c) - b.at(r, c)));
    return d;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!m.is_hermitian(1e-10)) {
        throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian within 1e-10");
    }
    const std::size_t n = m.dim();
    // Accumulated operator products carry ~1e-15 asymmetry; symmetrize first.
    ComplexMatrix h = m;
    h += m.adjoint();
    h *= 0.5;

    if (n == 2) {
        const double half_tr = 0.5 * std::real(h.at(0, 0) + h.at(1, 1));
        const double half_diff = 0.5 * std::real(h.at(0, 0) - h.at(1, 1));
        const double disc = std::sqrt(half_diff * half_diff + std::norm(h.at(0, 1)));
        return {half_tr - disc, half_tr + disc};
    }

    // Embed H = X + iY into the real symmetric [[X, -Y], [Y, X]]; its
    // spectrum is that of H with every eigenvalue doubled.
    std::vector<double> big(2 * n * 2 * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double re = std::real(h.at(r, c));
            const double im = std::imag(h.at(r, c));
            big[r * 2 * n + c] = re;
            big[(r + n) * 2 * n + (c + n)] = re;
            big[r * 2 * n + (c + n)] = -im;
            big[(r + n) * 2 * n + c] = im;
        }
    }
    std::vector<double> doubled = jacobi_symmetric_eigenvalues(big, 2 * n);
    std::sort(doubled.begin(), doubled.end());
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    return eig;
}

double hermitian_max_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).back(); }

double hermitian_min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).front(); }

BlochVector::BlochVector(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (std::abs(norm - 1.0) > 1e-9) {
        throw std::invalid_argument("BlochVector: norm deviates from 1 by more than 1e-9");
    }
    x /= norm;
    y /= norm;
    z /= norm;
}

BlochVector BlochVector::normalized(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm < 1e-12) throw std::invalid_argument("BlochVector::normalized: zero vector");
    return BlochVector(x / norm, y / norm, z / norm);
}

Complex inner(const Ket2& bra, const Ket2& ket) {
    return std::conj(bra[0]) * ket[0] + std::conj(bra[1]) * ket[1];
}

ComplexMatrix outer(const Ket2& ket) {
    ComplexMatrix out(2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) out.at(r, c) = ket[r] * std::conj(ket[c]);
    return out;
}

namespace {

Ket2 fix_global_phase(Ket2 v) {
    for (const Complex& c : v) {
        const double mag = std::abs(c);
        if (mag > 1e-12) {
            const Complex phase = std::conj(c) / mag;
            return {v[0] * phase, v[1] * phase};
        }
    }
    return v;
}

}  // namespace

BasisPair bloch_to_basis(const BlochVector& v) {
    // Half-angle parametrization: v = (sin a cos p, sin a sin p, cos a).
    const double a = std::atan2(std::hypot(v.x, v.y), v.z);
    const double p = std::atan2(v.y, v.x);
    const Complex eip = std::polar(1.0, p);
    const double ch = std::cos(0.5 * a);
    const double sh = std::sin(0.5 * a);
    BasisPair out;
    out.plus = fix_global_phase({Complex(ch), sh * eip});
    out.minus = fix_global_phase({Complex(sh), -ch * eip});
    return out;
}

ComplexMatrix pauli_matrix(const BlochVector& v) {
    ComplexMatrix m(2);
    m.at(0, 0) = v.z;
    m.at(0, 1) = Complex(v.x, -v.y);
    m.at(1, 0) = Complex(v.x, v.y);
    m.at(1, 1) = -v.z;
    return m;
}

ComplexMatrix pauli_x() { return pauli_matrix(BlochVector(1, 0, 0)); }
ComplexMatrix pauli_y() { return pauli_matrix(BlochVector(0, 1, 0)); }
ComplexMatrix pauli_z() { return pauli_matrix(BlochVector(0, 0, 1)); }

}  // namespace seqsteer
