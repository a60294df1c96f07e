#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace seqsteer {

using Complex = std::complex<double>;

// Dense complex matrix restricted to the two sizes the simulator needs:
// 2x2 single-qubit operators and 4x4 two-qubit operators. Row-major storage,
// value semantics, no heap.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim);

    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    Complex& at(std::size_t row, std::size_t col) { return e_[row * dim_ + col]; }
    const Complex& at(std::size_t row, std::size_t col) const { return e_[row * dim_ + col]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    double max_abs() const;
    // max_ij |a_ij - conj(a_ji)|
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-10) const { return hermiticity_defect() <= tol; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

private:
    std::size_t dim_;
    std::array<Complex, 16> e_{};
};

// Kronecker product of two 2x2 matrices: a's entries scale b-blocks, so the
// left factor is the high-order qubit (basis order |00>,|01>,|10>,|11>).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a Hermitian matrix, ascending. Inputs are checked to be
// Hermitian within 1e-10 and symmetrized before solving; dim 2 uses the
// closed form, dim 4 a Jacobi iteration on the real-symmetric embedding.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
double hermitian_max_eigenvalue(const ComplexMatrix& m);
double hermitian_min_eigenvalue(const ComplexMatrix& m);

// Unit vector on the Bloch sphere. The checked constructor rejects inputs
// whose norm deviates from 1 by more than 1e-9 and renormalizes, so stored
// components always satisfy x^2+y^2+z^2 = 1 to machine precision.
struct BlochVector {
    double x, y, z;

    BlochVector(double x, double y, double z);
    static BlochVector normalized(double x, double y, double z);

    BlochVector antipode() const { return BlochVector(-x, -y, -z); }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

using Ket2 = std::array<Complex, 2>;

// <bra|ket>
Complex inner(const Ket2& bra, const Ket2& ket);
// |ket><ket|
ComplexMatrix outer(const Ket2& ket);

// Orthonormal eigenbasis {|k+>, |k->} of v.sigma with eigenvalues +1 / -1.
// Global phases are fixed so the first component with magnitude above 1e-12
// is real and non-negative, which pins every downstream overlap bit-for-bit.
struct BasisPair {
    Ket2 plus;
    Ket2 minus;
};

BasisPair bloch_to_basis(const BlochVector& v);

// v.sigma as a matrix.
ComplexMatrix pauli_matrix(const BlochVector& v);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace seqsteer
