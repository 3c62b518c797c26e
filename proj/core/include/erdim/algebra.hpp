#pragma once

#include <complex>
#include <vector>

#include "erdim/errors.hpp"

namespace erdim {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Workhorse of all superoperator and
/// tensor arithmetic in this library; sizes stay at desk scale (a few
/// hundred rows at most), so everything is plain O(n^3) dense algebra.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
    }
    ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != static_cast<std::size_t>(rows) * cols)
            throw ShapeError("entry count does not match rows*cols");
    }

    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<Complex>& data() const { return a_; }
    std::vector<Complex>& data() { return a_; }

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix adjoint() const;

    Complex trace() const;
    double frobenius_norm() const;
    double one_norm() const;  // max absolute column sum
    double max_abs() const;
    bool is_finite() const;
    bool is_hermitian(double tol) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> a_;
};

/// Squared Schmidt coefficients across a bipartite cut, sorted
/// non-increasing. Sums to 1 when produced from a unit-norm state.
struct SchmidtSpectrum {
    std::vector<double> values;
};

/// Matrix-vector product a*v.
std::vector<Complex> matvec(const ComplexMatrix& a, const std::vector<Complex>& v);

/// Kronecker product; entry [(i*b.rows+k),(j*b.cols+l)] = a(i,j)*b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix exponential by scaling-and-squaring with a Taylor core; the
/// argument is scaled until its 1-norm is at most 0.5 before summing.
/// Relative error below 1e-11 for norms up to ~10.
ComplexMatrix matexp(const ComplexMatrix& a);

struct SvdResult {
    ComplexMatrix u;              // rows x k, orthonormal columns
    std::vector<double> s;        // k singular values, non-increasing
    ComplexMatrix vh;             // k x cols, orthonormal rows
};

/// Thin SVD via one-sided Jacobi; accurate at the small sizes used here.
SvdResult svd(const ComplexMatrix& a);

struct EigResult {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // columns are eigenvectors
};

/// Hermitian eigendecomposition via cyclic complex Jacobi rotations.
EigResult hermitian_eig(const ComplexMatrix& a);

/// Eigenvalues only (ascending) of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

/// Row-major flattening of a square matrix, rho_jk -> v[j*d + k], so that
/// Q rho P maps to kron(Q, P^T) acting on the vector.
std::vector<Complex> vectorize(const ComplexMatrix& rho);

/// Inverse of vectorize; the input length must be a perfect square.
ComplexMatrix devectorize(const std::vector<Complex>& v);

}  // namespace erdim
