#include "erdim/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace erdim {

namespace {

// C += A*B on real buffers, ikj order so the inner loop streams rows.
void real_gemm_acc(double* c, const double* a, const double* b, int m, int k, int n,
                   double sign) {
    for (int i = 0; i < m; ++i) {
        const double* arow = a + static_cast<std::size_t>(i) * k;
        double* crow = c + static_cast<std::size_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            const double f = sign * arow[p];
            if (f == 0.0) continue;
            const double* brow = b + static_cast<std::size_t>(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += f * brow[j];
        }
    }
}

void split_real_imag(const ComplexMatrix& x, std::vector<double>& re, std::vector<double>& im) {
    const auto& d = x.data();
    re.resize(d.size());
    im.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        re[i] = d[i].real();
        im[i] = d[i].imag();
    }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix c = *this;
    for (auto& z : c.a_) z = std::conj(z);
    return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

Complex ComplexMatrix::trace() const {
    if (rows_ != cols_) throw ShapeError("trace of non-square matrix");
    Complex t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::one_norm() const {
    double best = 0.0;
    for (int j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (int i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& z : a_) best = std::max(best, std::abs(z));
    return best;
}

bool ComplexMatrix::is_finite() const {
    for (const auto& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeError("matrix add: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeError("matrix sub: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& z : a_) z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matrix multiply: inner dimensions differ");
    const int m = a.rows(), k = a.cols(), n = b.cols();
    // Split into real parts so the four real kernels vectorize.
    std::vector<double> ar, ai, br, bi;
    split_real_imag(a, ar, ai);
    split_real_imag(b, br, bi);
    std::vector<double> cr(static_cast<std::size_t>(m) * n, 0.0);
    std::vector<double> ci(static_cast<std::size_t>(m) * n, 0.0);
    real_gemm_acc(cr.data(), ar.data(), br.data(), m, k, n, 1.0);
    real_gemm_acc(cr.data(), ai.data(), bi.data(), m, k, n, -1.0);
    real_gemm_acc(ci.data(), ar.data(), bi.data(), m, k, n, 1.0);
    real_gemm_acc(ci.data(), ai.data(), br.data(), m, k, n, 1.0);
    ComplexMatrix c(m, n);
    auto& out = c.data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Complex(cr[i], ci[i]);
    return c;
}

std::vector<Complex> matvec(const ComplexMatrix& a, const std::vector<Complex>& v) {
    if (static_cast<std::size_t>(a.cols()) != v.size())
        throw ShapeError("matvec: dimension mismatch");
    std::vector<Complex> out(a.rows(), Complex(0.0, 0.0));
    for (int i = 0; i < a.rows(); ++i) {
        Complex acc = 0.0;
        for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::int64_t rr = static_cast<std::int64_t>(a.rows()) * b.rows();
    const std::int64_t cc = static_cast<std::int64_t>(a.cols()) * b.cols();
    if (rr * cc > (std::int64_t{1} << 26))
        throw SizeError("kron: result would exceed the dense size budget");
    ComplexMatrix out(static_cast<int>(rr), static_cast<int>(cc));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Complex f = a(i, j);
            if (f == Complex(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = f * b(k, l);
        }
    return out;
}

ComplexMatrix matexp(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("matexp: matrix must be square");
    if (!a.is_finite()) throw NumericalError("matexp: non-finite input");
    const int n = a.rows();
    const double norm = a.one_norm();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        if (squarings > 64) throw NumericalError("matexp: norm too large, would overflow");
    }
    ComplexMatrix as = a;
    as *= Complex(std::ldexp(1.0, -squarings), 0.0);

    // Horner evaluation of the Taylor series; 18 terms leave truncation
    // error far below 1e-15 once the norm is at most 0.5.
    constexpr int kTerms = 18;
    const ComplexMatrix id = ComplexMatrix::identity(n);
    ComplexMatrix p = id;
    for (int k = kTerms; k >= 1; --k) {
        p = as * p;
        p *= Complex(1.0 / k, 0.0);
        p += id;
    }
    for (int i = 0; i < squarings; ++i) p = p * p;
    if (!p.is_finite()) throw NumericalError("matexp: overflow in squaring phase");
    return p;
}

namespace {

// One-sided Jacobi on a matrix with rows >= cols: orthogonalize column
// pairs until the Gram matrix is diagonal to working precision.
SvdResult svd_tall(const ComplexMatrix& a) {
    const int m = a.rows(), n = a.cols();
    ComplexMatrix w = a;
    ComplexMatrix v = ComplexMatrix::identity(n);
    constexpr double kTol = 1e-14;
    constexpr int kMaxSweeps = 64;

    bool converged = (n <= 1);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        double s2max = 0.0;
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += std::norm(w(i, j));
            s2max = std::max(s2max, s);
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq = 0.0;
                for (int i = 0; i < m; ++i) {
                    app += std::norm(w(i, p));
                    aqq += std::norm(w(i, q));
                    apq += std::conj(w(i, p)) * w(i, q);
                }
                const double offmag = std::abs(apq);
                // The absolute floor keeps underflowed noise columns from
                // defeating the relative test (their squared norms flush
                // to zero while cross products survive).
                if (offmag <= kTol * std::sqrt(app * aqq) || offmag <= 1e-28 * s2max ||
                    offmag == 0.0)
                    continue;
                converged = false;
                const Complex u = apq / offmag;
                const double zeta = (aqq - app) / (2.0 * offmag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (int i = 0; i < m; ++i) {
                    const Complex wp = w(i, p), wq = w(i, q);
                    w(i, p) = cs * wp - sn * std::conj(u) * wq;
                    w(i, q) = sn * u * wp + cs * wq;
                }
                for (int i = 0; i < n; ++i) {
                    const Complex vp = v(i, p), vq = v(i, q);
                    v(i, p) = cs * vp - sn * std::conj(u) * vq;
                    v(i, q) = sn * u * vp + cs * vq;
                }
            }
        }
    }
    if (!converged) throw NumericalError("svd: Jacobi sweeps did not converge");

    std::vector<double> norms(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += std::norm(w(i, j));
        norms[j] = std::sqrt(s);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return norms[x] > norms[y]; });

    SvdResult r;
    r.u = ComplexMatrix(m, n);
    r.vh = ComplexMatrix(n, n);
    r.s.resize(n);
    const double smax = norms.empty() ? 0.0 : norms[order[0]];
    int filled = 0;
    for (int jj = 0; jj < n; ++jj) {
        const int j = order[jj];
        r.s[jj] = norms[j];
        for (int i = 0; i < n; ++i) r.vh(jj, i) = std::conj(v(i, j));
        if (norms[j] > smax * 1e-300 && norms[j] > 0.0) {
            for (int i = 0; i < m; ++i) r.u(i, jj) = w(i, j) / norms[j];
            filled = jj + 1;
        }
    }
    // Null columns: complete U to an orthonormal set so downstream
    // reconstructions stay well-defined.
    for (int jj = filled; jj < n; ++jj) {
        if (r.s[jj] > 0.0 && r.s[jj] > smax * 1e-300) continue;
        r.s[jj] = std::max(r.s[jj], 0.0);
        for (int cand = 0; cand < m; ++cand) {
            std::vector<Complex> col(m, Complex(0.0, 0.0));
            col[cand] = 1.0;
            for (int k = 0; k < jj; ++k) {
                Complex ov = 0.0;
                for (int i = 0; i < m; ++i) ov += std::conj(r.u(i, k)) * col[i];
                for (int i = 0; i < m; ++i) col[i] -= ov * r.u(i, k);
            }
            double nn = 0.0;
            for (int i = 0; i < m; ++i) nn += std::norm(col[i]);
            nn = std::sqrt(nn);
            if (nn > 0.5) {
                for (int i = 0; i < m; ++i) r.u(i, jj) = col[i] / nn;
                break;
            }
        }
    }
    return r;
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw ShapeError("svd: empty matrix");
    if (a.rows() >= a.cols()) return svd_tall(a);
    SvdResult t = svd_tall(a.adjoint());
    SvdResult r;
    r.s = std::move(t.s);
    r.u = t.vh.adjoint();
    r.vh = t.u.adjoint();
    return r;
}

EigResult hermitian_eig(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("hermitian_eig: matrix must be square");
    const int n = a.rows();
    ComplexMatrix h = a;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(h.max_abs(), 1e-300);
    constexpr double kTol = 1e-15;
    constexpr int kMaxSweeps = 100;

    bool converged = (n <= 1);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = h(p, q);
                const double offmag = std::abs(apq);
                if (offmag <= kTol * scale) continue;
                converged = false;
                const Complex u = apq / offmag;
                const double zeta = (h(q, q).real() - h(p, p).real()) / (2.0 * offmag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                // h <- J^H h J with J mixing columns p and q.
                for (int i = 0; i < n; ++i) {
                    const Complex hip = h(i, p), hiq = h(i, q);
                    h(i, p) = cs * hip - sn * std::conj(u) * hiq;
                    h(i, q) = sn * u * hip + cs * hiq;
                }
                for (int j = 0; j < n; ++j) {
                    const Complex hpj = h(p, j), hqj = h(q, j);
                    h(p, j) = cs * hpj - sn * u * hqj;
                    h(q, j) = sn * std::conj(u) * hpj + cs * hqj;
                }
                for (int i = 0; i < n; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = cs * vip - sn * std::conj(u) * viq;
                    v(i, q) = sn * u * vip + cs * viq;
                }
            }
        }
    }
    if (!converged) throw NumericalError("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return h(x, x).real() < h(y, y).real(); });
    EigResult r;
    r.values.resize(n);
    r.vectors = ComplexMatrix(n, n);
    for (int jj = 0; jj < n; ++jj) {
        r.values[jj] = h(order[jj], order[jj]).real();
        for (int i = 0; i < n; ++i) r.vectors(i, jj) = v(i, order[jj]);
    }
    return r;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    return hermitian_eig(a).values;
}

std::vector<Complex> vectorize(const ComplexMatrix& rho) {
    if (rho.rows() != rho.cols()) throw ShapeError("vectorize: matrix must be square");
    return rho.data();
}

ComplexMatrix devectorize(const std::vector<Complex>& v) {
    const auto d = static_cast<int>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (static_cast<std::size_t>(d) * d != v.size())
        throw ShapeError("devectorize: length is not a perfect square");
    return ComplexMatrix(d, d, v);
}

}  // namespace erdim
