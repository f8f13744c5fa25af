// Copyright 2026 The seqprod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra sized for desk-scale operator work (dim <= 64).
//
// Everything here is a value type. Matrices are row-major. The only
// non-trivial algorithm is the cyclic complex Jacobi eigensolver, which is
// the engine behind every matrix function in the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqprod/errors.hpp"

namespace seqprod {

using Complex = std::complex<double>;

namespace tol {
/// Orthonormality tolerance per dimension: ||V^dag V - I||_F <= orth_per_dim * dim.
inline constexpr double orth_per_dim = 1e-12;
/// Relative reconstruction tolerance: ||V L V^dag - A||_F <= recon * max(1, ||A||).
inline constexpr double recon = 1e-11;
/// Relative support cutoff: eigenvalues <= supp_rel * max(1, ||A||_op) count as zero.
inline constexpr double supp_rel = 1e-10;
/// Jacobi stops once the off-diagonal Frobenius norm is below jacobi_rel * (1 + ||A||_F).
inline constexpr double jacobi_rel = 1e-13;
inline constexpr int jacobi_max_sweeps = 100;
/// Relative anti-Hermitian defect accepted by the strict validator on I/O paths.
inline constexpr double hermitian_input_rel = 1e-8;
}  // namespace tol

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

class ComplexMatrix {
   public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw DomainError("ComplexMatrix: entries length " + std::to_string(data_.size()) + " != " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
        }
        for (const Complex &z : data_) {
            if (!is_finite(z)) {
                throw DomainError("ComplexMatrix: non-finite entry");
            }
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            m(k, k) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> diag) {
        ComplexMatrix m(diag.size(), diag.size());
        for (std::size_t k = 0; k < diag.size(); ++k) {
            m(k, k) = diag[k];
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> diag) {
        ComplexMatrix m(diag.size(), diag.size());
        for (std::size_t k = 0; k < diag.size(); ++k) {
            m(k, k) = diag[k];
        }
        return m;
    }

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    std::span<const Complex> entries() const {
        return data_;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    Complex trace() const {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) {
            acc += (*this)(k, k);
        }
        return acc;
    }

    double frobenius_norm() const {
        double acc = 0.0;
        for (const Complex &z : data_) {
            acc += std::norm(z);
        }
        return std::sqrt(acc);
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other) {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += other.data_[k];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &other) {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= other.data_[k];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex s) {
        for (Complex &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        return a *= s;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        return a *= s;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw DomainError("ComplexMatrix: product shape mismatch");
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex ark = a(r, k);
                if (ark == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < b.cols_; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    bool operator==(const ComplexMatrix &) const = default;

   private:
    void require_same_shape(const ComplexMatrix &other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw DomainError("ComplexMatrix: shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).frobenius_norm();
}

/// ||M - M^dag||_F; zero exactly for Hermitian input.
inline double hermitian_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DomainError("hermitian_defect: matrix is not square");
    }
    double acc = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            acc += std::norm(m(r, c) - std::conj(m(c, r)));
        }
    }
    return std::sqrt(acc);
}

/// Square complex matrix equal to its conjugate transpose.
///
/// The general constructor symmetrizes, M <- (M + M^dag)/2, which is exact on
/// input that is already Hermitian and absorbs last-ulp drift otherwise. Use
/// `strict` on I/O paths where a visibly non-Hermitian input must be rejected.
class HermitianMatrix {
   public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(const ComplexMatrix &m) : m_(m.rows(), m.cols()) {
        if (!m.is_square() || m.rows() == 0) {
            throw DomainError("HermitianMatrix: expected a non-empty square matrix, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        }
        const std::size_t n = m.rows();
        for (std::size_t r = 0; r < n; ++r) {
            m_(r, r) = m(r, r).real();
            for (std::size_t c = r + 1; c < n; ++c) {
                const Complex mean = 0.5 * (m(r, c) + std::conj(m(c, r)));
                m_(r, c) = mean;
                m_(c, r) = std::conj(mean);
            }
        }
    }

    /// Rejects input whose anti-Hermitian part exceeds rel_tol * max(1, ||M||_F).
    static HermitianMatrix strict(const ComplexMatrix &m, double rel_tol = tol::hermitian_input_rel) {
        if (!m.is_square() || m.rows() == 0) {
            throw DomainError("HermitianMatrix: expected a non-empty square matrix");
        }
        const double defect = hermitian_defect(m);
        if (defect > rel_tol * std::max(1.0, m.frobenius_norm())) {
            throw DomainError("HermitianMatrix: ||M - M^dag||_F = " + std::to_string(defect) +
                              " exceeds Hermitian tolerance");
        }
        return HermitianMatrix(m);
    }

    static HermitianMatrix identity(std::size_t n) {
        return HermitianMatrix(ComplexMatrix::identity(n));
    }

    static HermitianMatrix zero(std::size_t n) {
        return HermitianMatrix(ComplexMatrix(n, n));
    }

    static HermitianMatrix diagonal(std::span<const double> diag) {
        return HermitianMatrix(ComplexMatrix::diagonal(diag));
    }

    std::size_t dim() const {
        return m_.rows();
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }
    operator const ComplexMatrix &() const {
        return m_;
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return m_(r, c);
    }

    double trace() const {
        return m_.trace().real();
    }
    double frobenius_norm() const {
        return m_.frobenius_norm();
    }

    friend HermitianMatrix operator+(const HermitianMatrix &a, const HermitianMatrix &b) {
        return HermitianMatrix(a.m_ + b.m_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix &a, const HermitianMatrix &b) {
        return HermitianMatrix(a.m_ - b.m_);
    }
    friend HermitianMatrix operator*(double s, const HermitianMatrix &a) {
        return HermitianMatrix(Complex(s) * a.m_);
    }

    bool operator==(const HermitianMatrix &) const = default;

   private:
    ComplexMatrix m_;
};

/// Eigenvalues in ascending order; column k of `eigenvectors` belongs to eigenvalues[k].
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    std::size_t dim() const {
        return eigenvalues.size();
    }

    /// Rank-one projector v_k v_k^dag.
    HermitianMatrix projector(std::size_t k) const {
        const std::size_t n = dim();
        ComplexMatrix p(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                p(r, c) = eigenvectors(r, k) * std::conj(eigenvectors(c, k));
            }
        }
        return HermitianMatrix(p);
    }

    /// V diag(eigenvalues) V^dag.
    ComplexMatrix reconstruct() const;
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix &a) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) {
                acc += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(acc);
}

// One complex Jacobi rotation annihilating a(p, q).
//
// With a(p, q) = r e^{i phi}, the unitary U = diag(1, e^{-i phi}) * R(c, s)
// restricted to (p, q) reduces the 2x2 block to the real symmetric case, where
// R is the classical rotation with tan(2 theta) = 2r / (a_qq - a_pp).
inline void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) {
        return;
    }
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * r);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex phase = apq / r;
    const Complex u_qp = -s * std::conj(phase);
    const Complex u_qq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp + u_qp * akq;
        a(k, q) = s * akp + u_qq * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk + std::conj(u_qp) * aqk;
        a(q, k) = s * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * r;
    a(q, q) = aqq + t * r;

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp + u_qp * vkq;
        v(k, q) = s * vkp + u_qq * vkq;
    }
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
///
/// Sweeps over all (p, q) pairs until the off-diagonal Frobenius norm falls
/// below 1e-13 * (1 + ||A||_F). Degenerate eigenspaces come back in an
/// arbitrary orthonormal basis. Throws NonConvergence after 100 sweeps.
inline SpectralDecomposition hermitian_eig(const HermitianMatrix &h) {
    const std::size_t n = h.dim();
    if (n == 0) {
        throw DomainError("hermitian_eig: empty matrix");
    }
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = tol::jacobi_rel * (1.0 + a.frobenius_norm());

    bool converged = detail::off_diagonal_norm(a) <= threshold;
    for (int sweep = 0; sweep < tol::jacobi_max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                detail::jacobi_rotate(a, v, p, q);
            }
        }
        converged = detail::off_diagonal_norm(a) <= threshold;
    }
    if (!converged) {
        throw NonConvergence("hermitian_eig: off-diagonal norm " + std::to_string(detail::off_diagonal_norm(a)) +
                             " above threshold after " + std::to_string(tol::jacobi_max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    SpectralDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

/// f(A) = sum_k f(lambda_k) v_k v_k^dag.
template <typename F>
ComplexMatrix apply_spectral_function(const SpectralDecomposition &s, F &&f) {
    const std::size_t n = s.dim();
    std::vector<Complex> fk(n);
    for (std::size_t k = 0; k < n; ++k) {
        fk[k] = f(s.eigenvalues[k]);
    }
    // Entry (r, c) is sum_k (v_rk conj(v_ck)) f_k, summed in the same order for
    // every entry, so f -> conj(f) yields the exact adjoint.
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += (s.eigenvectors(r, k) * std::conj(s.eigenvectors(c, k))) * fk[k];
            }
            out(r, c) = acc;
        }
    }
    return out;
}

inline ComplexMatrix SpectralDecomposition::reconstruct() const {
    return apply_spectral_function(*this, [](double x) { return Complex(x); });
}

/// Largest singular value, as sqrt(lambda_max(M^dag M)).
inline double operator_norm(const ComplexMatrix &m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return 0.0;
    }
    const auto gram = hermitian_eig(HermitianMatrix(m.adjoint() * m));
    return std::sqrt(std::max(0.0, gram.eigenvalues.back()));
}

inline double operator_norm(const HermitianMatrix &h) {
    const auto s = hermitian_eig(h);
    return std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
}

inline bool is_psd(const HermitianMatrix &a, double tolerance) {
    if (tolerance < 0.0) {
        throw DomainError("is_psd: negative tolerance");
    }
    return hermitian_eig(a).eigenvalues.front() >= -tolerance;
}

/// Support cutoff for an operator of the given norm.
inline double support_cutoff(double op_norm) {
    return tol::supp_rel * std::max(1.0, op_norm);
}

/// Projector onto the span of eigenvectors with eigenvalue > eps_supp.
inline HermitianMatrix support_projection(const SpectralDecomposition &s, double eps_supp) {
    return HermitianMatrix(apply_spectral_function(s, [eps_supp](double x) { return x > eps_supp ? 1.0 : 0.0; }));
}

/// ||V^dag V - I||_F.
inline double orthonormality_defect(const ComplexMatrix &v) {
    return frobenius_distance(v.adjoint() * v, ComplexMatrix::identity(v.cols()));
}

}  // namespace seqprod
