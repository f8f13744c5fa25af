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

// Quantum effects (0 <= A <= I) and the two sequential products on them:
//
//   luders_product(A, B)    = A^{1/2} B A^{1/2}
//   phased_product(A, B, t) = A^{1/2} A^{it} B A^{-it} A^{1/2}
//
// where A^{it} = f_{it}(A) and f_z(u) = exp(z ln u) on (0, 1], f_z(0) = 0.
// Both products go through one kernel that works in the eigenbasis of A, so
// t = 0 and the Lüders form share a code path.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "seqprod/errors.hpp"
#include "seqprod/linalg.hpp"

namespace seqprod {

namespace tol {
/// Spectrum slack accepted when validating an Effect.
inline constexpr double effect = 1e-9;
/// Idempotence tolerance for Projection.
inline constexpr double idempotent = 1e-11;
/// Spectrum-in-{0,1} tolerance for Projection.
inline constexpr double projection_spectrum = 1e-10;
/// PSD and unit-trace tolerance for DensityOperator.
inline constexpr double density = 1e-10;
/// Slack on the domain of f_z.
inline constexpr double fz_domain = 1e-12;
}  // namespace tol

/// Self-adjoint operator with spectrum in [0, 1].
class Effect {
   public:
    /// Validates the spectrum against [-slack, 1 + slack].
    explicit Effect(HermitianMatrix m, double slack = tol::effect) : m_(std::move(m)) {
        const auto s = hermitian_eig(m_);
        if (s.eigenvalues.front() < -slack) {
            throw DomainError("Effect: minimum eigenvalue " + std::to_string(s.eigenvalues.front()) +
                              " violates A >= 0");
        }
        if (s.eigenvalues.back() > 1.0 + slack) {
            throw DomainError("Effect: maximum eigenvalue " + std::to_string(s.eigenvalues.back()) +
                              " violates A <= I");
        }
    }

    /// Wraps a matrix known to be an effect up to rounding (e.g. a product output).
    static Effect unchecked(HermitianMatrix m) {
        return Effect(std::move(m), Unchecked{});
    }

    static Effect identity(std::size_t n) {
        return unchecked(HermitianMatrix::identity(n));
    }
    static Effect zero(std::size_t n) {
        return unchecked(HermitianMatrix::zero(n));
    }

    /// I - A.
    Effect complement() const {
        return unchecked(HermitianMatrix::identity(dim()) - m_);
    }

    /// Eigendecomposition with eigenvalues clamped into [0, 1].
    SpectralDecomposition spectrum() const {
        auto s = hermitian_eig(m_);
        for (double &x : s.eigenvalues) {
            x = std::clamp(x, 0.0, 1.0);
        }
        return s;
    }

    std::size_t dim() const {
        return m_.dim();
    }
    const HermitianMatrix &matrix() const {
        return m_;
    }
    operator const HermitianMatrix &() const {
        return m_;
    }

   private:
    struct Unchecked {};
    Effect(HermitianMatrix m, Unchecked) : m_(std::move(m)) {
    }

    HermitianMatrix m_;
};

/// Orthogonal projection, a sharp effect.
class Projection {
   public:
    explicit Projection(HermitianMatrix m) : m_(std::move(m)) {
        const double idem = frobenius_distance(m_.matrix() * m_.matrix(), m_.matrix());
        if (idem > tol::idempotent) {
            throw DomainError("Projection: ||P^2 - P||_F = " + std::to_string(idem) + " violates P^2 = P");
        }
        for (double x : hermitian_eig(m_).eigenvalues) {
            if (std::min(std::abs(x), std::abs(x - 1.0)) > tol::projection_spectrum) {
                throw DomainError("Projection: eigenvalue " + std::to_string(x) + " not in {0, 1}");
            }
        }
    }

    Effect as_effect() const {
        return Effect::unchecked(m_);
    }
    std::size_t dim() const {
        return m_.dim();
    }
    const HermitianMatrix &matrix() const {
        return m_;
    }

   private:
    HermitianMatrix m_;
};

/// Positive semidefinite, unit-trace operator.
class DensityOperator {
   public:
    explicit DensityOperator(HermitianMatrix m) : m_(std::move(m)) {
        const double tr = m_.trace();
        if (std::abs(tr - 1.0) > tol::density) {
            throw DomainError("DensityOperator: trace " + std::to_string(tr) + " violates tr = 1");
        }
        if (!is_psd(m_, tol::density)) {
            throw DomainError("DensityOperator: negative eigenvalue violates rho >= 0");
        }
    }

    static DensityOperator maximally_mixed(std::size_t n) {
        return DensityOperator((1.0 / static_cast<double>(n)) * HermitianMatrix::identity(n));
    }

    std::size_t dim() const {
        return m_.dim();
    }
    const HermitianMatrix &matrix() const {
        return m_;
    }

   private:
    HermitianMatrix m_;
};

/// Exponent scale t in A^{it}; t = 0 gives the Lüders product.
class PhaseParameter {
   public:
    constexpr PhaseParameter() = default;
    explicit PhaseParameter(double t) : t_(t) {
        if (!std::isfinite(t)) {
            throw DomainError("PhaseParameter: t must be finite");
        }
    }
    double value() const {
        return t_;
    }

   private:
    double t_ = 0.0;
};

/// f_z(u) = exp(z ln u) for u in (0, 1], and exactly 0 at u = 0.
inline Complex f_z(Complex z, double u) {
    if (!(u >= -tol::fz_domain && u <= 1.0 + tol::fz_domain)) {
        throw DomainError("f_z: argument " + std::to_string(u) + " outside [0, 1]");
    }
    if (u <= 0.0) {
        return 0.0;
    }
    return std::exp(z * std::log(std::min(u, 1.0)));
}

/// Support cutoff used by every effect functional calculus.
inline double effect_support_cutoff() {
    return support_cutoff(1.0);
}

/// A^{it} = f_{it}(A) with eigenvalues below the support cutoff treated as 0.
inline ComplexMatrix effect_power_it(const Effect &a, double t) {
    const double eps = effect_support_cutoff();
    const Complex z(0.0, t);
    return apply_spectral_function(a.spectrum(), [&](double u) { return u > eps ? f_z(z, u) : Complex{}; });
}

/// Projector onto the closure of the range of A.
inline HermitianMatrix effect_support(const Effect &a) {
    return support_projection(a.spectrum(), effect_support_cutoff());
}

inline Effect sqrt_effect(const Effect &a) {
    return Effect::unchecked(
        HermitianMatrix(apply_spectral_function(a.spectrum(), [](double u) { return Complex(std::sqrt(u)); })));
}

namespace detail {

// Computes W X W^dag with W = A^{1/2} A^{it}, working in the eigenbasis of A:
// entry (j, k) of V^dag X V is scaled by w_j conj(w_k), w_j = a_j^{1/2} e^{it ln a_j},
// and zero-eigenvalue rows/columns are dropped.
inline HermitianMatrix phased_sandwich(const SpectralDecomposition &s, const ComplexMatrix &x, double t) {
    const std::size_t n = s.dim();
    if (x.rows() != n || x.cols() != n) {
        throw DomainError("sequential product: dimension mismatch (" + std::to_string(n) + " vs " +
                          std::to_string(x.rows()) + ")");
    }
    const double eps = effect_support_cutoff();
    std::vector<Complex> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = s.eigenvalues[j];
        w[j] = a > eps ? std::sqrt(a) * std::polar(1.0, t * std::log(a)) : Complex{};
    }
    const ComplexMatrix &v = s.eigenvectors;
    ComplexMatrix inner = v.adjoint() * x * v;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            inner(j, k) *= w[j] * std::conj(w[k]);
        }
    }
    return HermitianMatrix(v * inner * v.adjoint());
}

}  // namespace detail

/// A^{1/2} A^{it} B A^{-it} A^{1/2}.
inline Effect phased_product(const Effect &a, const Effect &b, PhaseParameter t) {
    return Effect::unchecked(detail::phased_sandwich(a.spectrum(), b.matrix(), t.value()));
}

/// A^{1/2} B A^{1/2}; the t = 0 member of the phased family.
inline Effect luders_product(const Effect &a, const Effect &b) {
    return phased_product(a, b, PhaseParameter(0.0));
}

/// Linear extension of B o (.) to an arbitrary self-adjoint operand.
inline HermitianMatrix product_on_selfadjoint(const Effect &b, const HermitianMatrix &s, PhaseParameter t) {
    return detail::phased_sandwich(b.spectrum(), s.matrix(), t.value());
}

/// Closed form of the phased product for A = diag(a^2, b^2) and B = [[x, y], [conj(y), z]].
///
/// For a, b > 0 the off-diagonal entry picks up the phase e^{i t (ln a^2 - ln b^2)};
/// if either of a, b is exactly zero its row and column vanish.
inline HermitianMatrix closed_form_2d(double a, double b, double x, Complex y, double z, double t) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
        throw DomainError("closed_form_2d: a and b must lie in [0, 1]");
    }
    if (!std::isfinite(t) || !std::isfinite(x) || !std::isfinite(z) || !is_finite(y)) {
        throw DomainError("closed_form_2d: non-finite input");
    }
    // B in E(H): 0 <= B <= I for a 2x2 Hermitian matrix.
    const double slack = tol::effect;
    const double yy = std::norm(y);
    const bool positive = x >= -slack && z >= -slack && x * z - yy >= -slack;
    const bool bounded = x <= 1.0 + slack && z <= 1.0 + slack && (1.0 - x) * (1.0 - z) - yy >= -slack;
    if (!positive || !bounded) {
        throw DomainError("closed_form_2d: [[x, y], [conj(y), z]] is not an effect");
    }

    ComplexMatrix m(2, 2);
    if (a > 0.0 && b > 0.0) {
        const double theta = std::log(a * a) - std::log(b * b);
        const Complex off = a * b * std::polar(1.0, theta * t) * y;
        m(0, 0) = a * a * x;
        m(0, 1) = off;
        m(1, 0) = std::conj(off);
        m(1, 1) = b * b * z;
    } else if (a > 0.0) {
        m(0, 0) = a * a * x;
    } else if (b > 0.0) {
        m(1, 1) = b * b * z;
    }
    return HermitianMatrix(m);
}

}  // namespace seqprod
