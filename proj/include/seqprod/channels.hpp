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

// Kraus-form quantum operations built from effects.
//
// Choi convention (column stacking):
//
//   J = sum_{j,k} |j><k| (x) Phi(|j><k|)
//
// so J[(j * d + a), (k * d + b)] = Phi(|j><k|)[a, b]. The first tensor factor
// is the input, the second the output; Tr_out J = I certifies trace
// preservation and J >= 0 certifies complete positivity.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "seqprod/effects.hpp"
#include "seqprod/errors.hpp"
#include "seqprod/linalg.hpp"

namespace seqprod {

namespace tol {
inline constexpr double trace_preserving = 1e-10;
inline constexpr double decomposition_sum = 1e-8;
}  // namespace tol

class QuantumChannel {
   public:
    /// Requires sum_j K_j^dag K_j = I within tol::trace_preserving.
    static QuantumChannel trace_preserving(std::vector<ComplexMatrix> kraus, std::string label) {
        QuantumChannel c(std::move(kraus), std::move(label));
        const double err = frobenius_distance(c.kraus_completeness(), ComplexMatrix::identity(c.dim()));
        if (err > tol::trace_preserving) {
            throw DomainError("QuantumChannel '" + c.label_ + "': ||sum K^dag K - I||_F = " + std::to_string(err) +
                              " violates trace preservation");
        }
        return c;
    }

    /// Requires sum_j K_j^dag K_j <= I within tol::trace_preserving.
    static QuantumChannel trace_non_increasing(std::vector<ComplexMatrix> kraus, std::string label) {
        QuantumChannel c(std::move(kraus), std::move(label));
        const double top = hermitian_eig(HermitianMatrix(c.kraus_completeness())).eigenvalues.back();
        if (top > 1.0 + tol::trace_preserving) {
            throw DomainError("QuantumChannel '" + c.label_ + "': sum K^dag K has eigenvalue " +
                              std::to_string(top) + " > 1");
        }
        return c;
    }

    /// Requires sum_j K_j^dag K_j = expected within `tolerance`.
    static QuantumChannel with_completeness(std::vector<ComplexMatrix> kraus, std::string label,
                                            const ComplexMatrix &expected, double tolerance) {
        QuantumChannel c(std::move(kraus), std::move(label));
        const double err = frobenius_distance(c.kraus_completeness(), expected);
        if (err > tolerance) {
            throw DomainError("QuantumChannel '" + c.label_ + "': ||sum K^dag K - expected||_F = " +
                              std::to_string(err));
        }
        return c;
    }

    static QuantumChannel identity(std::size_t dim) {
        return trace_preserving({ComplexMatrix::identity(dim)}, "identity");
    }

    std::size_t dim() const {
        return dim_;
    }
    const std::vector<ComplexMatrix> &kraus() const {
        return kraus_;
    }
    const std::string &label() const {
        return label_;
    }

    /// sum_j K_j^dag K_j, the effect Phi^*(I).
    ComplexMatrix kraus_completeness() const {
        ComplexMatrix acc(dim_, dim_);
        for (const ComplexMatrix &k : kraus_) {
            acc += k.adjoint() * k;
        }
        return acc;
    }

   private:
    QuantumChannel(std::vector<ComplexMatrix> kraus, std::string label)
        : kraus_(std::move(kraus)), label_(std::move(label)) {
        if (kraus_.empty()) {
            throw DomainError("QuantumChannel: no Kraus operators");
        }
        dim_ = kraus_.front().rows();
        for (const ComplexMatrix &k : kraus_) {
            if (k.rows() != dim_ || k.cols() != dim_ || dim_ == 0) {
                throw DomainError("QuantumChannel: Kraus operators must all be square of one dimension");
            }
        }
    }

    std::size_t dim_ = 0;
    std::vector<ComplexMatrix> kraus_;
    std::string label_;
};

/// Effects summing to the identity.
class EffectDecomposition {
   public:
    explicit EffectDecomposition(std::vector<Effect> effects) : effects_(std::move(effects)) {
        if (effects_.empty()) {
            throw DecompositionError("EffectDecomposition: empty");
        }
        const std::size_t n = effects_.front().dim();
        ComplexMatrix sum(n, n);
        for (const Effect &e : effects_) {
            if (e.dim() != n) {
                throw DecompositionError("EffectDecomposition: effects have different dimensions");
            }
            sum += e.matrix().matrix();
        }
        sum_error_ = frobenius_distance(sum, ComplexMatrix::identity(n));
        if (sum_error_ > tol::decomposition_sum) {
            throw DecompositionError("EffectDecomposition: ||sum A_i - I||_F = " + std::to_string(sum_error_) +
                                     " violates sum A_i = I");
        }
    }

    const std::vector<Effect> &effects() const {
        return effects_;
    }
    std::size_t dim() const {
        return effects_.front().dim();
    }
    /// ||sum A_i - I||_F as measured at construction.
    double sum_error() const {
        return sum_error_;
    }

   private:
    std::vector<Effect> effects_;
    double sum_error_ = 0.0;
};

/// T -> B^{1/2} T B^{1/2}. Trace non-increasing, with Phi^*(I) = B.
inline QuantumChannel luders_channel(const Effect &b) {
    return QuantumChannel::trace_non_increasing({sqrt_effect(b).matrix().matrix()}, "luders");
}

/// rho -> sum_j A_j^{1/2} A_j^{it} rho A_j^{-it} A_j^{1/2}.
///
/// Kraus elements K_j = A_j^{1/2} A_j^{it} satisfy K_j^dag K_j = A_j, so the
/// operation is trace preserving exactly when the decomposition sums to I.
inline QuantumChannel phased_channel(const EffectDecomposition &d, double t) {
    const PhaseParameter phase(t);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(d.effects().size());
    for (const Effect &a : d.effects()) {
        kraus.push_back(sqrt_effect(a).matrix().matrix() * effect_power_it(a, phase.value()));
    }
    // Each K_j^dag K_j reproduces A_j up to the dropped sub-cutoff spectrum.
    const double tolerance = tol::trace_preserving * static_cast<double>(kraus.size());
    ComplexMatrix sum(d.dim(), d.dim());
    for (const Effect &a : d.effects()) {
        sum += a.matrix().matrix();
    }
    return QuantumChannel::with_completeness(std::move(kraus), "phased(t=" + std::to_string(t) + ")", sum,
                                             tolerance);
}

/// Run `first`, then `second`: Kraus set {K2 K1}.
inline QuantumChannel compose(const QuantumChannel &first, const QuantumChannel &second) {
    if (first.dim() != second.dim()) {
        throw DomainError("compose: dimension mismatch");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(first.kraus().size() * second.kraus().size());
    for (const ComplexMatrix &k2 : second.kraus()) {
        for (const ComplexMatrix &k1 : first.kraus()) {
            kraus.push_back(k2 * k1);
        }
    }
    return QuantumChannel::trace_non_increasing(std::move(kraus), second.label() + " after " + first.label());
}

/// sum_j K_j X K_j^dag on an arbitrary operator.
inline ComplexMatrix apply_kraus(const QuantumChannel &c, const ComplexMatrix &x) {
    if (x.rows() != c.dim() || x.cols() != c.dim()) {
        throw DomainError("apply_channel: dimension mismatch");
    }
    ComplexMatrix out(c.dim(), c.dim());
    for (const ComplexMatrix &k : c.kraus()) {
        out += k * x * k.adjoint();
    }
    return out;
}

/// Phi(rho). The result has unit trace only for trace-preserving channels, so it
/// is returned as a plain Hermitian matrix.
inline HermitianMatrix apply_channel(const QuantumChannel &c, const DensityOperator &rho) {
    return HermitianMatrix(apply_kraus(c, rho.matrix().matrix()));
}

/// Phi^*(X) = sum_j K_j^dag X K_j.
inline HermitianMatrix dual_apply(const QuantumChannel &c, const HermitianMatrix &x) {
    if (x.dim() != c.dim()) {
        throw DomainError("dual_apply: dimension mismatch");
    }
    ComplexMatrix out(c.dim(), c.dim());
    for (const ComplexMatrix &k : c.kraus()) {
        out += k.adjoint() * x.matrix() * k;
    }
    return HermitianMatrix(out);
}

inline HermitianMatrix choi_matrix(const QuantumChannel &c) {
    const std::size_t d = c.dim();
    ComplexMatrix j(d * d, d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t s = 0; s < d; ++s) {
            ComplexMatrix unit(d, d);
            unit(r, s) = 1.0;
            const ComplexMatrix image = apply_kraus(c, unit);
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t b = 0; b < d; ++b) {
                    j(r * d + a, s * d + b) = image(a, b);
                }
            }
        }
    }
    return HermitianMatrix(j);
}

/// Tr_out of a d^2 x d^2 Choi matrix.
inline ComplexMatrix choi_partial_trace_output(const HermitianMatrix &choi, std::size_t d) {
    if (choi.dim() != d * d) {
        throw DomainError("choi_partial_trace_output: Choi matrix is not d^2 x d^2");
    }
    ComplexMatrix out(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t s = 0; s < d; ++s) {
            for (std::size_t a = 0; a < d; ++a) {
                out(r, s) += choi(r * d + a, s * d + a);
            }
        }
    }
    return out;
}

inline double min_choi_eigenvalue(const QuantumChannel &c) {
    return hermitian_eig(choi_matrix(c)).eigenvalues.front();
}

}  // namespace seqprod
