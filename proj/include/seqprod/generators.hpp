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

// Seeded generators of structured effect instances.
//
// Sampling is built directly on the raw 64-bit output of std::mt19937_64 so
// that a seed replays to identical matrices on every standard library; the
// <random> distributions are implementation-defined and are avoided here.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "seqprod/effects.hpp"
#include "seqprod/linalg.hpp"

namespace seqprod {

/// splitmix64 finalizer; used to derive independent per-trial streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    return mix_seed(mix_seed(mix_seed(mix_seed(seed) ^ a) ^ b) ^ c);
}

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }
    /// Uniform on {0, ..., n - 1}; n must be positive.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }
    bool coin() {
        return (engine_() >> 63) != 0;
    }

    /// Standard complex Gaussian (Box-Muller), E|z|^2 = 1.
    Complex gaussian() {
        const double u = 1.0 - uniform();
        const double v = uniform();
        const double radius = std::sqrt(-std::log(u));
        return std::polar(radius, 2.0 * std::numbers::pi * v);
    }

   private:
    std::mt19937_64 engine_;
};

enum class EffectKind { generic, projection, commuting_pair, kernel_disjoint_pair, near_boundary };

inline std::string_view to_string(EffectKind kind) {
    switch (kind) {
        case EffectKind::generic:
            return "generic";
        case EffectKind::projection:
            return "projection";
        case EffectKind::commuting_pair:
            return "commuting_pair";
        case EffectKind::kernel_disjoint_pair:
            return "kernel_disjoint_pair";
        case EffectKind::near_boundary:
            return "near_boundary";
    }
    return "unknown";
}

struct EffectGenSpec {
    std::size_t dim = 2;
    EffectKind kind = EffectKind::generic;
    std::uint64_t seed = 0;
};

/// One effect, or two for the pair kinds.
struct GeneratedEffects {
    Effect first;
    std::optional<Effect> second;
};

struct EffectPair {
    Effect a;
    Effect b;
};

struct EffectTriple {
    Effect a;
    Effect b;
    Effect c;
};

/// Draws effects V diag(lambda) V^dag over Haar-like unitaries V.
class EffectGenerator {
   public:
    explicit EffectGenerator(Rng &rng) : rng_(rng) {
    }

    /// Column-wise modified Gram-Schmidt on a complex Gaussian matrix. The R
    /// factor has positive diagonal, so the result is Haar distributed.
    ComplexMatrix unitary(std::size_t n) {
        ComplexMatrix g(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                g(r, c) = rng_.gaussian();
            }
        }
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t prev = 0; prev < c; ++prev) {
                Complex dot = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    dot += std::conj(g(r, prev)) * g(r, c);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    g(r, c) -= dot * g(r, prev);
                }
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                norm += std::norm(g(r, c));
            }
            norm = std::sqrt(norm);
            for (std::size_t r = 0; r < n; ++r) {
                g(r, c) /= norm;
            }
        }
        return g;
    }

    static Effect from_spectrum(const ComplexMatrix &v, std::span<const double> lambda) {
        return Effect::unchecked(HermitianMatrix(v * ComplexMatrix::diagonal(lambda) * v.adjoint()));
    }

    std::vector<double> uniform_spectrum(std::size_t n) {
        std::vector<double> lambda(n);
        for (double &x : lambda) {
            x = rng_.uniform();
        }
        return lambda;
    }

    /// 0/1 spectrum with at least one of each when n >= 2.
    std::vector<double> projection_spectrum(std::size_t n) {
        std::vector<double> lambda(n);
        for (double &x : lambda) {
            x = rng_.coin() ? 1.0 : 0.0;
        }
        if (n >= 2) {
            const std::size_t zero_at = rng_.index(n);
            const std::size_t one_at = (zero_at + 1 + rng_.index(n - 1)) % n;
            lambda[zero_at] = 0.0;
            lambda[one_at] = 1.0;
        }
        return lambda;
    }

    /// Spectrum from {0, 1e-12, 1 - 1e-12, 1} with at least one exact zero.
    std::vector<double> near_boundary_spectrum(std::size_t n) {
        static constexpr double values[] = {0.0, 1e-12, 1.0 - 1e-12, 1.0};
        std::vector<double> lambda(n);
        for (double &x : lambda) {
            x = values[rng_.index(4)];
        }
        lambda[rng_.index(n)] = 0.0;
        return lambda;
    }

    Effect generic(std::size_t n) {
        return from_spectrum(unitary(n), uniform_spectrum(n));
    }

    Effect projection(std::size_t n) {
        return from_spectrum(unitary(n), projection_spectrum(n));
    }

    Effect near_boundary(std::size_t n) {
        return from_spectrum(unitary(n), near_boundary_spectrum(n));
    }

    /// Two effects sharing one eigenbasis, so AB = BA up to rounding.
    EffectPair commuting_pair(std::size_t n) {
        const ComplexMatrix v = unitary(n);
        return {from_spectrum(v, uniform_spectrum(n)), from_spectrum(v, uniform_spectrum(n))};
    }

    /// A supported on the first k basis vectors, B on the rest; k uniform in [0, n].
    EffectPair kernel_disjoint_pair(std::size_t n) {
        const ComplexMatrix v = unitary(n);
        const std::size_t k = rng_.index(n + 1);
        std::vector<double> la(n, 0.0);
        std::vector<double> lb(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            (j < k ? la[j] : lb[j]) = rng_.uniform(0.05, 1.0);
        }
        return {from_spectrum(v, la), from_spectrum(v, lb)};
    }

    /// C with B + C <= I: C = (I - B)^{1/2} G (I - B)^{1/2} for a generic G.
    Effect sub_complement(const Effect &b) {
        const Effect root = sqrt_effect(b.complement());
        const Effect g = generic(b.dim());
        return Effect::unchecked(
            HermitianMatrix(root.matrix().matrix() * g.matrix().matrix() * root.matrix().matrix()));
    }

    /// A, B, C with C commuting with both A and B.
    ///
    /// C gets a block-degenerate spectrum over a random partition of a shared
    /// basis; A and B are block-diagonal in that basis but need not commute
    /// with each other. With all blocks of size one the three share an
    /// eigenbasis. Half the time B is squeezed into I - A so that A + B <= I.
    EffectTriple commuting_triple(std::size_t n) {
        const ComplexMatrix v = unitary(n);
        std::vector<std::size_t> block_start{0};
        for (std::size_t j = 1; j < n; ++j) {
            if (rng_.coin()) {
                block_start.push_back(j);
            }
        }
        block_start.push_back(n);

        std::vector<double> lc(n);
        ComplexMatrix a_inner(n, n);
        ComplexMatrix b_inner(n, n);
        for (std::size_t blk = 0; blk + 1 < block_start.size(); ++blk) {
            const std::size_t lo = block_start[blk];
            const std::size_t size = block_start[blk + 1] - lo;
            const double c_value = rng_.uniform();
            const Effect a_blk = generic(size);
            const Effect b_blk = generic(size);
            for (std::size_t r = 0; r < size; ++r) {
                lc[lo + r] = c_value;
                for (std::size_t c = 0; c < size; ++c) {
                    a_inner(lo + r, lo + c) = a_blk.matrix()(r, c);
                    b_inner(lo + r, lo + c) = b_blk.matrix()(r, c);
                }
            }
        }
        const Effect a = Effect::unchecked(HermitianMatrix(v * a_inner * v.adjoint()));
        Effect b = Effect::unchecked(HermitianMatrix(v * b_inner * v.adjoint()));
        if (rng_.coin()) {
            const Effect root = sqrt_effect(a.complement());
            b = Effect::unchecked(HermitianMatrix(root.matrix().matrix() * b.matrix().matrix() * root.matrix().matrix()));
        }
        return {a, b, from_spectrum(v, lc)};
    }

    Rng &rng() {
        return rng_;
    }

   private:
    Rng &rng_;
};

/// Draws one instance of the requested kind from a fresh stream seeded by spec.seed.
inline GeneratedEffects gen_effect(const EffectGenSpec &spec) {
    if (spec.dim < 1) {
        throw DomainError("gen_effect: dim must be >= 1");
    }
    Rng rng(spec.seed);
    EffectGenerator gen(rng);
    switch (spec.kind) {
        case EffectKind::generic:
            return {gen.generic(spec.dim), std::nullopt};
        case EffectKind::projection:
            return {gen.projection(spec.dim), std::nullopt};
        case EffectKind::near_boundary:
            return {gen.near_boundary(spec.dim), std::nullopt};
        case EffectKind::commuting_pair: {
            auto [a, b] = gen.commuting_pair(spec.dim);
            return {a, b};
        }
        case EffectKind::kernel_disjoint_pair: {
            auto [a, b] = gen.kernel_disjoint_pair(spec.dim);
            return {a, b};
        }
    }
    throw DomainError("gen_effect: unknown kind");
}

}  // namespace seqprod
