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

// Randomized machine checks of the sequential-product axioms.
//
// Every check takes an arbitrary binary operation on effects and measures, per
// trial, a Frobenius-norm defect for each identity the axiom asserts. A trial
// fails when its largest defect exceeds the configured ceiling. Each trial
// also measures how far every product output is from being an effect, since
// a sequential product must map E(H) x E(H) into E(H).
//
//   S1  B + C <= I  =>  A o B + A o C <= I  and  A o B + A o C = A o (B + C)
//   S2  I o A = A
//   S3  A o B = 0   =>  A o B = B o A
//   S4  A | B       =>  A | (I - B)  and  A o (B o C) = (A o B) o C
//   S5  C | A, C | B  =>  C | (A o B)  and  C | (A + B) when A + B <= I
//
// where A | B means A o B = B o A. Hypotheses that random sampling would
// essentially never meet (A o B = 0, A | B) are produced by structured
// generators instead.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqprod/effects.hpp"
#include "seqprod/errors.hpp"
#include "seqprod/generators.hpp"
#include "seqprod/linalg.hpp"

namespace seqprod {

/// An operation (A, B) -> A o B under test. Output is a general matrix so that
/// products which leave E(H) can be measured rather than rejected.
struct ProductUnderTest {
    std::function<ComplexMatrix(const Effect &, const Effect &)> product;
    std::string label;
};

inline ProductUnderTest luders_under_test() {
    return {[](const Effect &a, const Effect &b) { return luders_product(a, b).matrix().matrix(); }, "luders"};
}

inline ProductUnderTest phased_under_test(double t) {
    const PhaseParameter phase(t);
    return {[phase](const Effect &a, const Effect &b) { return phased_product(a, b, phase).matrix().matrix(); },
            "phased(t=" + std::to_string(t) + ")"};
}

/// (A, B) -> AB. Not a sequential product (not even Hermitian-valued); used to
/// confirm the checks can fail.
inline ProductUnderTest naive_under_test() {
    return {[](const Effect &a, const Effect &b) { return a.matrix().matrix() * b.matrix().matrix(); }, "naive_ab"};
}

struct CheckConfig {
    std::size_t trials = 1000;
    /// Every dimension gets `trials` trials of its own.
    std::vector<std::size_t> dims{2, 3, 4, 6};
    std::uint64_t seed = 0;
    /// Largest defect a passing trial may show.
    double defect_ceiling = 1e-9;
    /// ||A o B||_F at or below this counts as A o B = 0 for S3.
    double zero_product = 1e-10;
    /// Non-commuting pairs must have ||AB - BA||_F at least this.
    double comm_floor = 0.01;
    /// Non-commuting pairs must give ||A o B - B o A||_F above this.
    double converse_gap = 1e-6;
};

using NamedInputs = std::vector<std::pair<std::string, ComplexMatrix>>;

struct Witness {
    std::size_t dim = 0;
    std::size_t trial = 0;
    NamedInputs inputs;
};

struct CheckReport {
    std::string axiom;
    std::string product;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst_violation = 0.0;
    std::optional<Witness> witness;
    std::uint64_t seed = 0;
    /// Failure counts per sub-identity, where a check has more than one.
    std::map<std::string, std::size_t> failures_by_part;
    /// Trials whose sampled inputs did not meet the hypothesis.
    std::size_t skipped = 0;

    bool passed() const {
        return failures == 0;
    }
};

namespace detail {

inline Effect as_effect(const ComplexMatrix &m) {
    return Effect::unchecked(HermitianMatrix(m));
}

/// Distance of m from E(H): anti-Hermitian part plus spectral excursion outside [0, 1].
inline double closure_defect(const ComplexMatrix &m) {
    const double skew = hermitian_defect(m);
    const auto s = hermitian_eig(HermitianMatrix(m));
    const double below = std::max(0.0, -s.eigenvalues.front());
    const double above = std::max(0.0, s.eigenvalues.back() - 1.0);
    return skew + below + above;
}

inline double defect(const ComplexMatrix &a, const ComplexMatrix &b) {
    return frobenius_distance(a, b);
}

// One measured sub-identity of a trial.
struct Part {
    std::string name;
    double violation = 0.0;
    bool failed = false;
};

using Parts = std::vector<Part>;

// Defect that must stay at or below the ceiling.
inline Part bounded(std::string name, double value, double ceiling) {
    return {std::move(name), value, !(value <= ceiling)};
}

// Quantity that must stay strictly above a floor; violation is the shortfall.
inline Part separated(std::string name, double value, double floor) {
    const bool ok = value > floor;
    return {std::move(name), ok ? 0.0 : floor - value, !ok};
}

// Accumulates per-trial results into a CheckReport.
class Tally {
   public:
    Tally(std::string axiom, const ProductUnderTest &p, const CheckConfig &cfg) : ceiling_(cfg.defect_ceiling) {
        report_.axiom = std::move(axiom);
        report_.product = p.label;
        report_.seed = cfg.seed;
    }

    double ceiling() const {
        return ceiling_;
    }

    // One trial; `inputs` is only invoked when the trial becomes the worst so far.
    void record(std::size_t dim, std::size_t trial, const Parts &parts, const std::function<NamedInputs()> &inputs) {
        ++report_.trials;
        double worst = 0.0;
        bool failed = false;
        for (const Part &part : parts) {
            worst = std::max(worst, part.violation);
            if (part.failed) {
                ++report_.failures_by_part[part.name];
                failed = true;
            }
        }
        if (failed) {
            ++report_.failures;
        }
        if (!report_.witness || worst > report_.worst_violation) {
            report_.worst_violation = worst;
            report_.witness = Witness{dim, trial, inputs()};
        }
    }

    void skip() {
        ++report_.skipped;
    }

    CheckReport &report() {
        return report_;
    }

   private:
    double ceiling_;
    CheckReport report_;
};

inline Rng trial_rng(const CheckConfig &cfg, std::uint64_t axiom_tag, std::size_t dim, std::size_t trial) {
    return Rng(derive_seed(cfg.seed, axiom_tag, dim, trial));
}

// Occasionally swaps a generic first operand for a near-boundary one.
inline Effect first_operand(EffectGenerator &gen, std::size_t dim, std::size_t trial) {
    return trial % 7 == 3 ? gen.near_boundary(dim) : gen.generic(dim);
}

}  // namespace detail

/// S1: additivity of B -> A o B.
inline CheckReport check_s1(const ProductUnderTest &p, const CheckConfig &cfg) {
    detail::Tally tally("S1", p, cfg);
    for (std::size_t dim : cfg.dims) {
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            Rng rng = detail::trial_rng(cfg, 1, dim, trial);
            EffectGenerator gen(rng);
            const Effect a = detail::first_operand(gen, dim, trial);
            const Effect b = gen.generic(dim);
            const Effect c = trial == 0 ? Effect::zero(dim) : trial == 1 ? b.complement() : gen.sub_complement(b);
            const Effect sum = Effect::unchecked(b.matrix() + c.matrix());

            const ComplexMatrix ab = p.product(a, b);
            const ComplexMatrix ac = p.product(a, c);
            const ComplexMatrix a_sum = p.product(a, sum);
            tally.record(dim, trial,
                         {detail::bounded("additivity", detail::defect(ab + ac, a_sum), tally.ceiling()),
                          detail::bounded("closure",
                                          std::max({detail::closure_defect(ab), detail::closure_defect(ac),
                                                    detail::closure_defect(ab + ac)}),
                                          tally.ceiling())},
                         [&] {
                             return NamedInputs{
                                 {"A", a.matrix()}, {"B", b.matrix()}, {"C", c.matrix()}};
                         });
        }
    }
    return std::move(tally.report());
}

/// S2: I o A = A.
inline CheckReport check_s2(const ProductUnderTest &p, const CheckConfig &cfg) {
    detail::Tally tally("S2", p, cfg);
    for (std::size_t dim : cfg.dims) {
        const Effect id = Effect::identity(dim);
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            Rng rng = detail::trial_rng(cfg, 2, dim, trial);
            EffectGenerator gen(rng);
            const Effect a = trial == 0 ? Effect::zero(dim) : trial == 1 ? id : detail::first_operand(gen, dim, trial);
            const ComplexMatrix ia = p.product(id, a);
            tally.record(dim, trial,
                         {detail::bounded("unit", detail::defect(ia, a.matrix()), tally.ceiling()),
                          detail::bounded("closure", detail::closure_defect(ia), tally.ceiling())},
                         [&] { return NamedInputs{{"A", a.matrix()}}; });
        }
    }
    return std::move(tally.report());
}

/// S3: A o B = 0 implies B o A = 0.
///
/// Pairs come from the kernel-disjoint generator, the orthogonal-projection
/// pair (E, I - E), A = 0, and every tenth trial a generic pair kept only if it
/// happens to satisfy A o B ~ 0. Throws InsufficientSamples if fewer than 10%
/// of trials met the hypothesis.
inline CheckReport check_s3(const ProductUnderTest &p, const CheckConfig &cfg) {
    detail::Tally tally("S3", p, cfg);
    std::size_t requested = 0;
    std::size_t admitted = 0;
    for (std::size_t dim : cfg.dims) {
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            ++requested;
            Rng rng = detail::trial_rng(cfg, 3, dim, trial);
            EffectGenerator gen(rng);
            std::optional<EffectPair> pair;
            if (trial == 0) {
                const Effect e = gen.projection(dim);
                pair = EffectPair{e, e.complement()};
            } else if (trial == 1) {
                pair = EffectPair{Effect::zero(dim), gen.generic(dim)};
            } else if (trial % 10 == 9) {
                pair = EffectPair{gen.generic(dim), gen.generic(dim)};
            } else {
                pair = gen.kernel_disjoint_pair(dim);
            }
            const ComplexMatrix ab = p.product(pair->a, pair->b);
            if (!(ab.frobenius_norm() <= cfg.zero_product)) {
                tally.skip();
                continue;
            }
            ++admitted;
            const ComplexMatrix ba = p.product(pair->b, pair->a);
            tally.record(dim, trial,
                         {detail::bounded("symmetry", detail::defect(ab, ba), tally.ceiling()),
                          detail::bounded("closure", detail::closure_defect(ba), tally.ceiling())},
                         [&] {
                             return NamedInputs{{"A", pair->a.matrix()}, {"B", pair->b.matrix()}};
                         });
        }
    }
    if (requested > 0 && admitted * 10 < requested) {
        throw InsufficientSamples("check_s3: only " + std::to_string(admitted) + " of " + std::to_string(requested) +
                                  " trials produced A o B = 0 for " + p.label);
    }
    return std::move(tally.report());
}

/// S4: for commuting A, B: A | (I - B) and A o (B o C) = (A o B) o C.
inline CheckReport check_s4(const ProductUnderTest &p, const CheckConfig &cfg) {
    detail::Tally tally("S4", p, cfg);
    for (std::size_t dim : cfg.dims) {
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            Rng rng = detail::trial_rng(cfg, 4, dim, trial);
            EffectGenerator gen(rng);
            std::optional<EffectPair> pair;
            if (trial == 0) {
                const Effect e = gen.projection(dim);
                pair = EffectPair{e, e};
            } else if (trial == 1) {
                pair = EffectPair{gen.generic(dim), Effect::identity(dim)};
            } else if (trial % 7 == 3) {
                const auto v = gen.unitary(dim);
                pair = EffectPair{EffectGenerator::from_spectrum(v, gen.near_boundary_spectrum(dim)),
                                  EffectGenerator::from_spectrum(v, gen.uniform_spectrum(dim))};
            } else {
                pair = gen.commuting_pair(dim);
            }
            const Effect &a = pair->a;
            const Effect &b = pair->b;
            const Effect c = gen.generic(dim);
            const Effect not_b = b.complement();

            const ComplexMatrix a_notb = p.product(a, not_b);
            const ComplexMatrix notb_a = p.product(not_b, a);
            const ComplexMatrix bc = p.product(b, c);
            const ComplexMatrix ab = p.product(a, b);
            const ComplexMatrix left = p.product(a, detail::as_effect(bc));
            const ComplexMatrix right = p.product(detail::as_effect(ab), c);
            tally.record(dim, trial,
                         {detail::bounded("complement_commutes", detail::defect(a_notb, notb_a), tally.ceiling()),
                          detail::bounded("associativity", detail::defect(left, right), tally.ceiling()),
                          detail::bounded("closure",
                                          std::max({detail::closure_defect(a_notb), detail::closure_defect(bc),
                                                    detail::closure_defect(ab), detail::closure_defect(left)}),
                                          tally.ceiling())},
                         [&] {
                             return NamedInputs{
                                 {"A", a.matrix()}, {"B", b.matrix()}, {"C", c.matrix()}};
                         });
        }
    }
    return std::move(tally.report());
}

/// S5: for C commuting with A and B: C | (A o B), and C | (A + B) when A + B <= I.
inline CheckReport check_s5(const ProductUnderTest &p, const CheckConfig &cfg) {
    detail::Tally tally("S5", p, cfg);
    for (std::size_t dim : cfg.dims) {
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            Rng rng = detail::trial_rng(cfg, 5, dim, trial);
            EffectGenerator gen(rng);
            EffectTriple triple = gen.commuting_triple(dim);
            if (trial == 0) {
                triple.c = Effect::identity(dim);
            } else if (trial == 1) {
                triple.c = Effect::unchecked(rng.uniform() * HermitianMatrix::identity(dim));
            }
            const auto &[a, b, c] = triple;

            const ComplexMatrix ab = p.product(a, b);
            const Effect ab_effect = detail::as_effect(ab);
            const ComplexMatrix c_ab = p.product(c, ab_effect);
            const ComplexMatrix ab_c = p.product(ab_effect, c);
            detail::Parts parts{
                detail::bounded("product_commutes", detail::defect(c_ab, ab_c), tally.ceiling()),
                detail::bounded("closure", std::max(detail::closure_defect(ab), detail::closure_defect(c_ab)),
                                tally.ceiling())};

            const HermitianMatrix sum = a.matrix() + b.matrix();
            if (hermitian_eig(sum).eigenvalues.back() <= 1.0 + 1e-12) {
                const Effect sum_effect = Effect::unchecked(sum);
                parts.push_back(detail::bounded(
                    "sum_commutes", detail::defect(p.product(c, sum_effect), p.product(sum_effect, c)),
                    tally.ceiling()));
            }
            tally.record(dim, trial, parts, [&] {
                return NamedInputs{
                    {"A", a.matrix()}, {"B", b.matrix()}, {"C", c.matrix()}};
            });
        }
    }
    return std::move(tally.report());
}

/// Both directions of "A o B = B o A iff AB = BA".
///
/// Forward: commuting pairs must give symmetric products equal to AB.
/// Converse (contrapositive): generic pairs with ||AB - BA||_F >= comm_floor
/// must give ||A o B - B o A||_F > converse_gap. Failures are tallied per
/// direction in failures_by_part.
inline CheckReport check_commutativity_theorem(const ProductUnderTest &p, const CheckConfig &cfg) {
    if (!(cfg.comm_floor > 0.0)) {
        throw DomainError("check_commutativity_theorem: comm_floor must be positive");
    }
    detail::Tally tally("commutativity", p, cfg);
    for (std::size_t dim : cfg.dims) {
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            Rng rng = detail::trial_rng(cfg, 6, dim, trial);
            EffectGenerator gen(rng);

            std::optional<EffectPair> pair;
            if (trial == 0) {
                std::vector<double> la = gen.uniform_spectrum(dim);
                std::vector<double> lb = gen.uniform_spectrum(dim);
                pair = EffectPair{Effect::unchecked(HermitianMatrix::diagonal(la)),
                                  Effect::unchecked(HermitianMatrix::diagonal(lb))};
            } else if (trial == 1) {
                const auto v = gen.unitary(dim);
                pair = EffectPair{EffectGenerator::from_spectrum(v, gen.projection_spectrum(dim)),
                                  EffectGenerator::from_spectrum(v, gen.projection_spectrum(dim))};
            } else {
                pair = gen.commuting_pair(dim);
            }
            const ComplexMatrix ab_prod = p.product(pair->a, pair->b);
            const ComplexMatrix ba_prod = p.product(pair->b, pair->a);
            const ComplexMatrix ordinary = pair->a.matrix().matrix() * pair->b.matrix().matrix();
            detail::Parts parts{detail::bounded(
                "forward", std::max(detail::defect(ab_prod, ba_prod), detail::defect(ab_prod, ordinary)),
                tally.ceiling())};

            // Converse: draw until the pair is far enough from commuting.
            std::optional<EffectPair> far;
            if (dim >= 2) {
                for (int attempt = 0; attempt < 1000 && !far; ++attempt) {
                    EffectPair candidate{gen.generic(dim), gen.generic(dim)};
                    const ComplexMatrix &am = candidate.a.matrix();
                    const ComplexMatrix &bm = candidate.b.matrix();
                    if ((am * bm - bm * am).frobenius_norm() >= cfg.comm_floor) {
                        far = candidate;
                    }
                }
            }
            if (far) {
                const double gap = detail::defect(p.product(far->a, far->b), p.product(far->b, far->a));
                parts.push_back(detail::separated("converse", gap, cfg.converse_gap));
            }
            tally.record(dim, trial, parts, [&] {
                NamedInputs in{{"A", pair->a.matrix()}, {"B", pair->b.matrix()}};
                if (far) {
                    in.emplace_back("A_noncommuting", far->a.matrix());
                    in.emplace_back("B_noncommuting", far->b.matrix());
                }
                return in;
            });
        }
    }
    return std::move(tally.report());
}

/// All five axioms plus the commutativity theorem.
inline std::vector<CheckReport> run_axiom_suite(const ProductUnderTest &p, const CheckConfig &cfg) {
    return {check_s1(p, cfg), check_s2(p, cfg), check_s3(p, cfg),
            check_s4(p, cfg), check_s5(p, cfg), check_commutativity_theorem(p, cfg)};
}

/// Group of numerically equal eigenvalues.
struct SpectralCluster {
    double value = 0.0;
    std::vector<std::size_t> members;
};

/// Groups ascending eigenvalues whose consecutive gaps are <= tolerance.
inline std::vector<SpectralCluster> spectral_clusters(const SpectralDecomposition &s, double tolerance = 1e-8) {
    std::vector<SpectralCluster> clusters;
    for (std::size_t k = 0; k < s.dim(); ++k) {
        const double x = s.eigenvalues[k];
        if (clusters.empty() || x - s.eigenvalues[clusters.back().members.back()] > tolerance) {
            clusters.push_back({x, {k}});
        } else {
            clusters.back().members.push_back(k);
        }
    }
    for (SpectralCluster &c : clusters) {
        double acc = 0.0;
        for (std::size_t k : c.members) {
            acc += s.eigenvalues[k];
        }
        c.value = acc / static_cast<double>(c.members.size());
    }
    return clusters;
}

/// Recovers the k-th spectral projector of B (clusters in ascending order) by
/// evaluating the Lagrange polynomial
///
///   G_k(z) = prod_{j != k} (z - w_j) / (w_k - w_j),  w_j = b_j^{1/2} f_{-i}(b_j)
///
/// at the matrix B^{1/2} B^{-i}. The nodes have distinct moduli b_j^{1/2}, so
/// they are distinct whenever the eigenvalues are.
inline HermitianMatrix projector_interpolation(const Effect &b, std::size_t k) {
    const SpectralDecomposition s = b.spectrum();
    const auto clusters = spectral_clusters(s);
    if (k >= clusters.size()) {
        throw DomainError("projector_interpolation: index " + std::to_string(k) + " but only " +
                          std::to_string(clusters.size()) + " distinct eigenvalues");
    }
    const double eps = effect_support_cutoff();
    const Complex minus_i(0.0, -1.0);
    auto node = [&](double u) { return u > eps ? std::sqrt(u) * f_z(minus_i, u) : Complex{}; };

    const std::size_t n = b.dim();
    const ComplexMatrix m = apply_spectral_function(s, node);
    const Complex wk = node(clusters[k].value);
    ComplexMatrix g = ComplexMatrix::identity(n);
    for (std::size_t j = 0; j < clusters.size(); ++j) {
        if (j == k) {
            continue;
        }
        const Complex wj = node(clusters[j].value);
        if (std::abs(wk - wj) < 1e-10) {
            throw ClusteredSpectrum("projector_interpolation: nodes " + std::to_string(j) + " and " +
                                    std::to_string(k) + " are closer than 1e-10");
        }
        g = g * ((m - wj * ComplexMatrix::identity(n)) * (1.0 / (wk - wj)));
    }
    return HermitianMatrix(g);
}

/// Result of searching for a pair on which the phased and Lüders products differ.
struct NonuniquenessWitness {
    double gap = 0.0;
    double t = 0.0;
    std::size_t dim = 0;
    std::size_t trial = 0;
    std::optional<EffectPair> pair;
    std::size_t trials = 0;
};

/// Maximizes ||phased(A, B, t) - luders(A, B)||_op over random pairs.
inline NonuniquenessWitness search_nonuniqueness(const CheckConfig &cfg, const std::vector<double> &t_values,
                                                 bool commuting_only) {
    NonuniquenessWitness best;
    for (double t : t_values) {
        const PhaseParameter phase(t);
        for (std::size_t dim : cfg.dims) {
            for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
                Rng rng(derive_seed(cfg.seed, 7, dim, trial));
                EffectGenerator gen(rng);
                EffectPair pair = commuting_only ? gen.commuting_pair(dim) : EffectPair{gen.generic(dim), gen.generic(dim)};
                const double gap = operator_norm(phased_product(pair.a, pair.b, phase).matrix().matrix() -
                                                 luders_product(pair.a, pair.b).matrix().matrix());
                ++best.trials;
                if (!best.pair || gap > best.gap) {
                    best.gap = gap;
                    best.t = t;
                    best.dim = dim;
                    best.trial = trial;
                    best.pair = pair;
                }
            }
        }
    }
    return best;
}

}  // namespace seqprod
