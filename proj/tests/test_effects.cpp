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

#include "seqprod/effects.hpp"

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "seqprod/generators.hpp"

using namespace seqprod;

namespace {

Effect diag_effect(double a, double b) {
    const std::vector<double> v{a, b};
    return Effect(HermitianMatrix::diagonal(v));
}

Effect effect_2x2(double x, Complex y, double z) {
    return Effect(HermitianMatrix(oracle::hermitian_2x2(x, y, z)));
}

double spectrum_excursion(const HermitianMatrix &h) {
    const auto s = hermitian_eig(h);
    return std::max(std::max(0.0, -s.eigenvalues.front()), std::max(0.0, s.eigenvalues.back() - 1.0));
}

constexpr double kTs[] = {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0};

}  // namespace

TEST(effect, validation) {
    EXPECT_NO_THROW(diag_effect(0.0, 1.0));
    EXPECT_THROW(diag_effect(-0.01, 0.5), DomainError);
    EXPECT_THROW(diag_effect(0.5, 1.01), DomainError);
    EXPECT_NO_THROW(diag_effect(-1e-10, 1.0 + 1e-10));
    const auto s = diag_effect(-1e-10, 1.0 + 1e-10).spectrum();
    EXPECT_EQ(s.eigenvalues.front(), 0.0);
    EXPECT_EQ(s.eigenvalues.back(), 1.0);
}

TEST(projection, validation) {
    EXPECT_NO_THROW(Projection(HermitianMatrix::diagonal(std::vector<double>{1.0, 0.0})));
    EXPECT_THROW(Projection(HermitianMatrix::diagonal(std::vector<double>{0.5, 0.0})), DomainError);
}

TEST(density_operator, validation) {
    EXPECT_NO_THROW(DensityOperator::maximally_mixed(3));
    EXPECT_THROW(DensityOperator(HermitianMatrix::diagonal(std::vector<double>{0.5, 0.6})), DomainError);
    EXPECT_THROW(DensityOperator(HermitianMatrix::diagonal(std::vector<double>{1.2, -0.2})), DomainError);
}

TEST(phase_parameter, rejects_non_finite) {
    EXPECT_THROW(PhaseParameter{INFINITY}, DomainError);
    EXPECT_THROW(PhaseParameter{NAN}, DomainError);
    EXPECT_EQ(PhaseParameter(2.5).value(), 2.5);
}

TEST(f_z, examples) {
    const Complex i(0.0, 1.0);
    EXPECT_EQ(f_z(i, 1.0), Complex(1.0));
    EXPECT_EQ(f_z(Complex(3.0, -7.0), 0.0), Complex{});
    const Complex v = f_z(i, 0.25);
    EXPECT_NEAR(v.real(), oracle::kCosLn025, 1e-15);
    EXPECT_NEAR(v.imag(), oracle::kSinLn025, 1e-15);
    // Real exponent: f_{1/2}(u) = sqrt(u).
    EXPECT_NEAR(std::abs(f_z(0.5, 0.81) - 0.9), 0.0, 1e-15);
}

TEST(f_z, domain) {
    EXPECT_THROW(f_z(1.0, -0.1), DomainError);
    EXPECT_THROW(f_z(1.0, 1.1), DomainError);
    EXPECT_THROW(f_z(1.0, NAN), DomainError);
    EXPECT_NO_THROW(f_z(1.0, 1.0 + 1e-13));
    EXPECT_EQ(f_z(Complex(0.0, 1.0), -1e-13), Complex{});
}

TEST(effect_power_it, projection_and_identity) {
    Rng rng(1);
    EffectGenerator gen(rng);
    const Effect e = gen.projection(4);
    for (double t : kTs) {
        EXPECT_LE(frobenius_distance(effect_power_it(e, t), e.matrix()), 1e-13);
    }
    EXPECT_LE(frobenius_distance(effect_power_it(Effect::identity(3), 1.0), ComplexMatrix::identity(3)), 1e-15);
}

TEST(effect_power_it, diagonal_values) {
    const ComplexMatrix p = effect_power_it(diag_effect(0.81, 0.25), 1.0);
    EXPECT_NEAR(p(0, 0).real(), oracle::kCosLn081, 1e-15);
    EXPECT_NEAR(p(0, 0).imag(), oracle::kSinLn081, 1e-15);
    EXPECT_NEAR(p(1, 1).real(), oracle::kCosLn025, 1e-15);
    EXPECT_NEAR(p(1, 1).imag(), oracle::kSinLn025, 1e-15);
    EXPECT_EQ(p(0, 1), Complex{});
}

TEST(effect_power_it, unitary_on_support) {
    Rng rng(2);
    EffectGenerator gen(rng);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (double t : kTs) {
            const Effect a = n % 2 == 0 ? gen.generic(n) : gen.near_boundary(n);
            const ComplexMatrix plus = effect_power_it(a, t);
            const ComplexMatrix minus = effect_power_it(a, -t);
            EXPECT_LE(frobenius_distance(plus * minus, effect_support(a)), 1e-10);
            EXPECT_LE(frobenius_distance(minus * plus, effect_support(a)), 1e-10);
            EXPECT_LE(operator_norm(plus), 1.0 + 1e-12);
            EXPECT_TRUE(plus.adjoint() == minus);
        }
    }
}

TEST(sqrt_effect, examples) {
    const Effect s = sqrt_effect(diag_effect(0.25, 0.81));
    EXPECT_NEAR(s.matrix()(0, 0).real(), 0.5, 1e-16);
    EXPECT_NEAR(s.matrix()(1, 1).real(), 0.9, 1e-16);

    Rng rng(3);
    EffectGenerator gen(rng);
    const Effect e = gen.projection(3);
    EXPECT_LE(frobenius_distance(sqrt_effect(e).matrix(), e.matrix()), 1e-14);
    for (std::size_t n = 1; n <= 6; ++n) {
        const Effect a = gen.generic(n);
        const Effect root = sqrt_effect(a);
        EXPECT_LE(frobenius_distance(root.matrix().matrix() * root.matrix().matrix(), a.matrix()), 1e-10);
        EXPECT_LE(spectrum_excursion(root.matrix()), 1e-12);
    }
}

TEST(luders_product, examples) {
    const Effect b = effect_2x2(0.5, Complex(0.2, -0.1), 0.4);
    EXPECT_LE(frobenius_distance(luders_product(Effect::identity(2), b).matrix(), b.matrix()), 1e-15);

    // Projection E: E o B = EBE.
    Rng rng(4);
    EffectGenerator gen(rng);
    for (std::size_t n = 2; n <= 5; ++n) {
        const Effect e = gen.projection(n);
        const Effect g = gen.generic(n);
        const ComplexMatrix &em = e.matrix();
        EXPECT_LE(frobenius_distance(luders_product(e, g).matrix(), em * g.matrix().matrix() * em), 1e-13);
    }

    // diag(0.81, 0.25) sandwich: off-diagonal 0.9 * 0.5 * y.
    const Complex y(0.2, 0.1);
    const Effect bb = effect_2x2(0.5, y, 0.5);
    const ComplexMatrix expected = oracle::diagonal_sandwich_2x2(0.9, 0.5, bb.matrix());
    const Effect out = luders_product(diag_effect(0.81, 0.25), bb);
    EXPECT_LE(frobenius_distance(out.matrix(), expected), 1e-15);
    EXPECT_NEAR(std::abs(out.matrix()(0, 1) - 0.45 * y), 0.0, 1e-15);
}

TEST(phased_product, identity_and_projection) {
    Rng rng(5);
    EffectGenerator gen(rng);
    for (double t : kTs) {
        const Effect b = gen.generic(3);
        EXPECT_LE(frobenius_distance(phased_product(Effect::identity(3), b, PhaseParameter(t)).matrix(), b.matrix()),
                  1e-14);
        const Effect e = gen.projection(3);
        const ComplexMatrix &em = e.matrix();
        EXPECT_LE(frobenius_distance(phased_product(e, b, PhaseParameter(t)).matrix(), em * b.matrix().matrix() * em),
                  1e-13);
    }
}

TEST(phased_product, diagonal_2x2_values) {
    const Effect b = effect_2x2(0.5, Complex(0.2, 0.0), 0.5);
    const Effect out = phased_product(diag_effect(0.81, 0.25), b, PhaseParameter(1.0));
    const ComplexMatrix expected = oracle::diagonal_sandwich_2x2(
        0.9 * Complex(oracle::kCosLn081, oracle::kSinLn081), 0.5 * Complex(oracle::kCosLn025, oracle::kSinLn025),
        b.matrix());
    EXPECT_LE(frobenius_distance(out.matrix(), expected), 1e-15);
    EXPECT_NEAR(out.matrix()(0, 0).real(), 0.405, 1e-16);
    EXPECT_NEAR(out.matrix()(1, 1).real(), 0.125, 1e-16);
    EXPECT_NEAR(out.matrix()(0, 1).real(), 0.09 * oracle::kCosTheta, 1e-15);
    EXPECT_NEAR(out.matrix()(0, 1).imag(), 0.09 * oracle::kSinTheta, 1e-15);
    EXPECT_NEAR(std::log(0.81) - std::log(0.25), oracle::kTheta, 1e-15);
}

TEST(phased_product, effect_closure) {
    Rng rng(6);
    EffectGenerator gen(rng);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (double t : kTs) {
            for (int rep = 0; rep < 20; ++rep) {
                const Effect a = rep % 5 == 0 ? gen.near_boundary(n) : gen.generic(n);
                const Effect b = rep % 3 == 0 ? gen.projection(n) : gen.generic(n);
                EXPECT_LE(spectrum_excursion(phased_product(a, b, PhaseParameter(t)).matrix()), 1e-10);
            }
        }
    }
}

TEST(phased_product, t_zero_is_luders) {
    Rng rng(7);
    EffectGenerator gen(rng);
    for (std::size_t n = 1; n <= 6; ++n) {
        const Effect a = gen.generic(n);
        const Effect b = gen.generic(n);
        EXPECT_LE(frobenius_distance(phased_product(a, b, PhaseParameter(0.0)).matrix(), luders_product(a, b).matrix()),
                  1e-12);
        // Independent route for the Lüders value: A^{1/2} B A^{1/2} by matrix products.
        const Effect root_effect = sqrt_effect(a);
            const ComplexMatrix &root = root_effect.matrix();
        EXPECT_LE(frobenius_distance(luders_product(a, b).matrix(), root * b.matrix().matrix() * root), 1e-13);
    }
}

TEST(phased_product, four_factor_route) {
    // The eigenbasis kernel against the literal A^{1/2} A^{it} B A^{-it} A^{1/2}.
    Rng rng(8);
    EffectGenerator gen(rng);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (double t : kTs) {
            const Effect a = gen.generic(n);
            const Effect b = gen.generic(n);
            const Effect root_effect = sqrt_effect(a);
            const ComplexMatrix &root = root_effect.matrix();
            const ComplexMatrix literal = root * effect_power_it(a, t) * b.matrix().matrix() * effect_power_it(a, -t) * root;
            EXPECT_LE(frobenius_distance(phased_product(a, b, PhaseParameter(t)).matrix(), literal), 1e-12);
        }
    }
}

TEST(phased_product, scalar_homogeneity) {
    Rng rng(9);
    EffectGenerator gen(rng);
    for (std::size_t n = 2; n <= 5; ++n) {
        for (double t : kTs) {
            const Effect a = gen.generic(n);
            const Effect b = gen.generic(n);
            const double s = rng.uniform();
            const PhaseParameter phase(t);
            const HermitianMatrix base = phased_product(a, b, phase).matrix();
            const Effect sb = Effect::unchecked(s * b.matrix());
            const Effect sa = Effect::unchecked(s * a.matrix());
            EXPECT_LE(frobenius_distance(phased_product(a, sb, phase).matrix(), (s * base).matrix()), 1e-11);
            EXPECT_LE(frobenius_distance(phased_product(sa, b, phase).matrix(), (s * base).matrix()), 1e-11);
        }
    }
}

TEST(phased_product, projection_absorption) {
    // A <= E for projection E: E o A = A o E = A.
    Rng rng(10);
    EffectGenerator gen(rng);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (double t : kTs) {
            const Effect e = gen.projection(n);
            const Effect g = gen.generic(n);
            const ComplexMatrix &em = e.matrix();
            const Effect a = Effect::unchecked(HermitianMatrix(em * g.matrix().matrix() * em));
            const PhaseParameter phase(t);
            EXPECT_LE(frobenius_distance(phased_product(e, a, phase).matrix(), a.matrix()), 1e-10);
            EXPECT_LE(frobenius_distance(phased_product(a, e, phase).matrix(), a.matrix()), 1e-10);
        }
    }
}

TEST(phased_product, additive_in_second_argument) {
    Rng rng(11);
    EffectGenerator gen(rng);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (double t : kTs) {
            const Effect a = gen.generic(n);
            const Effect b = gen.generic(n);
            const Effect c = gen.sub_complement(b);
            const PhaseParameter phase(t);
            const Effect bc = Effect::unchecked(b.matrix() + c.matrix());
            const HermitianMatrix sum = phased_product(a, b, phase).matrix() + phased_product(a, c, phase).matrix();
            EXPECT_LE(frobenius_distance(phased_product(a, bc, phase).matrix(), sum), 1e-11);
        }
    }
}

TEST(phased_product, dimension_mismatch) {
    EXPECT_THROW(phased_product(Effect::identity(2), Effect::identity(3), PhaseParameter(1.0)), DomainError);
}

TEST(closed_form_2d, examples) {
    const Complex y(0.1, 0.2);
    // a = b: the Lüders value a^2 B.
    const HermitianMatrix same = closed_form_2d(0.7, 0.7, 0.5, y, 0.4, 2.5);
    EXPECT_LE(frobenius_distance(same, (0.49 * HermitianMatrix(oracle::hermitian_2x2(0.5, y, 0.4))).matrix()), 1e-15);
    // b = 0.
    const HermitianMatrix b_zero = closed_form_2d(1.0, 0.0, 0.5, y, 0.4, 1.0);
    EXPECT_LE(frobenius_distance(b_zero, ComplexMatrix::diagonal(std::vector<double>{0.5, 0.0})), 0.0);
    // a = 0.
    const HermitianMatrix a_zero = closed_form_2d(0.0, 0.5, 0.5, y, 0.4, 1.0);
    EXPECT_LE(frobenius_distance(a_zero, ComplexMatrix::diagonal(std::vector<double>{0.0, 0.1})), 1e-16);
    // Phase values for A = diag(0.81, 0.25), y = 0.2.
    const HermitianMatrix cor = closed_form_2d(0.9, 0.5, 0.5, 0.2, 0.5, 1.0);
    EXPECT_NEAR(cor(0, 1).real(), 0.09 * oracle::kCosTheta, 1e-15);
    EXPECT_NEAR(cor(0, 1).imag(), 0.09 * oracle::kSinTheta, 1e-15);
}

TEST(closed_form_2d, domain_errors) {
    EXPECT_THROW(closed_form_2d(1.2, 0.5, 0.5, 0.0, 0.5, 1.0), DomainError);
    EXPECT_THROW(closed_form_2d(0.5, -0.1, 0.5, 0.0, 0.5, 1.0), DomainError);
    EXPECT_THROW(closed_form_2d(0.5, 0.5, 0.5, 0.6, 0.5, 1.0), DomainError);  // xz < |y|^2
    EXPECT_THROW(closed_form_2d(0.5, 0.5, 1.5, 0.0, 0.5, 1.0), DomainError);  // not <= I
    EXPECT_THROW(closed_form_2d(0.5, 0.5, 0.9, 0.3, 0.9, 1.0), DomainError);  // (1-x)(1-z) < |y|^2
    EXPECT_THROW(closed_form_2d(0.5, 0.5, 0.5, 0.0, 0.5, NAN), DomainError);
}

TEST(closed_form_2d, agrees_with_spectral_path) {
    oracle::TestRandom rnd(77);
    for (int rep = 0; rep < 500; ++rep) {
        const double a = rep % 17 == 0 ? 0.0 : rnd.uniform(0.001, 1.0);
        const double b = rep % 19 == 0 ? 0.0 : rnd.uniform(0.001, 1.0);
        const double x = rnd.uniform(0.0, 1.0);
        const double z = rnd.uniform(0.0, 1.0);
        const double bound = std::sqrt(std::min(x * z, (1.0 - x) * (1.0 - z)));
        const Complex y = std::polar(rnd.uniform(0.0, bound), rnd.uniform(-M_PI, M_PI));
        const double t = rnd.uniform(-3.0, 3.0);
        const HermitianMatrix closed = closed_form_2d(a, b, x, y, z, t);
        const Effect bm = Effect::unchecked(HermitianMatrix(oracle::hermitian_2x2(x, y, z)));
        const Effect spectral = phased_product(diag_effect(a * a, b * b), bm, PhaseParameter(t));
        EXPECT_LE(frobenius_distance(closed, spectral.matrix()), 1e-12) << "a=" << a << " b=" << b << " t=" << t;
    }
}

TEST(product_on_selfadjoint, examples) {
    Rng rng(12);
    EffectGenerator gen(rng);
    for (double t : kTs) {
        const PhaseParameter phase(t);
        const Effect b = gen.generic(4);
        EXPECT_LE(product_on_selfadjoint(b, HermitianMatrix::zero(4), phase).frobenius_norm(), 0.0);
        const double c = -2.75;
        EXPECT_LE(frobenius_distance(product_on_selfadjoint(b, c * HermitianMatrix::identity(4), phase),
                                     (c * b.matrix()).matrix()),
                  1e-13);
        const Effect a1 = gen.generic(4);
        const Effect a2 = gen.generic(4);
        const HermitianMatrix diff = product_on_selfadjoint(b, a1.matrix() - a2.matrix(), phase);
        const HermitianMatrix expected = phased_product(b, a1, phase).matrix() - phased_product(b, a2, phase).matrix();
        EXPECT_LE(frobenius_distance(diff, expected), 1e-11);
    }
}

TEST(product_on_selfadjoint, extension_recipe) {
    // S = M * A' with A' = S^+ / M an effect when S >= 0: B o S = M (B o A').
    Rng rng(13);
    EffectGenerator gen(rng);
    for (double t : kTs) {
        const PhaseParameter phase(t);
        const Effect b = gen.generic(3);
        const Effect a = gen.generic(3);
        const double big = 7.5;
        const HermitianMatrix s = big * a.matrix();
        EXPECT_LE(frobenius_distance(product_on_selfadjoint(b, s, phase), (big * phased_product(b, a, phase).matrix()).matrix()),
                  1e-11 * big);
    }
}
