#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle/high_precision.hpp"
#include "support.hpp"

using namespace hermlat;

namespace {

struct known_field {
    const char* name;
    long long disc;
    int r1, r2;
};

const known_field known[] = {
    {"q", 1, 1, 0},         {"q_i", -4, 0, 1},       {"q_sqrt2", 8, 2, 0},  {"q_sqrt_m2", -8, 0, 1},
    {"q_sqrt_m3", -3, 0, 1}, {"q_zeta5", 125, 0, 2}, {"q_sqrt5", 5, 2, 0},
};

field_element random_element(const number_field& F, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-7, 7), den(1, 4);
    field_element a = F.zero();
    for (auto& c : a.coords) c = rational(num(rng), den(rng));
    return a;
}

}  // namespace

TEST(NumberField, SignatureAndDiscriminant) {
    for (const auto& k : known) {
        const auto F = support::field(k.name);
        EXPECT_EQ(F.discriminant(), integer(k.disc)) << k.name;
        EXPECT_EQ(F.r1(), k.r1) << k.name;
        EXPECT_EQ(F.r2(), k.r2) << k.name;
        EXPECT_EQ(F.r1() + 2 * F.r2(), F.degree());
    }
}

TEST(NumberField, TraceGramMatchesEmbeddingSum) {
    for (const auto& k : known) {
        const auto F = support::field(k.name);
        const auto n = static_cast<std::size_t>(F.degree());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                // Σ_σ σ(b_i) σ(b_j) from the roots, with b_i evaluated by hand.
                complex acc = 0;
                for (const auto& e : F.embeddings()) {
                    auto ev = [&](std::size_t idx) {
                        complex v = 0, p = 1;
                        for (std::size_t t = 0; t < n; ++t) {
                            v += F.integral_basis()(t, idx).convert_to<real>() * p;
                            p *= e.root;
                        }
                        return v;
                    };
                    acc += ev(i) * ev(j);
                }
                EXPECT_NEAR(static_cast<double>(acc.real()), F.trace_gram()(i, j).convert_to<double>(), 1e-12);
                EXPECT_NEAR(static_cast<double>(acc.imag()), 0.0, 1e-12);
                EXPECT_TRUE(is_integral(F.trace_gram()(i, j)));
            }
    }
}

TEST(NumberField, EmbeddingOrder) {
    const auto F = support::field("q_zeta5");
    const auto& e = F.embeddings();
    ASSERT_EQ(e.size(), 4u);
    EXPECT_NEAR(static_cast<double>(e[0].root.real()), std::cos(4 * M_PI / 5), 1e-15);
    EXPECT_GT(e[0].root.imag(), 0);
    EXPECT_EQ(e[0].conjugate, 1u);
    EXPECT_NEAR(static_cast<double>(e[1].root.imag()), -std::sin(4 * M_PI / 5), 1e-15);
    EXPECT_NEAR(static_cast<double>(e[2].root.real()), std::cos(2 * M_PI / 5), 1e-15);
    EXPECT_EQ(e[3].conjugate, 2u);

    const auto R = support::field("q_sqrt2");
    EXPECT_NEAR(static_cast<double>(R.embeddings()[0].root.real()), -std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(static_cast<double>(R.embeddings()[1].root.real()), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(R.embeddings()[0].conjugate, 0u);
}

TEST(NumberField, RootsAreCertified) {
    for (const auto& k : known) {
        const auto F = support::field(k.name);
        for (const auto& e : F.embeddings()) {
            const complex v = poly::evaluate(F.defining_poly(), e.root);
            EXPECT_LT(static_cast<double>(std::abs(v)), 1e-15) << k.name;
            EXPECT_GE(e.radius, 0);
        }
    }
}

TEST(NumberField, TotallyRealCubics) {
    const auto F = number_field::build({1, -3, 0, 1});  // x^3 - 3x + 1
    EXPECT_EQ(F.r1(), 3);
    EXPECT_EQ(F.discriminant(), integer(81));
    const auto G = number_field::build({-2, 0, 0, 1});
    EXPECT_EQ(G.r1(), 1);
    EXPECT_EQ(G.r2(), 1);
    EXPECT_EQ(G.discriminant(), integer(-108));
}

TEST(NumberField, RingAxiomsAndInverse) {
    std::mt19937 rng(5);
    for (const auto& k : known) {
        const auto F = support::field(k.name);
        for (int t = 0; t < 25; ++t) {
            const auto a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
            EXPECT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
            EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            EXPECT_EQ(F.mul(a, b), F.mul(b, a));
            EXPECT_EQ(F.add(a, F.neg(a)), F.zero());
            if (!a.is_zero()) {
                EXPECT_EQ(F.mul(a, F.inverse(a)), F.one());
            }
            EXPECT_EQ(F.trace(F.add(a, b)), F.trace(a) + F.trace(b));
            for (std::size_t s = 0; s < F.embeddings().size(); ++s) {
                const complex lhs = F.embed(F.mul(a, b), s), rhs = F.embed(a, s) * F.embed(b, s);
                EXPECT_LT(static_cast<double>(std::abs(lhs - rhs)), 1e-12 * (1 + static_cast<double>(std::abs(rhs))));
            }
            complex tr = 0;
            for (std::size_t s = 0; s < F.embeddings().size(); ++s) tr += F.embed(a, s);
            EXPECT_NEAR(static_cast<double>(tr.real()), F.trace(a).convert_to<double>(), 1e-11);
        }
    }
}

TEST(NumberField, IntegralCoordinatesRoundTrip) {
    const auto F = support::field("q_sqrt5");
    EXPECT_TRUE(F.basis_supplied());
    const auto w = F.basis_element(1);  // (1 + sqrt5)/2
    EXPECT_EQ(F.mul(w, w), F.add(w, F.one()));
    const auto z = F.to_integral_coords(F.theta_power(1));
    EXPECT_EQ(z[0], rational(-1));
    EXPECT_EQ(z[1], rational(2));
    EXPECT_FALSE(support::field("q_i").basis_supplied());
}

TEST(NumberField, Rejections) {
    EXPECT_THROW(number_field::build({1, 0, 2}), invalid_input);             // not monic
    EXPECT_THROW(number_field::build({-1, 0, 1}), invalid_input);            // x^2 - 1
    EXPECT_THROW(number_field::build({4, 0, 0, 0, 1}), invalid_input);       // x^4 + 4
    EXPECT_THROW(number_field::build({1, 0, 2, 0, 1}), invalid_input);       // (x^2 + 1)^2
    EXPECT_THROW(number_field::build({5}), invalid_input);                   // degree 0
    EXPECT_THROW(number_field::build({1, 0, 1}, std::nullopt, 16), invalid_input);
    EXPECT_THROW(number_field::build({1, 0, 1}, std::nullopt, 128), invalid_input);
    rational_matrix not_containing(2, 2);  // {2, θ}
    not_containing(0, 0) = 2;
    not_containing(1, 1) = 1;
    EXPECT_THROW(number_field::build({1, 0, 1}, not_containing), invalid_input);
    rational_matrix non_integral(2, 2);  // {1, θ/2}
    non_integral(0, 0) = 1;
    non_integral(1, 1) = rational(1, 2);
    EXPECT_THROW(number_field::build({1, 0, 1}, non_integral), invalid_input);
}

TEST(NumberField, ReducedPrecisionStillBuilds) {
    const auto F = number_field::build({1, 1, 1, 1, 1}, std::nullopt, 24);
    EXPECT_EQ(F.precision_bits(), 24);
    EXPECT_EQ(F.discriminant(), integer(125));
}

TEST(NumberField, ConstantCAgainstHighPrecision) {
    for (const auto& k : known) {
        const auto F = support::field(k.name);
        for (int N = 1; N <= 16; ++N) {
            const double expect = oracle::constant_C(N, std::llabs(k.disc), F.degree(), k.r2).convert_to<double>();
            EXPECT_NEAR(static_cast<double>(constant_C(N, F)), expect, 1e-14 * (1 + std::abs(expect))) << k.name << N;
        }
    }
    const auto Qi = support::field("q_i");
    EXPECT_NEAR(static_cast<double>(constant_C(1, Qi)), 1.8536, 1e-4);
    EXPECT_NEAR(static_cast<double>(constant_C(2, Qi)), 2.8934, 1e-4);
    const auto Q = support::field("q");
    for (int N = 1; N <= 16; ++N) EXPECT_NEAR(static_cast<double>(constant_C(N, Q)), 1.5 * std::log(N), 1e-15);
    EXPECT_THROW(constant_C(0, Q), invalid_input);
}

TEST(Polynomial, SturmCountsAgreeWithRoots) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int t = 0; t < 40; ++t) {
        poly::rational_poly p{coef(rng), coef(rng), coef(rng), coef(rng), 1};
        if (poly::degree(poly::gcd(p, poly::derivative(p))) > 0) continue;
        int real_roots = 0;
        for (const auto& r : poly::complex_roots(p))
            if (std::abs(r.value.imag()) < 1e-9) ++real_roots;
        EXPECT_EQ(poly::count_real_roots(p), real_roots);
    }
}
