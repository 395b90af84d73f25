#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "support.hpp"

using namespace hermlat;

namespace {

bool all_pass(const std::vector<theorem_report>& reps) {
    for (const auto& r : reps)
        if (r.outcome != verdict::pass) return false;
    return true;
}

const theorem_report* find_report(const std::vector<theorem_report>& reps, const std::string& statement, int k) {
    for (const auto& r : reps)
        if (r.statement == statement && r.k == k) return &r;
    return nullptr;
}

}  // namespace

TEST(Transference, FixturesPassEveryStatement) {
    for (const char* name : support::bundle_names) {
        transference_context ctx(support::bundle(name));
        const auto reps = check_all(ctx);
        EXPECT_TRUE(all_pass(reps)) << name;
        EXPECT_EQ(reps.size(), static_cast<std::size_t>(3 * ctx.N() + ctx.N() * ctx.r()));
    }
}

TEST(Transference, TrivialRankOneIsEquality) {
    const auto rep = check_transference(support::bundle("z1_trivial"), 1);
    EXPECT_EQ(rep.outcome, verdict::pass);
    EXPECT_EQ(rep.links[0].rhs, 0);  // μ_1 + μ_1* = 0
    EXPECT_EQ(rep.links[1].rhs, 0);  // C(1, Q) = 0
    const auto b = check_banaszczyk(support::bundle("z1_trivial"), 1);
    EXPECT_EQ(b.links[0].lhs, 0);
    EXPECT_EQ(b.links[0].rhs, 0);
}

TEST(Transference, IndexRangesAreChecked) {
    transference_context ctx(support::bundle("qi_rank2"));
    EXPECT_THROW(check_transference(ctx, 0), invalid_input);
    EXPECT_THROW(check_transference(ctx, 3), invalid_input);
    EXPECT_THROW(check_banaszczyk(ctx, 5), invalid_input);
    EXPECT_THROW(check_rank_comparison(ctx, 2), invalid_input);
    EXPECT_THROW(check_rank_comparison(ctx, -1), invalid_input);
    EXPECT_THROW(check_proof_chain(ctx, 0), invalid_input);
}

TEST(Transference, ProofChainLinksAndSlacks) {
    transference_context ctx(support::bundle("sqrt2_rank2"));
    const auto rep = check_proof_chain(ctx, 2);
    ASSERT_EQ(rep.links.size(), 7u);
    const char* names[] = {"mu-vs-lambda",       "dual-vs-trace-dual", "minkowski-bound", "trace-dual-mu-vs-lambda",
                           "index-monotonicity", "mixed-transference", "sandwich-upper"};
    for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_EQ(rep.links[i].name, names[i]);
        EXPECT_TRUE(rep.links[i].holds) << names[i];
    }
    EXPECT_EQ(rep.links[0].slack, structural_slack);
    EXPECT_EQ(rep.links[5].slack, transcendental_slack);
    // Q(sqrt2) is the equality case of the Minkowski link.
    EXPECT_NEAR(static_cast<double>(rep.links[2].lhs), static_cast<double>(rep.links[2].rhs), 1e-15);
}

TEST(Transference, CyclotomicFiveBreaksOnlyTheMinkowskiLink) {
    gaussian_source rng(5);
    transference_context ctx(random_bundle(support::field("q_zeta5"), 1, rng));
    const auto rep = check_proof_chain(ctx, 1);
    EXPECT_EQ(rep.outcome, verdict::fail);
    for (const auto& l : rep.links) EXPECT_EQ(l.holds, l.name != "minkowski-bound") << l.name;
    EXPECT_EQ(check_transference(ctx, 1).outcome, verdict::pass);
}

TEST(Transference, TinyBudgetIsUncertified) {
    transference_context ctx(support::bundle("qi_rank2"), 3);
    EXPECT_EQ(check_banaszczyk(ctx, 2).outcome, verdict::uncertified);
    EXPECT_EQ(check_transference(ctx, 1).outcome, verdict::uncertified);
}

TEST(Transference, DigestTracksInputs) {
    const auto E = support::bundle("qi_rank2");
    auto grams = E.grams();
    grams[0](0, 0) += real(1e-6);
    grams[1](0, 0) += real(1e-6);
    const auto E2 = make_bundle(E.field(), 2, grams);
    EXPECT_EQ(bundle_digest(E), bundle_digest(support::bundle("qi_rank2")));
    EXPECT_NE(bundle_digest(E), bundle_digest(E2));
    EXPECT_EQ(bundle_digest(E).size(), 16u);
}

TEST(RandomSource, FrozenStreams) {
    EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafull);
    gaussian_source a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
    gaussian_source c(7);
    double s = 0, s2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = static_cast<double>(c.normal());
        s += v;
        s2 += v * v;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(RandomSource, BundlesAreWellConditionedAndConjugationInvariant) {
    gaussian_source rng(77);
    for (const char* f : {"q", "q_i", "q_sqrt2", "q_zeta5"}) {
        const auto F = support::field(f);
        for (int t = 0; t < 20; ++t) {
            const auto E = random_bundle(F, 3, rng);
            for (std::size_t s = 0; s < E.grams().size(); ++s) {
                Eigen::SelfAdjointEigenSolver<complex_matrix> es(E.gram(s));
                const auto ev = es.eigenvalues();
                EXPECT_LE(ev.maxCoeff() / ev.minCoeff(), 1e3L * (1 + 1e-9L));
                if (F.embeddings()[s].is_real) {
                    EXPECT_EQ(E.gram(s).imag().cwiseAbs().maxCoeff(), 0);
                }
            }
        }
    }
}

TEST(Fuzz, DeterministicAndGuarded) {
    std::vector<fuzz_field> fields{{"Q(i)", support::field("q_i")}, {"Q(sqrt2)", support::field("q_sqrt2")}};
    fuzz_options opt;
    opt.trials = 6;
    opt.seed = 2718;
    const auto a = fuzz(fields, opt), b = fuzz(fields, opt);
    ASSERT_EQ(a.size(), 6u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(io::to_json(a[i]).dump(), io::to_json(b[i]).dump());
        EXPECT_EQ(a[i].field_label, i % 2 == 0 ? "Q(i)" : "Q(sqrt2)");
        EXPECT_EQ(a[i].outcome, verdict::pass);
    }
    opt.rank_max = 5;
    EXPECT_THROW(fuzz(fields, opt), invalid_input);
    opt.max_z_rank = 10;
    opt.trials = 0;
    EXPECT_NO_THROW(fuzz(fields, opt));
    EXPECT_THROW(fuzz({}, opt), invalid_input);
    // A single trial can be replayed from its index alone.
    opt = fuzz_options{};
    opt.trials = 6;
    opt.seed = 2718;
    EXPECT_EQ(io::to_json(run_fuzz_trial(fields, opt, 4)).dump(), io::to_json(a[4]).dump());
}

TEST(Fuzz, ReportsCarryWitnessesAndDigest) {
    std::vector<fuzz_field> fields{{"Q(sqrt-3)", support::field("q_sqrt_m3")}};
    fuzz_options opt;
    opt.trials = 2;
    opt.rank_max = 3;
    const auto t = fuzz(fields, opt);
    for (const auto& trial : t) {
        const auto* r = find_report(trial.reports, "transference", 1);
        ASSERT_NE(r, nullptr);
        EXPECT_EQ(r->witnesses.size(), 2u);
        EXPECT_EQ(r->inputs_digest, bundle_digest(trial.bundle));
    }
}
