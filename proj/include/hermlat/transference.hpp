#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hermlat/duality.hpp"
#include "hermlat/hermitian_bundle.hpp"
#include "hermlat/minima.hpp"
#include "hermlat/slopes.hpp"

namespace hermlat {

enum class verdict { pass, fail, uncertified };

inline std::string to_string(verdict v) {
    switch (v) {
        case verdict::pass: return "pass";
        case verdict::fail: return "fail";
        case verdict::uncertified: return "uncertified";
    }
    return "?";
}

/// One inequality lhs ≤ rhs (+ slack). Informational links never affect the verdict.
struct inequality_link {
    std::string name;
    real lhs = 0;
    real rhs = 0;
    real slack = 0;
    bool holds = false;
    bool informational = false;
};

struct theorem_report {
    std::string statement;
    int k = 0;
    std::string inputs_digest;
    std::vector<inequality_link> links;
    verdict outcome = verdict::uncertified;
    std::vector<z_vector> witnesses;
};

/// FNV-1a over a canonical text dump of the bundle data.
inline std::string bundle_digest(const hermitian_bundle& E) {
    std::string text;
    char buf[64];
    for (const auto& c : E.field().coefficients()) text += c.str() + ",";
    const auto& B = E.field().integral_basis();
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) text += B(i, j).str() + ",";
    for (const auto& H : E.grams())
        for (Eigen::Index i = 0; i < H.rows(); ++i)
            for (Eigen::Index j = 0; j < H.cols(); ++j) {
                std::snprintf(buf, sizeof buf, "%.21Lg:%.21Lg,", H(i, j).real(), H(i, j).imag());
                text += buf;
            }
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Lazily computed minima profiles shared by the checkers for one bundle.
class transference_context {
public:
    explicit transference_context(hermitian_bundle E, std::int64_t budget = default_budget)
        : E_(std::move(E)), budget_(budget), digest_(bundle_digest(E_)) {}

    const hermitian_bundle& bundle() const { return E_; }
    const std::string& digest() const { return digest_; }
    int N() const { return E_.rank(); }
    int r() const { return E_.field().degree(); }

    /// μ_k(Ē), sup norm, F-rank.
    const minima_profile& mu() { return get(mu_, [&] { return run(restrict_scalars(E_), N(), rank_mode::f_rank, norm_kind::sup); }); }
    /// μ_k(Ē*).
    const minima_profile& mu_dual() {
        return get(mu_dual_, [&] { return run(restrict_scalars(dual_bundle(E_)), N(), rank_mode::f_rank, norm_kind::sup); });
    }
    /// μ_k(Ē^∨), sup norm, F-rank through α.
    const minima_profile& mu_trace_dual() {
        return get(mu_vee_, [&] { return run(trace_lattice(), N(), rank_mode::f_rank, norm_kind::sup); });
    }
    /// λ_k, sup norm, Q-rank.
    const minima_profile& lambda() {
        return get(lambda_, [&] { return run(restrict_scalars(E_), N() * r(), rank_mode::q_rank, norm_kind::sup); });
    }
    /// λ^∨_k, sum norm, Q-rank.
    const minima_profile& lambda_trace_dual() {
        return get(lambda_vee_, [&] { return run(trace_lattice(), N() * r(), rank_mode::q_rank, norm_kind::sum); });
    }
    const minkowski_vector& minkowski() {
        if (!minkowski_) minkowski_ = minkowski_codifferent_vector(E_.field(), budget_);
        return *minkowski_;
    }

private:
    template <class Make>
    const minima_profile& get(std::optional<minima_profile>& slot, Make make) {
        if (!slot) slot = make();
        return *slot;
    }
    minima_profile run(const restricted_lattice& L, int k, rank_mode m, norm_kind n) const {
        return successive_minima(L, k, m, n, budget_);
    }
    restricted_lattice trace_lattice() const { return trace_dual(E_).lattice(); }

    hermitian_bundle E_;
    std::int64_t budget_;
    std::string digest_;
    std::optional<minima_profile> mu_, mu_dual_, mu_vee_, lambda_, lambda_vee_;
    std::optional<minkowski_vector> minkowski_;
};

namespace detail {

inline bool complete(const minima_profile& p, int k) {
    return p.certified && static_cast<int>(p.values.size()) >= k;
}

inline real value(const minima_profile& p, int k) {
    return static_cast<int>(p.values.size()) >= k ? p.values[static_cast<std::size_t>(k - 1)]
                                                   : std::numeric_limits<real>::quiet_NaN();
}

inline void add_witness(theorem_report& rep, const minima_profile& p, int k) {
    if (static_cast<int>(p.witnesses.size()) >= k) rep.witnesses.push_back(p.witnesses[static_cast<std::size_t>(k - 1)].z_coords);
}

inline inequality_link link(std::string name, real lhs, real rhs, real slack, bool informational = false) {
    return {std::move(name), lhs, rhs, slack, lhs <= rhs + slack, informational};
}

inline void finish(theorem_report& rep, bool certified) {
    if (!certified) {
        rep.outcome = verdict::uncertified;
        return;
    }
    bool ok = true;
    for (const auto& l : rep.links)
        if (!l.informational && !l.holds) ok = false;
    rep.outcome = ok ? verdict::pass : verdict::fail;
}

}  // namespace detail

/// 0 ≤ μ_k(Ē) + μ_{N+1−k}(Ē*) ≤ C(N, F).
inline theorem_report check_transference(transference_context& ctx, int k, real slack = transcendental_slack) {
    const int N = ctx.N();
    if (k < 1 || k > N) throw invalid_input("k out of range");
    const auto& a = ctx.mu();
    const auto& b = ctx.mu_dual();
    theorem_report rep{"transference", k, ctx.digest(), {}, verdict::uncertified, {}};
    const real sum = detail::value(a, k) + detail::value(b, N + 1 - k);
    rep.links.push_back(detail::link("lower", 0, sum, slack));
    rep.links.push_back(detail::link("upper", sum, constant_C(N, ctx.bundle().field()), slack));
    detail::add_witness(rep, a, k);
    detail::add_witness(rep, b, N + 1 - k);
    detail::finish(rep, detail::complete(a, k) && detail::complete(b, N + 1 - k));
    return rep;
}

/// λ_k + λ^∨_{Nr+1−k} ≤ (3/2) log(Nr); the companion λ_k + λ^∨_{Nr+1−k} ≥ 0 is report-only.
inline theorem_report check_banaszczyk(transference_context& ctx, int k, real slack = transcendental_slack) {
    const int n = ctx.N() * ctx.r();
    if (k < 1 || k > n) throw invalid_input("k out of range");
    const auto& a = ctx.lambda();
    const auto& b = ctx.lambda_trace_dual();
    theorem_report rep{"banaszczyk", k, ctx.digest(), {}, verdict::uncertified, {}};
    const real sum = detail::value(a, k) + detail::value(b, n + 1 - k);
    rep.links.push_back(detail::link("upper", sum, 1.5L * std::log(static_cast<real>(n)), slack));
    rep.links.push_back(detail::link("lower", 0, sum, slack, true));
    detail::add_witness(rep, a, k);
    detail::add_witness(rep, b, n + 1 - k);
    detail::finish(rep, detail::complete(a, k) && detail::complete(b, n + 1 - k));
    return rep;
}

/// μ_{k+1}(Ē) ≤ λ_{kr+1}, for 0 ≤ k ≤ N−1.
inline theorem_report check_rank_comparison(transference_context& ctx, int k, real slack = structural_slack) {
    if (k < 0 || k + 1 > ctx.N()) throw invalid_input("k out of range");
    const auto& a = ctx.mu();
    const auto& b = ctx.lambda();
    const int j = k * ctx.r() + 1;
    theorem_report rep{"rank-comparison", k, ctx.digest(), {}, verdict::uncertified, {}};
    rep.links.push_back(detail::link("mu-vs-lambda", detail::value(a, k + 1), detail::value(b, j), slack));
    detail::add_witness(rep, a, k + 1);
    detail::add_witness(rep, b, j);
    detail::finish(rep, detail::complete(a, k + 1) && detail::complete(b, j));
    return rep;
}

/// Every intermediate inequality of the reduction from the sandwich upper bound to the
/// mixed-norm transference bound over Z, each as its own link.
inline theorem_report check_proof_chain(transference_context& ctx, int k, real slack = transcendental_slack) {
    const int N = ctx.N();
    const int r = ctx.r();
    if (k < 1 || k > N) throw invalid_input("k out of range");
    const auto& F = ctx.bundle().field();
    const auto& mu = ctx.mu();
    const auto& mu_star = ctx.mu_dual();
    const auto& mu_vee = ctx.mu_trace_dual();
    const auto& lam = ctx.lambda();
    const auto& lam_vee = ctx.lambda_trace_dual();
    const auto& v = ctx.minkowski();
    const int kd = N + 1 - k;

    theorem_report rep{"proof-chain", k, ctx.digest(), {}, verdict::uncertified, {}};
    using detail::value;
    rep.links.push_back(detail::link("mu-vs-lambda", value(mu, k), value(lam, (k - 1) * r + 1), structural_slack));
    rep.links.push_back(detail::link("dual-vs-trace-dual", value(mu_star, kd), value(mu_vee, kd) + v.sup_log_norm,
                                     structural_slack));
    rep.links.push_back(detail::link("minkowski-bound", v.sup_log_norm, v.bound, structural_slack));
    rep.links.push_back(detail::link("trace-dual-mu-vs-lambda", value(mu_vee, kd),
                                     value(lam_vee, (N - k) * r + 1) + std::log(static_cast<real>(r)), structural_slack));
    rep.links.push_back(detail::link("index-monotonicity", value(lam, (k - 1) * r + 1), value(lam, k * r), structural_slack));
    rep.links.push_back(detail::link("mixed-transference", value(lam, k * r) + value(lam_vee, N * r - k * r + 1),
                                     1.5L * std::log(static_cast<real>(N * r)), slack));
    rep.links.push_back(detail::link("sandwich-upper", value(mu, k) + value(mu_star, kd), constant_C(N, F), slack));
    rep.witnesses.push_back(v.z_coords);
    const bool certified = detail::complete(mu, k) && detail::complete(mu_star, kd) && detail::complete(mu_vee, kd) &&
                           detail::complete(lam, k * r) && detail::complete(lam_vee, N * r);
    detail::finish(rep, certified);
    return rep;
}

inline theorem_report check_transference(const hermitian_bundle& E, int k, std::int64_t budget = default_budget) {
    transference_context ctx(E, budget);
    return check_transference(ctx, k);
}
inline theorem_report check_banaszczyk(const hermitian_bundle& E, int k, std::int64_t budget = default_budget) {
    transference_context ctx(E, budget);
    return check_banaszczyk(ctx, k);
}
inline theorem_report check_rank_comparison(const hermitian_bundle& E, int k, std::int64_t budget = default_budget) {
    transference_context ctx(E, budget);
    return check_rank_comparison(ctx, k);
}
inline theorem_report check_proof_chain(const hermitian_bundle& E, int k, std::int64_t budget = default_budget) {
    transference_context ctx(E, budget);
    return check_proof_chain(ctx, k);
}

/// Every checker at every valid index.
inline std::vector<theorem_report> check_all(transference_context& ctx, std::optional<real> slack = std::nullopt) {
    const real ts = slack.value_or(transcendental_slack);
    std::vector<theorem_report> out;
    for (int k = 1; k <= ctx.N(); ++k) out.push_back(check_transference(ctx, k, ts));
    for (int k = 1; k <= ctx.N() * ctx.r(); ++k) out.push_back(check_banaszczyk(ctx, k, ts));
    for (int k = 0; k < ctx.N(); ++k) out.push_back(check_rank_comparison(ctx, k));
    for (int k = 1; k <= ctx.N(); ++k) out.push_back(check_proof_chain(ctx, k, ts));
    return out;
}

// ---------------------------------------------------------------------------------------------
// Random bundles

/// Portable Gaussian stream: mt19937_64 bits through Box-Muller (std distributions are not
/// specified bit-exactly across standard libraries).
class gaussian_source {
public:
    explicit gaussian_source(std::uint64_t seed) : eng_(seed) {}

    real uniform() { return static_cast<real>(eng_() >> 11) * 0x1.0p-53L; }

    real normal() {
        if (spare_) {
            const real v = *spare_;
            spare_.reset();
            return v;
        }
        real u1 = uniform();
        while (u1 <= 0) u1 = uniform();
        const real u2 = uniform();
        const real rad = std::sqrt(-2 * std::log(u1));
        spare_ = rad * std::sin(2 * pi_v * u2);
        return rad * std::cos(2 * pi_v * u2);
    }

    std::uint64_t next_u64() { return eng_(); }

private:
    std::mt19937_64 eng_;
    std::optional<real> spare_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline constexpr real random_gram_floor = 1e-3L;
inline constexpr real random_gram_max_condition = 1e3L;

/// Grams A*A + εI (complex Gaussian A at complex embeddings, real at real ones), resampled until
/// the condition number is at most 10³, times a random overall scale in [e⁻¹, e]; H_σ̄ = conj(H_σ).
inline hermitian_bundle random_bundle(const number_field& F, int rank, gaussian_source& rng) {
    const auto N = static_cast<Eigen::Index>(rank);
    const auto& emb = F.embeddings();
    std::vector<complex_matrix> grams(emb.size());
    for (std::size_t s = 0; s < emb.size(); ++s) {
        if (emb[s].conjugate < s) {
            grams[s] = grams[emb[s].conjugate].conjugate();
            continue;
        }
        while (true) {
            complex_matrix A(N, N);
            for (Eigen::Index i = 0; i < N; ++i)
                for (Eigen::Index j = 0; j < N; ++j) {
                    const real re = rng.normal();
                    const real im = emb[s].is_real ? real(0) : rng.normal();
                    A(i, j) = complex(re, im);
                }
            complex_matrix H = A.adjoint() * A + random_gram_floor * complex_matrix::Identity(N, N);
            H = (H + H.adjoint()) / real(2);
            Eigen::SelfAdjointEigenSolver<complex_matrix> es(H, Eigen::EigenvaluesOnly);
            const real lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
            if (hi / lo > random_gram_max_condition) continue;
            const real scale = std::exp(2 * rng.uniform() - 1);
            grams[s] = H * scale;
            break;
        }
    }
    return hermitian_bundle(F, rank, std::move(grams));
}

/// Diagonal bundle with line scales exp(U[-1, 1]), conjugation-invariant.
inline diagonal_bundle random_diagonal_bundle(const number_field& F, int rank, gaussian_source& rng) {
    const auto& emb = F.embeddings();
    std::vector<std::vector<real>> scales(static_cast<std::size_t>(rank), std::vector<real>(emb.size()));
    for (auto& line : scales)
        for (std::size_t s = 0; s < emb.size(); ++s)
            line[s] = emb[s].conjugate < s ? line[emb[s].conjugate] : std::exp(2 * rng.uniform() - 1);
    return diagonal_bundle(F, std::move(scales));
}

struct fuzz_field {
    std::string label;
    number_field field;
};

struct fuzz_trial {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::string field_label;
    hermitian_bundle bundle;
    std::vector<theorem_report> reports;
    verdict outcome = verdict::pass;
};

struct fuzz_options {
    int rank_max = 2;
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::int64_t budget = default_budget;
    int max_z_rank = 8;  // desk-scale guard on rank_max · degree
    std::optional<real> slack;
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

/// Trial i uses field i mod |fields| and a rank drawn uniformly from 1..rank_max.
inline fuzz_trial run_fuzz_trial(const std::vector<fuzz_field>& fields, const fuzz_options& opt, std::size_t index) {
    const auto& ff = fields[index % fields.size()];
    const std::uint64_t s = trial_seed(opt.seed, index);
    gaussian_source rng(s);
    const int rank = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(opt.rank_max));
    auto E = random_bundle(ff.field, rank, rng);
    transference_context ctx(E, opt.budget);
    fuzz_trial t{index, s, ff.label, E, check_all(ctx, opt.slack), verdict::pass};
    for (const auto& rep : t.reports) {
        if (rep.outcome == verdict::fail) t.outcome = verdict::fail;
        else if (rep.outcome == verdict::uncertified && t.outcome == verdict::pass) t.outcome = verdict::uncertified;
    }
    return t;
}

inline std::vector<fuzz_trial> fuzz(const std::vector<fuzz_field>& fields, const fuzz_options& opt) {
    if (fields.empty()) throw invalid_input("fuzz needs at least one field");
    if (opt.rank_max < 1) throw invalid_input("rank_max must be >= 1");
    for (const auto& f : fields)
        if (opt.rank_max * f.field.degree() > opt.max_z_rank)
            throw invalid_input("rank_max * degree exceeds the desk-scale guard (" + std::to_string(opt.max_z_rank) + ")");
    std::vector<fuzz_trial> out;
    out.reserve(opt.trials);
    for (std::size_t i = 0; i < opt.trials; ++i) out.push_back(run_fuzz_trial(fields, opt, i));
    return out;
}

}  // namespace hermlat
