// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hermlat/io.hpp"
#include "oracle/box_oracle.hpp"
#include "oracle/high_precision.hpp"

using namespace hermlat;

namespace {

// Tolerances, pinned.
constexpr real sandwich_slack = 1e-6L;
constexpr real banaszczyk_slack = 1e-6L;
constexpr real rank_comparison_slack = 1e-9L;
constexpr real oracle_tolerance = 1e-9L;
constexpr real covolume_tolerance = 1e-9L;
constexpr real isometry_tolerance = 1e-9L;
constexpr real minkowski_slack = 1e-9L;
constexpr real borek_slack = 1e-9L;
constexpr real slope_duality_tolerance = 1e-10L;
constexpr real worked_example_tolerance = 1e-5L;
constexpr real convergence_tolerance = 1e-6L;
constexpr real ordering_slack = 1e-9L;
constexpr double fuzz_time_limit_s = 300;
constexpr std::size_t fuzz_trials = 240;

std::string data(const std::string& rel) { return std::string(HERMLAT_DATA_DIR) + "/" + rel; }

int failures = 0;

std::vector<std::filesystem::path> sorted_files(const std::string& dir) {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(dir)) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> pending;  // detail lines, printed under the next verdict

void verdict_line(int id, bool ok, const std::string& what) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
    for (const auto& l : pending) std::printf("    %s\n", l.c_str());
    pending.clear();
    std::fflush(stdout);
    if (!ok) ++failures;
}

void note(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void note(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    pending.emplace_back(buf);
}

}  // namespace

int main() {
    std::vector<fuzz_field> corpus_fields;
    for (const char* name : {"q", "q_i", "q_sqrt2", "q_sqrt_m3"}) {
        auto f = io::load_field(data(std::string("fields/") + name + ".json"));
        corpus_fields.push_back({f.label, std::move(f.field)});
    }
    fuzz_options opt;
    opt.rank_max = 3;
    opt.trials = fuzz_trials;
    opt.seed = 20240607;
    const auto t0 = std::chrono::steady_clock::now();
    const auto corpus = fuzz(corpus_fields, opt);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // 1-3: statements over the fuzz corpus.
    {
        std::size_t certified = 0, uncertified = 0, bad[3] = {0, 0, 0}, checked[3] = {0, 0, 0};
        real worst[3] = {-1e300L, -1e300L, -1e300L};  // max of lhs − rhs
        for (const auto& t : corpus) {
            bool cert = true;
            for (const auto& r : t.reports)
                if ((r.statement == "transference" || r.statement == "banaszczyk" || r.statement == "rank-comparison") &&
                    r.outcome == verdict::uncertified)
                    cert = false;
            if (!cert) {
                ++uncertified;
                continue;
            }
            ++certified;
            for (const auto& r : t.reports) {
                int idx = r.statement == "transference" ? 0 : r.statement == "banaszczyk" ? 1 : r.statement == "rank-comparison" ? 2 : -1;
                if (idx < 0) continue;
                ++checked[idx];
                bool ok = true;
                for (const auto& l : r.links) {
                    if (l.informational) continue;
                    const real slack = idx == 0 ? sandwich_slack : idx == 1 ? banaszczyk_slack : rank_comparison_slack;
                    if (!(l.lhs <= l.rhs + slack)) ok = false;
                    worst[idx] = std::max(worst[idx], l.lhs - l.rhs);
                }
                if (!ok) ++bad[idx];
            }
        }
        std::size_t max_rank = 0, max_z = 0;
        for (const auto& t : corpus) {
            max_rank = std::max<std::size_t>(max_rank, static_cast<std::size_t>(t.bundle.rank()));
            max_z = std::max<std::size_t>(max_z, static_cast<std::size_t>(t.bundle.rank() * t.bundle.field().degree()));
        }
        const bool shape_ok = corpus.size() >= 200 && max_rank <= 3 && max_z <= 6 && elapsed <= fuzz_time_limit_s;
        char buf[256];
        std::snprintf(buf, sizeof buf, "sandwich on %zu bundles (%zu certified, %zu uncertified), %zu index checks, %zu violations, %.1f s",
                      corpus.size(), certified, uncertified, checked[0], bad[0], elapsed);
        note("max(lhs - rhs) over all links = %.3Le; N <= %zu, Nr <= %zu", worst[0], max_rank, max_z);
        verdict_line(1, shape_ok && bad[0] == 0 && certified >= 200, buf);
        std::snprintf(buf, sizeof buf, "mixed-norm transference, %zu index checks, %zu violations", checked[1], bad[1]);
        note("max(lhs - rhs) = %.3Le (bound 1.5 log(Nr), slack %.0Le)", worst[1], banaszczyk_slack);
        verdict_line(2, bad[1] == 0 && checked[1] > 0, buf);
        std::snprintf(buf, sizeof buf, "F-rank vs Q-rank minima, %zu index checks, %zu violations", checked[2], bad[2]);
        note("max(lhs - rhs) = %.3Le", worst[2]);
        verdict_line(3, bad[2] == 0 && checked[2] > 0, buf);
    }

    // 4: enumeration vs exhaustive box oracle on every bundle fixture with Z-rank <= 6.
    {
        std::size_t lattices = 0, mismatches = 0;
        for (const auto& path : sorted_files(data("bundles"))) {
            const auto E = io::load_bundle(path);
            if (E.rank() * E.field().degree() > 6) continue;
            const restricted_lattice views[] = {restrict_scalars(E), restrict_scalars(dual_bundle(E)), trace_dual(E).lattice()};
            for (const auto& L : views)
                for (auto mode : {rank_mode::f_rank, rank_mode::q_rank})
                    for (auto norm : {norm_kind::sup, norm_kind::sum}) {
                        ++lattices;
                        const int k = mode == rank_mode::f_rank ? L.rank() : L.z_rank();
                        const auto p = successive_minima(L, k, mode, norm);
                        const auto box = oracle::box_minima(L, k, mode == rank_mode::f_rank, norm == norm_kind::sup,
                                                            std::exp(p.values.back()) * (1 + 1e-9L));
                        bool ok = p.certified && box.values.size() == p.values.size();
                        for (std::size_t i = 0; ok && i < p.values.size(); ++i)
                            ok = std::abs(p.values[i] - box.values[i]) <= oracle_tolerance && p.attaining_counts[i] == box.counts[i];
                        if (!ok) {
                            ++mismatches;
                            note("mismatch: %s %s %s", path.filename().c_str(), to_string(mode).c_str(), to_string(norm).c_str());
                        }
                    }
        }
        verdict_line(4, mismatches == 0 && lattices > 0,
                     std::to_string(lattices) + " (fixture, lattice, mode, norm) combinations, " + std::to_string(mismatches) + " mismatches");
    }

    // 5: duality identities.
    {
        bool ok = true;
        for (const auto& path : sorted_files(data("fields"))) {
            const auto f = io::load_field(path);
            const auto& F = f.field;
            const auto T = make_trace_module(F);
            bool bio = true;
            for (std::size_t i = 0; i < T.codifferent_basis.size(); ++i)
                for (std::size_t j = 0; j < T.codifferent_basis.size(); ++j)
                    bio = bio && F.trace(F.mul(F.basis_element(i), T.codifferent_basis[j])) == rational(i == j ? 1 : 0);
            const real cov = codifferent_covolume(F), closed = codifferent_covolume_closed_form(F);
            const bool cov_ok = std::abs(cov - closed) <= covolume_tolerance;
            const auto v = minkowski_codifferent_vector(F);
            const bool mink_ok = v.sup_log_norm <= v.bound + minkowski_slack;
            note("%-10s biorthogonal %s | covolume %.12Lf vs %.12Lf %s | minkowski %.6Lf <= %.6Lf %s", f.label.c_str(),
                   bio ? "ok" : "FAIL", cov, closed, cov_ok ? "ok" : "FAIL", v.sup_log_norm, v.bound, mink_ok ? "ok" : "FAIL");
            ok = ok && bio && cov_ok && mink_ok;
        }
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> coord(-9, 9);
        real worst = 0;
        std::size_t bundles = 0;
        for (const auto& path : sorted_files(data("bundles"))) {
            const auto D = trace_dual(io::load_bundle(path));
            ++bundles;
            for (int t = 0; t < 100; ++t) {
                z_vector z(static_cast<std::size_t>(D.lattice().z_rank()));
                for (auto& c : z) c = coord(rng);
                for (std::size_t s = 0; s < D.lattice().embedding_count(); ++s) {
                    const real a = D.direct_sigma_norm(z, s), b = D.alpha_sigma_norm(z, s);
                    worst = std::max(worst, std::abs(a - b) / std::max<real>(1, b));
                }
            }
        }
        note("alpha isometry: worst relative deviation %.3Le over %zu bundles x 100 vectors", worst, bundles);
        ok = ok && worst <= isometry_tolerance;
        verdict_line(5, ok, "trace biorthogonality, covolume, alpha isometry, Minkowski vector bound for every field");
    }

    // 6: slopes on random diagonal bundles.
    {
        gaussian_source rng(606);
        std::size_t checks = 0, bad_borek = 0, bad_dual = 0;
        real worst_borek = 1e300L, worst_dual = 0;
        for (const char* name : {"q", "q_i", "q_sqrt2", "q_sqrt_m2", "q_sqrt_m3", "q_sqrt5", "q_zeta5"}) {
            const auto F = io::load_field(data(std::string("fields/") + name + ".json")).field;
            const int max_rank = std::min(3, 8 / F.degree());
            for (int t = 0; t < 50; ++t) {
                const auto D = random_diagonal_bundle(F, 1 + t % max_rank, rng);
                for (int k = 1; k <= D.rank(); ++k) {
                    ++checks;
                    const auto b = check_borek(D, k, default_budget, borek_slack);
                    if (!b.holds) ++bad_borek;
                    worst_borek = std::min(worst_borek, b.sum);
                    const auto s = check_slope_duality(D, k, slope_duality_tolerance);
                    if (!s.holds) ++bad_dual;
                    worst_dual = std::max(worst_dual, std::abs(s.sum));
                }
            }
        }
        note("min(mu_k + sigma_k) = %.3Le, max|sigma_k + sigma*_{N+1-k}| = %.3Le", worst_borek, worst_dual);
        verdict_line(6, bad_borek == 0 && bad_dual == 0,
                     std::to_string(checks) + " index checks on 350 diagonal bundles, " + std::to_string(bad_borek) +
                         " lower-bound and " + std::to_string(bad_dual) + " duality violations");
    }

    // 7: bound formulas.
    {
        bool ok = true;
        int pairs = 0;
        for (int m = 1; m <= 10; ++m)
            for (int g = 0; g <= 9; ++g, ++pairs) ok = ok && constant_D(m, 1, g) == 1;
        const bool d144 = constant_D(10, 2, 2) == 144 && oracle::constant_D(10, 2, 2) == 144;
        curve_invariants inv;
        inv.g = 2;
        inv.omega_sq = 1;
        const auto lo = height_lower_bounds(inv, 5);
        const auto hi = height_upper_bounds(inv, 5);
        const auto o = oracle::height_bounds(2, 1, 0, 0, 5);
        const real got[] = {lo.a, *lo.b, hi.a, *hi.b};
        const double ref[] = {o.lower_a.convert_to<double>(), o.lower_b.convert_to<double>(), o.upper_a.convert_to<double>(),
                              o.upper_b.convert_to<double>()};
        const double worked[] = {0.19643, 0.16667, 0.30357, 0.33333};
        bool worked_ok = true;
        for (int i = 0; i < 4; ++i)
            worked_ok = worked_ok && std::abs(got[i] - ref[i]) <= worked_example_tolerance &&
                        std::abs(got[i] - worked[i]) <= worked_example_tolerance;
        bool asym_ok = true;
        for (int g = 2; g <= 6; ++g)
            for (double w : {0.5, 1.0, 2.0, 10.0}) {
                inv.g = g;
                inv.omega_sq = w;
                const auto rep = asymptotic_consistency(inv);
                const auto& top = rep.rows.back();
                for (real v : {top.lower.a, *top.lower.b, top.upper.a, *top.upper.b})
                    asym_ok = asym_ok && std::abs(v - rep.limit) <= convergence_tolerance;
                for (const auto& row : rep.rows) {
                    if (row.d < 2 * g + 1) continue;
                    for (real l : {row.lower.a, *row.lower.b})
                        for (real u : {row.upper.a, *row.upper.b}) asym_ok = asym_ok && l <= u + ordering_slack;
                }
            }
        note("D(m,1,g) = 1 on %d pairs: %s; D(10,2,2) = %s; worked example (%.5Lf, %.5Lf, %.5Lf, %.5Lf)", pairs,
               ok ? "ok" : "FAIL", constant_D(10, 2, 2).str().c_str(), got[0], got[1], got[2], got[3]);
        verdict_line(7, ok && d144 && worked_ok && asym_ok, "binomial constant, worked bound values, asymptotic consistency");
    }

    // 8: determinism.
    {
        fuzz_options o2 = opt;
        o2.trials = 40;
        const auto again = fuzz(corpus_fields, o2);
        bool same = true;
        for (std::size_t i = 0; i < again.size(); ++i) same = same && io::to_json(again[i]).dump() == io::to_json(corpus[i]).dump();
        const auto F = io::load_field(data("fields/q_zeta5.json")).field;
        same = same && io::field_report(F, "a").dump() == io::field_report(io::load_field(data("fields/q_zeta5.json")).field, "a").dump();
        verdict_line(8, same, "40 fuzz trials and a field report re-run byte-identically");
    }

    std::printf("%d of 8 criteria failed\n", failures);
    return failures;
}
