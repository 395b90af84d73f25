#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hermlat/echelon.hpp"
#include "hermlat/enumeration.hpp"
#include "hermlat/hermitian_bundle.hpp"

namespace hermlat {

/// Successive minima on log scale with witnesses.
struct minima_profile {
    std::vector<real> values;
    std::vector<bundle_vector> witnesses;
    std::vector<std::size_t> attaining_counts;  // vectors (up to sign) whose norm equals values[i]
    rank_mode mode = rank_mode::q_rank;
    norm_kind norm = norm_kind::sup;
    real radius_used = 0;
    std::int64_t nodes = 0;
    bool certified = false;
};

namespace detail {

inline z_vector canonical_sign(z_vector z) {
    auto it = std::find_if(z.begin(), z.end(), [](std::int64_t v) { return v != 0; });
    if (it != z.end() && *it < 0)
        for (auto& v : z) v = -v;
    return z;
}

struct candidate {
    real norm;
    z_vector z;
};

// Sorted by norm; runs of norms equal to within 1e-12 relative are ordered lexicographically.
inline void sort_candidates(std::vector<candidate>& c) {
    std::sort(c.begin(), c.end(), [](const candidate& a, const candidate& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.z < b.z;
    });
    std::size_t start = 0;
    while (start < c.size()) {
        std::size_t end = start + 1;
        while (end < c.size() && c[end].norm - c[start].norm <= 1e-12L * c[start].norm) ++end;
        std::sort(c.begin() + static_cast<std::ptrdiff_t>(start), c.begin() + static_cast<std::ptrdiff_t>(end),
                  [](const candidate& a, const candidate& b) { return a.z < b.z; });
        start = end;
    }
}

// Q(x) >= sup_σ ‖x‖²_σ and Q(x) >= (Σ_σ ‖x‖_σ)² / r, while Q(x) <= r sup_σ ‖x‖²_σ and
// Q(x) <= (Σ_σ ‖x‖_σ)². So {sup <= R} ⊂ {Q <= r R²} and {sum <= R} ⊂ {Q <= R²}.
inline real containment_bound(const restricted_lattice& L, norm_kind norm, real radius) {
    const real r = static_cast<real>(L.embedding_count());
    return (norm == norm_kind::sup ? r : real(1)) * radius * radius * (1 + 1e-9L);
}

inline std::vector<candidate> collect(const restricted_lattice& L, norm_kind norm, real radius, std::int64_t budget,
                                      enumeration_stats& stats) {
    std::vector<candidate> out;
    const real limit = radius * (1 + 1e-9L);
    ellipsoid_enumerator en(L.euclid_gram());
    stats = en.run(containment_bound(L, norm, radius), budget, [&](const z_vector& x) {
        const real v = L.norm(x, norm);
        if (v <= limit) out.push_back({v, canonical_sign(x)});
    });
    sort_candidates(out);
    return out;
}

}  // namespace detail

/// All nonzero vectors (one per ± pair) with aggregated norm <= bound·(1 + 1e-9), sorted by norm
/// with lexicographic tie-breaks. Throws budget_exhausted.
inline std::vector<bundle_vector> enumerate_below(const restricted_lattice& L, norm_kind norm, real bound,
                                                  std::int64_t budget = default_budget) {
    if (!(bound > 0)) throw invalid_input("enumerate_below requires bound > 0");
    enumeration_stats stats;
    auto cands = detail::collect(L, norm, bound, budget, stats);
    if (!stats.complete) throw budget_exhausted("enumeration budget exhausted");
    std::vector<bundle_vector> out;
    for (auto& c : cands) out.push_back(L.make_vector(std::move(c.z)));
    return out;
}

/// Exact rank of lattice vectors over Q (integer coordinates) or over F (images in F^N).
inline std::size_t exact_rank(const restricted_lattice& L, const std::vector<bundle_vector>& vectors, rank_mode mode) {
    if (mode == rank_mode::q_rank) {
        std::vector<std::vector<rational>> rows;
        for (const auto& v : vectors) rows.emplace_back(v.z_coords.begin(), v.z_coords.end());
        return exact_rank(rational_ops{}, rows);
    }
    std::vector<std::vector<field_element>> rows;
    for (const auto& v : vectors) rows.push_back(v.f_coords.empty() ? L.to_field_coords(v.z_coords) : v.f_coords);
    return exact_rank(field_ops{&L.field()}, rows);
}

namespace detail {

class independence_tracker {
public:
    independence_tracker(const restricted_lattice& L, rank_mode mode)
        : L_(L), mode_(mode), q_(rational_ops{}), f_(field_ops{&L.field()}) {}

    bool try_insert(const z_vector& z) {
        if (mode_ == rank_mode::q_rank) return q_.try_insert(std::vector<rational>(z.begin(), z.end()));
        return f_.try_insert(L_.to_field_coords(z));
    }

private:
    const restricted_lattice& L_;
    rank_mode mode_;
    incremental_echelon<rational_ops> q_;
    incremental_echelon<field_ops> f_;
};

}  // namespace detail

/// Successive minima of L (log scale). Radius schedule: start at the smallest basis-vector norm
/// and double, capped by the radius of a known independent set, until k independent vectors
/// lie inside the fully enumerated region. Greedy selection in nondecreasing norm.
inline minima_profile successive_minima(const restricted_lattice& L, int k, rank_mode mode, norm_kind norm,
                                        std::int64_t budget = default_budget) {
    const int max_k = mode == rank_mode::f_rank ? L.rank() : L.z_rank();
    if (k < 1 || k > max_k) throw invalid_input("k out of range for successive minima");

    const auto n = static_cast<std::size_t>(L.z_rank());
    const auto r = static_cast<std::size_t>(L.degree());
    std::vector<real> unit_norms(n);
    for (std::size_t t = 0; t < n; ++t) {
        z_vector e(n, 0);
        e[t] = 1;
        unit_norms[t] = L.norm(e, norm);
    }
    std::vector<real> known;
    if (mode == rank_mode::q_rank) {
        known = unit_norms;
    } else {
        for (std::size_t j = 0; j < static_cast<std::size_t>(L.rank()); ++j)
            known.push_back(*std::min_element(unit_norms.begin() + static_cast<std::ptrdiff_t>(j * r),
                                              unit_norms.begin() + static_cast<std::ptrdiff_t>((j + 1) * r)));
    }
    std::sort(known.begin(), known.end());
    const real cap = known[static_cast<std::size_t>(k - 1)];
    real radius = std::min(*std::min_element(unit_norms.begin(), unit_norms.end()), cap);

    minima_profile prof;
    prof.mode = mode;
    prof.norm = norm;
    std::int64_t remaining = budget;
    while (true) {
        enumeration_stats stats;
        auto cands = detail::collect(L, norm, radius, remaining, stats);
        prof.nodes += stats.nodes;
        remaining -= stats.nodes;
        prof.radius_used = radius;

        prof.values.clear();
        prof.witnesses.clear();
        prof.attaining_counts.clear();
        detail::independence_tracker tracker(L, mode);
        for (const auto& c : cands) {
            if (static_cast<int>(prof.witnesses.size()) == k) break;
            if (tracker.try_insert(c.z)) {
                prof.values.push_back(std::log(c.norm));
                prof.witnesses.push_back(L.make_vector(c.z));
            }
        }
        for (real v : prof.values) {
            std::size_t count = 0;
            for (const auto& c : cands)
                if (std::abs(std::log(c.norm) - v) <= structural_slack) ++count;
            prof.attaining_counts.push_back(count);
        }
        if (!stats.complete) {
            prof.certified = false;
            return prof;
        }
        if (static_cast<int>(prof.witnesses.size()) == k) {
            prof.certified = true;
            return prof;
        }
        if (radius >= cap) {
            // A known independent set lies inside the cap; reaching here means numerical trouble.
            prof.certified = false;
            return prof;
        }
        radius = std::min(radius * 2, cap);
    }
}

}  // namespace hermlat
