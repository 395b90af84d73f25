#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "hermlat/numeric.hpp"
#include "hermlat/rational.hpp"

namespace hermlat {

/// Invariants of an arithmetic surface entering the height bounds. residual_C is the
/// unspecified constant C(g, r) of the bounds; it defaults to 0 and is reported separately.
struct curve_invariants {
    int g = 2;
    int r = 1;
    real log_disc = 0;
    real omega_sq = 0;
    real residual_C = 0;

    void validate() const {
        if (g < 2) throw invalid_input("genus must be >= 2");
        if (r < 1) throw invalid_input("field degree must be >= 1");
        if (!(log_disc >= 0)) throw invalid_input("log_disc must be >= 0");
        if (!(omega_sq >= 0)) throw invalid_input("omega_sq must be >= 0");
        if (!(residual_C >= 0)) throw invalid_input("residual_C must be >= 0");
    }
};

/// Binomial coefficient with n >= 0; C(n, k) = 0 for k > n or k < 0.
inline integer binomial(std::int64_t n, std::int64_t k) {
    if (n < 0) throw invalid_input("binomial with negative upper index");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    integer b = 1;
    for (std::int64_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

/// D(m, 1) = 1; otherwise (m+g) Σ_{α=0}^{min(k−1, g)} C(m+g−k−α, k−1−α) C(g, α), which is zero
/// unless m+g ≥ 2k−1.
inline integer constant_D(std::int64_t m, std::int64_t k, std::int64_t g) {
    if (m < 1 || k < 1 || g < 0) throw invalid_input("constant_D requires m >= 1, k >= 1, g >= 0");
    if (k == 1) return 1;
    integer s = 0;
    for (std::int64_t a = 0; a <= std::min(k - 1, g); ++a) s += binomial(m + g - k - a, k - 1 - a) * binomial(g, a);
    return (m + g) * s;
}

/// L·L / (2 deg L).
inline real asymptotic_limit(real L_sq, real deg_L) {
    if (!(deg_L > 0)) throw invalid_input("deg_L must be > 0");
    return L_sq / (2 * deg_L);
}

/// ω·ω / (4g(g−1)).
inline real e_omega_floor(const curve_invariants& inv) {
    inv.validate();
    return inv.omega_sq / (4 * static_cast<real>(inv.g) * static_cast<real>(inv.g - 1));
}

struct bound_pair {
    real a = 0;
    std::optional<real> b;  // only when d >= 2g+1
};

namespace detail {
inline real log_d_over_d(std::int64_t d) { return d == 1 ? real(0) : std::log(static_cast<real>(d)) / static_cast<real>(d); }
}  // namespace detail

/// Lower bounds for e(ω̄, d); both carry −residual_C·log d/d.
inline bound_pair height_lower_bounds(const curve_invariants& inv, std::int64_t d) {
    inv.validate();
    if (d < 1) throw invalid_input("d must be >= 1");
    const real g = inv.g, w = inv.omega_sq, L = inv.log_disc, D = static_cast<real>(d);
    const real tail = inv.residual_C * detail::log_d_over_d(d);
    bound_pair out;
    out.a = w / (4 * g * (g - 1)) * (D * g + g - 1) / (D + 2 * g - 2) - (g - 1) / (D + 2 * g - 2) * L - tail;
    if (d >= 2 * inv.g + 1) out.b = w / (4 * (g - 1)) * (D - 2 * g + 1) / (D - g) - (g - 1) / (D - g) * L - tail;
    return out;
}

/// Upper bounds for e′(ω̄, d0); both carry +residual_C·log d0/d0.
inline bound_pair height_upper_bounds(const curve_invariants& inv, std::int64_t d0) {
    inv.validate();
    if (d0 < 1) throw invalid_input("d0 must be >= 1");
    const real g = inv.g, w = inv.omega_sq, L = inv.log_disc, D = static_cast<real>(d0);
    const real tail = inv.residual_C * detail::log_d_over_d(d0);
    const real base = w / (4 * (g - 1));
    bound_pair out;
    out.a = base + (2 * g - 1) / (4 * g * (D + 2 * g - 2)) * w + (g - 1) / (D + g - 1) * L + tail;
    if (d0 >= 2 * inv.g + 1) out.b = base + w / (4 * (D - g)) + (g - 1) / (D - g) * L + tail;
    return out;
}

struct exact_bound_pair {
    rational a;
    std::optional<rational> b;
};

/// Exact evaluation for log_disc = 0 and residual_C = 0.
inline exact_bound_pair height_lower_bounds_exact(std::int64_t g, const rational& omega_sq, std::int64_t d) {
    if (g < 2 || d < 1 || omega_sq < 0) throw invalid_input("invalid exact lower-bound input");
    exact_bound_pair out;
    out.a = omega_sq / (4 * g * (g - 1)) * rational(d * g + g - 1, d + 2 * g - 2);
    if (d >= 2 * g + 1) out.b = omega_sq / (4 * (g - 1)) * rational(d - 2 * g + 1, d - g);
    return out;
}

inline exact_bound_pair height_upper_bounds_exact(std::int64_t g, const rational& omega_sq, std::int64_t d0) {
    if (g < 2 || d0 < 1 || omega_sq < 0) throw invalid_input("invalid exact upper-bound input");
    const rational base = omega_sq / (4 * (g - 1));
    exact_bound_pair out;
    out.a = base + rational(2 * g - 1, 4 * g * (d0 + 2 * g - 2)) * omega_sq;
    if (d0 >= 2 * g + 1) out.b = base + omega_sq / (4 * (d0 - g));
    return out;
}

struct bound_row {
    std::int64_t d = 0;
    bound_pair lower;
    bound_pair upper;
};

struct consistency_report {
    real limit = 0;
    std::vector<bound_row> rows;
    std::optional<bool> ordering_holds;  // evaluated only when log_disc = 0 and residual_C = 0
    real fitted_K = 0;                   // max over the grid of d·|value − limit|
    real deviation_at_top = 0;           // max |value − limit| at the largest grid point
    bool converged = false;              // deviation_at_top <= 1e-6
};

inline std::vector<std::int64_t> consistency_grid() {
    std::vector<std::int64_t> out;
    std::int64_t d = 10;
    for (int i = 0; i < 8; ++i, d *= 10) out.push_back(d);
    return out;
}

inline consistency_report asymptotic_consistency(const curve_invariants& inv) {
    inv.validate();
    consistency_report rep;
    rep.limit = asymptotic_limit(inv.omega_sq, 2 * static_cast<real>(inv.g) - 2);
    const bool check_order = inv.log_disc == 0 && inv.residual_C == 0;
    bool order = true;
    for (std::int64_t d : consistency_grid()) {
        bound_row row{d, height_lower_bounds(inv, d), height_upper_bounds(inv, d)};
        std::vector<real> lows{row.lower.a}, highs{row.upper.a};
        if (row.lower.b) lows.push_back(*row.lower.b);
        if (row.upper.b) highs.push_back(*row.upper.b);
        if (check_order && d >= 2 * inv.g + 1)
            for (real lo : lows)
                for (real hi : highs)
                    if (lo > hi + 1e-9L) order = false;
        real dev = 0;
        for (real v : lows) dev = std::max(dev, std::abs(v - rep.limit));
        for (real v : highs) dev = std::max(dev, std::abs(v - rep.limit));
        rep.fitted_K = std::max(rep.fitted_K, dev * static_cast<real>(d));
        rep.deviation_at_top = dev;
        rep.rows.push_back(row);
    }
    if (check_order) rep.ordering_holds = order;
    rep.converged = rep.deviation_at_top <= 1e-6L;
    return rep;
}

}  // namespace hermlat
