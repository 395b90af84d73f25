#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "hermlat/numeric.hpp"
#include "hermlat/rational.hpp"

// Univariate polynomials over Q stored constant term first.
namespace hermlat::poly {

using rational_poly = std::vector<rational>;

inline void trim(rational_poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const rational_poly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

inline rational_poly multiply(const rational_poly& a, const rational_poly& b) {
    if (a.empty() || b.empty()) return {};
    rational_poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

inline rational_poly derivative(const rational_poly& p) {
    rational_poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

/// Quotient and remainder of a by b (b nonzero).
inline std::pair<rational_poly, rational_poly> divmod(rational_poly a, const rational_poly& b) {
    const int db = degree(b);
    if (db < 0) throw invalid_input("polynomial division by zero");
    trim(a);
    rational_poly q;
    if (degree(a) >= db) q.assign(static_cast<std::size_t>(degree(a) - db + 1), rational(0));
    while (degree(a) >= db) {
        const int da = degree(a);
        const rational f = a[static_cast<std::size_t>(da)] / b[static_cast<std::size_t>(db)];
        q[static_cast<std::size_t>(da - db)] = f;
        for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(da - db + i)] -= f * b[static_cast<std::size_t>(i)];
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline rational_poly make_monic(rational_poly p) {
    trim(p);
    if (p.empty()) return p;
    const rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline rational_poly gcd(rational_poly a, rational_poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

inline int sign_at_plus_infinity(const rational_poly& p) {
    const int d = degree(p);
    return d < 0 ? 0 : (p[static_cast<std::size_t>(d)] > 0 ? 1 : -1);
}

inline int sign_at_minus_infinity(const rational_poly& p) {
    const int d = degree(p);
    if (d < 0) return 0;
    const int s = p[static_cast<std::size_t>(d)] > 0 ? 1 : -1;
    return (d % 2 == 0) ? s : -s;
}

/// Number of distinct real roots, via a Sturm sequence (exact).
inline int count_real_roots(const rational_poly& p) {
    std::vector<rational_poly> seq{p, derivative(p)};
    trim(seq[0]);
    while (degree(seq.back()) > 0) {
        auto r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        seq.push_back(std::move(r));
    }
    auto changes = [&](auto sign_of) {
        int count = 0, last = 0;
        for (const auto& s : seq) {
            const int v = sign_of(s);
            if (v == 0) continue;
            if (last != 0 && v != last) ++count;
            last = v;
        }
        return count;
    };
    return changes(sign_at_minus_infinity) - changes(sign_at_plus_infinity);
}

/// Power sums p_k = sum of k-th powers of the roots of a monic polynomial, k = 0..count-1.
inline std::vector<rational> power_sums(const rational_poly& monic, std::size_t count) {
    const int n = degree(monic);
    // monic = x^n + c_{n-1} x^{n-1} + ... ; e_i = (-1)^i c_{n-i}
    std::vector<rational> e(static_cast<std::size_t>(n) + 1);
    e[0] = 1;
    for (int i = 1; i <= n; ++i) {
        const rational& c = monic[static_cast<std::size_t>(n - i)];
        e[static_cast<std::size_t>(i)] = (i % 2 == 0) ? c : rational(-c);
    }
    std::vector<rational> p(count);
    if (count == 0) return p;
    p[0] = n;
    for (std::size_t k = 1; k < count; ++k) {
        rational s = 0;
        const std::size_t top = std::min<std::size_t>(k - 1, static_cast<std::size_t>(n));
        for (std::size_t i = 1; i <= top; ++i) {
            const rational term = e[i] * p[k - i];
            s += (i % 2 == 1) ? term : rational(-term);
        }
        if (k <= static_cast<std::size_t>(n)) {
            const rational term = e[k] * static_cast<long>(k);
            s += (k % 2 == 1) ? term : rational(-term);
        }
        p[k] = s;
    }
    return p;
}

template <class T>
complex evaluate(const std::vector<T>& coeffs, complex z) {
    complex acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + complex(static_cast<real>(coeffs[i]));
    return acc;
}

/// A root together with a rigorous-in-exact-arithmetic radius: some root of f lies
/// within `radius` of `value` (n * |f(z)| / |f'(z)| for a degree-n polynomial).
struct root_estimate {
    complex value;
    real residual;
    real radius;
};

/// All complex roots of a squarefree polynomial by Aberth-Ehrlich iteration and Newton polish.
inline std::vector<root_estimate> complex_roots(const rational_poly& p) {
    const int n = degree(p);
    if (n < 1) throw invalid_input("root finding on a constant polynomial");
    std::vector<real> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = to_real(p[static_cast<std::size_t>(i)]);
    std::vector<real> dc(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) dc[static_cast<std::size_t>(i - 1)] = c[static_cast<std::size_t>(i)] * i;

    real bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)] / c.back()));
    bound += 1;

    std::vector<complex> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const real angle = 2 * pi_v * i / n + 0.4L;
        z[static_cast<std::size_t>(i)] = std::polar(bound * 0.5L, angle);
    }
    if (n == 1) z[0] = complex(-c[0] / c[1]);
    for (int iter = 0; iter < 500 && n > 1; ++iter) {
        real worst = 0;
        for (int i = 0; i < n; ++i) {
            const complex zi = z[static_cast<std::size_t>(i)];
            const complex ratio = evaluate(c, zi) / evaluate(dc, zi);
            complex repel = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) repel += 1.0L / (zi - z[static_cast<std::size_t>(j)]);
            const complex step = ratio / (1.0L - ratio * repel);
            z[static_cast<std::size_t>(i)] -= step;
            worst = std::max(worst, std::abs(step) / std::max<real>(1, std::abs(zi)));
        }
        if (worst < 1e-17L) break;
    }
    std::vector<root_estimate> out;
    for (auto zi : z) {
        for (int k = 0; k < 3; ++k) {
            const complex d = evaluate(dc, zi);
            if (std::abs(d) == 0) break;
            zi -= evaluate(c, zi) / d;
        }
        const complex fz = evaluate(c, zi);
        const complex dz = evaluate(dc, zi);
        const real radius = std::abs(dz) == 0 ? std::numeric_limits<real>::infinity() : n * std::abs(fz) / std::abs(dz);
        out.push_back({zi, std::abs(fz), radius});
    }
    return out;
}

/// Running error bound for Horner evaluation of |f(z)| in working precision.
inline real horner_error_bound(const rational_poly& p, real abs_z) {
    real acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * abs_z + std::abs(to_real(p[i]));
    const real u = std::numeric_limits<real>::epsilon();
    return 4 * static_cast<real>(p.size()) * u * acc;
}

}  // namespace hermlat::poly
