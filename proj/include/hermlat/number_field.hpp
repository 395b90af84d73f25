#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hermlat/numeric.hpp"
#include "hermlat/polynomial.hpp"
#include "hermlat/rational.hpp"

namespace hermlat {

/// An element of F = Q[x]/(f), stored by its coordinates in the power basis 1, θ, ..., θ^{r-1}.
struct field_element {
    std::vector<rational> coords;

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const rational& q) { return q == 0; });
    }
    friend bool operator==(const field_element&, const field_element&) = default;
};

/// One complex embedding σ: F → C, i.e. a root of the defining polynomial.
struct embedding {
    complex root;
    bool is_real = false;
    std::size_t conjugate = 0;  // index of σ̄ in the embedding list
    real radius = 0;            // a true root lies within this distance of `root`
};

/// Exact arithmetic in a number field with a chosen order (integral basis) and its complex embeddings.
///
/// Embeddings are ordered: real roots ascending, then complex pairs (z, z̄) with Im z > 0,
/// pairs sorted by (Re z, Im z). Fixtures index per-embedding data in this order.
class number_field {
public:
    /// Builds the field from a monic integral polynomial (constant term first).
    /// Without an integral basis the power basis is used and the order is flagged as
    /// possibly non-maximal.
    static number_field build(const std::vector<integer>& coeffs,
                              const std::optional<rational_matrix>& integral_basis = std::nullopt,
                              int precision_bits = default_precision_bits) {
        number_field F;
        F.init(coeffs, integral_basis, precision_bits);
        return F;
    }

    int degree() const { return degree_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    const integer& discriminant() const { return discriminant_; }
    int precision_bits() const { return precision_bits_; }
    bool basis_supplied() const { return basis_supplied_; }
    const poly::rational_poly& defining_poly() const { return f_; }
    const std::vector<integer>& coefficients() const { return coeffs_; }

    /// Columns are the integral basis elements in power-basis coordinates.
    const rational_matrix& integral_basis() const { return basis_; }
    const rational_matrix& trace_gram() const { return trace_gram_; }
    const std::vector<embedding>& embeddings() const { return embeddings_; }

    field_element zero() const { return {std::vector<rational>(static_cast<std::size_t>(degree_))}; }
    field_element one() const {
        auto e = zero();
        e.coords[0] = 1;
        return e;
    }
    field_element from_rational(const rational& q) const {
        auto e = zero();
        e.coords[0] = q;
        return e;
    }
    /// θ^k reduced mod f.
    field_element theta_power(int k) const {
        field_element e = one();
        field_element t = zero();
        if (degree_ > 1)
            t.coords[1] = 1;
        else
            t.coords[0] = -f_[0];
        for (int i = 0; i < k; ++i) e = mul(e, t);
        return e;
    }

    /// The i-th integral basis element.
    field_element basis_element(std::size_t i) const {
        field_element e = zero();
        for (std::size_t k = 0; k < static_cast<std::size_t>(degree_); ++k) e.coords[k] = basis_(k, i);
        return e;
    }

    /// Element with the given coordinates in an arbitrary Z-basis (list of elements).
    field_element combine(const std::vector<field_element>& basis, const std::vector<rational>& z) const {
        field_element e = zero();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (z[i] == 0) continue;
            for (std::size_t k = 0; k < e.coords.size(); ++k) e.coords[k] += z[i] * basis[i].coords[k];
        }
        return e;
    }

    /// Coordinates of `a` in the integral basis.
    std::vector<rational> to_integral_coords(const field_element& a) const {
        std::vector<rational> z(static_cast<std::size_t>(degree_));
        for (std::size_t i = 0; i < z.size(); ++i)
            for (std::size_t k = 0; k < z.size(); ++k) z[i] += basis_inverse_(i, k) * a.coords[k];
        return z;
    }

    field_element add(const field_element& a, const field_element& b) const {
        field_element c = a;
        for (std::size_t i = 0; i < c.coords.size(); ++i) c.coords[i] += b.coords[i];
        return c;
    }
    field_element sub(const field_element& a, const field_element& b) const {
        field_element c = a;
        for (std::size_t i = 0; i < c.coords.size(); ++i) c.coords[i] -= b.coords[i];
        return c;
    }
    field_element neg(const field_element& a) const {
        field_element c = a;
        for (auto& q : c.coords) q = -q;
        return c;
    }
    field_element scale(const field_element& a, const rational& s) const {
        field_element c = a;
        for (auto& q : c.coords) q *= s;
        return c;
    }

    field_element mul(const field_element& a, const field_element& b) const {
        const auto n = static_cast<std::size_t>(degree_);
        std::vector<rational> prod(2 * n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.coords[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) prod[i + j] += a.coords[i] * b.coords[j];
        }
        // f monic: θ^n = -(f_0 + ... + f_{n-1} θ^{n-1})
        for (std::size_t k = prod.size(); k-- > n;) {
            if (prod[k] == 0) continue;
            const rational top = prod[k];
            prod[k] = 0;
            for (std::size_t i = 0; i < n; ++i) prod[k - n + i] -= top * f_[i];
        }
        prod.resize(n);
        return {std::move(prod)};
    }

    /// Multiplicative inverse; throws on zero.
    field_element inverse(const field_element& a) const {
        if (a.is_zero()) throw invalid_input("inverse of zero field element");
        const auto n = static_cast<std::size_t>(degree_);
        // Columns of the multiplication-by-a matrix are a·θ^j.
        rational_matrix m(n, n);
        field_element col = a;
        field_element theta = theta_power(1);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) m(i, j) = col.coords[i];
            col = mul(col, theta);
        }
        const auto inv = m.inverse();
        if (!inv) throw error("multiplication matrix singular: defining polynomial not irreducible");
        field_element x = zero();
        for (std::size_t i = 0; i < n; ++i) x.coords[i] = (*inv)(i, 0);
        return x;
    }

    rational trace(const field_element& a) const {
        rational t = 0;
        for (std::size_t k = 0; k < a.coords.size(); ++k) t += a.coords[k] * power_sums_[k];
        return t;
    }

    /// σ(a) in working precision.
    complex embed(const field_element& a, std::size_t sigma) const {
        return poly::evaluate(to_real_coords(a), embeddings_[sigma].root);
    }

private:
    std::vector<real> to_real_coords(const field_element& a) const {
        std::vector<real> c(a.coords.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_real(a.coords[i]);
        return c;
    }

    void init(const std::vector<integer>& coeffs, const std::optional<rational_matrix>& supplied, int bits) {
        if (coeffs.size() < 2) throw invalid_input("defining polynomial must have degree >= 1");
        if (coeffs.back() != 1) throw invalid_input("defining polynomial must be monic");
        if (bits < 24 || bits > 64) throw invalid_input("precision_bits must lie in [24, 64]");
        precision_bits_ = bits;
        coeffs_ = coeffs;
        f_.assign(coeffs.begin(), coeffs.end());
        degree_ = static_cast<int>(coeffs.size()) - 1;
        const auto n = static_cast<std::size_t>(degree_);

        power_sums_ = poly::power_sums(f_, 2 * n);
        compute_embeddings();
        check_irreducible();

        if (supplied) {
            if (supplied->rows() != n || supplied->cols() != n)
                throw invalid_input("integral basis must be an r x r matrix");
            basis_ = *supplied;
            basis_supplied_ = true;
        } else {
            basis_ = rational_matrix::identity(n);
        }
        auto inv = basis_.inverse();
        if (!inv) throw invalid_input("integral basis is singular");
        basis_inverse_ = std::move(*inv);
        if (!basis_inverse_.is_integral())
            throw invalid_input("integral basis does not contain Z[theta]");

        trace_gram_ = rational_matrix(n, n);
        std::vector<field_element> b;
        for (std::size_t i = 0; i < n; ++i) b.push_back(basis_element(i));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const rational t = trace(mul(b[i], b[j]));
                trace_gram_(i, j) = t;
                trace_gram_(j, i) = t;
            }
        if (!trace_gram_.is_integral())
            throw invalid_input("integral basis has non-integral trace pairings");
        discriminant_ = numerator(trace_gram_.determinant());
    }

    void compute_embeddings() {
        const auto n = static_cast<std::size_t>(degree_);
        auto g = poly::gcd(f_, poly::derivative(f_));
        if (poly::degree(g) > 0) throw invalid_input("defining polynomial is reducible (repeated factor)");
        r1_ = poly::count_real_roots(f_);
        if ((degree_ - r1_) % 2 != 0) throw precision_failure("inconsistent real root count");
        r2_ = (degree_ - r1_) / 2;

        auto roots = poly::complex_roots(f_);
        std::sort(roots.begin(), roots.end(),
                  [](const auto& a, const auto& b) { return std::abs(a.value.imag()) < std::abs(b.value.imag()); });

        const real tol = std::ldexp(real(64 * n), -precision_bits_);
        auto certify = [&](const poly::root_estimate& e) {
            const real scale = poly::horner_error_bound(f_, std::abs(e.value)) /
                               (4 * static_cast<real>(f_.size()) * std::numeric_limits<real>::epsilon());
            if (!(e.residual <= tol * scale)) throw precision_failure("root residual above certified bound");
        };

        std::vector<embedding> real_roots, upper;
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<int>(i) < r1_) {
                real x = roots[i].value.real();
                std::vector<real> c(f_.size()), dc;
                for (std::size_t k = 0; k < f_.size(); ++k) c[k] = to_real(f_[k]);
                for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * static_cast<real>(k));
                for (int it = 0; it < 3; ++it) {
                    const real d = poly::evaluate(dc, complex(x)).real();
                    if (d == 0) break;
                    x -= poly::evaluate(c, complex(x)).real() / d;
                }
                const real fx = std::abs(poly::evaluate(c, complex(x)).real());
                const real dx = std::abs(poly::evaluate(dc, complex(x)).real());
                poly::root_estimate e{complex(x), fx, dx == 0 ? std::numeric_limits<real>::infinity() : n * fx / dx};
                certify(e);
                real_roots.push_back({complex(x), true, 0, e.radius});
            } else if (roots[i].value.imag() > 0) {
                certify(roots[i]);
                upper.push_back({roots[i].value, false, 0, roots[i].radius});
            }
        }
        if (static_cast<int>(upper.size()) != r2_) throw precision_failure("complex roots do not pair up under conjugation");
        std::sort(real_roots.begin(), real_roots.end(),
                  [](const auto& a, const auto& b) { return a.root.real() < b.root.real(); });
        std::sort(upper.begin(), upper.end(), [](const auto& a, const auto& b) {
            return a.root.real() != b.root.real() ? a.root.real() < b.root.real() : a.root.imag() < b.root.imag();
        });
        embeddings_.clear();
        for (auto e : real_roots) {
            e.conjugate = embeddings_.size();
            embeddings_.push_back(e);
        }
        for (auto e : upper) {
            const std::size_t idx = embeddings_.size();
            e.conjugate = idx + 1;
            embeddings_.push_back(e);
            embedding c = e;
            c.root = std::conj(e.root);
            c.conjugate = idx;
            embeddings_.push_back(c);
        }
    }

    // A monic rational factor of degree d has integer coefficients (Gauss) and is the product
    // of d of the roots. Each candidate from rounding is confirmed by exact division.
    void check_irreducible() const {
        const auto n = static_cast<std::size_t>(degree_);
        if (n > 20) throw invalid_input("irreducibility test limited to degree <= 20");
        std::vector<complex> z;
        for (const auto& e : embeddings_) z.push_back(e.root);
        std::vector<std::size_t> pick;
        auto try_subset = [&]() -> bool {
            std::vector<complex> prod{complex(1)};
            for (auto idx : pick) {
                std::vector<complex> next(prod.size() + 1);
                for (std::size_t i = 0; i < prod.size(); ++i) {
                    next[i + 1] += prod[i];
                    next[i] -= prod[i] * z[idx];
                }
                prod = std::move(next);
            }
            poly::rational_poly cand;
            for (const auto& c : prod) {
                const real rounded = std::round(c.real());
                if (std::abs(c.imag()) > 0.25L || std::abs(c.real() - rounded) > 0.25L) return false;
                cand.push_back(rational(static_cast<long long>(rounded)));
            }
            return poly::divmod(f_, cand).second.empty();
        };
        for (std::size_t d = 1; d <= n / 2; ++d) {
            pick.assign(d, 0);
            std::iota(pick.begin(), pick.end(), std::size_t{0});
            while (true) {
                if (try_subset()) throw invalid_input("defining polynomial is reducible over Q");
                std::size_t i = d;
                while (i > 0 && pick[i - 1] == n - d + (i - 1)) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }

    int degree_ = 0;
    int r1_ = 0;
    int r2_ = 0;
    int precision_bits_ = default_precision_bits;
    bool basis_supplied_ = false;
    std::vector<integer> coeffs_;
    poly::rational_poly f_;
    std::vector<rational> power_sums_;
    rational_matrix basis_;
    rational_matrix basis_inverse_;
    rational_matrix trace_gram_;
    integer discriminant_;
    std::vector<embedding> embeddings_;
};

/// C(N, F) = (1/r) log|Δ_F| + (3/2) log N + (5/2) log r − (r_2/r) log π.
inline real constant_C(int N, const number_field& F) {
    if (N < 1) throw invalid_input("constant_C requires N >= 1");
    const real r = F.degree();
    const real log_disc = std::log(std::abs(F.discriminant().convert_to<real>()));
    return log_disc / r + 1.5L * std::log(static_cast<real>(N)) + 2.5L * std::log(r) -
           (static_cast<real>(F.r2()) / r) * std::log(pi_v);
}

}  // namespace hermlat
