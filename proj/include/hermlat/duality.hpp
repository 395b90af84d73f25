#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "hermlat/hermitian_bundle.hpp"
#include "hermlat/minima.hpp"
#include "hermlat/number_field.hpp"

namespace hermlat {

/// ω = Hom_Z(O, Z) realized as the codifferent {a : Tr(aO) ⊂ Z} via a ↦ Tr(a·),
/// with the metric |Tr|_σ = 1 at real and 2 at complex embeddings.
struct trace_module {
    std::vector<field_element> codifferent_basis;  // Tr(b_i c_j) = δ_ij
    std::vector<real> metric_weights;
};

inline trace_module make_trace_module(const number_field& F) {
    const auto r = static_cast<std::size_t>(F.degree());
    const auto inv = F.trace_gram().inverse();
    if (!inv) throw error("singular trace Gram: corrupted field data");
    trace_module T;
    for (std::size_t j = 0; j < r; ++j) {
        field_element c = F.zero();
        for (std::size_t i = 0; i < r; ++i) c = F.add(c, F.scale(F.basis_element(i), (*inv)(i, j)));
        T.codifferent_basis.push_back(std::move(c));
    }
    for (const auto& e : F.embeddings()) T.metric_weights.push_back(e.is_real ? real(1) : real(2));
    return T;
}

namespace detail {

// Row-style Hermite reduction of integer generators; returns a basis of their Z-span.
inline std::vector<std::vector<integer>> z_span_basis(std::vector<std::vector<integer>> rows, std::size_t cols) {
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = pivot_row; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[pivot_row], rows[best]);
            bool done = true;
            for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                const integer q = rows[i][c] / rows[pivot_row][c];
                for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[pivot_row][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) {
                ++pivot_row;
                break;
            }
        }
    }
    rows.resize(pivot_row);
    return rows;
}

inline std::vector<field_element> trace_dual_basis(const number_field& F, const std::vector<field_element>& basis) {
    const auto r = basis.size();
    rational_matrix T(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) T(i, j) = F.trace(F.mul(basis[i], basis[j]));
    const auto inv = T.inverse();
    if (!inv) throw error("degenerate trace form on module basis");
    std::vector<field_element> dual;
    for (std::size_t j = 0; j < r; ++j) {
        field_element d = F.zero();
        for (std::size_t i = 0; i < r; ++i) d = F.add(d, F.scale(basis[i], (*inv)(i, j)));
        dual.push_back(std::move(d));
    }
    return dual;
}

}  // namespace detail

/// Z-basis of ω⁻¹ = Hom_O(ω, O), realized inside F as {x : x·ω ⊂ O}, the different of the order.
/// Since O is the trace dual of the codifferent C, x·C ⊂ O iff Tr(x·c_i·c_j) ∈ Z for all i, j,
/// so ω⁻¹ is the trace dual of the Z-span of the products c_i c_j.
inline std::vector<field_element> inverse_trace_module_basis(const number_field& F, const trace_module& T) {
    const auto r = static_cast<std::size_t>(F.degree());
    std::vector<field_element> gens;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) gens.push_back(F.mul(T.codifferent_basis[i], T.codifferent_basis[j]));
    integer denom = 1;
    for (const auto& g : gens)
        for (const auto& q : g.coords) denom = lcm(denom, denominator(q));
    std::vector<std::vector<integer>> rows;
    for (const auto& g : gens) {
        std::vector<integer> row;
        for (const auto& q : g.coords) row.push_back(numerator(rational(q * denom)));
        rows.push_back(std::move(row));
    }
    auto basis_rows = detail::z_span_basis(std::move(rows), r);
    if (basis_rows.size() != r) throw error("products of codifferent elements do not span a full lattice");
    std::vector<field_element> span;
    for (const auto& row : basis_rows) {
        field_element e = F.zero();
        for (std::size_t k = 0; k < r; ++k) e.coords[k] = rational(row[k], denom);
        span.push_back(std::move(e));
    }
    return detail::trace_dual_basis(F, span);
}

/// E^∨ = Hom_Z(E, Z) with its σ-norms. Identified through α with E* ⊗ ω: the functional
/// x ↦ Tr(y·x) (y ∈ C^N, C the codifferent) has σ-norm |Tr|_σ · ‖σ(y)‖*_σ. The underlying
/// Z-basis is dual to {b_i e_j}: coordinate index j*r + i pairs with b_i e_j.
class trace_dual_lattice {
public:
    explicit trace_dual_lattice(const hermitian_bundle& E)
        : source_(E), module_(make_trace_module(E.field())), lattice_(build(E, module_)) {
        const auto N = static_cast<Eigen::Index>(E.rank());
        const auto n = static_cast<Eigen::Index>(E.rank() * E.field().degree());
        restricted_lattice primal = restrict_scalars(E);
        complex_matrix phi(n, n);
        for (std::size_t s = 0; s < E.grams().size(); ++s)
            phi.block(static_cast<Eigen::Index>(s) * N, 0, N, n) = primal.embedding_map(s);
        phi_inverse_ = phi.fullPivLu().inverse();
    }

    const hermitian_bundle& source() const { return source_; }
    const trace_module& module() const { return module_; }
    /// Lattice view used for minima (α route).
    const restricted_lattice& lattice() const { return lattice_; }

    /// σ-norm by the functional route: extend the Z-functional C-linearly to E ⊗ C = ⊕_σ E_σ,
    /// restrict to the σ-summand and take the dual norm of the real functional it induces on the
    /// real space of the place of σ (with inner product Re h_σ).
    real direct_sigma_norm(std::span<const std::int64_t> z, std::size_t sigma) const {
        const auto N = static_cast<Eigen::Index>(source_.rank());
        const auto n = static_cast<Eigen::Index>(z.size());
        Eigen::Matrix<complex, 1, Eigen::Dynamic> zr(n);
        for (Eigen::Index t = 0; t < n; ++t) zr(t) = static_cast<real>(z[static_cast<std::size_t>(t)]);
        const Eigen::Matrix<complex, 1, Eigen::Dynamic> ell =
            (zr * phi_inverse_).segment(static_cast<Eigen::Index>(sigma) * N, N);
        const complex_matrix& H = source_.gram(sigma);
        if (source_.field().embeddings()[sigma].is_real) {
            const real_matrix S = H.real();
            const real_vector f = ell.real().transpose();
            return std::sqrt(f.dot(S.ldlt().solve(f)));
        }
        real_matrix S(2 * N, 2 * N);
        const real_matrix A = H.real(), B = H.imag();
        S << A, -B, B, A;
        real_vector f(2 * N);
        f << 2 * ell.real().transpose(), -2 * ell.imag().transpose();
        return std::sqrt(f.dot(S.ldlt().solve(f)));
    }

    /// σ-norm by the α route: |Tr|_σ times the dual-metric norm of σ(y).
    real alpha_sigma_norm(std::span<const std::int64_t> z, std::size_t sigma) const {
        const auto& F = source_.field();
        const auto y = lattice_.to_field_coords(z);
        complex_vector v(static_cast<Eigen::Index>(y.size()));
        for (std::size_t j = 0; j < y.size(); ++j) v(static_cast<Eigen::Index>(j)) = F.embed(y[j], sigma);
        const complex_matrix G = dual_gram(source_.gram(sigma));
        const complex q = (v.adjoint() * G * v)(0, 0);
        return module_.metric_weights[sigma] * std::sqrt(std::max<real>(0, q.real()));
    }

private:
    static restricted_lattice build(const hermitian_bundle& E, const trace_module& T) {
        std::vector<complex_matrix> grams;
        for (const auto& H : E.grams()) grams.push_back(dual_gram(H));
        return restricted_lattice(E.field(), E.rank(), T.codifferent_basis, std::move(grams), T.metric_weights);
    }

    hermitian_bundle source_;
    trace_module module_;
    restricted_lattice lattice_;
    complex_matrix phi_inverse_;
};

inline trace_dual_lattice trace_dual(const hermitian_bundle& E) { return trace_dual_lattice(E); }

/// vol(B) = 2^{r_1} π^{r_2} for the unit ball of ω⁻¹_R.
inline real unit_ball_volume(const number_field& F) {
    return std::pow(real(2), F.r1()) * std::pow(pi_v, F.r2());
}

/// log covol(ω⁻¹), computed from the codifferent basis. Convention (see docs/duality.md):
/// ω̄ is placed in Minkowski coordinates (one real coordinate per real place, one complex
/// coordinate |Tr|_σ·σ(a) per complex place), G is the Gram of the codifferent basis there, and
/// ω⁻¹_R carries the dual inner product; the covolume is reported as the Gram determinant of the
/// dual lattice, det G⁻¹. This equals log|Δ_F| − 2 r_2 log 2.
inline real codifferent_covolume(const number_field& F) {
    const auto T = make_trace_module(F);
    const auto r = static_cast<Eigen::Index>(F.degree());
    real_matrix G = real_matrix::Zero(r, r);
    const auto& emb = F.embeddings();
    for (std::size_t s = 0; s < emb.size(); ++s) {
        if (!emb[s].is_real && emb[s].root.imag() < 0) continue;  // one coordinate per place
        const real w = T.metric_weights[s];
        std::vector<complex> y;
        for (const auto& c : T.codifferent_basis) y.push_back(w * F.embed(c, s));
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < r; ++j)
                G(i, j) += (y[static_cast<std::size_t>(i)] * std::conj(y[static_cast<std::size_t>(j)])).real();
    }
    return -std::log(G.determinant()) + real(0);
}

inline real codifferent_covolume_closed_form(const number_field& F) {
    return std::log(std::abs(F.discriminant().convert_to<real>())) - 2 * F.r2() * std::log(real(2));
}

/// (1/r) log|Δ_F| − (r_2/r) log π.
inline real minkowski_bound(const number_field& F) {
    const real r = F.degree();
    return std::log(std::abs(F.discriminant().convert_to<real>())) / r - (F.r2() / r) * std::log(pi_v);
}

/// ω⁻¹ as a lattice: basis of {x : xω ⊂ O} with ‖x‖_σ = |σ(x)| / |Tr|_σ.
inline restricted_lattice inverse_trace_module_lattice(const number_field& F) {
    const auto T = make_trace_module(F);
    std::vector<real> weights;
    for (real w : T.metric_weights) weights.push_back(1 / w);
    const auto r = static_cast<std::size_t>(F.degree());
    return restricted_lattice(F, 1, inverse_trace_module_basis(F, T),
                              std::vector<complex_matrix>(r, complex_matrix::Identity(1, 1)), std::move(weights));
}

struct minkowski_vector {
    field_element v;
    z_vector z_coords;  // in the ω⁻¹ basis
    real sup_log_norm;
    real bound;
};

/// Smallest sup-norm nonzero vector of ω⁻¹ (lexicographic tie-break).
inline minkowski_vector minkowski_codifferent_vector(const number_field& F, std::int64_t budget = default_budget) {
    const auto L = inverse_trace_module_lattice(F);
    const auto prof = successive_minima(L, 1, rank_mode::q_rank, norm_kind::sup, budget);
    if (!prof.certified) throw error("no certified Minkowski vector within budget (implementation bug)");
    const auto& w = prof.witnesses.front();
    return {w.f_coords.front(), w.z_coords, prof.values.front(), minkowski_bound(F)};
}

struct dual_minima_report {
    int k = 0;
    real mu_dual = 0;        // μ_k(Ē*)
    real mu_trace_dual = 0;  // μ_k(Ē^∨)
    real v_log_norm = 0;     // sup_σ log ‖v‖_σ
    bool holds = false;
    bool certified = false;
};

/// μ_k(Ē*) ≤ μ_k(Ē^∨) + sup_σ log ‖v‖_σ with v the Minkowski vector of ω⁻¹.
inline dual_minima_report dual_minima_comparison(const hermitian_bundle& E, int k, std::int64_t budget = default_budget,
                                                 real slack = structural_slack) {
    if (k < 1 || k > E.rank()) throw invalid_input("k out of range");
    const auto star = successive_minima(restrict_scalars(dual_bundle(E)), k, rank_mode::f_rank, norm_kind::sup, budget);
    const auto vee = successive_minima(trace_dual(E).lattice(), k, rank_mode::f_rank, norm_kind::sup, budget);
    const auto v = minkowski_codifferent_vector(E.field(), budget);
    dual_minima_report rep;
    rep.k = k;
    rep.certified = star.certified && vee.certified;
    if (star.values.size() == static_cast<std::size_t>(k)) rep.mu_dual = star.values.back();
    if (vee.values.size() == static_cast<std::size_t>(k)) rep.mu_trace_dual = vee.values.back();
    rep.v_log_norm = v.sup_log_norm;
    rep.holds = rep.certified && rep.mu_dual <= rep.mu_trace_dual + rep.v_log_norm + slack;
    return rep;
}

}  // namespace hermlat
