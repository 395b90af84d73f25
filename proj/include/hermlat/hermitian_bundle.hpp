#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>

#include "hermlat/number_field.hpp"
#include "hermlat/numeric.hpp"

namespace hermlat {

inline constexpr double gram_tolerance = 1e-12;

/// A free hermitian vector bundle over the chosen order of F: rank N, one positive-definite
/// hermitian Gram matrix per complex embedding, invariant under complex conjugation.
class hermitian_bundle {
public:
    hermitian_bundle(number_field field, int rank, std::vector<complex_matrix> grams)
        : field_(std::move(field)), rank_(rank), grams_(std::move(grams)) {
        validate();
    }

    const number_field& field() const { return field_; }
    int rank() const { return rank_; }
    const std::vector<complex_matrix>& grams() const { return grams_; }
    const complex_matrix& gram(std::size_t sigma) const { return grams_[sigma]; }

private:
    void validate() const {
        const auto r = static_cast<std::size_t>(field_.degree());
        if (rank_ < 1) throw invalid_input("bundle rank must be >= 1");
        if (grams_.size() != r) throw invalid_input("need one Gram matrix per embedding");
        for (std::size_t s = 0; s < r; ++s) {
            const auto& H = grams_[s];
            if (H.rows() != rank_ || H.cols() != rank_) throw invalid_input("Gram matrix has wrong shape");
            const real scale = std::max<real>(1, H.cwiseAbs().maxCoeff());
            if ((H - H.adjoint()).cwiseAbs().maxCoeff() > gram_tolerance * scale)
                throw invalid_input("Gram matrix for embedding " + std::to_string(s) + " is not hermitian");
            Eigen::LLT<complex_matrix> llt(H);
            if (llt.info() != Eigen::Success)
                throw invalid_input("Gram matrix for embedding " + std::to_string(s) + " is not positive definite");
            const std::size_t c = field_.embeddings()[s].conjugate;
            if ((grams_[c] - H.conjugate()).cwiseAbs().maxCoeff() > gram_tolerance * scale)
                throw invalid_input("Gram matrices violate conjugation invariance at embedding " + std::to_string(s));
        }
    }

    number_field field_;
    int rank_;
    std::vector<complex_matrix> grams_;
};

inline hermitian_bundle make_bundle(const number_field& field, int rank, std::vector<complex_matrix> grams) {
    return hermitian_bundle(field, rank, std::move(grams));
}

/// The same Gram at every embedding (must then be real when F has a real place).
inline hermitian_bundle make_uniform_bundle(const number_field& field, const complex_matrix& gram) {
    return hermitian_bundle(field, static_cast<int>(gram.rows()),
                            std::vector<complex_matrix>(static_cast<std::size_t>(field.degree()), gram));
}

/// Dual metric on E* in the dual basis: for u ∈ E*_σ paired bilinearly with E_σ,
/// ‖u‖² = u* conj(H_σ⁻¹) u. conj(H_σ⁻¹) = H_σ̄⁻¹, so for real embeddings this is H_σ⁻¹.
inline complex_matrix dual_gram(const complex_matrix& H) {
    const auto n = H.rows();
    complex_matrix inv = Eigen::LLT<complex_matrix>(H).solve(complex_matrix::Identity(n, n));
    complex_matrix h = (inv + inv.adjoint()) / real(2);
    return h.conjugate();
}

inline hermitian_bundle dual_bundle(const hermitian_bundle& E) {
    const auto& F = E.field();
    std::vector<complex_matrix> grams(E.grams().size());
    for (std::size_t s = 0; s < grams.size(); ++s) {
        const std::size_t c = F.embeddings()[s].conjugate;
        if (c < s)
            grams[s] = grams[c].conjugate();
        else
            grams[s] = dual_gram(E.gram(s));
    }
    return hermitian_bundle(F, E.rank(), std::move(grams));
}

enum class norm_kind { sup, sum };
enum class rank_mode { f_rank, q_rank };

inline std::string to_string(norm_kind n) { return n == norm_kind::sup ? "sup" : "sum"; }
inline std::string to_string(rank_mode m) { return m == rank_mode::f_rank ? "f-rank" : "q-rank"; }

using z_vector = std::vector<std::int64_t>;

/// A lattice vector: integer coordinates in the Z-basis {b_i e_j} (index j*r + i) together
/// with its exact image in F^N.
struct bundle_vector {
    z_vector z_coords;
    std::vector<field_element> f_coords;
};

/// Restriction of scalars: a rank-N module M^N (M a rank-r Z-module in F with basis b_i)
/// viewed as a Z-lattice of rank Nr, with per-embedding norms
///   ‖x‖_σ = w_σ · sqrt(v_σ* G_σ v_σ),  v_σ[j] = Σ_i x[j r + i] σ(b_i).
/// The Euclidean form Q(x) = Σ_σ ‖x‖²_σ drives enumeration.
class restricted_lattice {
public:
    restricted_lattice(number_field field, int rank, std::vector<field_element> module_basis,
                       std::vector<complex_matrix> grams, std::vector<real> weights)
        : field_(std::move(field)), rank_(rank), basis_(std::move(module_basis)), grams_(std::move(grams)),
          weights_(std::move(weights)) {
        assemble();
    }

    const number_field& field() const { return field_; }
    int rank() const { return rank_; }
    int degree() const { return field_.degree(); }
    int z_rank() const { return rank_ * field_.degree(); }
    std::size_t embedding_count() const { return grams_.size(); }
    const std::vector<field_element>& module_basis() const { return basis_; }
    const std::vector<complex_matrix>& grams() const { return grams_; }
    const std::vector<real>& weights() const { return weights_; }
    /// N × Nr matrix sending integer coordinates to σ-coordinates.
    const complex_matrix& embedding_map(std::size_t sigma) const { return maps_[sigma]; }
    const real_matrix& euclid_gram() const { return euclid_; }

    real sigma_norm(std::span<const std::int64_t> x, std::size_t sigma) const {
        const auto& A = factors_[sigma];
        real s = 0;
        for (Eigen::Index row = 0; row < A.rows(); ++row) {
            complex acc = 0;
            for (Eigen::Index c = 0; c < A.cols(); ++c)
                if (x[static_cast<std::size_t>(c)] != 0) acc += A(row, c) * static_cast<real>(x[static_cast<std::size_t>(c)]);
            s += std::norm(acc);
        }
        return std::sqrt(s);
    }

    real sup_norm(std::span<const std::int64_t> x) const {
        real m = 0;
        for (std::size_t s = 0; s < grams_.size(); ++s) m = std::max(m, sigma_norm(x, s));
        return m;
    }

    real sum_norm(std::span<const std::int64_t> x) const {
        real m = 0;
        for (std::size_t s = 0; s < grams_.size(); ++s) m += sigma_norm(x, s);
        return m;
    }

    real norm(std::span<const std::int64_t> x, norm_kind kind) const {
        return kind == norm_kind::sup ? sup_norm(x) : sum_norm(x);
    }

    real quadratic_form(std::span<const std::int64_t> x) const {
        real q = 0;
        for (Eigen::Index i = 0; i < euclid_.rows(); ++i)
            for (Eigen::Index j = 0; j < euclid_.cols(); ++j)
                q += euclid_(i, j) * static_cast<real>(x[static_cast<std::size_t>(i)]) *
                     static_cast<real>(x[static_cast<std::size_t>(j)]);
        return q;
    }

    /// Exact image in F^N.
    std::vector<field_element> to_field_coords(std::span<const std::int64_t> x) const {
        const auto r = static_cast<std::size_t>(degree());
        std::vector<field_element> out;
        for (std::size_t j = 0; j < static_cast<std::size_t>(rank_); ++j) {
            std::vector<rational> z(r);
            for (std::size_t i = 0; i < r; ++i) z[i] = x[j * r + i];
            out.push_back(field_.combine(basis_, z));
        }
        return out;
    }

    /// Inverse of to_field_coords; nullopt when the vector is not in the lattice.
    std::optional<z_vector> from_field_coords(const std::vector<field_element>& f) const {
        const auto r = static_cast<std::size_t>(degree());
        z_vector out;
        for (const auto& e : f) {
            std::vector<rational> c(r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t k = 0; k < r; ++k) c[i] += basis_inverse_(i, k) * e.coords[k];
            for (const auto& q : c) {
                if (!is_integral(q)) return std::nullopt;
                out.push_back(numerator(q).convert_to<std::int64_t>());
            }
        }
        return out;
    }

    bundle_vector make_vector(z_vector z) const {
        auto f = to_field_coords(z);
        return {std::move(z), std::move(f)};
    }

private:
    void assemble() {
        const auto r = static_cast<std::size_t>(field_.degree());
        const auto N = static_cast<std::size_t>(rank_);
        if (basis_.size() != r) throw invalid_input("module basis must have r elements");
        if (grams_.size() != r || weights_.size() != r) throw invalid_input("need per-embedding grams and weights");

        rational_matrix B(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < r; ++k) B(k, i) = basis_[i].coords[k];
        auto inv = B.inverse();
        if (!inv) throw invalid_input("module basis is not linearly independent");
        basis_inverse_ = std::move(*inv);

        const auto n = static_cast<Eigen::Index>(N * r);
        euclid_ = real_matrix::Zero(n, n);
        for (std::size_t s = 0; s < r; ++s) {
            std::vector<complex> images(r);
            for (std::size_t i = 0; i < r; ++i) images[i] = field_.embed(basis_[i], s);
            complex_matrix M = complex_matrix::Zero(static_cast<Eigen::Index>(N), n);
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t i = 0; i < r; ++i)
                    M(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j * r + i)) = images[i];
            Eigen::LLT<complex_matrix> llt(grams_[s]);
            if (llt.info() != Eigen::Success) throw precision_failure("Gram factorization failed");
            complex_matrix U = llt.matrixU();
            complex_matrix A = weights_[s] * (U * M);
            euclid_ += (A.adjoint() * A).real();
            maps_.push_back(std::move(M));
            factors_.push_back(std::move(A));
        }
        euclid_ = (euclid_ + euclid_.transpose()) / real(2);
        Eigen::LLT<real_matrix> check(euclid_);
        if (check.info() != Eigen::Success)
            throw precision_failure("assembled Euclidean Gram is not positive definite; retry at higher precision");
    }

    number_field field_;
    int rank_;
    std::vector<field_element> basis_;
    std::vector<complex_matrix> grams_;
    std::vector<real> weights_;
    rational_matrix basis_inverse_;
    std::vector<complex_matrix> maps_;
    std::vector<complex_matrix> factors_;
    real_matrix euclid_;
};

inline std::vector<field_element> integral_basis_elements(const number_field& F) {
    std::vector<field_element> b;
    for (std::size_t i = 0; i < static_cast<std::size_t>(F.degree()); ++i) b.push_back(F.basis_element(i));
    return b;
}

inline restricted_lattice restrict_scalars(const hermitian_bundle& E) {
    const auto r = static_cast<std::size_t>(E.field().degree());
    return restricted_lattice(E.field(), E.rank(), integral_basis_elements(E.field()), E.grams(),
                              std::vector<real>(r, real(1)));
}

}  // namespace hermlat
