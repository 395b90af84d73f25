#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "hermlat/hermitian_bundle.hpp"
#include "hermlat/minima.hpp"

namespace hermlat {

/// Normalized degree of the line O·e with ‖e‖_σ = t_σ: (−Σ_σ log t_σ) / r.
inline real line_degree(const number_field& F, const std::vector<real>& scales) {
    const auto r = static_cast<std::size_t>(F.degree());
    if (scales.size() != r) throw invalid_input("need one scale per embedding");
    real s = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (!(scales[i] > 0)) throw invalid_input("line scales must be positive");
        if (std::abs(scales[i] - scales[F.embeddings()[i].conjugate]) > gram_tolerance * scales[i])
            throw invalid_input("line scales violate conjugation invariance");
        s -= std::log(scales[i]);
    }
    return s / static_cast<real>(r);
}

/// Orthogonal direct sum of hermitian lines: Gram diag(t_{σ,1}², ..., t_{σ,N}²) at σ.
class diagonal_bundle {
public:
    /// line_scales[j][σ] is the norm of the j-th standard generator at σ.
    diagonal_bundle(number_field field, std::vector<std::vector<real>> line_scales)
        : field_(std::move(field)), scales_(std::move(line_scales)) {
        if (scales_.empty()) throw invalid_input("diagonal bundle needs at least one line");
        for (const auto& t : scales_) line_degree(field_, t);
    }

    /// Rejects bundles whose Gram matrices are not diagonal.
    static diagonal_bundle from_bundle(const hermitian_bundle& E) {
        const auto N = static_cast<std::size_t>(E.rank());
        std::vector<std::vector<real>> scales(N);
        for (std::size_t s = 0; s < E.grams().size(); ++s) {
            const auto& H = E.gram(s);
            const real scale = H.cwiseAbs().maxCoeff();
            for (Eigen::Index i = 0; i < H.rows(); ++i)
                for (Eigen::Index j = 0; j < H.cols(); ++j)
                    if (i != j && std::abs(H(i, j)) > gram_tolerance * scale)
                        throw invalid_input("slopes are only computed for diagonal bundles");
            for (std::size_t j = 0; j < N; ++j)
                scales[j].push_back(std::sqrt(H(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real()));
        }
        return diagonal_bundle(E.field(), std::move(scales));
    }

    const number_field& field() const { return field_; }
    int rank() const { return static_cast<int>(scales_.size()); }
    const std::vector<std::vector<real>>& line_scales() const { return scales_; }

    hermitian_bundle bundle() const {
        const auto N = static_cast<Eigen::Index>(scales_.size());
        std::vector<complex_matrix> grams;
        for (std::size_t s = 0; s < static_cast<std::size_t>(field_.degree()); ++s) {
            complex_matrix H = complex_matrix::Zero(N, N);
            for (Eigen::Index j = 0; j < N; ++j) {
                const real t = scales_[static_cast<std::size_t>(j)][s];
                H(j, j) = t * t;
            }
            grams.push_back(std::move(H));
        }
        return hermitian_bundle(field_, static_cast<int>(N), std::move(grams));
    }

    diagonal_bundle dual() const {
        auto inv = scales_;
        for (auto& line : inv)
            for (auto& t : line) t = 1 / t;
        return diagonal_bundle(field_, std::move(inv));
    }

private:
    number_field field_;
    std::vector<std::vector<real>> scales_;
};

/// Slopes σ_1 ≥ ... ≥ σ_N: the sorted normalized line degrees.
inline std::vector<real> diagonal_slopes(const diagonal_bundle& D) {
    std::vector<real> s;
    for (const auto& t : D.line_scales()) s.push_back(line_degree(D.field(), t));
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

struct borek_report {
    int k = 0;
    real mu = 0;
    real slope = 0;
    real sum = 0;
    bool holds = false;
    bool certified = false;
};

/// 0 ≤ μ_k(Ē) + σ_k(Ē).
inline borek_report check_borek(const diagonal_bundle& D, int k, std::int64_t budget = default_budget,
                                real slack = structural_slack) {
    if (k < 1 || k > D.rank()) throw invalid_input("k out of range");
    const auto prof = successive_minima(restrict_scalars(D.bundle()), k, rank_mode::f_rank, norm_kind::sup, budget);
    borek_report rep;
    rep.k = k;
    rep.certified = prof.certified;
    rep.slope = diagonal_slopes(D)[static_cast<std::size_t>(k - 1)];
    if (prof.certified) rep.mu = prof.values.back();
    rep.sum = rep.mu + rep.slope;
    rep.holds = prof.certified && rep.sum >= -slack;
    return rep;
}

struct slope_duality_report {
    int k = 0;
    real slope = 0;
    real dual_slope = 0;
    real sum = 0;
    bool holds = false;
};

/// σ_k(Ē) + σ_{N+1−k}(Ē*) = 0, with Ē* obtained through dual_bundle.
inline slope_duality_report check_slope_duality(const diagonal_bundle& D, int k, real tolerance = 1e-10) {
    if (k < 1 || k > D.rank()) throw invalid_input("k out of range");
    const auto dual = diagonal_bundle::from_bundle(dual_bundle(D.bundle()));
    slope_duality_report rep;
    rep.k = k;
    rep.slope = diagonal_slopes(D)[static_cast<std::size_t>(k - 1)];
    rep.dual_slope = diagonal_slopes(dual)[static_cast<std::size_t>(D.rank() - k)];
    rep.sum = rep.slope + rep.dual_slope;
    rep.holds = std::abs(rep.sum) <= tolerance;
    return rep;
}

}  // namespace hermlat
