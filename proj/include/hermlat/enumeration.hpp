#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Cholesky>

#include "hermlat/hermitian_bundle.hpp"
#include "hermlat/numeric.hpp"

namespace hermlat {

struct enumeration_stats {
    std::int64_t nodes = 0;
    bool complete = true;
};

/// Fincke-Pohst enumeration of all nonzero integer x with xᵀ G x <= bound, one
/// representative per ± pair (the last nonzero coordinate is positive).
/// Every tried coordinate value counts as one node against `budget`.
class ellipsoid_enumerator {
public:
    explicit ellipsoid_enumerator(const real_matrix& gram) : n_(static_cast<int>(gram.rows())) {
        Eigen::LLT<real_matrix> llt(gram);
        if (llt.info() != Eigen::Success) throw precision_failure("enumeration Gram is not positive definite");
        const real_matrix R = llt.matrixU();
        q_.resize(static_cast<std::size_t>(n_));
        mu_ = real_matrix::Zero(n_, n_);
        for (int i = 0; i < n_; ++i) {
            q_[static_cast<std::size_t>(i)] = R(i, i) * R(i, i);
            for (int j = i + 1; j < n_; ++j) mu_(i, j) = R(i, j) / R(i, i);
        }
    }

    enumeration_stats run(real bound, std::int64_t budget, const std::function<void(const z_vector&)>& emit) {
        stats_ = {};
        bound_ = bound * (1 + 1e-12L) + 1e-15L;
        budget_ = budget;
        emit_ = &emit;
        x_.assign(static_cast<std::size_t>(n_), 0);
        if (n_ > 0) descend(n_ - 1, 0, true);
        return stats_;
    }

private:
    bool descend(int i, real partial, bool zero_above) {
        real center = 0;
        for (int j = i + 1; j < n_; ++j) center -= mu_(i, j) * static_cast<real>(x_[static_cast<std::size_t>(j)]);
        const real rem = bound_ - partial;
        if (rem < 0) return true;
        const real qi = q_[static_cast<std::size_t>(i)];
        const real half = std::sqrt(rem / qi);
        auto lo = static_cast<std::int64_t>(std::ceil(center - half - 1e-12L));
        const auto hi = static_cast<std::int64_t>(std::floor(center + half + 1e-12L));
        if (zero_above && lo < 0) lo = 0;
        for (std::int64_t v = lo; v <= hi; ++v) {
            if (++stats_.nodes > budget_) {
                stats_.complete = false;
                return false;
            }
            const real d = static_cast<real>(v) - center;
            const real next = partial + qi * d * d;
            if (next > bound_) continue;
            x_[static_cast<std::size_t>(i)] = v;
            if (i == 0) {
                if (!(zero_above && v == 0)) (*emit_)(x_);
            } else if (!descend(i - 1, next, zero_above && v == 0)) {
                x_[static_cast<std::size_t>(i)] = 0;
                return false;
            }
        }
        x_[static_cast<std::size_t>(i)] = 0;
        return true;
    }

    int n_;
    std::vector<real> q_;
    real_matrix mu_;
    z_vector x_;
    real bound_ = 0;
    std::int64_t budget_ = 0;
    const std::function<void(const z_vector&)>* emit_ = nullptr;
    enumeration_stats stats_;
};

}  // namespace hermlat
