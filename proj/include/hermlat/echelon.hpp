#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hermlat/number_field.hpp"
#include "hermlat/rational.hpp"

namespace hermlat {

// Scalar policies for exact elimination.
struct rational_ops {
    using value_type = rational;
    value_type zero() const { return 0; }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inverse(const value_type& a) const { return 1 / a; }
};

struct field_ops {
    using value_type = field_element;
    const number_field* field;
    value_type zero() const { return field->zero(); }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    value_type sub(const value_type& a, const value_type& b) const { return field->sub(a, b); }
    value_type mul(const value_type& a, const value_type& b) const { return field->mul(a, b); }
    value_type inverse(const value_type& a) const { return field->inverse(a); }
};

/// Row echelon form built one vector at a time; `try_insert` reports whether the
/// vector is independent of everything inserted so far.
template <class Ops>
class incremental_echelon {
public:
    using value_type = typename Ops::value_type;

    explicit incremental_echelon(Ops ops) : ops_(std::move(ops)) {}

    std::size_t rank() const { return rows_.size(); }

    bool try_insert(std::vector<value_type> v) {
        reduce(v);
        std::size_t pivot = 0;
        while (pivot < v.size() && ops_.is_zero(v[pivot])) ++pivot;
        if (pivot == v.size()) return false;
        const value_type inv = ops_.inverse(v[pivot]);
        for (auto& x : v) x = ops_.mul(x, inv);
        rows_.push_back({pivot, std::move(v)});
        return true;
    }

    bool is_independent(std::vector<value_type> v) const {
        reduce(v);
        for (const auto& x : v)
            if (!ops_.is_zero(x)) return true;
        return false;
    }

private:
    struct row {
        std::size_t pivot;
        std::vector<value_type> values;  // normalized: values[pivot] == 1
    };

    void reduce(std::vector<value_type>& v) const {
        for (const auto& r : rows_) {
            if (ops_.is_zero(v[r.pivot])) continue;
            const value_type f = v[r.pivot];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!ops_.is_zero(r.values[j])) v[j] = ops_.sub(v[j], ops_.mul(f, r.values[j]));
        }
    }

    Ops ops_;
    std::vector<row> rows_;
};

template <class Ops>
std::size_t exact_rank(Ops ops, const std::vector<std::vector<typename Ops::value_type>>& vectors) {
    incremental_echelon<Ops> e(std::move(ops));
    for (const auto& v : vectors) e.try_insert(v);
    return e.rank();
}

}  // namespace hermlat
