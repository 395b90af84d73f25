#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hermlat/numeric.hpp"

namespace hermlat {

using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline bool is_integral(const rational& q) { return denominator(q) == 1; }

inline real to_real(const rational& q) { return q.convert_to<real>(); }

inline std::string to_string(const rational& q) { return q.str(); }

/// Parses "p" or "p/q" with optional sign. Throws invalid_input on anything else.
inline rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!digits(num)) throw invalid_input("malformed rational '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return rational(integer(std::string(num)));
    const auto den = text.substr(slash + 1);
    if (!digits(den) || den.front() == '-' || den.front() == '+')
        throw invalid_input("malformed rational '" + std::string(text) + "'");
    integer d(std::string{den});
    if (d == 0) throw invalid_input("zero denominator in '" + std::string(text) + "'");
    return rational(integer(std::string(num)), d);
}

/// Dense row-major matrix of exact rationals.
class rational_matrix {
public:
    rational_matrix() = default;
    rational_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static rational_matrix identity(std::size_t n) {
        rational_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    rational_matrix transpose() const {
        rational_matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend rational_matrix operator*(const rational_matrix& a, const rational_matrix& b) {
        rational_matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend bool operator==(const rational_matrix&, const rational_matrix&) = default;

    bool is_integral() const {
        for (const auto& q : data_)
            if (!hermlat::is_integral(q)) return false;
        return true;
    }

    rational determinant() const {
        if (rows_ != cols_) throw invalid_input("determinant of a non-square matrix");
        rational_matrix a = *this;
        rational det = 1;
        const std::size_t n = rows_;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && a(p, c) == 0) ++p;
            if (p == n) return 0;
            if (p != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
                det = -det;
            }
            det *= a(c, c);
            for (std::size_t i = c + 1; i < n; ++i) {
                if (a(i, c) == 0) continue;
                const rational f = a(i, c) / a(c, c);
                for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
            }
        }
        return det;
    }

    /// Gauss-Jordan inverse; nullopt when singular.
    std::optional<rational_matrix> inverse() const {
        if (rows_ != cols_) throw invalid_input("inverse of a non-square matrix");
        const std::size_t n = rows_;
        rational_matrix a = *this;
        rational_matrix inv = identity(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && a(p, c) == 0) ++p;
            if (p == n) return std::nullopt;
            if (p != c)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(p, j), a(c, j));
                    std::swap(inv(p, j), inv(c, j));
                }
            const rational piv = a(c, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(c, j) /= piv;
                inv(c, j) /= piv;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c || a(i, c) == 0) continue;
                const rational f = a(i, c);
                for (std::size_t j = 0; j < n; ++j) {
                    a(i, j) -= f * a(c, j);
                    inv(i, j) -= f * inv(c, j);
                }
            }
        }
        return inv;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<rational> data_;
};

}  // namespace hermlat
