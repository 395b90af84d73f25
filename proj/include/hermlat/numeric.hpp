#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hermlat {

// long double carries a 64-bit significand on x86-64.
using real = long double;
using complex = std::complex<real>;

using real_matrix = Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic>;
using real_vector = Eigen::Matrix<real, Eigen::Dynamic, 1>;
using complex_matrix = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic>;
using complex_vector = Eigen::Matrix<complex, Eigen::Dynamic, 1>;

inline constexpr int default_precision_bits = 64;
inline constexpr std::int64_t default_budget = 10'000'000;

// Slack policy for checked statements.
inline constexpr double structural_slack = 1e-9;
inline constexpr double transcendental_slack = 1e-6;

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_input : public error {
public:
    using error::error;
};

class budget_exhausted : public error {
public:
    using error::error;
};

class precision_failure : public error {
public:
    using error::error;
};

inline const real pi_v = 3.141592653589793238462643383279502884L;

}  // namespace hermlat
