#pragma once

#include <string>

#include "extsym/scenarios.hpp"

namespace extsym::detail {

inline constexpr double kLimitBetas[] = {1e-2, 5e-3, 2.5e-3};

/// Relative mismatch between two functions: exact covector/coefficient
/// distance for single exponentials, otherwise the largest coefficient of
/// the difference over the largest input coefficient.
double function_mismatch(const ExpPoly& a, const ExpPoly& b);

/// Largest |r_i / r_{i+1} / 2 - 1| over consecutive deviations taken at
/// halving parameters.
double halving_ratio_error(const double* deviations, int count);

/// max |sum_i parts_i| over max |parts_i| for each coefficient-wise sum.
double relative_sum_residual(const std::vector<ExpPoly>& parts);

std::string vec_key(const std::string& base, int i);

}  // namespace extsym::detail
