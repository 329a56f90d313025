#pragma once

#include <span>
#include <vector>

#include "extsym/opalg.hpp"

namespace extsym {

/// Dense cube of extent^4 points centred on `center` with spacing h.
struct GridSpec {
  Point center{};
  double h = 1e-2;
  int extent = 9;

  /// Throws InvalidParams unless h > 0 and extent is odd and >= 5.
  void validate() const;
  Point point(const std::array<int, kDim>& index) const;
};

/// Samples on the sub-cube [lo, hi]^4 of a grid's index range.
struct GridFunction {
  GridSpec grid;
  int lo = 0;
  int hi = -1;
  std::vector<Complex> values;

  int side() const noexcept { return hi - lo + 1; }
  std::size_t size() const noexcept { return values.size(); }
  /// Index of the k-th stored sample (row-major, axis 0 slowest).
  std::array<int, kDim> index_of(std::size_t k) const;
  std::size_t offset_of(const std::array<int, kDim>& index) const;
  Complex at(const std::array<int, kDim>& index) const { return values[offset_of(index)]; }
};

GridFunction sample(const ExpPoly& f, const GridSpec& grid);
/// Symbolic values on the same sub-cube as `like`.
GridFunction sample_like(const ExpPoly& f, const GridFunction& like);

/// Stencil radius needed by an operator (1 for per-axis order <= 2, 2 up to 4).
int stencil_radius(const LinDiffOp& op);

/// Second-order central differences, tensor product over axes; the result
/// lives on the cube shrunk by stencil_radius(op). Throws StencilOverrun if
/// nothing is left or a per-axis order exceeds 4.
GridFunction fd_apply(const LinDiffOp& op, const GridFunction& g);
/// Single-threaded reference of fd_apply, kept for testing and benchmarks.
GridFunction fd_apply_serial(const LinDiffOp& op, const GridFunction& g);

GridFunction fd_add(const GridFunction& a, const GridFunction& b, Complex scale_b = 1.0);

/// max |a - b| over the cube of `a` (b must cover it).
double max_abs_difference(const GridFunction& a, const GridFunction& b);
double max_abs(const GridFunction& a);

/// max over interior points of |FD(op) f - evaluate(apply(op, f))|.
double fd_apply_residual(const LinDiffOp& op, const ExpPoly& f, const GridSpec& grid);
double fd_apply_residual_serial(const LinDiffOp& op, const ExpPoly& f, const GridSpec& grid);

/// ad_L^p(Q) f assembled from nested difference quotients of
/// sum_k (-1)^k C(p,k) L^{p-k} Q L^k f, against the symbolic commutator.
double fd_ad_power_residual(const LinDiffOp& l, const LinDiffOp& q, int p, const ExpPoly& f,
                            const GridSpec& grid);

/// Per-row residual of a matrix operator applied to a field list.
std::vector<double> fd_matrix_residuals(const MatrixDiffOp& m, std::span<const ExpPoly> fields,
                                        const GridSpec& grid);

struct ConvergenceResult {
  double order = 0.0;
  std::vector<double> steps;
  std::vector<double> residuals;
  /// Residuals reached the rounding floor, so the slope is meaningless.
  bool degenerate = false;
};

/// Least-squares slope of log(residual) against log(h). Needs at least three
/// steps in geometric progression (InvalidParams otherwise).
ConvergenceResult convergence_order(const LinDiffOp& op, const ExpPoly& f, const GridSpec& grid,
                                    std::span<const double> steps);

}  // namespace extsym
