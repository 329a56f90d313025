#include "extsym/gridcheck.hpp"

#include <algorithm>
#include <cmath>

#include "extsym/error.hpp"

namespace extsym {

void GridSpec::validate() const {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidParams, "grid step must be positive");
  if (extent < 5 || extent % 2 == 0)
    throw Error(ErrorKind::InvalidParams, "grid extent must be odd and >= 5");
}

Point GridSpec::point(const std::array<int, kDim>& index) const {
  const int half = (extent - 1) / 2;
  Point x{};
  for (int a = 0; a < kDim; ++a) x[a] = center[a] + (index[a] - half) * h;
  return x;
}

std::array<int, kDim> GridFunction::index_of(std::size_t k) const {
  const auto s = static_cast<std::size_t>(side());
  std::array<int, kDim> idx{};
  for (int a = kDim - 1; a >= 0; --a) {
    idx[a] = lo + static_cast<int>(k % s);
    k /= s;
  }
  return idx;
}

std::size_t GridFunction::offset_of(const std::array<int, kDim>& index) const {
  const auto s = static_cast<std::size_t>(side());
  std::size_t k = 0;
  for (int a = 0; a < kDim; ++a) k = k * s + static_cast<std::size_t>(index[a] - lo);
  return k;
}

namespace {

GridFunction empty_like(const GridSpec& grid, int lo, int hi) {
  GridFunction g{grid, lo, hi, {}};
  const auto s = static_cast<std::size_t>(std::max(0, hi - lo + 1));
  g.values.assign(s * s * s * s, Complex{});
  return g;
}

}  // namespace

GridFunction sample(const ExpPoly& f, const GridSpec& grid) {
  grid.validate();
  GridFunction g = empty_like(grid, 0, grid.extent - 1);
  for (std::size_t k = 0; k < g.size(); ++k) g.values[k] = evaluate(f, grid.point(g.index_of(k)));
  return g;
}

GridFunction sample_like(const ExpPoly& f, const GridFunction& like) {
  GridFunction g = empty_like(like.grid, like.lo, like.hi);
  for (std::size_t k = 0; k < g.size(); ++k)
    g.values[k] = evaluate(f, like.grid.point(g.index_of(k)));
  return g;
}

int stencil_radius(const LinDiffOp& op) {
  int r = 0;
  for (const auto& t : op.terms())
    for (int v : t.deriv) {
      if (v > 4) throw Error(ErrorKind::StencilOverrun, "per-axis derivative order above 4");
      r = std::max(r, v > 2 ? 2 : (v > 0 ? 1 : 0));
    }
  return r;
}

GridFunction fd_add(const GridFunction& a, const GridFunction& b, Complex scale_b) {
  GridFunction out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] += scale_b * b.at(a.index_of(k));
  return out;
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, std::abs(a.values[k] - b.at(a.index_of(k))));
  return m;
}

double max_abs(const GridFunction& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

double fd_apply_residual(const LinDiffOp& op, const ExpPoly& f, const GridSpec& grid) {
  const GridFunction fd = fd_apply(op, sample(f, grid));
  return max_abs_difference(fd, sample_like(apply(op, f), fd));
}

double fd_apply_residual_serial(const LinDiffOp& op, const ExpPoly& f, const GridSpec& grid) {
  const GridFunction fd = fd_apply_serial(op, sample(f, grid));
  return max_abs_difference(fd, sample_like(apply(op, f), fd));
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double fd_ad_power_residual(const LinDiffOp& l, const LinDiffOp& q, int p, const ExpPoly& f,
                            const GridSpec& grid) {
  if (p < 1) throw Error(ErrorKind::InvalidParams, "ad_power needs p >= 1");
  const GridFunction base = sample(f, grid);
  const int shrink = p * stencil_radius(l) + stencil_radius(q);
  GridFunction total = empty_like(grid, shrink, grid.extent - 1 - shrink);
  if (total.side() < 1) throw Error(ErrorKind::StencilOverrun, "grid too small for ad_power");
  for (int k = 0; k <= p; ++k) {
    GridFunction g = base;
    for (int i = 0; i < k; ++i) g = fd_apply(l, g);
    g = fd_apply(q, g);
    for (int i = 0; i < p - k; ++i) g = fd_apply(l, g);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    total = fd_add(total, g, sign * binomial(p, k));
  }
  return max_abs_difference(total, sample_like(apply(ad_power(l, q, p), f), total));
}

std::vector<double> fd_matrix_residuals(const MatrixDiffOp& m, std::span<const ExpPoly> fields,
                                        const GridSpec& grid) {
  if (fields.size() != m.cols())
    throw Error(ErrorKind::ShapeMismatch, "field count does not match operator columns");
  int r = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, stencil_radius(m.at(i, j)));
  std::vector<GridFunction> sampled;
  for (const auto& f : fields) sampled.push_back(sample(f, grid));
  const auto symbolic = matrix_apply(m, fields);
  std::vector<double> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    GridFunction row = empty_like(grid, r, grid.extent - 1 - r);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).empty()) row = fd_add(row, fd_apply(m.at(i, j), sampled[j]));
    out.push_back(max_abs_difference(row, sample_like(symbolic[i], row)));
  }
  return out;
}

ConvergenceResult convergence_order(const LinDiffOp& op, const ExpPoly& f, const GridSpec& grid,
                                    std::span<const double> steps) {
  if (steps.size() < 3) throw Error(ErrorKind::InvalidParams, "need at least three step sizes");
  const double ratio = steps[1] / steps[0];
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (!(steps[i] > 0.0) || std::abs(steps[i] / steps[i - 1] - ratio) > 1e-9 * std::abs(ratio))
      throw Error(ErrorKind::InvalidParams, "steps must form a geometric progression");
  ConvergenceResult res;
  double scale = 0.0;
  for (double h : steps) {
    GridSpec g = grid;
    g.h = h;
    const GridFunction fd = fd_apply(op, sample(f, g));
    const GridFunction exact = sample_like(apply(op, f), fd);
    scale = std::max(scale, max_abs(sample(f, g)));
    res.steps.push_back(h);
    res.residuals.push_back(max_abs_difference(fd, exact));
  }
  // Rounding of an order-k difference quotient is about eps * |f| / h^k.
  const double h_min = *std::min_element(steps.begin(), steps.end());
  const double floor = 1e3 * 2.2e-16 * std::max(scale, 1.0) /
                       std::pow(h_min, std::max(op.order(), 1));
  res.degenerate = std::any_of(res.residuals.begin(), res.residuals.end(),
                               [floor](double r) { return r <= floor; });
  if (res.degenerate) return res;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double x = std::log(res.steps[i]);
    const double y = std::log(res.residuals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  res.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return res;
}

}  // namespace extsym
