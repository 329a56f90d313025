// Difference-quotient kernels: an OpenMP version and the serial reference
// it is tested and benchmarked against.
#include <algorithm>
#include <array>
#include <cmath>

#include "extsym/error.hpp"
#include "extsym/gridcheck.hpp"

namespace extsym {

namespace {

struct Stencil1D {
  int radius = 0;
  std::array<double, 5> w{};  // offsets -2..2
};

Stencil1D stencil(int order, double h) {
  Stencil1D s;
  switch (order) {
    case 0: s.w = {0, 0, 1, 0, 0}; break;
    case 1: s.radius = 1; s.w = {0, -0.5, 0, 0.5, 0}; break;
    case 2: s.radius = 1; s.w = {0, 1, -2, 1, 0}; break;
    case 3: s.radius = 2; s.w = {-0.5, 1, 0, -1, 0.5}; break;
    case 4: s.radius = 2; s.w = {1, -4, 6, -4, 1}; break;
    default: throw Error(ErrorKind::StencilOverrun, "per-axis derivative order above 4");
  }
  const double inv = 1.0 / std::pow(h, order);
  for (auto& v : s.w) v *= inv;
  return s;
}

// One tensor-product stencil term with its coefficient function.
struct Tap {
  std::array<int, kDim> offset;
  double weight;
};

struct PreparedTerm {
  ExpPoly coeff;
  std::vector<Tap> taps;
};

std::vector<PreparedTerm> prepare(const LinDiffOp& op, double h) {
  std::vector<PreparedTerm> out;
  for (const auto& t : op.terms()) {
    std::vector<Tap> taps{{{0, 0, 0, 0}, 1.0}};
    for (int a = 0; a < kDim; ++a) {
      const Stencil1D s = stencil(t.deriv[a], h);
      std::vector<Tap> next;
      for (const auto& tap : taps)
        for (int o = -2; o <= 2; ++o) {
          const double w = s.w[o + 2];
          if (w == 0.0) continue;
          Tap n = tap;
          n.offset[a] = o;
          n.weight *= w;
          next.push_back(n);
        }
      taps = std::move(next);
    }
    out.push_back({t.coeff, std::move(taps)});
  }
  return out;
}

GridFunction shrunk(const LinDiffOp& op, const GridFunction& g) {
  const int r = stencil_radius(op);
  GridFunction out{g.grid, g.lo + r, g.hi - r, {}};
  if (out.side() < 1) throw Error(ErrorKind::StencilOverrun, "stencil does not fit in grid");
  const auto s = static_cast<std::size_t>(out.side());
  out.values.assign(s * s * s * s, Complex{});
  return out;
}

Complex apply_at(const std::vector<PreparedTerm>& terms, const GridFunction& g,
                 const std::array<int, kDim>& idx) {
  const Point x = g.grid.point(idx);
  Complex sum{};
  for (const auto& t : terms) {
    Complex d{};
    for (const auto& tap : t.taps) {
      std::array<int, kDim> j = idx;
      for (int a = 0; a < kDim; ++a) j[a] += tap.offset[a];
      d += tap.weight * g.at(j);
    }
    sum += evaluate(t.coeff, x) * d;
  }
  return sum;
}

}  // namespace

GridFunction fd_apply_serial(const LinDiffOp& op, const GridFunction& g) {
  GridFunction out = shrunk(op, g);
  const auto terms = prepare(op, g.grid.h);
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = apply_at(terms, g, out.index_of(k));
  return out;
}

GridFunction fd_apply(const LinDiffOp& op, const GridFunction& g) {
  GridFunction out = shrunk(op, g);
  const auto terms = prepare(op, g.grid.h);
  const auto n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out.values[kk] = apply_at(terms, g, out.index_of(kk));
  }
  return out;
}

}  // namespace extsym
