#include <doctest.h>

#include <cmath>

#include "extsym/error.hpp"
#include "extsym/gridcheck.hpp"
#include "extsym/scenarios.hpp"
#include "oracles.hpp"

using namespace extsym;

namespace {

const Complex I{0.0, 1.0};

ExpPoly wave(double k0, double k1) { return ExpPoly::exponential({-I * k0, I * k1, 0.0, 0.0}); }

}  // namespace

TEST_CASE("grid specs validate") {
  CHECK_NOTHROW(GridSpec{}.validate());
  CHECK_THROWS_AS((GridSpec{{}, 0.0, 9}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{{}, 1e-2, 8}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{{}, 1e-2, 3}.validate()), Error);
  const GridSpec g{{1.0, 2.0, 3.0, 4.0}, 0.5, 5};
  const Point p = g.point({0, 2, 4, 2});
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 2.0);
  CHECK(p[2] == 4.0);
}

TEST_CASE("sampling layout round-trips") {
  const auto f = ExpPoly::coordinate(0) + ExpPoly::constant(2.0) * ExpPoly::coordinate(3);
  const GridSpec g{{0.1, 0.2, 0.3, 0.4}, 0.1, 5};
  const auto s = sample(f, g);
  CHECK(s.size() == 625);
  for (std::size_t k = 0; k < s.size(); k += 37) {
    const auto idx = s.index_of(k);
    CHECK(s.offset_of(idx) == k);
    CHECK(std::abs(s.values[k] - evaluate(f, g.point(idx))) == 0.0);
  }
}

TEST_CASE("finite differences: exact on constants, close on smooth data") {
  CHECK(fd_apply_residual(LinDiffOp::partial(1), ExpPoly::constant(4.0), GridSpec{}) < 1e-13);
  CHECK(fd_apply_residual(wave_operator(), wave(1.0, 1.0), GridSpec{}) < 1e-3);
  // Off-shell: the symbolic value is nonzero and FD reproduces it.
  const auto off = wave(1.0, 1.5);
  CHECK(apply(wave_operator(), off).max_coeff() > 1.0);
  CHECK(fd_apply_residual(wave_operator(), off, GridSpec{}) < 1e-3);
}

TEST_CASE("stencil limits") {
  CHECK(stencil_radius(LinDiffOp::partial(0)) == 1);
  CHECK(stencil_radius(wave_operator()) == 1);
  CHECK(stencil_radius(LinDiffOp::derivative({3, 0, 0, 0})) == 2);
  CHECK_THROWS_AS(fd_apply_residual(LinDiffOp::derivative({5, 0, 0, 0}), wave(1, 1), GridSpec{}), Error);
  const GridSpec tiny{{}, 1e-2, 5};
  const auto s = sample(wave(1, 1), tiny);
  const auto once = fd_apply(LinDiffOp::derivative({4, 0, 0, 0}), s);
  CHECK(once.side() == 1);
  CHECK_THROWS_AS(fd_apply(LinDiffOp::derivative({4, 0, 0, 0}), once), Error);
}

TEST_CASE("parallel kernel equals the serial reference") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = oracle::random_operator(rng, 3);
    const auto f = oracle::random_exppoly(rng);
    GridSpec g;
    g.center = rng.point(0.5);
    const auto s = sample(f, g);
    const auto a = fd_apply(op, s);
    const auto b = fd_apply_serial(op, s);
    REQUIRE(a.size() == b.size());
    CHECK(max_abs_difference(a, b) == 0.0);
    CHECK(fd_apply_residual(op, f, g) == fd_apply_residual_serial(op, f, g));
  }
}

TEST_CASE("convergence order of the wave stencil") {
  const std::vector<double> steps{0.04, 0.02, 0.01};
  // With a single spatial component the truncation errors of d0^2 and d1^2
  // cancel exactly, so the wave travels obliquely here.
  const auto oblique = ExpPoly::exponential({-I, 0.6 * I, 0.8 * I, 0.0});
  CHECK(apply(wave_operator(), oblique).empty());
  const auto r = convergence_order(wave_operator(), oblique, GridSpec{}, steps);
  CHECK_FALSE(r.degenerate);
  CHECK(r.order == doctest::Approx(2.0).epsilon(0.1));

  const auto lin = convergence_order(LinDiffOp::partial(1), ExpPoly::coordinate(1) + ExpPoly::constant(3.0),
                                     GridSpec{}, steps);
  CHECK(lin.degenerate);

  const std::vector<double> two{0.02, 0.01};
  CHECK_THROWS_AS(convergence_order(wave_operator(), wave(1, 1), GridSpec{}, two), Error);
  const std::vector<double> uneven{0.04, 0.03, 0.01};
  CHECK_THROWS_AS(convergence_order(wave_operator(), wave(1, 1), GridSpec{}, uneven), Error);
}

TEST_CASE("convergence order on the moving-frame Schrodinger check") {
  const SchrodingerParams p;
  const auto op = schrodinger_engaging_operator(p);
  const auto f = schrodinger_weight11(p) * schrodinger_psi1(p);
  const std::vector<double> steps{0.04, 0.02, 0.01};
  const auto r = convergence_order(op, f, GridSpec{}, steps);
  // The symbolic value is zero; FD converges to it at second order.
  CHECK(apply(op, f).max_coeff() < 1e-12);
  if (!r.degenerate) CHECK(r.order == doctest::Approx(2.0).epsilon(0.1));
  CHECK(r.residuals.back() < 1e-3);
}

TEST_CASE("nested differences reproduce a double commutator") {
  const DalembertParams p;
  const auto f = plane_wave(p) + ExpPoly::monomial({2, 1, 0, 0});
  CHECK(fd_ad_power_residual(wave_operator(), galilei_generator(), 2, f, GridSpec{}) < 1e-3);
  CHECK(fd_ad_power_residual(wave_operator(), galilei_generator(), 1, f, GridSpec{}) < 1e-3);
}

TEST_CASE("matrix residuals per row") {
  const DalembertParams p;
  const auto fields = maxwell_plane_wave(p, polarization(p.n, 0.0));
  const auto rows = fd_matrix_residuals(maxwell_operator(), fields, GridSpec{});
  CHECK(rows.size() == 8);
  for (double r : rows) CHECK(r < 1e-3);
}

TEST_CASE("property: FD agrees with symbolic apply") {
  oracle::Rng rng(401);
  const double h = 1e-2;
  for (int trial = 0; trial < 50; ++trial) {
    const auto op = oracle::random_operator(rng, 2);
    const auto f = oracle::random_exppoly(rng);
    GridSpec g;
    g.center = rng.point(0.5);
    // Scale of f's fourth derivatives, bounded through the term data.
    double s = 0.0;
    for (const auto& t : f.terms()) {
      double k = 1.0;
      for (const auto& c : t.kappa) k = std::max(k, std::abs(c));
      s += std::abs(t.coeff) * std::pow(k, 4) * 24.0 * std::exp(2.0 * 0.7 * 4.0);
    }
    const double cmax = std::max(1.0, op.max_coeff()) * static_cast<double>(op.terms().size());
    CHECK(fd_apply_residual(op, f, g) <= 10.0 * h * h * s * cmax);
  }
}
