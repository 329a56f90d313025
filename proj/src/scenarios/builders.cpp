#include <cmath>

#include "extsym/error.hpp"
#include "extsym/scenarios.hpp"

namespace extsym {

namespace {

constexpr Complex kI{0.0, 1.0};

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

LinDiffOp laplacian() {
  return LinDiffOp::derivative({0, 2, 0, 0}) + LinDiffOp::derivative({0, 0, 2, 0}) +
         LinDiffOp::derivative({0, 0, 0, 2});
}

}  // namespace

double DalembertParams::lambda() const { return std::sqrt(1.0 - 2.0 * beta * n[0] + beta * beta); }

void DalembertParams::validate() const {
  if (!std::isfinite(beta) || !std::isfinite(omega) || !std::isfinite(c))
    throw Error(ErrorKind::InvalidParams, "non-finite wave parameters");
  if (!(omega > 0.0) || !(c > 0.0))
    throw Error(ErrorKind::InvalidParams, "omega and c must be positive");
  if (std::abs(norm3(n) - 1.0) > 1e-9)
    throw Error(ErrorKind::InvalidParams, "guiding cosines must form a unit vector");
  if (!(lambda() > 0.0)) throw Error(ErrorKind::InvalidParams, "lambda must be positive");
}

void SchrodingerParams::validate() const {
  if (!(c > 0.0) || !(hbar > 0.0) || !(m0 > 0.0))
    throw Error(ErrorKind::InvalidParams, "c, hbar and m0 must be positive");
  if (!(std::abs(V) < c)) throw Error(ErrorKind::InvalidParams, "frame velocity must be below c");
  const double speed = norm3(v);
  if (!(speed < c)) throw Error(ErrorKind::InvalidParams, "particle velocity must be below c");
  if (!(speed > 0.0))
    throw Error(ErrorKind::InvalidParams, "particle velocity must be nonzero");
  if (beta_v_prime_sq() < 0.0)
    throw Error(ErrorKind::InvalidParams, "moving-frame speed is imaginary");
}

double SchrodingerParams::beta_v() const { return norm3(v) / c; }

double SchrodingerParams::mass() const {
  const double bv = beta_v();
  return m0 / std::sqrt(1.0 - bv * bv);
}

double SchrodingerParams::energy() const { return mass() * c * c; }

Vec3 SchrodingerParams::momentum() const {
  const double m = mass();
  return {m * v[0], m * v[1], m * v[2]};
}

double SchrodingerParams::beta_v_prime_sq() const {
  const double b = beta();
  const double bv = beta_v();
  const double bx = v[0] / c;
  const double num = b * b * (1.0 - bv * bv) + bv * bv - 2.0 * b * bx + b * b * bx * bx;
  return num / ((1.0 - b * bx) * (1.0 - b * bx));
}

LinDiffOp wave_operator() { return LinDiffOp::derivative({2, 0, 0, 0}) - laplacian(); }

LinDiffOp galilei_generator() { return LinDiffOp::vector_field(1, ExpPoly::coordinate(0)); }

LinDiffOp boost_generator() {
  return LinDiffOp::vector_field(1, ExpPoly::coordinate(0)) +
         LinDiffOp::vector_field(0, ExpPoly::coordinate(1));
}

LinDiffOp translation_generator(int a) { return LinDiffOp::partial(a); }

LinDiffOp linear_generator(int a, int b) {
  return LinDiffOp::vector_field(b, ExpPoly::coordinate(a));
}

AffineMap galilei_map(double beta) {
  AffineMap m;
  m.a(1, 0) = -beta;
  return m;
}

ExpPoly plane_wave(const DalembertParams& p, double c0) {
  Covector k{};
  k[0] = -kI * p.omega / c0;
  for (int j = 0; j < 3; ++j) k[j + 1] = kI * p.omega * p.n[j] / p.c;
  return ExpPoly::exponential(k);
}

ExpPoly dalembert_weight(const DalembertParams& p, double c0) {
  const double lam = p.lambda();
  const double w = p.omega;
  // -(i/lambda) [ (1 - lambda) k.x - beta w (n_x t - x/c) ]
  const Complex pre = -kI / lam;
  Covector k{};
  k[0] = pre * ((1.0 - lam) * w / c0 - p.beta * w * p.n[0] / c0);
  k[1] = pre * (-(1.0 - lam) * w * p.n[0] / p.c + p.beta * w / p.c);
  k[2] = pre * (-(1.0 - lam) * w * p.n[1] / p.c);
  k[3] = pre * (-(1.0 - lam) * w * p.n[2] / p.c);
  return ExpPoly::exponential(k);
}

LinDiffOp dalembert_engaging_operator(const DalembertParams& p) {
  const double lam = p.lambda();
  const LinDiffOp primed =
      LinDiffOp::derivative({2, 0, 0, 0}, 1.0 / (lam * lam)) - laplacian();
  return pullback(primed, galilei_map(p.beta));
}

LinDiffOp dalembert_engaging_operator_direct(const DalembertParams& p) {
  const double lam = p.lambda();
  const LinDiffOp shifted = LinDiffOp::partial(0) + Complex(p.beta) * LinDiffOp::partial(1);
  return Complex(1.0 / (lam * lam)) * compose(shifted, shifted) - laplacian();
}

LinDiffOp schrodinger_operator(const SchrodingerParams& p) {
  const double w = p.energy();
  return kI * p.hbar * LinDiffOp::partial(0) +
         Complex(p.c * p.c * p.hbar * p.hbar / (2.0 * w)) * laplacian();
}

LinDiffOp schrodinger_engaging_operator(const SchrodingerParams& p) {
  const double c2 = p.c * p.c;
  const double gamma_inv_sq = 1.0 - p.V * p.V / c2;
  const double pre =
      c2 * p.hbar * p.hbar * gamma_inv_sq / (2.0 * p.energy() * (1.0 - p.V * p.v[0] / c2));
  const LinDiffOp time_part =
      kI * p.hbar * (LinDiffOp::partial(0) + Complex(p.V) * LinDiffOp::partial(1));
  const LinDiffOp mixed = LinDiffOp::partial(1) + Complex(p.V / c2) * LinDiffOp::partial(0);
  const LinDiffOp spatial = Complex(1.0 / gamma_inv_sq) * compose(mixed, mixed) +
                            LinDiffOp::derivative({0, 0, 2, 0}) +
                            LinDiffOp::derivative({0, 0, 0, 2});
  return time_part + Complex(pre) * spatial;
}

LinDiffOp nonrelativistic_schrodinger_operator(const SchrodingerParams& p) {
  return kI * p.hbar * LinDiffOp::partial(0) +
         Complex(p.hbar * p.hbar / (2.0 * p.m0)) * laplacian();
}

ExpPoly schrodinger_psi1(const SchrodingerParams& p) {
  const double bv = p.beta_v();
  const Vec3 mom = p.momentum();
  Covector k{};
  k[0] = -kI / p.hbar * (bv * bv / 2.0 * p.energy());
  for (int j = 0; j < 3; ++j) k[j + 1] = kI / p.hbar * mom[j];
  return ExpPoly::exponential(k);
}

ExpPoly schrodinger_psi2(const SchrodingerParams& p) {
  const double bv = p.beta_v();
  const Vec3 mom = p.momentum();
  Covector k{};
  k[0] = -kI / p.hbar * p.energy();
  for (int j = 0; j < 3; ++j) k[j + 1] = kI / p.hbar * std::sqrt(2.0) * mom[j] / bv;
  return ExpPoly::exponential(k);
}

ExpPoly schrodinger_weight11(const SchrodingerParams& p) {
  const double b = p.beta();
  const double bv = p.beta_v();
  const double bx = p.v[0] / p.c;
  const double bp2 = p.beta_v_prime_sq();
  const Complex pre = -kI * p.energy() / (2.0 * p.hbar * (1.0 - b * b));
  Covector k{};
  k[0] = pre * (bp2 - 2.0 * b * b - bv * bv * (1.0 - b * b) - b * bx * (bp2 - 2.0));
  k[1] = pre * (-(bp2 - 2.0) * (b - b * b * bx) / p.c);
  return ExpPoly::exponential(k);
}

ExpPoly schrodinger_weight22(const SchrodingerParams& p) {
  const double b = p.beta();
  const double bv = p.beta_v();
  const Vec3 bvec = p.beta_vec();
  const double bvp = std::sqrt(p.beta_v_prime_sq());
  const double s2 = std::sqrt(2.0);
  const double q = 1.0 - s2 / bvp;
  const double r = 1.0 / bv - 1.0 / bvp;
  const Complex pre = -kI * p.energy() / (2.0 * p.hbar * (1.0 - b * b));
  Covector k{};
  k[0] = pre * (q * (b * b - b * bvec[0]));
  k[1] = pre * ((q * (b * b * bvec[0] - b) + s2 * bvec[0] * r) / p.c);
  k[2] = pre * (s2 * (1.0 - b * b) * r * bvec[1] / p.c);
  k[3] = pre * (s2 * (1.0 - b * b) * r * bvec[2] / p.c);
  return ExpPoly::exponential(k);
}

ExpPoly schrodinger_weight12(const SchrodingerParams& p) {
  return schrodinger_weight11(p) * schrodinger_psi1(p) *
         reciprocal_exponential(schrodinger_psi2(p));
}

ExpPoly schrodinger_weight21(const SchrodingerParams& p) {
  return schrodinger_weight22(p) * schrodinger_psi2(p) *
         reciprocal_exponential(schrodinger_psi1(p));
}

ExpPoly nonrelativistic_psi1(const SchrodingerParams& p) {
  const double speed = norm3(p.v);
  const double e_over_hbar = p.m0 * speed * speed / (2.0 * p.hbar);
  Covector k{};
  k[0] = -kI * e_over_hbar;
  for (int j = 0; j < 3; ++j) k[j + 1] = kI * e_over_hbar * (p.v[j] / speed) / (speed / 2.0);
  return ExpPoly::exponential(k);
}

ExpPoly nonrelativistic_psi2(const SchrodingerParams& p) {
  const double speed = norm3(p.v);
  const double rest_over_hbar = p.m0 * p.c * p.c / p.hbar;
  Covector k{};
  k[0] = -kI * rest_over_hbar;
  for (int j = 0; j < 3; ++j)
    k[j + 1] = kI * rest_over_hbar * (p.v[j] / speed) / (p.c / std::sqrt(2.0));
  return ExpPoly::exponential(k);
}

MatrixDiffOp maxwell_operator(const LinDiffOp& t) {
  MatrixDiffOp m(8, 6);
  const LinDiffOp minus_t = Complex(-1.0) * t;
  for (int s = 0; s < 3; ++s) {
    m.at(0, s) = LinDiffOp::partial(s + 1);
    m.at(4, 3 + s) = LinDiffOp::partial(s + 1);
  }
  // (curl F)_i = d_j F_k - d_k F_j for cyclic (i, j, k)
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    // curl H - T E
    m.at(1 + i, 3 + k) = LinDiffOp::partial(j + 1);
    m.at(1 + i, 3 + j) = Complex(-1.0) * LinDiffOp::partial(k + 1);
    m.at(1 + i, i) = minus_t;
    // curl E + T H
    m.at(5 + i, k) = LinDiffOp::partial(j + 1);
    m.at(5 + i, j) = Complex(-1.0) * LinDiffOp::partial(k + 1);
    m.at(5 + i, 3 + i) = t;
  }
  return m;
}

MatrixDiffOp maxwell_engaging_operator(const DalembertParams& p) {
  const MatrixDiffOp primed = maxwell_operator(LinDiffOp::derivative(unit_index(0), 1.0 / p.lambda()));
  return pullback(primed, galilei_map(p.beta));
}

Polarization polarization(const Vec3& n, double angle) {
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(n[a]) < std::abs(n[axis])) axis = a;
  Vec3 e{};
  e[axis] = 1.0;
  Vec3 u = cross(n, e);
  const double un = norm3(u);
  for (auto& x : u) x /= un;
  const Vec3 w = cross(n, u);
  Polarization pol{};
  for (int j = 0; j < 3; ++j) pol.l[j] = std::cos(angle) * u[j] + std::sin(angle) * w[j];
  pol.m = cross(n, pol.l);
  return pol;
}

std::vector<ExpPoly> maxwell_plane_wave(const DalembertParams& p, const Polarization& pol) {
  const ExpPoly wave = plane_wave(p);
  std::vector<ExpPoly> f;
  for (double x : pol.l) f.push_back(Complex(x) * wave);
  for (double x : pol.m) f.push_back(Complex(x) * wave);
  return f;
}

double maxwell_kappa(double beta, double nx) {
  const double lam = std::sqrt(1.0 - 2.0 * beta * nx + beta * beta);
  return (nx * (beta - nx) + lam) / (1.0 - nx * nx);
}

double maxwell_d(double beta, double nx) {
  const double lam = std::sqrt(1.0 - 2.0 * beta * nx + beta * beta);
  return (nx * (lam - 1.0) + beta) / (nx * (beta - nx) + lam);
}

double compose_d(double d_prime, double d) { return (d_prime + d) / (1.0 + d_prime * d); }

MaxwellTransform maxwell_transform(const DalembertParams& p) {
  p.validate();
  if (std::abs(p.n[0]) >= 1.0 - 1e-6)
    throw Error(ErrorKind::DegenerateDirection, "|n_x| = 1 makes the field transform singular");
  MaxwellTransform t;
  t.kappa = maxwell_kappa(p.beta, p.n[0]);
  t.e23 = maxwell_d(p.beta, p.n[0]);
  const double lam = p.lambda();
  t.h23 = -(p.n[0] * (lam - 1.0) + p.beta) / (p.n[0] * (p.beta - p.n[0]) + lam);
  t.e32 = -t.e23;
  t.h32 = t.e23;
  t.d = t.e23;
  t.phi_d = dalembert_weight(p);
  return t;
}

std::vector<ExpPoly> transform_fields(const MaxwellTransform& t, std::span<const ExpPoly> f) {
  if (f.size() != 6) throw Error(ErrorKind::ShapeMismatch, "expected six field components");
  const Complex k = t.kappa;
  const auto& phi = t.phi_d;
  return {
      phi * f[0],
      phi * (k * (f[1] + Complex(t.h23) * f[5])),
      phi * (k * (f[2] + Complex(t.h32) * f[4])),
      phi * f[3],
      phi * (k * (f[4] + Complex(t.e23) * f[2])),
      phi * (k * (f[5] + Complex(t.e32) * f[1])),
  };
}

ExpPoly infer_weight(const ExpPoly& phi_primed, const AffineMap& map, const ExpPoly& phi) {
  const auto primed = as_single_exponential(phi_primed);
  const auto base = as_single_exponential(phi);
  if (!primed || !base)
    throw Error(ErrorKind::NotSingleExponential, "weight inference needs pure exponentials");
  // phi'(A x + b) = c' exp(kappa'.b) exp((A^T kappa').x)
  Covector pulled{};
  Complex shift{};
  for (int i = 0; i < kDim; ++i) {
    shift += primed->kappa[i] * map.b(i);
    for (int j = 0; j < kDim; ++j) pulled[j] += primed->kappa[i] * map.a(i, j);
  }
  return ExpPoly::exponential(pulled - base->kappa,
                              primed->coeff * std::exp(shift) / base->coeff);
}

const std::vector<Point>& unit_ball_points() {
  static const std::vector<Point> pts = [] {
    std::vector<Point> out;
    constexpr int kSteps = 8;
    for (int i = 0; i <= kSteps; ++i)
      for (int j = 0; j <= kSteps; ++j)
        for (int k = 0; k <= kSteps; ++k)
          for (int l = 0; l <= kSteps; ++l) {
            const Point x{-1.0 + 2.0 * i / kSteps, -1.0 + 2.0 * j / kSteps,
                          -1.0 + 2.0 * k / kSteps, -1.0 + 2.0 * l / kSteps};
            if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] <= 1.0 + 1e-12)
              out.push_back(x);
          }
    return out;
  }();
  return pts;
}

double dalembert_limit_deviation(const DalembertParams& p) {
  const ExpPoly phi = dalembert_weight(p);
  double m = 0.0;
  for (const auto& x : unit_ball_points()) m = std::max(m, std::abs(evaluate(phi, x) - 1.0));
  return m;
}

double maxwell_limit_deviation(const MaxwellParams& p) {
  const auto pol = polarization(p.wave.n, p.polarization_angle);
  const auto f = maxwell_plane_wave(p.wave, pol);
  const auto primed = transform_fields(maxwell_transform(p.wave), f);
  const Complex b = p.wave.beta;
  // (E + beta x H, H - beta x E) with beta along x^1
  const std::vector<ExpPoly> limit{
      f[0], f[1] - b * f[5], f[2] + b * f[4], f[3], f[4] + b * f[2], f[5] - b * f[1],
  };
  double m = 0.0;
  for (const auto& x : unit_ball_points())
    for (std::size_t i = 0; i < 6; ++i)
      m = std::max(m, std::abs(evaluate(primed[i], x) - evaluate(limit[i], x)));
  return m;
}

}  // namespace extsym
