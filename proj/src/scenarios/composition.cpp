#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "extsym/error.hpp"

namespace extsym {

ScenarioReport check_composition(const DalembertParams& first, double beta_prime,
                                 const ScenarioOptions& opt) {
  first.validate();
  const auto& tol = opt.tol;
  const double lam = first.lambda();
  const double nx = first.n[0];

  // Intermediate frame: guiding cosines, light speed and frequency as seen in K'.
  DalembertParams second;
  second.beta = beta_prime;
  second.n = {(nx - first.beta) / lam, first.n[1] / lam, first.n[2] / lam};
  second.c = lam * first.c;
  second.omega = lam * first.omega;
  second.validate();

  DalembertParams total = first;
  total.beta = first.beta + lam * beta_prime;
  total.validate();

  for (const DalembertParams* q : std::initializer_list<const DalembertParams*>{&first, &second, &total})
    if (std::abs(q->n[0]) >= 1.0 - 1e-6)
      throw Error(ErrorKind::DegenerateDirection, "|n_x| = 1 in one of the frames");

  ScenarioReport r;
  r.scenario = "composition";
  r.add_param("beta", first.beta);
  r.add_param("beta_prime", beta_prime);
  r.add_param("beta_double_prime", total.beta);
  for (int j = 0; j < 3; ++j) r.add_param(detail::vec_key("n", j), first.n[j]);
  r.add_param("omega", first.omega);
  r.add_param("c", first.c);

  r.add_check("galilei_lambda_product", "Sec.3.3",
              std::abs(total.lambda() - lam * second.lambda()), tol.composition);

  // Phi'' = Phi'(x'(x)) Phi(x); all frames share the coordinate x^0 = c t.
  const AffineMap first_map = galilei_map(first.beta);
  std::array<std::array<double, kDim>, kDim> a{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) a[i][j] = first_map.a(i, j);
  const ExpPoly phi = dalembert_weight(first, first.c);
  const ExpPoly phi_p = dalembert_weight(second, first.c).compose_affine(a, Point{});
  const ExpPoly phi_pp = dalembert_weight(total, first.c);
  r.add_check("eq30_weight_composition", "Eq.30", detail::function_mismatch(phi_pp, phi_p * phi),
              tol.composition);

  const double d = maxwell_d(first.beta, nx);
  const double dp = maxwell_d(second.beta, second.n[0]);
  const double dpp = maxwell_d(total.beta, nx);
  r.add_param("d", d);
  r.add_param("d_prime", dp);
  r.add_param("d_double_prime", dpp);
  // e23 = d, e32 = -d, h23 = -d, h32 = d; the law is odd in d.
  double d_err = 0.0;
  for (double s : {1.0, -1.0})
    d_err = std::max(d_err, std::abs(s * dpp - compose_d(s * dp, s * d)));
  r.add_check("eq30_d_composition", "Eq.30", d_err, tol.composition);

  const double k = maxwell_kappa(first.beta, nx);
  const double kp = maxwell_kappa(second.beta, second.n[0]);
  const double kpp = maxwell_kappa(total.beta, nx);
  r.add_check("eq30_kappa_composition", "Eq.30", std::abs(kpp - kp * k * (1.0 + dp * d)),
              tol.composition);

  // Relativistic counterpart: kappa = 1/sqrt(1 - beta^2), d = beta, Einstein addition.
  auto gamma = [](double b) { return 1.0 / std::sqrt(1.0 - b * b); };
  const double b1 = first.beta;
  const double b2 = beta_prime;
  const double b12 = compose_d(b2, b1);
  r.add_check("eq30_relativistic_comparison", "Eq.30",
              std::abs(gamma(b12) - gamma(b2) * gamma(b1) * (1.0 + b2 * b1)), tol.composition);
  return r;
}

}  // namespace extsym
