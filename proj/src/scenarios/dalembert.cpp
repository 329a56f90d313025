#include <cmath>

#include "common.hpp"
#include "extsym/error.hpp"

namespace extsym {

ScenarioReport run_dalembert(const DalembertParams& p, const ScenarioOptions& opt) {
  p.validate();
  const auto& tol = opt.tol;
  const double lam = p.lambda();
  ScenarioReport r;
  r.scenario = "dalembert-galilei";
  r.add_param("beta", p.beta);
  for (int j = 0; j < 3; ++j) r.add_param(detail::vec_key("n", j), p.n[j]);
  r.add_param("omega", p.omega);
  r.add_param("c", p.c);
  r.add_param("lambda", lam);

  const LinDiffOp box = wave_operator();
  const LinDiffOp h1 = galilei_generator();

  // [box, H1] = 2 d0 d1, and the second bracket vanishes.
  const LinDiffOp inner = commutator(box, h1);
  const LinDiffOp expected_inner = LinDiffOp::derivative({1, 1, 0, 0}, 2.0);
  r.add_check("eq16_inner_bracket", "Eq.16", (inner - expected_inner).max_coeff(), tol.identity);
  r.add_check("eq16_ad2_H1", "Eq.16", ad_power(box, h1, 2).max_coeff(), tol.identity);

  const ExpPoly phi = plane_wave(p);
  r.add_check("eq15_plane_wave_on_shell", "Eq.14-15", apply_scaled(box, phi).relative_residual(),
              tol.identity);

  const ExpPoly weight = dalembert_weight(p);
  const ExpPoly transformed = weight * phi;
  const LinDiffOp engaging = dalembert_engaging_operator(p);
  r.add_check("eq17_operator_form", "Eq.17",
              (engaging - dalembert_engaging_operator_direct(p)).max_coeff(), tol.identity);
  r.add_check("eq17_engaging", "Eq.17-18", apply_scaled(engaging, transformed).relative_residual(),
              tol.engaging);

  // Read the primed plane wave off the exponent of Phi_D phi.
  const auto single = as_single_exponential(transformed);
  r.add_check("eq19_single_exponential", "Eq.19", single ? 0.0 : 1.0, 0.5);
  if (single) {
    const AffineMap map = galilei_map(p.beta);
    const Eigen::Matrix4d back = map.a.transpose().inverse();
    Covector kp{};
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) kp[i] += back(i, j) * single->kappa[j];
    const Complex time2 = kp[0] * kp[0] / (lam * lam);
    const Complex space2 = kp[1] * kp[1] + kp[2] * kp[2] + kp[3] * kp[3];
    const double disp_scale = std::max(std::abs(time2), std::abs(space2));
    r.add_check("eq19_primed_dispersion", "Eq.19", std::abs(time2 - space2) / disp_scale,
                tol.identity);

    // x^0' = c t', c' = lambda c
    const double omega_p = -p.c * kp[0].imag();
    r.add_param("omega_prime", omega_p);
    const Vec3 rule{(p.n[0] - p.beta) / lam, p.n[1] / lam, p.n[2] / lam};
    double cos_err = 0.0;
    Vec3 n_p{};
    for (int j = 0; j < 3; ++j) {
      n_p[j] = lam * p.c * kp[j + 1].imag() / omega_p;
      cos_err = std::max(cos_err, std::abs(n_p[j] - rule[j]));
      r.add_param(detail::vec_key("n_prime", j), n_p[j]);
    }
    r.add_check("eq19_cosine_rules", "Eq.19", cos_err, tol.engaging);

    DalembertParams primed{0.0, rule, omega_p, lam * p.c};
    const ExpPoly inferred = infer_weight(plane_wave(primed, p.c), map, phi);
    r.add_check("eq13_infer_weight", "Eq.13,18", detail::function_mismatch(inferred, weight),
                tol.engaging);
  }

  double dev[3];
  for (int i = 0; i < 3; ++i) {
    DalembertParams q = p;
    q.beta = detail::kLimitBetas[i];
    dev[i] = dalembert_limit_deviation(q);
  }
  r.add_check("small_beta_weight_limit", "Sec.3.3", detail::halving_ratio_error(dev, 3),
              tol.limit_ratio);

  if (opt.fd_oracle) {
    const GridSpec& g = opt.grid;
    r.add_check("fd_eq16_ad2_H1", "Eq.16", fd_ad_power_residual(box, h1, 2, phi + weight + ExpPoly::monomial({2, 1, 0, 0}), g),
                tol.fd);
    r.add_check("fd_eq15_plane_wave", "Eq.14-15", fd_apply_residual(box, phi, g), tol.fd);
    r.add_check("fd_eq17_engaging", "Eq.17-18", fd_apply_residual(engaging, transformed, g),
                tol.fd);
  }
  return r;
}

}  // namespace extsym
