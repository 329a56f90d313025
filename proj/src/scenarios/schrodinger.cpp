#include <cmath>

#include "common.hpp"

namespace extsym {

ScenarioReport run_schrodinger(const SchrodingerParams& p, const ScenarioOptions& opt) {
  p.validate();
  const auto& tol = opt.tol;
  ScenarioReport r;
  r.scenario = "schrodinger-lorentz";
  r.add_param("V", p.V);
  for (int j = 0; j < 3; ++j) r.add_param(detail::vec_key("v", j), p.v[j]);
  r.add_param("c", p.c);
  r.add_param("hbar", p.hbar);
  r.add_param("m0", p.m0);
  r.add_param("W", p.energy());
  r.add_param("beta_v_prime_sq", p.beta_v_prime_sq());

  const LinDiffOp ls = schrodinger_operator(p);
  const ExpPoly psi1 = schrodinger_psi1(p);
  const ExpPoly psi2 = schrodinger_psi2(p);
  r.add_check("eq21_psi1_dispersion", "Eq.20-21", apply_scaled(ls, psi1).relative_residual(),
              tol.identity);
  r.add_check("eq21_psi2_dispersion", "Eq.20-21", apply_scaled(ls, psi2).relative_residual(),
              tol.identity);

  const LinDiffOp m01 = boost_generator();
  r.add_check("eq22_ad2_M01", "Eq.22", ad_power(ls, m01, 2).max_coeff(), tol.identity);

  const LinDiffOp engaging = schrodinger_engaging_operator(p);
  const ExpPoly w11 = schrodinger_weight11(p);
  const ExpPoly w22 = schrodinger_weight22(p);
  const ExpPoly moved1 = w11 * psi1;
  const ExpPoly moved2 = w22 * psi2;
  r.add_check("eq23_engaging_psi11", "Eq.23-24",
              apply_scaled(engaging, moved1).relative_residual(), tol.engaging_schrodinger);
  r.add_check("eq23_engaging_psi22", "Eq.23-24",
              apply_scaled(engaging, moved2).relative_residual(), tol.engaging_schrodinger);

  r.add_check("eq24_cross_weight_12", "Eq.24-25",
              detail::function_mismatch(schrodinger_weight12(p) * psi2, moved1), tol.identity);
  r.add_check("eq24_cross_weight_21", "Eq.24-25",
              detail::function_mismatch(schrodinger_weight21(p) * psi1, moved2), tol.identity);

  const LinDiffOp nonrel = nonrelativistic_schrodinger_operator(p);
  r.add_check("nonrel_psi1_limit", "Sec.3.2",
              apply_scaled(nonrel, nonrelativistic_psi1(p)).relative_residual(),
              tol.nonrelativistic);
  r.add_check("nonrel_psi2_limit", "Sec.3.2",
              apply_scaled(nonrel, nonrelativistic_psi2(p)).relative_residual(),
              tol.nonrelativistic);

  if (opt.fd_oracle) {
    const GridSpec& g = opt.grid;
    r.add_check("fd_eq22_ad2_M01", "Eq.22",
                fd_ad_power_residual(ls, m01, 2, psi1 + ExpPoly::monomial({1, 2, 0, 1}), g),
                tol.fd);
    r.add_check("fd_eq21_psi1", "Eq.20-21", fd_apply_residual(ls, psi1, g), tol.fd);
    r.add_check("fd_eq21_psi2", "Eq.20-21", fd_apply_residual(ls, psi2, g), tol.fd);
    r.add_check("fd_eq23_engaging_psi11", "Eq.23-24", fd_apply_residual(engaging, moved1, g),
                tol.fd);
    r.add_check("fd_eq23_engaging_psi22", "Eq.23-24", fd_apply_residual(engaging, moved2, g),
                tol.fd);
  }
  return r;
}

}  // namespace extsym
