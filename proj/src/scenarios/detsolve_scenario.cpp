#include <algorithm>
#include <cmath>
#include <limits>

#include "common.hpp"
#include "extsym/error.hpp"

namespace extsym {

ScenarioReport run_detsolve(const DetsolveParams& p, const ScenarioOptions& opt) {
  LinDiffOp l;
  if (p.op == "dalembert") {
    l = wave_operator();
  } else if (p.op == "schrodinger") {
    l = schrodinger_operator(SchrodingerParams{});
  } else {
    throw Error(ErrorKind::InvalidParams, "unknown operator '" + p.op + "'");
  }
  const DeterminingSystem sys = build_determining_system(l, p.spec);
  const GeneratorBasis basis = solve_null_space(sys, p.null_tol);
  const int dim = static_cast<int>(basis.generators.size());

  ScenarioReport r;
  r.scenario = "detsolve";
  r.add_param(p.op == "dalembert" ? "operator_dalembert" : "operator_schrodinger", 1.0);
  r.add_param("degree", p.spec.degree);
  r.add_param("p", p.spec.p);
  r.add_param("zeta_degree", p.spec.zeta_degree);
  r.add_param("complex_scalars", p.spec.complex_scalars ? 1.0 : 0.0);
  r.add_param("unknowns", static_cast<double>(sys.unknowns.size()));
  r.add_param("rows", static_cast<double>(sys.matrix.rows()));
  r.add_param("null_dimension", dim);

  const double worst = basis.verification_residuals.empty()
                           ? 0.0
                           : *std::max_element(basis.verification_residuals.begin(),
                                               basis.verification_residuals.end());
  r.add_check("generator_reverification", "Eq.5-6", worst, 1e-8);

  const int up = null_dimension(basis.singular_values, sys.unknowns.size(), p.null_tol * 10.0);
  const int down = null_dimension(basis.singular_values, sys.unknowns.size(), p.null_tol / 10.0);
  r.add_check("null_dimension_stable", "Sec.2", std::abs(up - dim) + std::abs(down - dim), 0.5);

  if (p.spec.p >= 2 && p.spec.degree >= 1) {
    double proj = 0.0;
    for (int a = 0; a < kDim; ++a) {
      const SymmetryCandidate pa(translation_generator(a), {}, p.spec.p);
      proj = std::max(proj, projection_residual(basis.null_vectors, encode(sys, pa)));
      for (int b = 0; b < kDim; ++b) {
        const SymmetryCandidate g(linear_generator(a, b), {}, p.spec.p);
        proj = std::max(proj, projection_residual(basis.null_vectors, encode(sys, g)));
      }
    }
    r.add_check("eq31_igl_in_null_space", "Eq.31", proj, 1e-8);
  }

  if (dim > 0) {
    double closure = std::numeric_limits<double>::infinity();
    try {
      closure = structure_constants(basis.generators, std::numeric_limits<double>::infinity())
                    .closure_residual;
    } catch (const Error&) {
    }
    r.add_check("eq7_structure_closure", "Eq.7-8", closure, p.null_tol);
  }
  (void)opt;
  return r;
}

}  // namespace extsym
