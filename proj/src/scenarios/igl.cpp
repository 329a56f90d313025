#include <string>

#include "common.hpp"

namespace extsym {

ScenarioReport run_igl_sweep(const ScenarioOptions& opt) {
  ScenarioReport r;
  r.scenario = "igl-sweep";
  const SchrodingerParams sp;
  const std::pair<const char*, LinDiffOp> ops[] = {{"box", wave_operator()},
                                                   {"LS", schrodinger_operator(sp)}};
  for (const auto& [name, l] : ops) {
    for (int a = 0; a < kDim; ++a)
      r.add_check("eq31_" + std::string(name) + "_P" + std::to_string(a), "Eq.31",
                  ad_power(l, translation_generator(a), 1).max_coeff(), opt.tol.identity);
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b)
        r.add_check("eq31_" + std::string(name) + "_G" + std::to_string(a) + std::to_string(b),
                    "Eq.31", ad_power(l, linear_generator(a, b), 2).max_coeff(),
                    opt.tol.identity);
  }
  return r;
}

}  // namespace extsym
