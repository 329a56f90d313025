#include <cmath>
#include <exception>

#include "common.hpp"
#include "extsym/error.hpp"

namespace extsym {

SweepRng::SweepRng(std::uint64_t seed) : engine_(seed) {}

double SweepRng::uniform(double lo, double hi) {
  // 53 random bits, independent of the standard library's distributions.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Vec3 SweepRng::unit_vector() {
  const double z = uniform(-1.0, 1.0);
  const double phi = uniform(0.0, 2.0 * M_PI);
  const double s = std::sqrt(1.0 - z * z);
  return {s * std::cos(phi), s * std::sin(phi), z};
}

DalembertParams draw_dalembert(SweepRng& rng) {
  DalembertParams p;
  p.beta = rng.uniform(-0.9, 0.9);
  p.n = rng.unit_vector();
  p.omega = rng.uniform(0.1, 10.0);
  return p;
}

SchrodingerParams draw_schrodinger(SweepRng& rng) {
  SchrodingerParams p;
  p.V = rng.uniform(-0.8, 0.8) * p.c;
  const double speed = rng.uniform(0.05, 0.8) * p.c;
  const Vec3 dir = rng.unit_vector();
  for (int j = 0; j < 3; ++j) p.v[j] = speed * dir[j];
  return p;
}

MaxwellParams draw_maxwell(SweepRng& rng) {
  MaxwellParams p;
  p.wave.beta = rng.uniform(-0.9, 0.9);
  do {
    p.wave.n = rng.unit_vector();
  } while (std::abs(p.wave.n[0]) > 0.95);
  p.wave.omega = rng.uniform(0.1, 10.0);
  p.polarization_angle = rng.uniform(0.0, 2.0 * M_PI);
  return p;
}

std::pair<DalembertParams, double> draw_composition(SweepRng& rng) {
  while (true) {
    DalembertParams p;
    p.beta = rng.uniform(-0.5, 0.5);
    p.n = rng.unit_vector();
    p.omega = rng.uniform(0.1, 10.0);
    const double beta_prime = rng.uniform(-0.5, 0.5);
    const double nx_prime = (p.n[0] - p.beta) / p.lambda();
    if (std::abs(p.n[0]) <= 0.95 && std::abs(nx_prime) <= 0.95) return {p, beta_prime};
  }
}

namespace {

const char* sweep_name(SweepKind k) {
  switch (k) {
    case SweepKind::Dalembert: return "dalembert-galilei";
    case SweepKind::Schrodinger: return "schrodinger-lorentz";
    case SweepKind::Maxwell: return "maxwell-galilei";
    case SweepKind::Composition: return "composition";
  }
  return "";
}

}  // namespace

ScenarioReport run_sweep(SweepKind kind, int count, std::uint64_t seed,
                         const ScenarioOptions& opt) {
  if (count < 1) throw Error(ErrorKind::InvalidParams, "sweep count must be >= 1");
  ScenarioOptions inner = opt;
  inner.fd_oracle = false;

  // Draw serially so the parameter stream does not depend on scheduling.
  SweepRng rng(seed);
  std::vector<DalembertParams> dal;
  std::vector<SchrodingerParams> sch;
  std::vector<MaxwellParams> max;
  std::vector<std::pair<DalembertParams, double>> comp;
  for (int i = 0; i < count; ++i) {
    switch (kind) {
      case SweepKind::Dalembert: dal.push_back(draw_dalembert(rng)); break;
      case SweepKind::Schrodinger: sch.push_back(draw_schrodinger(rng)); break;
      case SweepKind::Maxwell: max.push_back(draw_maxwell(rng)); break;
      case SweepKind::Composition: comp.push_back(draw_composition(rng)); break;
    }
  }

  std::vector<ScenarioReport> reports(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      switch (kind) {
        case SweepKind::Dalembert: reports[k] = run_dalembert(dal[k], inner); break;
        case SweepKind::Schrodinger: reports[k] = run_schrodinger(sch[k], inner); break;
        case SweepKind::Maxwell: reports[k] = run_maxwell(max[k], inner); break;
        case SweepKind::Composition:
          reports[k] = check_composition(comp[k].first, comp[k].second, inner);
          break;
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScenarioReport out;
  out.scenario = sweep_name(kind);
  out.add_param("seed", static_cast<double>(seed));
  out.add_param("draws", count);
  for (const auto& c : reports.front().checks) out.add_check(c.name, c.paper_ref, 0.0, c.tol);
  std::vector<std::pair<std::string, double>> worst_draw;
  for (auto& agg : out.checks) {
    double worst = -1.0;
    std::size_t at = 0;
    bool all = true;
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const CheckResult* c = reports[k].find(agg.name);
      if (!c) continue;
      all = all && c->pass;
      // A NaN residual sticks as the worst one.
      if (std::isnan(worst)) continue;
      if (std::isnan(c->residual) || c->residual > worst) {
        worst = c->residual;
        at = k;
      }
    }
    agg.residual = worst;
    agg.pass = all;
    worst_draw.emplace_back("worst_draw." + agg.name, static_cast<double>(at));
  }
  for (auto& [k, v] : worst_draw) out.add_param(k, v);
  return out;
}

}  // namespace extsym
