#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "extsym/detsolve.hpp"
#include "extsym/gridcheck.hpp"

namespace extsym {

using Vec3 = std::array<double, 3>;

// ---------------------------------------------------------------------------
// Reports

struct CheckResult {
  std::string name;
  std::string paper_ref;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct ScenarioReport {
  std::string scenario;
  /// Flat, ordered parameter record (inputs, derived values, informational
  /// residuals).
  std::vector<std::pair<std::string, double>> params;
  std::vector<CheckResult> checks;

  bool pass() const;
  void add_param(std::string key, double value);
  /// pass = residual < tol (NaN fails).
  const CheckResult& add_check(std::string name, std::string ref, double residual, double tol);
  const CheckResult* find(std::string_view name) const;
  double param(std::string_view key) const;
};

struct CheckTolerances {
  double identity = 1e-12;
  double engaging = 1e-9;
  double engaging_schrodinger = 1e-8;
  double composition = 1e-10;
  /// Allowed relative deviation of a halving ratio from 2.
  double limit_ratio = 0.1;
  double nonrelativistic = 1e-10;
  double fd = 1e-3;
};

struct ScenarioOptions {
  CheckTolerances tol;
  /// Cross-check symbolic zeros with finite differences on `grid`.
  bool fd_oracle = true;
  GridSpec grid{};
};

// ---------------------------------------------------------------------------
// Parameters

/// Wave scenarios use x^0 = c t.
struct DalembertParams {
  double beta = 0.3;
  Vec3 n{0.0, 1.0, 0.0};
  double omega = 1.0;
  double c = 1.0;

  /// c'/c for the Galilei frame change.
  double lambda() const;
  /// Throws InvalidParams.
  void validate() const;
};

struct MaxwellParams {
  DalembertParams wave;
  /// Angle of l inside the plane orthogonal to n.
  double polarization_angle = 0.0;
};

/// The Schrodinger scenario uses x^0 = t. The frame moves along x^1.
struct SchrodingerParams {
  double V = 0.2;
  Vec3 v{0.4, 0.0, 0.0};
  double c = 1.0;
  double hbar = 1.0;
  double m0 = 1.0;

  /// Throws InvalidParams for |V| >= c, |v| >= c or v = 0.
  void validate() const;

  double beta() const { return V / c; }
  double beta_v() const;
  Vec3 beta_vec() const { return {v[0] / c, v[1] / c, v[2] / c}; }
  double mass() const;
  double energy() const;  // W = m c^2
  Vec3 momentum() const;  // P = m v
  /// Squared particle speed over c seen from the moving frame.
  double beta_v_prime_sq() const;
};

struct MaxwellTransform {
  double kappa = 1.0;
  double e23 = 0.0;
  double e32 = 0.0;
  double h23 = 0.0;
  double h32 = 0.0;
  /// Common value d = e23 = -e32 = h32.
  double d = 0.0;
  ExpPoly phi_d;
};

struct Polarization {
  Vec3 l;
  Vec3 m;  // n x l
};

// ---------------------------------------------------------------------------
// Builders

/// d_0^2 - d_1^2 - d_2^2 - d_3^2
LinDiffOp wave_operator();
/// x^0 d_1
LinDiffOp galilei_generator();
/// x^0 d_1 + x^1 d_0
LinDiffOp boost_generator();
LinDiffOp translation_generator(int a);
/// x^a d_b
LinDiffOp linear_generator(int a, int b);

/// x^1' = x^1 - beta x^0, other coordinates fixed.
AffineMap galilei_map(double beta);

/// exp(-i k.x) with k.x = omega (t - n.x/c), t = x^0 / coordinate_c.
ExpPoly plane_wave(const DalembertParams& p, double coordinate_c);
inline ExpPoly plane_wave(const DalembertParams& p) { return plane_wave(p, p.c); }

/// exp{-(i/lambda)[(1-lambda) k.x - beta omega (n_x t - x/c)]}.
ExpPoly dalembert_weight(const DalembertParams& p, double coordinate_c);
inline ExpPoly dalembert_weight(const DalembertParams& p) { return dalembert_weight(p, p.c); }

/// Primed wave operator d_0'^2/lambda^2 - Laplacian' pulled back through the
/// Galilei map.
LinDiffOp dalembert_engaging_operator(const DalembertParams& p);
/// (d_0 + beta d_1)^2 / lambda^2 - Laplacian, written out directly.
LinDiffOp dalembert_engaging_operator_direct(const DalembertParams& p);

LinDiffOp schrodinger_operator(const SchrodingerParams& p);
/// Engaging operator of the moving frame, transcribed term by term.
LinDiffOp schrodinger_engaging_operator(const SchrodingerParams& p);
/// i hbar d_t + hbar^2 Laplacian / (2 m0)
LinDiffOp nonrelativistic_schrodinger_operator(const SchrodingerParams& p);

ExpPoly schrodinger_psi1(const SchrodingerParams& p);
ExpPoly schrodinger_psi2(const SchrodingerParams& p);
ExpPoly schrodinger_weight11(const SchrodingerParams& p);
ExpPoly schrodinger_weight22(const SchrodingerParams& p);
/// Psi_11 psi_1 / psi_2 and Psi_22 psi_2 / psi_1.
ExpPoly schrodinger_weight12(const SchrodingerParams& p);
ExpPoly schrodinger_weight21(const SchrodingerParams& p);
/// exp[-i (m0 v^2 / 2 hbar)(t - s.x/(v/2))]
ExpPoly nonrelativistic_psi1(const SchrodingerParams& p);
/// exp[-i (m0 c^2 / hbar)(t - s.x/(c/sqrt 2))]
ExpPoly nonrelativistic_psi2(const SchrodingerParams& p);

/// 8 x 6 operator on (E1,E2,E3,H1,H2,H3): div E, curl H - T E, div H,
/// curl E + T H, with T the supplied time-derivative operator.
MatrixDiffOp maxwell_operator(const LinDiffOp& time_derivative);
inline MatrixDiffOp maxwell_operator() { return maxwell_operator(LinDiffOp::partial(0)); }
/// Primed Maxwell operator (c -> lambda c) pulled back through the Galilei map.
MatrixDiffOp maxwell_engaging_operator(const DalembertParams& p);

/// Orthonormal l, m = n x l with l rotated by `angle` in the plane normal to n.
Polarization polarization(const Vec3& n, double angle);
std::vector<ExpPoly> maxwell_plane_wave(const DalembertParams& p, const Polarization& pol);
/// Throws DegenerateDirection for |n_x| >= 1 - 1e-6.
MaxwellTransform maxwell_transform(const DalembertParams& p);
std::vector<ExpPoly> transform_fields(const MaxwellTransform& t, std::span<const ExpPoly> eh);
/// d parameter and kappa as functions of (beta, n_x).
double maxwell_d(double beta, double nx);
double maxwell_kappa(double beta, double nx);
/// (d' + d) / (1 + d' d)
double compose_d(double d_prime, double d);

/// phi'(map(x)) / phi(x) for single pure exponentials. Throws
/// NotSingleExponential.
ExpPoly infer_weight(const ExpPoly& phi_primed, const AffineMap& map, const ExpPoly& phi);

/// Deterministic sample of the closed unit ball in R^4.
const std::vector<Point>& unit_ball_points();
/// max |Phi_D - 1| over the unit ball.
double dalembert_limit_deviation(const DalembertParams& p);
/// max deviation of the transformed fields from (E + beta x H, H - beta x E).
double maxwell_limit_deviation(const MaxwellParams& p);

// ---------------------------------------------------------------------------
// Scenarios

ScenarioReport run_dalembert(const DalembertParams& p, const ScenarioOptions& opt = {});
ScenarioReport run_schrodinger(const SchrodingerParams& p, const ScenarioOptions& opt = {});
/// Throws DegenerateDirection when |n_x| is (numerically) 1.
ScenarioReport run_maxwell(const MaxwellParams& p, const ScenarioOptions& opt = {});
/// First frame change described by `first`, the second by its velocity
/// beta_prime measured in the intermediate frame.
ScenarioReport check_composition(const DalembertParams& first, double beta_prime,
                                 const ScenarioOptions& opt = {});
ScenarioReport run_igl_sweep(const ScenarioOptions& opt = {});

struct DetsolveParams {
  /// "dalembert" or "schrodinger".
  std::string op = "dalembert";
  AnsatzSpec spec{1, 2, 0, false};
  double null_tol = 1e-8;
};
/// Solves the determining system, re-verifies every generator, checks the
/// IGL(4,R) generators lie in the null space and the structure closes.
ScenarioReport run_detsolve(const DetsolveParams& p, const ScenarioOptions& opt = {});

// ---------------------------------------------------------------------------
// Seeded random sweeps

/// Portable seeded generator (mt19937_64 with explicit conversions).
class SweepRng {
 public:
  explicit SweepRng(std::uint64_t seed);
  double uniform(double lo, double hi);
  Vec3 unit_vector();

 private:
  std::mt19937_64 engine_;
};

DalembertParams draw_dalembert(SweepRng& rng);
SchrodingerParams draw_schrodinger(SweepRng& rng);
MaxwellParams draw_maxwell(SweepRng& rng);
std::pair<DalembertParams, double> draw_composition(SweepRng& rng);

enum class SweepKind { Dalembert, Schrodinger, Maxwell, Composition };

/// Runs `count` draws (in parallel), then folds them into one report whose
/// checks carry the worst residual over all draws.
ScenarioReport run_sweep(SweepKind kind, int count, std::uint64_t seed,
                         const ScenarioOptions& opt = {});

}  // namespace extsym
