#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "extsym/opalg.hpp"

namespace extsym {

/// Polynomial ansatz for Q = xi^a(x) d_a + eta(x) and the multiplier zeta.
struct AnsatzSpec {
  int degree = 1;
  int p = 1;
  int zeta_degree = 0;
  /// Drop the zeta unknowns entirely (pins zeta = 0).
  bool pin_zeta_zero = false;
  /// Give eta and zeta imaginary-part unknowns as well (xi stays real).
  bool complex_scalars = false;

  void validate() const;
};

enum class UnknownKind { Xi, Eta, Zeta };

struct UnknownLabel {
  UnknownKind kind = UnknownKind::Xi;
  int component = -1;  // a for xi^a, -1 otherwise
  MultiIndex monomial{};
  /// Unknown multiplies i x^m (eta and zeta only).
  bool imaginary = false;

  std::string name() const;
};

struct RowLabel {
  MultiIndex monomial{};
  MultiIndex deriv{};
  bool imaginary = false;
};

/// Real linear system M u = 0 over real ansatz coefficients u. Complex
/// operator coefficients contribute one real and one imaginary row per
/// (monomial, derivative) key.
struct DeterminingSystem {
  LinDiffOp l;
  AnsatzSpec spec;
  std::vector<UnknownLabel> unknowns;
  std::vector<RowLabel> rows;
  Eigen::MatrixXd matrix;
};

/// Throws UnsupportedCoefficient if L has exponential coefficients.
DeterminingSystem build_determining_system(const LinDiffOp& l, const AnsatzSpec& spec);

/// Operator contributed by unknown j with unit value (before zeta is moved
/// to the left): x^m d_a for xi, x^m for eta, x^m for zeta.
SymmetryCandidate decode(const DeterminingSystem& sys, const Eigen::VectorXd& u);
/// Inverse of decode for candidates inside the ansatz. Throws InvalidParams
/// if a coefficient falls outside it.
Eigen::VectorXd encode(const DeterminingSystem& sys, const SymmetryCandidate& c);

/// Antisymmetric structure tensor C(i, j, k): [Q_i, Q_j] = sum_k C(i,j,k) Q_k.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(std::size_t n) : n_(n), c_(n * n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return c_[(i * n_ + j) * n_ + k];
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> c_;
};

struct GeneratorBasis {
  std::vector<SymmetryCandidate> generators;
  StructureTensor structure;
  double closure_residual = 0.0;

  /// Filled by solve_null_space: orthonormal null vectors as columns, the
  /// full singular spectrum (descending) and each generator's re-verified
  /// residual max |ad_L^p(Q) - zeta L|.
  Eigen::MatrixXd null_vectors;
  std::vector<double> singular_values;
  std::vector<double> verification_residuals;
};

/// Null space of sys.matrix with cutoff tol * sigma_max. Throws
/// RankDeficiencyAmbiguous when a singular value lies within a factor 10 of
/// the cutoff on either side.
GeneratorBasis solve_null_space(const DeterminingSystem& sys, double tol = 1e-8);

/// Dimension the cutoff would pick, without the ambiguity guard.
int null_dimension(const std::vector<double>& singular_values, std::size_t unknowns,
                   double tol);

/// Distance from v to the column span of an orthonormal basis.
double projection_residual(const Eigen::MatrixXd& orthonormal, const Eigen::VectorXd& v);

/// Least-squares fit of every pairwise commutator in the span of the
/// generators. Throws NotClosed if the worst fit residual exceeds tol.
GeneratorBasis structure_constants(std::vector<SymmetryCandidate> basis, double tol = 1e-8);

/// x' = A x + b.
struct AffineMap {
  Eigen::Matrix4d a = Eigen::Matrix4d::Identity();
  Eigen::Vector4d b = Eigen::Vector4d::Zero();

  static AffineMap identity() { return {}; }
  Point operator()(const Point& x) const;
  /// (this o other)(x) = this(other(x))
  AffineMap compose(const AffineMap& other) const;
  /// Throws SingularMap when |det A| <= 1e-12.
  AffineMap inverse() const;
};

/// Matrix exponential by scaling and squaring with a Taylor core.
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

/// Solution of dx'/dtheta = xi(x'), x'(0) = x for affine xi.
/// Throws UnsupportedDegree if xi has degree > 1 or non-polynomial terms.
AffineMap flow(const SymmetryCandidate& q, double theta);

/// Operator in unprimed coordinates equal to `primed` acting in x' = map(x).
/// Throws SingularMap.
LinDiffOp pullback(const LinDiffOp& primed, const AffineMap& map);
MatrixDiffOp pullback(const MatrixDiffOp& primed, const AffineMap& map);

}  // namespace extsym
