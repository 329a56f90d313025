#pragma once

#include <span>
#include <vector>

#include "extsym/expcore.hpp"

namespace extsym {

struct OpTerm {
  ExpPoly coeff;
  MultiIndex deriv{};

  friend bool operator==(const OpTerm&, const OpTerm&) = default;
};

/// Linear differential operator sum_j c_j(x) d^{delta_j}, at most one term
/// per delta, coefficients nonzero, terms ordered by delta.
class LinDiffOp {
 public:
  LinDiffOp() = default;

  static LinDiffOp from_terms(std::vector<OpTerm> terms);
  static LinDiffOp identity();
  static LinDiffOp partial(int a);
  static LinDiffOp derivative(const MultiIndex& delta, Complex c = 1.0);
  static LinDiffOp multiplication(const ExpPoly& f);
  /// f(x) d_a
  static LinDiffOp vector_field(int a, const ExpPoly& f);

  const std::vector<OpTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  /// Max |delta|, -1 for the zero operator.
  int order() const;
  /// Coefficient of d^delta (zero if absent).
  ExpPoly coeff(const MultiIndex& delta) const;
  double max_coeff() const;
  bool has_polynomial_coefficients() const;

  friend bool operator==(const LinDiffOp&, const LinDiffOp&) = default;

 private:
  std::vector<OpTerm> terms_;
};

LinDiffOp add(const LinDiffOp& a, const LinDiffOp& b);
LinDiffOp sub(const LinDiffOp& a, const LinDiffOp& b);
LinDiffOp scale(const LinDiffOp& a, Complex c);
/// Multiplication operator f composed on the left: f * A.
LinDiffOp left_multiply(const ExpPoly& f, const LinDiffOp& a);

inline LinDiffOp operator+(const LinDiffOp& a, const LinDiffOp& b) { return add(a, b); }
inline LinDiffOp operator-(const LinDiffOp& a, const LinDiffOp& b) { return sub(a, b); }
inline LinDiffOp operator*(Complex c, const LinDiffOp& a) { return scale(a, c); }
inline LinDiffOp operator*(const ExpPoly& f, const LinDiffOp& a) { return left_multiply(f, a); }

ExpPoly apply(const LinDiffOp& op, const ExpPoly& f);

/// Result of applying an operator together with the largest magnitude of any
/// single term's contribution, the reference for relative zero tests.
struct ApplyResult {
  ExpPoly value;
  double scale = 0.0;
  /// max_coeff(value) / scale, or 0 when scale is 0.
  double relative_residual() const;
};
ApplyResult apply_scaled(const LinDiffOp& op, const ExpPoly& f);

LinDiffOp compose(const LinDiffOp& a, const LinDiffOp& b);
LinDiffOp commutator(const LinDiffOp& a, const LinDiffOp& b);
/// [L,[L,...[L,Q]...]] with p brackets.
LinDiffOp ad_power(const LinDiffOp& l, const LinDiffOp& q, int p);

struct MultipleResidual {
  LinDiffOp residual;
  double max_coeff = 0.0;
};
/// A - zeta * L.
MultipleResidual residual_vs_multiple(const LinDiffOp& a, const LinDiffOp& l,
                                      const ExpPoly& zeta);

/// Coefficient-wise zero test on a - b.
ZeroTest operators_equal(const LinDiffOp& a, const LinDiffOp& b, const Tolerances& tol);

class MatrixDiffOp {
 public:
  MatrixDiffOp(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  LinDiffOp& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const LinDiffOp& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<LinDiffOp> entries_;
};

/// Throws ShapeMismatch unless fields.size() == cols().
std::vector<ExpPoly> matrix_apply(const MatrixDiffOp& m, std::span<const ExpPoly> fields);
std::vector<ApplyResult> matrix_apply_scaled(const MatrixDiffOp& m,
                                             std::span<const ExpPoly> fields);

/// A first-order generator Q with multiplier zeta for the order-p condition
/// ad_L^p(Q) = zeta L.
struct SymmetryCandidate {
  LinDiffOp q;
  ExpPoly zeta;
  int p = 1;

  SymmetryCandidate() = default;
  /// Throws InvalidParams if order(q) > 1 or p < 1.
  SymmetryCandidate(LinDiffOp q, ExpPoly zeta, int p);

  /// Coefficient of d_a.
  ExpPoly xi(int a) const;
  /// Coefficient of the identity.
  ExpPoly eta() const;
};

/// max coefficient of ad_L^p(Q) - zeta L.
double symmetry_residual(const LinDiffOp& l, const SymmetryCandidate& c);

}  // namespace extsym
