#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace extsym {

using Complex = std::complex<double>;

inline constexpr int kDim = 4;

/// Exponents of x^0..x^3, or a mixed partial derivative order.
using MultiIndex = std::array<int, kDim>;
/// Linear form kappa in exp(kappa . x).
using Covector = std::array<Complex, kDim>;
using Point = std::array<double, kDim>;

inline constexpr MultiIndex kZeroIndex{0, 0, 0, 0};
inline constexpr Covector kZeroCovector{};

MultiIndex unit_index(int a);
int total_degree(const MultiIndex& m);
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
Covector operator+(const Covector& a, const Covector& b);
Covector operator-(const Covector& a, const Covector& b);
Covector operator*(Complex s, const Covector& a);
double max_abs_diff(const Covector& a, const Covector& b);

struct Tolerances {
  double zero_tol = 1e-10;      // relative to the largest input coefficient
  double merge_tol = 1e-12;     // absolute, per kappa component
  double residual_tol = 1e-10;  // scenario pass threshold

  /// Throws InvalidParams unless all values are positive and merge_tol <= zero_tol.
  void validate() const;
};

struct ExpTerm {
  Complex coeff;
  MultiIndex alpha{};
  Covector kappa{};

  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Finite sum of c * x^alpha * exp(kappa . x).
///
/// Values are always normalized: terms are sorted by (alpha, kappa), no two
/// terms share alpha with kappas closer than merge_tol, and no coefficient is
/// exactly zero. Arithmetic keeps floating residue (it only drops exact
/// zeros) so that residual magnitudes stay observable; the relative zero_tol
/// is applied by normalize() and is_zero().
class ExpPoly {
 public:
  ExpPoly() = default;

  static ExpPoly constant(Complex c);
  static ExpPoly coordinate(int a);
  static ExpPoly monomial(const MultiIndex& alpha, Complex c = 1.0);
  static ExpPoly exponential(const Covector& kappa, Complex c = 1.0);
  static ExpPoly term(const ExpTerm& t);

  /// Merge and canonically order, dropping terms with
  /// |coeff| <= zero_tol * (largest input |coeff|). Throws NonFinite.
  static ExpPoly normalize(std::vector<ExpTerm> terms, const Tolerances& tol);

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Largest |coeff|, 0 for the zero function.
  double max_coeff() const;
  /// True when every kappa is exactly zero.
  bool is_polynomial() const;
  /// Largest total degree of any monomial, -1 for the zero function.
  int degree() const;

  /// Substitute x -> A x + b, with A row-major.
  ExpPoly compose_affine(const std::array<std::array<double, kDim>, kDim>& A,
                         const Point& b) const;

  friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

 private:
  friend ExpPoly combine(std::vector<ExpTerm> terms, double merge_tol);
  std::vector<ExpTerm> terms_;
};

/// Merge within merge_tol, drop exact zeros, sort. Used by all arithmetic.
ExpPoly combine(std::vector<ExpTerm> terms, double merge_tol = Tolerances{}.merge_tol);

ExpPoly add(const ExpPoly& a, const ExpPoly& b);
ExpPoly sub(const ExpPoly& a, const ExpPoly& b);
ExpPoly mul(const ExpPoly& a, const ExpPoly& b);
ExpPoly scale(const ExpPoly& a, Complex c);
ExpPoly derive(const ExpPoly& f, int a);
ExpPoly derive(const ExpPoly& f, const MultiIndex& orders);

inline ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) { return add(a, b); }
inline ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return sub(a, b); }
inline ExpPoly operator-(const ExpPoly& a) { return scale(a, -1.0); }
inline ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) { return mul(a, b); }
inline ExpPoly operator*(Complex c, const ExpPoly& a) { return scale(a, c); }

/// Throws NonFinite if exp overflows.
Complex evaluate(const ExpPoly& f, const Point& x);

struct ZeroTest {
  bool zero = true;
  double max_coeff = 0.0;
  double scale = 1.0;
  std::optional<ExpTerm> witness;

  explicit operator bool() const noexcept { return zero; }
};

/// Zero iff max |coeff| <= zero_tol * scale_ref; the witness is the largest
/// offending term.
ZeroTest is_zero(const ExpPoly& f, const Tolerances& tol, double scale_ref = 1.0);

/// Single pure exponential c * exp(kappa . x) with alpha = 0, if f is one.
std::optional<ExpTerm> as_single_exponential(const ExpPoly& f);

/// 1 / (c exp(kappa . x)). Throws NotSingleExponential otherwise.
ExpPoly reciprocal_exponential(const ExpPoly& f);

}  // namespace extsym
