#include "extsym/expcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "extsym/error.hpp"

namespace extsym {

MultiIndex unit_index(int a) {
  MultiIndex m{};
  m[a] = 1;
  return m;
}

int total_degree(const MultiIndex& m) { return m[0] + m[1] + m[2] + m[3]; }

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Covector operator+(const Covector& a, const Covector& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Covector operator-(const Covector& a, const Covector& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

Covector operator*(Complex s, const Covector& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

double max_abs_diff(const Covector& a, const Covector& b) {
  double m = 0.0;
  for (int i = 0; i < kDim; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void Tolerances::validate() const {
  if (!(zero_tol > 0.0) || !(merge_tol > 0.0) || !(residual_tol > 0.0))
    throw Error(ErrorKind::InvalidParams, "tolerances must be strictly positive");
  if (merge_tol > zero_tol)
    throw Error(ErrorKind::InvalidParams, "merge_tol must not exceed zero_tol");
}

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void check_finite(const ExpTerm& t) {
  bool ok = finite(t.coeff);
  for (const auto& k : t.kappa) ok = ok && finite(k);
  if (!ok) throw Error(ErrorKind::NonFinite, "non-finite coefficient or exponent");
}

// Exact lexicographic order on (re, im) of each component.
bool kappa_less(const Covector& a, const Covector& b) {
  for (int i = 0; i < kDim; ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

bool kappa_close(const Covector& a, const Covector& b, double tol) {
  for (int i = 0; i < kDim; ++i) {
    if (std::abs(a[i].real() - b[i].real()) > tol) return false;
    if (std::abs(a[i].imag() - b[i].imag()) > tol) return false;
  }
  return true;
}

bool term_less(const ExpTerm& a, const ExpTerm& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return kappa_less(a.kappa, b.kappa);
}

// Sort exactly, then fold each term into the first earlier term of the same
// monomial whose kappa lies within tol. Groups are tiny, so the quadratic
// scan inside an alpha group is fine and stays deterministic.
std::vector<ExpTerm> merge_sorted(std::vector<ExpTerm> terms, double tol) {
  std::sort(terms.begin(), terms.end(), term_less);
  std::vector<ExpTerm> out;
  out.reserve(terms.size());
  std::size_t group_begin = 0;
  for (const auto& t : terms) {
    if (out.empty() || out.back().alpha != t.alpha) group_begin = out.size();
    bool merged = false;
    for (std::size_t j = group_begin; j < out.size(); ++j) {
      if (kappa_close(out[j].kappa, t.kappa, tol)) {
        out[j].coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(t);
  }
  return out;
}

}  // namespace

ExpPoly combine(std::vector<ExpTerm> terms, double merge_tol) {
  for (const auto& t : terms) check_finite(t);
  auto merged = merge_sorted(std::move(terms), merge_tol);
  std::erase_if(merged, [](const ExpTerm& t) { return t.coeff == Complex{}; });
  ExpPoly p;
  p.terms_ = std::move(merged);
  return p;
}

ExpPoly ExpPoly::normalize(std::vector<ExpTerm> terms, const Tolerances& tol) {
  double scale = 0.0;
  for (const auto& t : terms) {
    check_finite(t);
    scale = std::max(scale, std::abs(t.coeff));
  }
  auto merged = merge_sorted(std::move(terms), tol.merge_tol);
  const double cut = tol.zero_tol * scale;
  std::erase_if(merged, [cut](const ExpTerm& t) {
    return t.coeff == Complex{} || std::abs(t.coeff) <= cut;
  });
  ExpPoly p;
  p.terms_ = std::move(merged);
  return p;
}

ExpPoly ExpPoly::constant(Complex c) { return term({c, kZeroIndex, kZeroCovector}); }

ExpPoly ExpPoly::coordinate(int a) { return term({1.0, unit_index(a), kZeroCovector}); }

ExpPoly ExpPoly::monomial(const MultiIndex& alpha, Complex c) {
  return term({c, alpha, kZeroCovector});
}

ExpPoly ExpPoly::exponential(const Covector& kappa, Complex c) {
  return term({c, kZeroIndex, kappa});
}

ExpPoly ExpPoly::term(const ExpTerm& t) {
  for (int v : t.alpha)
    if (v < 0) throw Error(ErrorKind::InvalidParams, "negative monomial exponent");
  return combine({t});
}

double ExpPoly::max_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

bool ExpPoly::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const ExpTerm& t) { return t.kappa == kZeroCovector; });
}

int ExpPoly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, total_degree(t.alpha));
  return d;
}

ExpPoly ExpPoly::compose_affine(const std::array<std::array<double, kDim>, kDim>& A,
                                const Point& b) const {
  // x'_i = sum_j A_ij x_j + b_i as first-degree polynomials.
  std::array<ExpPoly, kDim> image;
  for (int i = 0; i < kDim; ++i) {
    std::vector<ExpTerm> lin;
    lin.push_back({b[i], kZeroIndex, kZeroCovector});
    for (int j = 0; j < kDim; ++j) lin.push_back({A[i][j], unit_index(j), kZeroCovector});
    image[i] = combine(std::move(lin));
  }
  ExpPoly result;
  for (const auto& t : terms_) {
    // exp(kappa . (A x + b)) = exp(kappa . b) exp((A^T kappa) . x)
    Covector pulled{};
    Complex shift{};
    for (int i = 0; i < kDim; ++i) {
      shift += t.kappa[i] * b[i];
      for (int j = 0; j < kDim; ++j) pulled[j] += t.kappa[i] * A[i][j];
    }
    ExpPoly piece = exponential(pulled, t.coeff * std::exp(shift));
    for (int i = 0; i < kDim; ++i)
      for (int k = 0; k < t.alpha[i]; ++k) piece = mul(piece, image[i]);
    result = add(result, piece);
  }
  return result;
}

ExpPoly add(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return combine(std::move(terms));
}

ExpPoly sub(const ExpPoly& a, const ExpPoly& b) { return add(a, scale(b, -1.0)); }

ExpPoly mul(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpTerm> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms())
      terms.push_back({s.coeff * t.coeff, s.alpha + t.alpha, s.kappa + t.kappa});
  return combine(std::move(terms));
}

ExpPoly scale(const ExpPoly& a, Complex c) {
  std::vector<ExpTerm> terms = a.terms();
  for (auto& t : terms) t.coeff *= c;
  return combine(std::move(terms));
}

ExpPoly derive(const ExpPoly& f, int a) {
  std::vector<ExpTerm> terms;
  terms.reserve(2 * f.size());
  for (const auto& t : f.terms()) {
    if (t.alpha[a] > 0) {
      ExpTerm lowered = t;
      lowered.coeff *= static_cast<double>(t.alpha[a]);
      lowered.alpha[a] -= 1;
      terms.push_back(lowered);
    }
    if (t.kappa[a] != Complex{}) {
      ExpTerm chained = t;
      chained.coeff *= t.kappa[a];
      terms.push_back(chained);
    }
  }
  return combine(std::move(terms));
}

ExpPoly derive(const ExpPoly& f, const MultiIndex& orders) {
  ExpPoly g = f;
  for (int a = 0; a < kDim; ++a)
    for (int k = 0; k < orders[a]; ++k) g = derive(g, a);
  return g;
}

Complex evaluate(const ExpPoly& f, const Point& x) {
  Complex sum{};
  for (const auto& t : f.terms()) {
    Complex expo{};
    double mono = 1.0;
    for (int i = 0; i < kDim; ++i) {
      expo += t.kappa[i] * x[i];
      for (int k = 0; k < t.alpha[i]; ++k) mono *= x[i];
    }
    sum += t.coeff * mono * std::exp(expo);
  }
  if (!finite(sum)) throw Error(ErrorKind::NonFinite, "evaluation overflow");
  return sum;
}

ZeroTest is_zero(const ExpPoly& f, const Tolerances& tol, double scale_ref) {
  ZeroTest z;
  z.scale = scale_ref;
  const ExpTerm* worst = nullptr;
  for (const auto& t : f.terms()) {
    if (std::abs(t.coeff) > z.max_coeff) {
      z.max_coeff = std::abs(t.coeff);
      worst = &t;
    }
  }
  z.zero = z.max_coeff <= tol.zero_tol * scale_ref;
  if (!z.zero && worst) z.witness = *worst;
  return z;
}

std::optional<ExpTerm> as_single_exponential(const ExpPoly& f) {
  if (f.size() != 1 || f.terms().front().alpha != kZeroIndex) return std::nullopt;
  return f.terms().front();
}

ExpPoly reciprocal_exponential(const ExpPoly& f) {
  auto t = as_single_exponential(f);
  if (!t) throw Error(ErrorKind::NotSingleExponential, "reciprocal needs c*exp(kappa.x)");
  return ExpPoly::exponential(Complex(-1.0) * t->kappa, 1.0 / t->coeff);
}

}  // namespace extsym
