#include "extsym/opalg.hpp"

#include <algorithm>
#include <map>

#include "extsym/error.hpp"

namespace extsym {

namespace {

LinDiffOp build(std::map<MultiIndex, ExpPoly> by_delta) {
  std::vector<OpTerm> terms;
  for (auto& [delta, c] : by_delta)
    if (!c.empty()) terms.push_back({std::move(c), delta});
  return LinDiffOp::from_terms(std::move(terms));
}

// d_a o B = sum_j (d_a b_j) d^{g_j} + b_j d^{g_j + e_a}
LinDiffOp left_partial(int a, const LinDiffOp& b) {
  std::map<MultiIndex, ExpPoly> acc;
  for (const auto& t : b.terms()) {
    auto& lower = acc[t.deriv];
    lower = add(lower, derive(t.coeff, a));
    auto& raised = acc[t.deriv + unit_index(a)];
    raised = add(raised, t.coeff);
  }
  return build(std::move(acc));
}

}  // namespace

LinDiffOp LinDiffOp::from_terms(std::vector<OpTerm> terms) {
  std::map<MultiIndex, ExpPoly> acc;
  for (auto& t : terms) {
    for (int v : t.deriv)
      if (v < 0) throw Error(ErrorKind::InvalidParams, "negative derivative order");
    auto& slot = acc[t.deriv];
    slot = add(slot, t.coeff);
  }
  LinDiffOp op;
  for (auto& [delta, c] : acc)
    if (!c.empty()) op.terms_.push_back({std::move(c), delta});
  return op;
}

LinDiffOp LinDiffOp::identity() { return derivative(kZeroIndex); }

LinDiffOp LinDiffOp::partial(int a) { return derivative(unit_index(a)); }

LinDiffOp LinDiffOp::derivative(const MultiIndex& delta, Complex c) {
  return from_terms({{ExpPoly::constant(c), delta}});
}

LinDiffOp LinDiffOp::multiplication(const ExpPoly& f) { return from_terms({{f, kZeroIndex}}); }

LinDiffOp LinDiffOp::vector_field(int a, const ExpPoly& f) {
  return from_terms({{f, unit_index(a)}});
}

int LinDiffOp::order() const {
  int o = -1;
  for (const auto& t : terms_) o = std::max(o, total_degree(t.deriv));
  return o;
}

ExpPoly LinDiffOp::coeff(const MultiIndex& delta) const {
  for (const auto& t : terms_)
    if (t.deriv == delta) return t.coeff;
  return {};
}

double LinDiffOp::max_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, t.coeff.max_coeff());
  return m;
}

bool LinDiffOp::has_polynomial_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const OpTerm& t) { return t.coeff.is_polynomial(); });
}

LinDiffOp add(const LinDiffOp& a, const LinDiffOp& b) {
  std::vector<OpTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return LinDiffOp::from_terms(std::move(terms));
}

LinDiffOp sub(const LinDiffOp& a, const LinDiffOp& b) { return add(a, scale(b, -1.0)); }

LinDiffOp scale(const LinDiffOp& a, Complex c) {
  std::vector<OpTerm> terms = a.terms();
  for (auto& t : terms) t.coeff = scale(t.coeff, c);
  return LinDiffOp::from_terms(std::move(terms));
}

LinDiffOp left_multiply(const ExpPoly& f, const LinDiffOp& a) {
  std::vector<OpTerm> terms = a.terms();
  for (auto& t : terms) t.coeff = mul(f, t.coeff);
  return LinDiffOp::from_terms(std::move(terms));
}

ExpPoly apply(const LinDiffOp& op, const ExpPoly& f) { return apply_scaled(op, f).value; }

double ApplyResult::relative_residual() const {
  return scale > 0.0 ? value.max_coeff() / scale : 0.0;
}

ApplyResult apply_scaled(const LinDiffOp& op, const ExpPoly& f) {
  std::vector<ExpTerm> all;
  double s = 0.0;
  for (const auto& t : op.terms()) {
    ExpPoly piece = mul(t.coeff, derive(f, t.deriv));
    s = std::max(s, piece.max_coeff());
    all.insert(all.end(), piece.terms().begin(), piece.terms().end());
  }
  return {combine(std::move(all)), s};
}

LinDiffOp compose(const LinDiffOp& a, const LinDiffOp& b) {
  LinDiffOp result;
  for (const auto& t : a.terms()) {
    LinDiffOp peeled = b;
    for (int axis = 0; axis < kDim; ++axis)
      for (int k = 0; k < t.deriv[axis]; ++k) peeled = left_partial(axis, peeled);
    result = add(result, left_multiply(t.coeff, peeled));
  }
  return result;
}

LinDiffOp commutator(const LinDiffOp& a, const LinDiffOp& b) {
  return sub(compose(a, b), compose(b, a));
}

LinDiffOp ad_power(const LinDiffOp& l, const LinDiffOp& q, int p) {
  if (p < 1) throw Error(ErrorKind::InvalidParams, "ad_power needs p >= 1");
  LinDiffOp acc = q;
  for (int i = 0; i < p; ++i) acc = commutator(l, acc);
  return acc;
}

MultipleResidual residual_vs_multiple(const LinDiffOp& a, const LinDiffOp& l,
                                      const ExpPoly& zeta) {
  MultipleResidual r;
  r.residual = sub(a, left_multiply(zeta, l));
  r.max_coeff = r.residual.max_coeff();
  return r;
}

ZeroTest operators_equal(const LinDiffOp& a, const LinDiffOp& b, const Tolerances& tol) {
  ZeroTest worst;
  const LinDiffOp diff = sub(a, b);
  for (const auto& t : diff.terms()) {
    ZeroTest z = is_zero(t.coeff, tol);
    if (z.max_coeff > worst.max_coeff) worst = z;
  }
  worst.zero = worst.max_coeff <= tol.zero_tol;
  if (worst.zero) worst.witness.reset();
  return worst;
}

MatrixDiffOp::MatrixDiffOp(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

std::vector<ApplyResult> matrix_apply_scaled(const MatrixDiffOp& m,
                                             std::span<const ExpPoly> fields) {
  if (fields.size() != m.cols())
    throw Error(ErrorKind::ShapeMismatch, "field count does not match operator columns");
  std::vector<ApplyResult> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<ExpTerm> all;
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.at(r, c).empty() || fields[c].empty()) continue;
      ApplyResult piece = apply_scaled(m.at(r, c), fields[c]);
      s = std::max(s, piece.scale);
      all.insert(all.end(), piece.value.terms().begin(), piece.value.terms().end());
    }
    out[r] = {combine(std::move(all)), s};
  }
  return out;
}

std::vector<ExpPoly> matrix_apply(const MatrixDiffOp& m, std::span<const ExpPoly> fields) {
  std::vector<ExpPoly> out;
  for (auto& r : matrix_apply_scaled(m, fields)) out.push_back(std::move(r.value));
  return out;
}

SymmetryCandidate::SymmetryCandidate(LinDiffOp q_, ExpPoly zeta_, int p_)
    : q(std::move(q_)), zeta(std::move(zeta_)), p(p_) {
  if (q.order() > 1) throw Error(ErrorKind::InvalidParams, "generator must be first order");
  if (p < 1) throw Error(ErrorKind::InvalidParams, "commutator order must be >= 1");
}

ExpPoly SymmetryCandidate::xi(int a) const { return q.coeff(unit_index(a)); }

ExpPoly SymmetryCandidate::eta() const { return q.coeff(kZeroIndex); }

double symmetry_residual(const LinDiffOp& l, const SymmetryCandidate& c) {
  return residual_vs_multiple(ad_power(l, c.q, c.p), l, c.zeta).max_coeff;
}

}  // namespace extsym
