#include "extsym/detsolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "extsym/error.hpp"

namespace extsym {

namespace {

// All multi-indices of total degree <= d, by degree then lexicographically.
std::vector<MultiIndex> monomials_up_to(int d) {
  std::vector<MultiIndex> out;
  for (int total = 0; total <= d; ++total) {
    std::vector<MultiIndex> level;
    for (int i = 0; i <= total; ++i)
      for (int j = 0; i + j <= total; ++j)
        for (int k = 0; i + j + k <= total; ++k)
          level.push_back({i, j, k, total - i - j - k});
    std::sort(level.begin(), level.end(), std::greater<>());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

using CoeffKey = std::pair<MultiIndex, MultiIndex>;  // (monomial, derivative)

// Coefficient table of a polynomial-coefficient operator.
std::map<CoeffKey, Complex> coefficient_table(const LinDiffOp& op) {
  std::map<CoeffKey, Complex> table;
  for (const auto& t : op.terms()) {
    for (const auto& e : t.coeff.terms()) {
      if (e.kappa != kZeroCovector)
        throw Error(ErrorKind::UnsupportedCoefficient,
                    "operator has exponential coefficients");
      table[{e.alpha, t.deriv}] += e.coeff;
    }
  }
  return table;
}

// Stack real and imaginary parts of a family of coefficient tables into the
// columns of a real matrix, dropping rows that vanish in every column.
Eigen::MatrixXd stack_tables(const std::vector<std::map<CoeffKey, Complex>>& tables,
                             std::vector<RowLabel>* labels) {
  std::map<CoeffKey, int> keys;
  for (const auto& t : tables)
    for (const auto& [k, v] : t) keys.emplace(k, 0);
  std::vector<RowLabel> rows;
  std::vector<std::vector<double>> values;
  for (auto& [key, idx] : keys) {
    for (bool imag : {false, true}) {
      std::vector<double> row(tables.size(), 0.0);
      bool any = false;
      for (std::size_t j = 0; j < tables.size(); ++j) {
        auto it = tables[j].find(key);
        if (it == tables[j].end()) continue;
        row[j] = imag ? it->second.imag() : it->second.real();
        any = any || row[j] != 0.0;
      }
      if (!any) continue;
      rows.push_back({key.first, key.second, imag});
      values.push_back(std::move(row));
    }
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()),
                    static_cast<Eigen::Index>(tables.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < tables.size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i][j];
  if (labels) *labels = std::move(rows);
  return m;
}

Complex unit_of(const UnknownLabel& u) { return u.imaginary ? Complex(0.0, 1.0) : Complex(1.0); }

LinDiffOp unknown_operator(const UnknownLabel& u) {
  const ExpPoly mono = ExpPoly::monomial(u.monomial, unit_of(u));
  switch (u.kind) {
    case UnknownKind::Xi: return LinDiffOp::vector_field(u.component, mono);
    case UnknownKind::Eta:
    case UnknownKind::Zeta: return LinDiffOp::multiplication(mono);
  }
  return {};
}

std::vector<double> singular_values_of(const Eigen::MatrixXd& m, Eigen::MatrixXd* v) {
  if (m.rows() == 0) {
    if (v) *v = Eigen::MatrixXd::Identity(m.cols(), m.cols());
    return {};
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  if (v) *v = svd.matrixV();
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

}  // namespace

void AnsatzSpec::validate() const {
  if (degree < 0) throw Error(ErrorKind::InvalidParams, "ansatz degree must be >= 0");
  if (p < 1) throw Error(ErrorKind::InvalidParams, "commutator order must be >= 1");
  if (zeta_degree < 0) throw Error(ErrorKind::InvalidParams, "zeta degree must be >= 0");
}

std::string UnknownLabel::name() const {
  std::string base;
  switch (kind) {
    case UnknownKind::Xi: base = "xi" + std::to_string(component); break;
    case UnknownKind::Eta: base = "eta"; break;
    case UnknownKind::Zeta: base = "zeta"; break;
  }
  base += "[";
  for (int a = 0; a < kDim; ++a) base += std::to_string(monomial[a]);
  return base + (imaginary ? "]i" : "]");
}

DeterminingSystem build_determining_system(const LinDiffOp& l, const AnsatzSpec& spec) {
  spec.validate();
  if (!l.has_polynomial_coefficients())
    throw Error(ErrorKind::UnsupportedCoefficient,
                "determining systems need polynomial operator coefficients");
  DeterminingSystem sys;
  sys.l = l;
  sys.spec = spec;
  const auto monos = monomials_up_to(spec.degree);
  for (int a = 0; a < kDim; ++a)
    for (const auto& m : monos) sys.unknowns.push_back({UnknownKind::Xi, a, m});
  std::vector<bool> parts{false};
  if (spec.complex_scalars) parts.push_back(true);
  for (bool im : parts)
    for (const auto& m : monos) sys.unknowns.push_back({UnknownKind::Eta, -1, m, im});
  if (!spec.pin_zeta_zero)
    for (bool im : parts)
      for (const auto& m : monomials_up_to(spec.zeta_degree))
        sys.unknowns.push_back({UnknownKind::Zeta, -1, m, im});

  std::vector<std::map<CoeffKey, Complex>> columns;
  columns.reserve(sys.unknowns.size());
  for (const auto& u : sys.unknowns) {
    const LinDiffOp op = u.kind == UnknownKind::Zeta
                             ? scale(left_multiply(ExpPoly::monomial(u.monomial, unit_of(u)), l), -1.0)
                             : ad_power(l, unknown_operator(u), spec.p);
    columns.push_back(coefficient_table(op));
  }
  sys.matrix = stack_tables(columns, &sys.rows);
  return sys;
}

SymmetryCandidate decode(const DeterminingSystem& sys, const Eigen::VectorXd& u) {
  if (u.size() != static_cast<Eigen::Index>(sys.unknowns.size()))
    throw Error(ErrorKind::ShapeMismatch, "vector length does not match unknown count");
  std::vector<OpTerm> q_terms;
  std::vector<ExpTerm> zeta_terms;
  for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
    const double c = u(static_cast<Eigen::Index>(j));
    if (c == 0.0) continue;
    const auto& lab = sys.unknowns[j];
    switch (lab.kind) {
      case UnknownKind::Xi:
        q_terms.push_back({ExpPoly::monomial(lab.monomial, c), unit_index(lab.component)});
        break;
      case UnknownKind::Eta:
        q_terms.push_back({ExpPoly::monomial(lab.monomial, c * unit_of(lab)), kZeroIndex});
        break;
      case UnknownKind::Zeta:
        zeta_terms.push_back({c * unit_of(lab), lab.monomial, kZeroCovector});
        break;
    }
  }
  return {LinDiffOp::from_terms(std::move(q_terms)), combine(std::move(zeta_terms)),
          sys.spec.p};
}

Eigen::VectorXd encode(const DeterminingSystem& sys, const SymmetryCandidate& c) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.unknowns.size()));
  auto slot = [&](UnknownKind kind, int component, const MultiIndex& m, bool imaginary) {
    auto it = std::find_if(sys.unknowns.begin(), sys.unknowns.end(), [&](const auto& lab) {
      return lab.kind == kind && lab.component == component && lab.monomial == m &&
             lab.imaginary == imaginary;
    });
    if (it == sys.unknowns.end())
      throw Error(ErrorKind::InvalidParams, "coefficient outside the polynomial ansatz");
    return it - sys.unknowns.begin();
  };
  auto place = [&](UnknownKind kind, int component, const ExpPoly& f) {
    for (const auto& t : f.terms()) {
      if (t.kappa != kZeroCovector)
        throw Error(ErrorKind::InvalidParams, "coefficient outside the polynomial ansatz");
      if (t.coeff.real() != 0.0) u(slot(kind, component, t.alpha, false)) += t.coeff.real();
      if (t.coeff.imag() != 0.0) u(slot(kind, component, t.alpha, true)) += t.coeff.imag();
    }
  };
  for (const auto& t : c.q.terms()) {
    const int order = total_degree(t.deriv);
    if (order == 0) {
      place(UnknownKind::Eta, -1, t.coeff);
    } else {
      const int a = static_cast<int>(std::find(t.deriv.begin(), t.deriv.end(), 1) -
                                     t.deriv.begin());
      place(UnknownKind::Xi, a, t.coeff);
    }
  }
  if (!c.zeta.empty()) {
    if (sys.spec.pin_zeta_zero)
      throw Error(ErrorKind::InvalidParams, "zeta is pinned to zero in this system");
    place(UnknownKind::Zeta, -1, c.zeta);
  }
  return u;
}

int null_dimension(const std::vector<double>& sv, std::size_t unknowns, double tol) {
  const double top = sv.empty() ? 0.0 : sv.front();
  std::size_t rank = 0;
  for (double s : sv)
    if (top > 0.0 && s > tol * top) ++rank;
  return static_cast<int>(unknowns - rank);
}

GeneratorBasis solve_null_space(const DeterminingSystem& sys, double tol) {
  if (!sys.matrix.allFinite()) throw Error(ErrorKind::NonFinite, "determining system");
  Eigen::MatrixXd v;
  GeneratorBasis basis;
  basis.singular_values = singular_values_of(sys.matrix, &v);
  const auto& sv = basis.singular_values;
  const double top = sv.empty() ? 0.0 : sv.front();
  for (double s : sv) {
    const double r = top > 0.0 ? s / top : 0.0;
    if (r > tol / 10.0 && r < tol * 10.0)
      throw Error(ErrorKind::RankDeficiencyAmbiguous,
                  "singular value ratio " + std::to_string(r) + " lies near the cutoff " +
                      std::to_string(tol));
  }
  const int dim = null_dimension(sv, sys.unknowns.size(), tol);
  basis.null_vectors = v.rightCols(dim);
  for (Eigen::Index j = 0; j < basis.null_vectors.cols(); ++j) {
    SymmetryCandidate c = decode(sys, basis.null_vectors.col(j));
    basis.verification_residuals.push_back(symmetry_residual(sys.l, c));
    basis.generators.push_back(std::move(c));
  }
  return basis;
}

double projection_residual(const Eigen::MatrixXd& q, const Eigen::VectorXd& v) {
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.transpose() * v)).norm();
}

GeneratorBasis structure_constants(std::vector<SymmetryCandidate> gens, double tol) {
  const std::size_t n = gens.size();
  std::vector<std::map<CoeffKey, Complex>> tables;
  for (const auto& g : gens) tables.push_back(coefficient_table(g.q));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
      tables.push_back(coefficient_table(commutator(gens[i].q, gens[j].q)));
    }
  const Eigen::MatrixXd all = stack_tables(tables, nullptr);
  const Eigen::MatrixXd b = all.leftCols(static_cast<Eigen::Index>(n));

  GeneratorBasis out;
  out.structure = StructureTensor(n);
  if (n > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s.size() < static_cast<Eigen::Index>(n) || s(s.size() - 1) <= 1e-10 * s(0))
      throw Error(ErrorKind::InvalidParams, "generators are linearly dependent");
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const Eigen::VectorXd target = all.col(static_cast<Eigen::Index>(n + p));
      const Eigen::VectorXd c = svd.solve(target);
      out.closure_residual = std::max(out.closure_residual, (b * c - target).norm());
      const auto [i, j] = pairs[p];
      for (std::size_t k = 0; k < n; ++k) {
        out.structure(i, j, k) = c(static_cast<Eigen::Index>(k));
        out.structure(j, i, k) = -c(static_cast<Eigen::Index>(k));
      }
    }
  }
  if (out.closure_residual > tol)
    throw Error(ErrorKind::NotClosed, "commutators leave the span, residual " +
                                          std::to_string(out.closure_residual));
  out.generators = std::move(gens);
  return out;
}

Point AffineMap::operator()(const Point& x) const {
  const Eigen::Vector4d y = a * Eigen::Vector4d(x[0], x[1], x[2], x[3]) + b;
  return {y(0), y(1), y(2), y(3)};
}

AffineMap AffineMap::compose(const AffineMap& other) const {
  return {a * other.a, a * other.b + b};
}

AffineMap AffineMap::inverse() const {
  if (std::abs(a.determinant()) <= 1e-12)
    throw Error(ErrorKind::SingularMap, "affine map is not invertible");
  const Eigen::Matrix4d inv = a.inverse();
  return {inv, -inv * b};
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd x = m / std::ldexp(1.0, squarings);
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd term = result;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

AffineMap flow(const SymmetryCandidate& q, double theta) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(kDim + 1, kDim + 1);
  for (int a = 0; a < kDim; ++a) {
    const ExpPoly xi = q.xi(a);
    for (const auto& t : xi.terms()) {
      if (t.kappa != kZeroCovector || total_degree(t.alpha) > 1)
        throw Error(ErrorKind::UnsupportedDegree, "flows need affine vector fields");
      if (t.coeff.imag() != 0.0)
        throw Error(ErrorKind::UnsupportedCoefficient, "flows need real vector fields");
      if (total_degree(t.alpha) == 0) {
        g(a, kDim) += t.coeff.real();
      } else {
        const int j = static_cast<int>(std::find(t.alpha.begin(), t.alpha.end(), 1) -
                                       t.alpha.begin());
        g(a, j) += t.coeff.real();
      }
    }
  }
  const Eigen::MatrixXd e = expm(theta * g);
  AffineMap map;
  map.a = e.topLeftCorner(kDim, kDim);
  map.b = e.topRightCorner(kDim, 1);
  return map;
}

LinDiffOp pullback(const LinDiffOp& primed, const AffineMap& map) {
  const AffineMap inv = map.inverse();
  // d'_k = sum_a (A^{-1})_{ak} d_a
  std::array<LinDiffOp, kDim> dprime;
  for (int k = 0; k < kDim; ++k) {
    std::vector<OpTerm> terms;
    for (int a = 0; a < kDim; ++a)
      if (inv.a(a, k) != 0.0)
        terms.push_back({ExpPoly::constant(inv.a(a, k)), unit_index(a)});
    dprime[k] = LinDiffOp::from_terms(std::move(terms));
  }
  std::array<std::array<double, kDim>, kDim> a{};
  Point b{};
  for (int i = 0; i < kDim; ++i) {
    b[i] = map.b(i);
    for (int j = 0; j < kDim; ++j) a[i][j] = map.a(i, j);
  }
  LinDiffOp result;
  for (const auto& t : primed.terms()) {
    LinDiffOp d = LinDiffOp::identity();
    for (int k = 0; k < kDim; ++k)
      for (int r = 0; r < t.deriv[k]; ++r) d = compose(d, dprime[k]);
    result = add(result, left_multiply(t.coeff.compose_affine(a, b), d));
  }
  return result;
}

MatrixDiffOp pullback(const MatrixDiffOp& primed, const AffineMap& map) {
  MatrixDiffOp out(primed.rows(), primed.cols());
  for (std::size_t r = 0; r < primed.rows(); ++r)
    for (std::size_t c = 0; c < primed.cols(); ++c)
      if (!primed.at(r, c).empty()) out.at(r, c) = pullback(primed.at(r, c), map);
  return out;
}

}  // namespace extsym
