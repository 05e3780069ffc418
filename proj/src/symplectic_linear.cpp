#include "ihs/symplectic_linear.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ihs/error.hpp"
#include "ihs/halton.hpp"

namespace ihs::symplectic {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kAxisTol = 1e-9;        // relative to ||M||_F
constexpr double kAmbiguityBand = 100.0;  // parts in [tol, band*tol) are ambiguous
constexpr double kGapTol = 1e-7;         // distinct eigenvalues, relative to ||M||_F
constexpr int kRegularTrials = 16;

using Complex = std::complex<double>;

double inf_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix raw_bracket(const Matrix& a1, const Matrix& a2, const Matrix& J) { return 2.0 * a1 * J * a2; }

Matrix combination(const std::vector<HamiltonianMatrix>& ms, const std::vector<double>& c) {
  Matrix m = Matrix::Zero(ms.front().mat.rows(), ms.front().mat.cols());
  for (std::size_t i = 0; i < ms.size(); ++i) m += c[i] * ms[i].mat;
  return m;
}

double min_gap(const Eigen::VectorXcd& ev) {
  double gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < ev.size(); ++a)
    for (int b = a + 1; b < ev.size(); ++b) gap = std::min(gap, std::abs(ev[a] - ev[b]));
  return gap;
}

struct RegularSearch {
  bool found = false;
  std::vector<double> coefficients;
  Matrix element;
};

RegularSearch find_regular_element(const CommutingFamily& fam) {
  std::vector<HamiltonianMatrix> ms;
  for (const auto& q : fam.forms) ms.push_back(hamiltonian_matrix(q));
  const std::size_t m = fam.forms.size();
  for (int t = 1; t <= kRegularTrials; ++t) {
    auto h = halton_point(static_cast<std::size_t>(t), m);
    std::vector<double> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = 2.0 * h[i] - 1.0;
    Matrix M = combination(ms, c);
    const double scale = M.norm();
    if (scale == 0.0) continue;
    Eigen::EigenSolver<Matrix> es(M, false);
    if (es.info() != Eigen::Success) continue;
    if (min_gap(es.eigenvalues()) >= kGapTol * scale) return {true, c, M};
  }
  return {};
}

enum class Axis { Imaginary, Real, Complex };

Axis classify_eigenvalue(Complex lambda, double scale) {
  const double tol = kAxisTol * scale;
  const double re = std::abs(lambda.real());
  const double im = std::abs(lambda.imag());
  auto ambiguous = [&](double part) { return part >= tol && part < kAmbiguityBand * tol; };
  if (ambiguous(re) || ambiguous(im) || (re < tol && im < tol)) {
    std::ostringstream os;
    os << "eigenvalue " << lambda.real() << (lambda.imag() < 0 ? " - " : " + ") << im
       << "i is within tolerance of an axis (scale " << scale << ")";
    fail(ErrorKind::Ambiguous, os.str());
  }
  if (re < tol) return Axis::Imaginary;
  if (im < tol) return Axis::Real;
  return Axis::Complex;
}

double omega(const Matrix& J, const Vector& u, const Vector& v) { return u.dot(J * v); }

Vector real_direction(const Eigen::VectorXcd& w) {
  // Remove the arbitrary complex phase of an eigenvector of a real eigenvalue.
  Eigen::Index k = 0;
  w.cwiseAbs().maxCoeff(&k);
  Complex phase = w[k] / std::abs(w[k]);
  Eigen::VectorXcd r = w / phase;
  Vector v = r.real();
  return v / v.norm();
}

// Re-orthogonalise the pairs (column i, column k+i) in order. The columns are
// already symplectic up to round-off; this only removes the cross-block drift
// left by independently computed eigenvectors.
void symplectic_gram_schmidt(Matrix& S, const Matrix& J) {
  const int k = static_cast<int>(S.cols()) / 2;
  for (int i = 0; i < k; ++i) {
    Vector x = S.col(i), y = S.col(k + i);
    for (int p = 0; p < i; ++p) {
      const Vector xp = S.col(p), yp = S.col(k + p);
      x -= omega(J, x, yp) * xp - omega(J, x, xp) * yp;
      y -= omega(J, y, yp) * xp - omega(J, y, xp) * yp;
    }
    y /= omega(J, x, y);
    S.col(i) = x;
    S.col(k + i) = y;
  }
}

}  // namespace

Matrix SymplecticSpace::J() const {
  const int k = half_dim;
  Matrix j = Matrix::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    j(i, k + i) = 1.0;
    j(k + i, i) = -1.0;
  }
  return j;
}

QuadraticForm::QuadraticForm(SymplecticSpace space, Matrix coeff) : space_(space), coeff_(std::move(coeff)) {
  require(space_.half_dim >= 1, "symplectic space must have positive half-dimension");
  require(coeff_.rows() == space_.dim() && coeff_.cols() == space_.dim(),
          "quadratic form matrix has the wrong size");
  const double asym = inf_norm(coeff_ - coeff_.transpose());
  require(asym <= kSymmetryTol * std::max(1.0, inf_norm(coeff_)), "quadratic form matrix is not symmetric");
}

QuadraticForm QuadraticForm::zero(SymplecticSpace space) {
  return QuadraticForm(space, Matrix::Zero(space.dim(), space.dim()));
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
  require(space_ == o.space_, "dimension mismatch");
  return QuadraticForm(space_, coeff_ + o.coeff_);
}

QuadraticForm QuadraticForm::operator-(const QuadraticForm& o) const {
  require(space_ == o.space_, "dimension mismatch");
  return QuadraticForm(space_, coeff_ - o.coeff_);
}

QuadraticForm QuadraticForm::operator*(double s) const { return QuadraticForm(space_, coeff_ * s); }

namespace {
QuadraticForm monomial(SymplecticSpace s, int a, int b) {
  require(a >= 0 && a < s.dim() && b >= 0 && b < s.dim(), "monomial index out of range");
  Matrix m = Matrix::Zero(s.dim(), s.dim());
  if (a == b) {
    m(a, a) = 1.0;
  } else {
    m(a, b) = 0.5;
    m(b, a) = 0.5;
  }
  return QuadraticForm(s, m);
}
}  // namespace

QuadraticForm xx(SymplecticSpace s, int i, int j) { return monomial(s, i, j); }
QuadraticForm xy(SymplecticSpace s, int i, int j) { return monomial(s, i, s.half_dim + j); }
QuadraticForm yy(SymplecticSpace s, int i, int j) { return monomial(s, s.half_dim + i, s.half_dim + j); }

double CommutingFamily::max_bracket() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j)
      worst = std::max(worst, inf_norm(poisson_bracket(forms[i], forms[j]).coeff()));
  return worst;
}

std::string WilliamsonType::str() const {
  std::ostringstream os;
  os << "(" << k_e << "," << k_h << "," << k_f << ")";
  return os.str();
}

const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Elliptic: return "elliptic";
    case ComponentKind::Hyperbolic: return "hyperbolic";
    case ComponentKind::Focus: return "focus";
  }
  return "?";
}

QuadraticForm poisson_bracket(const QuadraticForm& q1, const QuadraticForm& q2) {
  require(q1.space() == q2.space(), "dimension mismatch in Poisson bracket");
  const Matrix J = q1.space().J();
  // D(1,2) = -D(2,1) bitwise, which makes the bracket exactly antisymmetric.
  Matrix d = raw_bracket(q1.coeff(), q2.coeff(), J) - raw_bracket(q2.coeff(), q1.coeff(), J);
  Matrix a = 0.5 * (d + d.transpose());
  return QuadraticForm(q1.space(), a);
}

HamiltonianMatrix hamiltonian_matrix(const QuadraticForm& q) {
  return {q.space(), 2.0 * q.space().J() * q.coeff()};
}

QuadraticForm form_of(const HamiltonianMatrix& m) {
  // M = 2 J A  =>  A = -J M / 2
  Matrix a = -0.5 * m.space.J() * m.mat;
  return QuadraticForm(m.space, 0.5 * (a + a.transpose()));
}

CartanDiagnostics is_cartan(const CommutingFamily& fam) {
  require(!fam.forms.empty(), "empty family");
  for (const auto& q : fam.forms) require(q.space() == fam.space, "family forms live on different spaces");

  CartanDiagnostics d;
  const int k = fam.space.half_dim;

  d.max_bracket = fam.max_bracket();
  // The tolerance is relative to the size of the forms: round-off in a bracket
  // of forms of norm s is of order eps * s^2.
  double scale = 0.0;
  for (const auto& q : fam.forms) scale = std::max(scale, q.coeff().norm());
  d.commuting = d.max_bracket <= fam.tolerance * std::max(1.0, scale * scale);

  const int n = fam.space.dim();
  Matrix stack(static_cast<int>(fam.forms.size()), n * (n + 1) / 2);
  for (int r = 0; r < stack.rows(); ++r) {
    int c = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) stack(r, c++) = fam.forms[r].coeff()(i, j);
  }
  Eigen::JacobiSVD<Matrix> svd(stack);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv[0] : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-9 * top && top > 0.0) ++d.span_dimension;
  d.full_span = d.span_dimension == k;

  auto reg = find_regular_element(fam);
  d.regular_element = reg.found;
  if (reg.found) d.regular_coefficients = reg.coefficients;

  d.cartan = d.commuting && d.full_span && d.regular_element;
  std::ostringstream msg;
  if (d.cartan) {
    msg << "Cartan subalgebra";
  } else {
    if (!d.commuting) msg << "(a) brackets do not vanish (max " << d.max_bracket << "); ";
    if (!d.full_span) msg << "(b) span dimension " << d.span_dimension << " != " << k << "; ";
    if (!d.regular_element) msg << "(c) no regular element among " << kRegularTrials << " trials";
  }
  d.message = msg.str();
  return d;
}

namespace {

struct Spectrum {
  Matrix element;
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
  double scale = 0.0;
};

Spectrum regular_spectrum(const CommutingFamily& fam) {
  auto diag = is_cartan(fam);
  if (!diag.cartan) fail(ErrorKind::Degenerate, "family is not a Cartan subalgebra: " + diag.message);
  std::vector<HamiltonianMatrix> ms;
  for (const auto& q : fam.forms) ms.push_back(hamiltonian_matrix(q));
  Spectrum s;
  s.element = combination(ms, diag.regular_coefficients);
  s.scale = s.element.norm();
  Eigen::EigenSolver<Matrix> es(s.element, true);
  if (es.info() != Eigen::Success) fail(ErrorKind::NearDegenerate, "eigen decomposition failed");
  s.values = es.eigenvalues();
  s.vectors = es.eigenvectors();
  if (min_gap(s.values) < kGapTol * s.scale) fail(ErrorKind::NearDegenerate, "clustered eigenvalues");
  return s;
}

}  // namespace

WilliamsonType williamson_type(const CommutingFamily& fam) {
  Spectrum s = regular_spectrum(fam);
  int imag = 0, real = 0, cplx = 0;
  for (int i = 0; i < s.values.size(); ++i) {
    switch (classify_eigenvalue(s.values[i], s.scale)) {
      case Axis::Imaginary: ++imag; break;
      case Axis::Real: ++real; break;
      case Axis::Complex: ++cplx; break;
    }
  }
  if (imag % 2 || real % 2 || cplx % 4)
    fail(ErrorKind::Ambiguous, "eigenvalues do not group into Hamiltonian pairs/quadruples");
  WilliamsonType t{imag / 2, real / 2, cplx / 4};
  if (t.corank() != fam.space.half_dim) fail(ErrorKind::Ambiguous, "count identity violated");
  return t;
}

NormalizingTransform normalizing_transform(const CommutingFamily& fam) {
  Spectrum s = regular_spectrum(fam);
  const int k = fam.space.half_dim;
  const Matrix J = fam.space.J();
  const double tol = kAxisTol * s.scale;

  struct Block {
    ComponentKind kind;
    double key;
    std::vector<Vector> xs, ys;
  };
  std::vector<Block> blocks;
  std::vector<bool> used(s.values.size(), false);

  auto partner = [&](Complex target) {
    int best = -1;
    double dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j < s.values.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(s.values[j] - target);
      if (d < dist) { dist = d; best = j; }
    }
    if (best < 0 || dist > 1e-6 * s.scale) fail(ErrorKind::NearDegenerate, "unpaired eigenvalue");
    return best;
  };

  for (int i = 0; i < s.values.size(); ++i) {
    if (used[i]) continue;
    const Complex lam = s.values[i];
    const Axis axis = classify_eigenvalue(lam, s.scale);
    // Pick one representative per pair/quadruple: positive imaginary part for
    // elliptic, positive real part for hyperbolic, both positive for focus.
    if (axis == Axis::Imaginary && lam.imag() < 0) continue;
    if (axis == Axis::Real && lam.real() < 0) continue;
    if (axis == Axis::Complex && (lam.real() < 0 || lam.imag() < 0)) continue;

    Eigen::VectorXcd w = s.vectors.col(i);
    w /= w.norm();
    Block b;
    if (axis == Axis::Imaginary) {
      used[i] = true;
      used[partner(std::conj(lam))] = true;
      Vector u = w.real(), v = w.imag();
      double om = omega(J, u, v);
      if (std::abs(om) < tol) fail(ErrorKind::NearDegenerate, "degenerate elliptic plane");
      double sc = 1.0 / std::sqrt(std::abs(om));
      b = {ComponentKind::Elliptic, lam.imag(), {sc * u}, {(om > 0 ? sc : -sc) * v}};
    } else if (axis == Axis::Real) {
      used[i] = true;
      int j = partner(-lam);
      used[j] = true;
      Vector up = real_direction(w);
      Vector um = real_direction(s.vectors.col(j));
      double om = omega(J, up, um);
      if (std::abs(om) < tol) fail(ErrorKind::NearDegenerate, "degenerate hyperbolic plane");
      double sc = 1.0 / std::sqrt(std::abs(om));
      b = {ComponentKind::Hyperbolic, lam.real(), {sc * up}, {(om > 0 ? sc : -sc) * um}};
    } else {
      used[i] = true;
      used[partner(std::conj(lam))] = true;
      int j = partner(Complex(-lam.real(), lam.imag()));
      used[j] = true;
      used[partner(Complex(-lam.real(), -lam.imag()))] = true;
      Eigen::VectorXcd wp = s.vectors.col(j);
      wp /= wp.norm();
      Vector x1 = w.real(), x2 = -w.imag();
      Vector c1 = wp.real(), c2 = -wp.imag();
      Eigen::Matrix2d G;
      G << omega(J, x1, c1), omega(J, x1, c2), omega(J, x2, c1), omega(J, x2, c2);
      if (std::abs(G.determinant()) < tol * tol) fail(ErrorKind::NearDegenerate, "degenerate focus block");
      Eigen::Matrix2d C = G.inverse();
      Vector y1 = C(0, 0) * c1 + C(1, 0) * c2;
      Vector y2 = C(0, 1) * c1 + C(1, 1) * c2;
      b = {ComponentKind::Focus, std::abs(lam), {x1, x2}, {y1, y2}};
    }
    blocks.push_back(std::move(b));
  }

  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.key < b.key;
  });

  NormalizingTransform out;
  out.S = Matrix::Zero(2 * k, 2 * k);
  int slot = 0;
  // Basis of normal monomials, in the block order.
  std::vector<Matrix> basis;
  for (const auto& b : blocks) {
    out.components.push_back(b.kind);
    for (std::size_t t = 0; t < b.xs.size(); ++t) {
      out.S.col(slot + static_cast<int>(t)) = b.xs[t];
      out.S.col(k + slot + static_cast<int>(t)) = b.ys[t];
    }
    SymplecticSpace sp{k};
    std::ostringstream name;
    if (b.kind == ComponentKind::Elliptic) {
      basis.push_back((xx(sp, slot, slot) + yy(sp, slot, slot)).coeff());
      name << "x" << slot + 1 << "^2+y" << slot + 1 << "^2";
      out.monomials.push_back(name.str());
    } else if (b.kind == ComponentKind::Hyperbolic) {
      basis.push_back(xy(sp, slot, slot).coeff());
      name << "x" << slot + 1 << "y" << slot + 1;
      out.monomials.push_back(name.str());
    } else {
      const int i = slot, j = slot + 1;
      basis.push_back((xy(sp, i, j) - xy(sp, j, i)).coeff());
      basis.push_back((xy(sp, i, i) + xy(sp, j, j)).coeff());
      std::ostringstream n1, n2;
      n1 << "x" << i + 1 << "y" << j + 1 << "-x" << j + 1 << "y" << i + 1;
      n2 << "x" << i + 1 << "y" << i + 1 << "+x" << j + 1 << "y" << j + 1;
      out.monomials.push_back(n1.str());
      out.monomials.push_back(n2.str());
    }
    slot += static_cast<int>(b.xs.size());
  }

  symplectic_gram_schmidt(out.S, J);

  const int nb = static_cast<int>(basis.size());
  const int nn = 4 * k * k;
  Matrix B(nn, nb);
  for (int c = 0; c < nb; ++c) B.col(c) = Eigen::Map<const Vector>(basis[c].data(), nn);
  auto qr = B.colPivHouseholderQr();
  for (const auto& q : fam.forms) {
    Matrix a = out.S.transpose() * q.coeff() * out.S;
    Vector target = Eigen::Map<const Vector>(a.data(), nn);
    Vector coef = qr.solve(target);
    Vector fit = B * coef;
    double rel = (target - fit).cwiseAbs().maxCoeff() / std::max(1.0, target.cwiseAbs().maxCoeff());
    out.residual = std::max(out.residual, rel);
    out.coefficients.emplace_back(coef.data(), coef.data() + coef.size());
  }
  if (out.residual > 1e-6)
    fail(ErrorKind::NearDegenerate, "pulled-back family is not in normal form (residual " +
                                        std::to_string(out.residual) + ")");
  return out;
}

ComponentSymmetry component_symmetry(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Elliptic: return {kind, "circle"};
    case ComponentKind::Hyperbolic: return {kind, "Z2 × R"};
    case ComponentKind::Focus: return {kind, "S1 × R"};
  }
  return {kind, ""};
}

std::map<int, long long> local_stratification(const WilliamsonType& t, int regular_rank) {
  std::map<int, long long> census{{regular_rank, 1}};
  auto multiply = [&](const std::map<int, long long>& factor) {
    std::map<int, long long> next;
    for (auto [d1, c1] : census)
      for (auto [d2, c2] : factor) next[d1 + d2] += c1 * c2;
    census = std::move(next);
  };
  const std::map<int, long long> cross{{0, 1}, {1, 4}};
  const std::map<int, long long> cross2d{{0, 1}, {2, 2}};
  for (int i = 0; i < t.k_h; ++i) multiply(cross);
  for (int i = 0; i < t.k_f; ++i) multiply(cross2d);
  return census;
}

CommutingFamily williamson_normal_form(const WilliamsonType& t) {
  require(t.k_e >= 0 && t.k_h >= 0 && t.k_f >= 0 && t.corank() >= 1, "invalid Williamson type");
  SymplecticSpace sp{t.corank()};
  CommutingFamily fam{sp, {}, 1e-9};
  int slot = 0;
  for (int i = 0; i < t.k_e; ++i, ++slot) fam.forms.push_back(xx(sp, slot, slot) + yy(sp, slot, slot));
  for (int i = 0; i < t.k_h; ++i, ++slot) fam.forms.push_back(xy(sp, slot, slot));
  for (int i = 0; i < t.k_f; ++i, slot += 2) {
    fam.forms.push_back(xy(sp, slot, slot + 1) - xy(sp, slot + 1, slot));
    fam.forms.push_back(xy(sp, slot, slot) + xy(sp, slot + 1, slot + 1));
  }
  return fam;
}

QuadraticForm pullback(const QuadraticForm& q, const Matrix& S) {
  Matrix a = S.transpose() * q.coeff() * S;
  return QuadraticForm(q.space(), 0.5 * (a + a.transpose()));
}

CommutingFamily pullback(const CommutingFamily& fam, const Matrix& S) {
  CommutingFamily out{fam.space, {}, fam.tolerance};
  for (const auto& q : fam.forms) out.forms.push_back(pullback(q, S));
  return out;
}

double symplectic_defect(const Matrix& S) {
  const int k = static_cast<int>(S.rows()) / 2;
  Matrix J = SymplecticSpace{k}.J();
  return inf_norm(S.transpose() * J * S - J);
}

}  // namespace ihs::symplectic
