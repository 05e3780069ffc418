#include "ihs/poisson.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "ihs/error.hpp"
#include "ihs/halton.hpp"

namespace ihs::poisson {

namespace {

constexpr int kJacobiSamples = 1000;
constexpr double kJacobiTol = 1e-10;

Matrix null_space(const Matrix& m, int dim) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

}  // namespace

PoissonManifold::PoissonManifold(std::vector<std::vector<PolynomialFunction>> structure,
                                 std::vector<std::string> variables)
    : dim_(static_cast<int>(structure.size())), structure_(std::move(structure)), variables_(std::move(variables)) {
  require(dim_ >= 1, "Poisson structure must be a nonempty square matrix");
  if (variables_.empty()) variables_ = poly::default_names(dim_);
  require(static_cast<int>(variables_.size()) == dim_, "number of variable names differs from the dimension");
  for (const auto& row : structure_) {
    require(static_cast<int>(row.size()) == dim_, "Poisson structure must be square");
    for (const auto& p : row) require(p.num_vars() == dim_, "structure entry has the wrong number of variables");
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      require((structure_[i][j] + structure_[j][i]).is_zero(),
              "Poisson structure is not antisymmetric at entry (" + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + ")");

  // Jacobi: sum_l Pi_il d_l Pi_jk + Pi_jl d_l Pi_ki + Pi_kl d_l Pi_ij = 0.
  std::vector<std::vector<std::vector<PolynomialFunction>>> d(
      dim_, std::vector<std::vector<PolynomialFunction>>(dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int l = 0; l < dim_; ++l) d[i][j].push_back(structure_[i][j].derivative(l));
  std::vector<double> pi(dim_ * dim_), dpi(dim_ * dim_ * dim_);
  for (int s = 1; s <= kJacobiSamples; ++s) {
    auto u = halton_point(s, dim_);
    for (auto& v : u) v = 2.0 * v - 1.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        pi[i * dim_ + j] = structure_[i][j](u);
        for (int l = 0; l < dim_; ++l) dpi[(i * dim_ + j) * dim_ + l] = d[i][j][l](u);
      }
    auto P = [&](int i, int j) { return pi[i * dim_ + j]; };
    auto D = [&](int i, int j, int l) { return dpi[(i * dim_ + j) * dim_ + l]; };
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int k = j + 1; k < dim_; ++k) {
          double r = 0.0;
          for (int l = 0; l < dim_; ++l) r += P(i, l) * D(j, k, l) + P(j, l) * D(k, i, l) + P(k, l) * D(i, j, l);
          jacobi_residual_ = std::max(jacobi_residual_, std::abs(r));
        }
  }
  require(jacobi_residual_ <= kJacobiTol,
          "Poisson structure violates the Jacobi identity (residual " + std::to_string(jacobi_residual_) + ")");
}

Matrix PoissonManifold::at(const Vector& x) const {
  require(x.size() == dim_, "point has the wrong dimension");
  Matrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = structure_[i][j](x.data());
  return m;
}

PoissonManifold canonical_manifold(int half_dim) {
  require(half_dim >= 1, "half dimension must be positive");
  const int d = 2 * half_dim;
  std::vector<std::vector<PolynomialFunction>> s(d, std::vector<PolynomialFunction>(d, PolynomialFunction(d)));
  for (int i = 0; i < half_dim; ++i) {
    s[i][half_dim + i] = PolynomialFunction::constant(d, 1);
    s[half_dim + i][i] = PolynomialFunction::constant(d, -1);
  }
  std::vector<std::string> names;
  for (int i = 1; i <= half_dim; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= half_dim; ++i) names.push_back("y" + std::to_string(i));
  return PoissonManifold(std::move(s), std::move(names));
}

PolynomialFunction bracket_fn(const PolynomialFunction& f, const PolynomialFunction& g, const PoissonManifold& m) {
  require(f.num_vars() == m.dim() && g.num_vars() == m.dim(), "function dimension differs from the manifold");
  PolynomialFunction acc(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    auto fi = f.derivative(i);
    if (fi.is_zero()) continue;
    for (int j = 0; j < m.dim(); ++j) {
      if (m.entry(i, j).is_zero()) continue;
      auto gj = g.derivative(j);
      if (gj.is_zero()) continue;
      acc = acc + fi * m.entry(i, j) * gj;
    }
  }
  return acc;
}

std::vector<PolynomialFunction> hamiltonian_vector_field(const PolynomialFunction& f, const PoissonManifold& m) {
  require(f.num_vars() == m.dim(), "function dimension differs from the manifold");
  std::vector<PolynomialFunction> grad;
  for (int j = 0; j < m.dim(); ++j) grad.push_back(f.derivative(j));
  std::vector<PolynomialFunction> x;
  for (int i = 0; i < m.dim(); ++i) {
    PolynomialFunction acc(m.dim());
    for (int j = 0; j < m.dim(); ++j)
      if (!m.entry(i, j).is_zero() && !grad[j].is_zero()) acc = acc + m.entry(i, j) * grad[j];
    x.push_back(acc);
  }
  return x;
}

IntegrableSystem::IntegrableSystem(PoissonManifold manifold, std::vector<PolynomialFunction> casimirs,
                                   std::vector<PolynomialFunction> hamiltonians, std::vector<double> leaf_values)
    : manifold_(std::move(manifold)),
      casimirs_(std::move(casimirs)),
      hamiltonians_(std::move(hamiltonians)),
      leaf_values_(std::move(leaf_values)) {
  const int d = manifold_.dim();
  require(!hamiltonians_.empty(), "system needs at least one Hamiltonian");
  require(leaf_values_.size() == casimirs_.size(), "one leaf value per Casimir is required");
  require(d - static_cast<int>(casimirs_.size()) == 2 * n(),
          "dimension minus number of Casimirs must equal twice the number of Hamiltonians");
  for (const auto& f : casimirs_) require(f.num_vars() == d, "Casimir has the wrong number of variables");
  for (const auto& f : hamiltonians_) require(f.num_vars() == d, "Hamiltonian has the wrong number of variables");
  for (double v : leaf_values_) require(std::isfinite(v), "leaf value must be finite");

  for (std::size_t j = 0; j < casimirs_.size(); ++j)
    for (const auto& comp : hamiltonian_vector_field(casimirs_[j], manifold_))
      require(comp.is_zero(), "function " + std::to_string(j + 1) + " is not a Casimir");
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      require(bracket_fn(hamiltonians_[i], hamiltonians_[j], manifold_).is_zero(),
              "Hamiltonians " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute");

  for (const auto& f : hamiltonians_) {
    auto field = hamiltonian_vector_field(f, manifold_);
    std::vector<std::vector<PolynomialFunction>> partials;
    for (const auto& comp : field) {
      std::vector<PolynomialFunction> row;
      for (int l = 0; l < d; ++l) row.push_back(comp.derivative(l));
      partials.push_back(std::move(row));
    }
    fields_.push_back(std::move(field));
    field_partials_.push_back(std::move(partials));
  }
}

Vector IntegrableSystem::moment(const Vector& p) const {
  Vector f(n());
  for (int i = 0; i < n(); ++i) f[i] = hamiltonians_[i](p.data());
  return f;
}

Vector IntegrableSystem::casimir_residual(const Vector& p) const {
  Vector r(static_cast<int>(casimirs_.size()));
  for (std::size_t j = 0; j < casimirs_.size(); ++j) r[j] = casimirs_[j](p.data()) - leaf_values_[j];
  return r;
}

Matrix IntegrableSystem::field_matrix(const Vector& p) const {
  Matrix x(dim(), n());
  for (int i = 0; i < n(); ++i)
    for (int r = 0; r < dim(); ++r) x(r, i) = fields_[i][r](p.data());
  return x;
}

std::vector<Matrix> IntegrableSystem::field_matrix_derivative(const Vector& p) const {
  std::vector<Matrix> out(dim(), Matrix(dim(), n()));
  for (int i = 0; i < n(); ++i)
    for (int r = 0; r < dim(); ++r)
      for (int l = 0; l < dim(); ++l) out[l](r, i) = field_partials_[i][r][l](p.data());
  return out;
}

Matrix IntegrableSystem::casimir_gradients(const Vector& p) const {
  Matrix g(dim(), static_cast<int>(casimirs_.size()));
  for (std::size_t j = 0; j < casimirs_.size(); ++j) g.col(j) = gradient(casimirs_[j], p);
  return g;
}

Vector IntegrableSystem::gradient(const PolynomialFunction& f, const Vector& p) const {
  Vector g(dim());
  for (int l = 0; l < dim(); ++l) g[l] = f.derivative(l)(p.data());
  return g;
}

Matrix IntegrableSystem::hessian(const PolynomialFunction& f, const Vector& p) const {
  Matrix h(dim(), dim());
  for (int a = 0; a < dim(); ++a) {
    auto fa = f.derivative(a);
    for (int b = a; b < dim(); ++b) h(a, b) = h(b, a) = fa.derivative(b)(p.data());
  }
  return h;
}

int numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double thresh = 1e-8 * std::max(s.size() ? s[0] : 0.0, 1.0);
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > thresh) ++r;
  return r;
}

namespace {

void require_on_leaf(const IntegrableSystem& sys, const Vector& p) {
  require(p.size() == sys.dim(), "point has the wrong dimension");
  Vector r = sys.casimir_residual(p);
  require(r.size() == 0 || r.cwiseAbs().maxCoeff() <= 1e-8, "point is not on the selected symplectic leaf");
}

}  // namespace

RankInfo rank_at(const IntegrableSystem& sys, const Vector& p) {
  require_on_leaf(sys, p);
  int r = numerical_rank(sys.field_matrix(p));
  return {r, sys.n() - r};
}

symplectic::CommutingFamily transversal_family(const IntegrableSystem& sys, const Vector& p) {
  require_on_leaf(sys, p);
  const int d = sys.dim();
  const int n = sys.n();
  const int leaf_dim = 2 * n;

  const Matrix Pi = sys.manifold().at(p);
  Eigen::JacobiSVD<Matrix> pis(Pi, Eigen::ComputeFullU);
  if (numerical_rank(Pi) != leaf_dim)
    fail(ErrorKind::Degenerate, "non-generic leaf point: Poisson structure has rank " +
                                    std::to_string(numerical_rank(Pi)) + ", expected " + std::to_string(leaf_dim));
  const Matrix Q = pis.matrixU().leftCols(leaf_dim);  // orthonormal basis of the leaf tangent space T
  const Matrix PiT = Q.transpose() * Pi * Q;
  const Matrix Omega = -PiT.inverse();  // leaf symplectic form: Omega(X_f, X_g) = {f, g}
  auto omega = [&](const Vector& u, const Vector& v) { return u.dot(Omega * v); };

  const Matrix X = sys.field_matrix(p);
  const int r = numerical_rank(X);
  const int k = n - r;
  if (k == 0) fail(ErrorKind::InvalidInput, "regular point: corank 0");

  Matrix G(d, n);
  for (int i = 0; i < n; ++i) G.col(i) = sys.gradient(sys.hamiltonians()[i], p);

  // K = ker dF restricted to T, in T coordinates; I = span of the X_i.
  const Matrix K = null_space(G.transpose() * Q, leaf_dim - r);
  Matrix I = Matrix::Zero(leaf_dim, 0);
  if (r > 0) {
    Eigen::JacobiSVD<Matrix> is(Q.transpose() * X, Eigen::ComputeThinU);
    I = is.matrixU().leftCols(r);
  }
  const Matrix R0 = K - I * (I.transpose() * K);
  Eigen::JacobiSVD<Matrix> rs(R0, Eigen::ComputeThinU);
  std::vector<Vector> pool;
  for (int c = 0; c < 2 * k; ++c) pool.push_back(rs.matrixU().col(c));

  // Symplectic Gram-Schmidt.
  Matrix B(leaf_dim, 2 * k);
  for (int i = 0; i < k; ++i) {
    Vector e = pool.front();
    std::size_t best = 1;
    for (std::size_t j = 2; j < pool.size(); ++j)
      if (std::abs(omega(e, pool[j])) > std::abs(omega(e, pool[best]))) best = j;
    const double w = omega(e, pool[best]);
    if (std::abs(w) < 1e-10) fail(ErrorKind::NearDegenerate, "transversal space is not symplectic");
    Vector f = pool[best] / w;
    pool.erase(pool.begin() + static_cast<long>(best));
    pool.erase(pool.begin());
    for (auto& u : pool) u = u - omega(u, f) * e + omega(u, e) * f;
    B.col(i) = e;
    B.col(k + i) = f;
  }
  const Matrix W = Q * B;  // ambient embedding of the symplectic basis

  // Combinations of the F_i whose fields vanish at p; their leaf Hessians
  // carry a Lagrange correction from the Casimir constraints.
  const Matrix C = null_space(X, k);
  const Matrix CG = sys.casimir_gradients(p);
  std::vector<Matrix> hess_f, hess_c;
  for (const auto& f : sys.hamiltonians()) hess_f.push_back(sys.hessian(f, p));
  for (const auto& c : sys.casimirs()) hess_c.push_back(sys.hessian(c, p));

  symplectic::SymplecticSpace space{k};
  symplectic::CommutingFamily fam{space, {}, 1e-9};
  for (int j = 0; j < k; ++j) {
    const Vector c = C.col(j);
    Vector grad = G * c;
    Matrix H = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) H += c[i] * hess_f[i];
    if (CG.cols() > 0) {
      Vector mu = CG.colPivHouseholderQr().solve(grad);
      for (int m = 0; m < CG.cols(); ++m) H -= mu[m] * hess_c[m];
    }
    Matrix A = 0.5 * W.transpose() * H * W;
    fam.forms.emplace_back(space, 0.5 * (A + A.transpose()));
  }
  return fam;
}

SingularPointReport classify_singular_point(const IntegrableSystem& sys, const Vector& p, double bracket_tolerance) {
  require_on_leaf(sys, p);
  SingularPointReport rep;
  rep.point = p;
  auto ri = rank_at(sys, p);
  rep.rank = ri.rank;
  rep.corank = ri.corank;
  {
    const Matrix Pi = sys.manifold().at(p);
    Eigen::JacobiSVD<Matrix> svd(Pi, Eigen::ComputeFullU);
    rep.leaf_basis = svd.matrixU().leftCols(numerical_rank(Pi));
  }
  if (rep.corank == 0) {
    rep.classification = PointClass::Regular;
    rep.note = "regular point";
    return rep;
  }
  rep.transversal = transversal_family(sys, p);
  rep.transversal->tolerance = bracket_tolerance;
  auto diag = symplectic::is_cartan(*rep.transversal);
  if (!diag.cartan) {
    rep.classification = PointClass::Degenerate;
    rep.note = diag.message;
    return rep;
  }
  rep.classification = PointClass::Nondegenerate;
  rep.type = symplectic::williamson_type(*rep.transversal);
  for (int i = 0; i < rep.type.k_e; ++i) rep.symmetry.push_back(symplectic::component_symmetry(symplectic::ComponentKind::Elliptic));
  for (int i = 0; i < rep.type.k_h; ++i) rep.symmetry.push_back(symplectic::component_symmetry(symplectic::ComponentKind::Hyperbolic));
  for (int i = 0; i < rep.type.k_f; ++i) rep.symmetry.push_back(symplectic::component_symmetry(symplectic::ComponentKind::Focus));
  rep.note = "nondegenerate";
  return rep;
}

bool Box::empty() const {
  if (lo.size() == 0 || lo.size() != hi.size()) return true;
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) return true;
  return false;
}

bool Box::contains(const Vector& p, double slack) const {
  if (p.size() != lo.size()) return false;
  for (int i = 0; i < p.size(); ++i)
    if (p[i] < lo[i] - slack || p[i] > hi[i] + slack) return false;
  return true;
}

Vector Box::at(const std::vector<double>& unit) const {
  Vector v(dim());
  for (int i = 0; i < dim(); ++i) v[i] = lo[i] + unit[i] * (hi[i] - lo[i]);
  return v;
}

Vector Box::clamp(const Vector& p) const { return p.cwiseMax(lo).cwiseMin(hi); }

Box Box::cube(int dim, double half_width) {
  return {Vector::Constant(dim, -half_width), Vector::Constant(dim, half_width)};
}

Box Box::around(const Vector& centre, double half_width) {
  return {centre.array() - half_width, centre.array() + half_width};
}

namespace {

struct NewtonResult {
  Vector point;
  double residual = 0.0;
  bool converged = false;
};

Vector fixed_point_residual(const IntegrableSystem& sys, const Vector& p) {
  Matrix X = sys.field_matrix(p);
  Vector c = sys.casimir_residual(p);
  Vector r(X.size() + c.size());
  r << Eigen::Map<const Vector>(X.data(), X.size()), c;
  return r;
}

NewtonResult newton_fixed_point(const IntegrableSystem& sys, Vector p) {
  const int d = sys.dim();
  NewtonResult out;
  for (int it = 0; it < 60; ++it) {
    Vector r = fixed_point_residual(sys, p);
    out.residual = r.cwiseAbs().maxCoeff();
    if (!std::isfinite(out.residual) || p.cwiseAbs().maxCoeff() > 1e6) break;
    if (out.residual <= 1e-13) break;
    auto dX = sys.field_matrix_derivative(p);
    Matrix CG = sys.casimir_gradients(p);
    Matrix Jac(r.size(), d);
    for (int l = 0; l < d; ++l) {
      Jac.block(0, l, dX[l].size(), 1) = Eigen::Map<const Vector>(dX[l].data(), dX[l].size());
      if (CG.cols()) Jac.block(dX[l].size(), l, CG.cols(), 1) = CG.row(l).transpose();
    }
    Vector step = Jac.completeOrthogonalDecomposition().solve(r);
    p -= step;
    if (step.norm() <= 1e-15 * std::max(1.0, p.norm())) {
      out.residual = fixed_point_residual(sys, p).cwiseAbs().maxCoeff();
      break;
    }
  }
  out.point = p;
  out.converged = std::isfinite(out.residual) && out.residual <= 1e-10;
  return out;
}

}  // namespace

std::vector<Vector> find_fixed_points(const IntegrableSystem& sys, const Box& region, int seed_count) {
  require(seed_count >= 0, "seed count must be nonnegative");
  if (region.empty() || seed_count == 0) return {};
  require(region.dim() == sys.dim(), "region dimension differs from the system");
  std::vector<Vector> roots;
  for (int s = 1; s <= seed_count; ++s) {
    auto res = newton_fixed_point(sys, region.at(halton_point(static_cast<std::size_t>(s), sys.dim())));
    if (res.converged && region.contains(res.point, 1e-9)) roots.push_back(res.point);
  }
  std::sort(roots.begin(), roots.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  std::vector<Vector> unique;
  for (const auto& r : roots) {
    bool dup = false;
    for (const auto& u : unique)
      if ((u - r).norm() <= 1e-6) { dup = true; break; }
    if (!dup) unique.push_back(r);
  }
  return unique;
}

}  // namespace ihs::poisson
