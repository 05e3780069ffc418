#include "ihs/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

#include "ihs/error.hpp"
#include "ihs/halton.hpp"

namespace ihs::bifurcation {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

struct SigmaMin {
  double value = 0.0;
  double top = 0.0;
  Vector gradient;
};

SigmaMin smallest_singular_value(const IntegrableSystem& sys, const Vector& p) {
  const Matrix X = sys.field_matrix(p);
  Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int n = sys.n();
  SigmaMin s;
  s.value = svd.singularValues()[n - 1];
  s.top = svd.singularValues()[0];
  const Vector u = svd.matrixU().col(n - 1);
  const Vector v = svd.matrixV().col(n - 1);
  const auto dX = sys.field_matrix_derivative(p);
  s.gradient.resize(sys.dim());
  for (int l = 0; l < sys.dim(); ++l) s.gradient[l] = u.dot(dX[l] * v);
  return s;
}

}  // namespace

bool descend_to_singular_set(const IntegrableSystem& sys, const Box& region, Vector& p) {
  const int m = static_cast<int>(sys.casimirs().size());
  for (int it = 0; it < 60; ++it) {
    SigmaMin s = smallest_singular_value(sys, p);
    Vector c = sys.casimir_residual(p);
    const double cres = m ? c.cwiseAbs().maxCoeff() : 0.0;
    if (s.value <= 1e-12 * std::max(1.0, s.top) && cres <= 1e-11) return true;
    if (!std::isfinite(s.value)) return false;
    Vector r(1 + m);
    r << s.value, c;
    Matrix J(1 + m, sys.dim());
    J.row(0) = s.gradient.transpose();
    if (m) J.bottomRows(m) = sys.casimir_gradients(p).transpose();
    Vector step = J.completeOrthogonalDecomposition().solve(r);
    Vector next = region.clamp(p - step);
    if ((next - p).norm() <= 1e-16 * std::max(1.0, p.norm())) return false;
    p = next;
  }
  return false;
}

BifurcationCloud bifurcation_scan(const IntegrableSystem& sys, const Box& phase_region, int resolution) {
  require(resolution >= 2, "resolution must be at least 2");
  require(!phase_region.empty() && phase_region.dim() == sys.dim(), "phase region must be a nonempty box of the system's dimension");
  const int d = sys.dim();
  double cells_f = std::pow(static_cast<double>(resolution), d);
  require(cells_f <= 2e6, "scan grid too large (resolution^dim > 2e6)");
  const long long cells = static_cast<long long>(std::llround(cells_f));

  BifurcationCloud cloud;
  cloud.resolution = resolution;
  cloud.region = phase_region;
  for (long long cell = 0; cell < cells; ++cell) {
    std::vector<double> unit(d);
    long long rest = cell;
    for (int a = 0; a < d; ++a) {
      unit[a] = (static_cast<double>(rest % resolution) + 0.5) / resolution;
      rest /= resolution;
    }
    Vector p = phase_region.at(unit);
    if (!descend_to_singular_set(sys, phase_region, p)) continue;
    if (poisson::numerical_rank(sys.field_matrix(p)) >= sys.n()) continue;
    cloud.samples.push_back({sys.moment(p), p, cell});
  }
  std::stable_sort(cloud.samples.begin(), cloud.samples.end(), [](const Sample& a, const Sample& b) {
    if (lex_less(a.value, b.value)) return true;
    if (lex_less(b.value, a.value)) return false;
    return a.cell < b.cell;
  });
  return cloud;
}

std::string cloud_csv(const BifurcationCloud& cloud) {
  std::ostringstream os;
  int n = cloud.samples.empty() ? 0 : static_cast<int>(cloud.samples.front().value.size());
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << "F" << i + 1;
  os << "\n" << std::setprecision(17);
  for (const auto& s : cloud.samples) {
    for (int i = 0; i < s.value.size(); ++i) os << (i ? "," : "") << s.value[i];
    os << "\n";
  }
  return os.str();
}

BifurcationCloud parse_cloud_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  BifurcationCloud cloud;
  require(static_cast<bool>(std::getline(is, line)), "empty cloud file");
  int n = 0;
  if (!line.empty()) {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
      require(cell == "F" + std::to_string(n + 1), "bad cloud header column '" + cell + "'");
      ++n;
    }
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        require(used == cell.size(), "bad number '" + cell + "' in cloud file");
      } catch (const std::logic_error&) {
        fail(ErrorKind::InvalidInput, "bad number '" + cell + "' in cloud file");
      }
    }
    require(static_cast<int>(vals.size()) == n, "cloud row has the wrong number of columns");
    Sample s;
    s.value = Eigen::Map<Vector>(vals.data(), n);
    cloud.samples.push_back(std::move(s));
  }
  return cloud;
}

namespace {

// Orthogonal projector onto the span of the columns of an orthonormal basis.
Matrix projector(const Matrix& basis) { return basis * basis.transpose(); }

}  // namespace

StabilityEstimate stability_probe(const IntegrableSystem& sys, const poisson::SingularPointReport& report,
                                  double radius, int sample_count) {
  require(report.corank >= 1, "stability probe needs a singular point");
  require(radius > 0.0, "radius must be positive");
  if (sample_count <= 0) fail(ErrorKind::Inconclusive, "no samples requested");

  StabilityEstimate est;
  const int n = sys.n();
  const auto& t = report.type;
  if (t.k_e + t.k_h) est.predicted[1] = t.k_e + t.k_h;
  if (t.k_f) est.predicted[2] = t.k_f;

  const Box region = Box::around(report.point, radius);
  const Vector f0 = sys.moment(report.point);
  std::vector<Vector> images;
  for (int s = 1; s <= sample_count; ++s) {
    Vector p = region.at(halton_point(static_cast<std::size_t>(s), sys.dim()));
    if (!descend_to_singular_set(sys, region, p)) continue;
    if (poisson::numerical_rank(sys.field_matrix(p)) >= n) continue;
    images.push_back(sys.moment(p) - f0);
  }
  est.samples = static_cast<int>(images.size());
  if (images.size() < 8) fail(ErrorKind::Inconclusive, "only " + std::to_string(images.size()) + " singular values found");

  double spread = 0.0;
  for (const auto& y : images) spread = std::max(spread, y.norm());
  if (spread <= 1e-6 * radius * radius) {
    // The whole local singular value set is the single value F(p).
    est.sheets_by_codim[n] = 1;
    est.consistent_with_stable = est.sheets_by_codim == est.predicted;
    return est;
  }

  // Drop duplicates and the crossing region around F(p).
  std::sort(images.begin(), images.end(), lex_less);
  std::vector<Vector> pts;
  for (const auto& y : images) {
    if (y.norm() < 0.05 * spread) continue;
    bool dup = false;
    for (const auto& q : pts)
      if ((q - y).norm() < 1e-4 * spread) { dup = true; break; }
    if (!dup) pts.push_back(y);
  }
  const int N = static_cast<int>(pts.size());
  if (N < 6) fail(ErrorKind::Inconclusive, "too few distinct singular values away from F(p)");

  const int kn = std::min(8, N - 1);
  std::vector<int> local_dim(N);
  std::vector<Matrix> tangent(N);
  for (int i = 0; i < N; ++i) {
    std::vector<int> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + kn + 1, idx.end(),
                      [&](int a, int b) { return (pts[a] - pts[i]).norm() < (pts[b] - pts[i]).norm(); });
    Matrix nb(n, kn + 1);
    for (int j = 0; j <= kn; ++j) nb.col(j) = pts[idx[j]];
    Vector mean = nb.rowwise().mean();
    nb.colwise() -= mean;
    Eigen::JacobiSVD<Matrix> svd(nb, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int dim = 0;
    for (int j = 0; j < sv.size(); ++j)
      if (sv[j] > 0.1 * sv[0]) ++dim;
    local_dim[i] = dim;
    tangent[i] = svd.matrixU().leftCols(dim);
  }

  // Union-find over samples with the same local dimension and close tangent spaces.
  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (local_dim[i] == local_dim[j] && (projector(tangent[i]) - projector(tangent[j])).norm() < 0.3)
        parent[find(i)] = find(j);
  std::map<int, int> sizes;
  for (int i = 0; i < N; ++i) ++sizes[find(i)];
  const int min_size = std::max(3, N / 30);
  for (auto [root, size] : sizes) {
    if (size < min_size) continue;
    int codim = n - local_dim[root];
    if (codim >= 1) ++est.sheets_by_codim[codim];
  }
  est.consistent_with_stable = est.sheets_by_codim == est.predicted;
  return est;
}

}  // namespace ihs::bifurcation
