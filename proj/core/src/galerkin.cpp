#include "twopoint/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twopoint/errors.hpp"

namespace twopoint {

const double GaussRule::nodes[GaussRule::size] = {-0.77459666924148337704, 0.0,
                                                   0.77459666924148337704};
const double GaussRule::weights[GaussRule::size] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

namespace {

void require_dim(const GalerkinSystem& sys, const Vector& c, const char* op) {
  if (c.size() != sys.dim()) {
    throw DimensionError(std::string(op) + ": vector has " + std::to_string(c.size()) +
                         " entries, system has " + std::to_string(sys.dim()));
  }
}

}  // namespace

Mesh::Mesh(int n_nodes) : h_(0.0) {
  if (n_nodes < 2) throw MeshError("mesh needs at least 2 nodes, got " + std::to_string(n_nodes));
  h_ = 1.0 / (n_nodes - 1);
  nodes_.resize(static_cast<std::size_t>(n_nodes));
  for (int i = 0; i < n_nodes; ++i) nodes_[static_cast<std::size_t>(i)] = i * h_;
  nodes_.back() = 1.0;
}

Mesh Mesh::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2) throw MeshError("mesh needs at least 2 nodes");
  if (nodes.front() != 0.0 || nodes.back() != 1.0) throw MeshError("mesh must span [0, 1]");
  const double h = 1.0 / static_cast<double>(nodes.size() - 1);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double step = nodes[i] - nodes[i - 1];
    if (!(step > 0.0)) throw MeshError("mesh nodes must be strictly increasing");
    if (std::abs(step - h) > 1e-12) throw MeshError("mesh must be uniform");
  }
  return Mesh(std::move(nodes), h);
}

GalerkinSystem assemble(const Mesh& mesh, const ProblemParams& p) {
  const int n = mesh.n_nodes();
  const double h = mesh.spacing();

  GalerkinSystem sys;
  sys.mesh = mesh;
  sys.params = p;
  sys.M = Matrix::Zero(n, n);
  sys.S = Matrix::Zero(n, n);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const int i = e;
    const int j = e + 1;
    sys.M(i, i) += h / 3.0;
    sys.M(j, j) += h / 3.0;
    sys.M(i, j) += h / 6.0;
    sys.M(j, i) += h / 6.0;
    sys.S(i, i) += 1.0 / h;
    sys.S(j, j) += 1.0 / h;
    sys.S(i, j) -= 1.0 / h;
    sys.S(j, i) -= 1.0 / h;
  }

  sys.trace0 = Vector::Zero(n);
  sys.trace1 = Vector::Zero(n);
  sys.trace0(0) = 1.0;
  sys.trace1(n - 1) = 1.0;
  const Vector& t0 = sys.trace0;
  const Vector& t1 = sys.trace1;

  sys.A = sys.S + p.h0 * t0 * t0.transpose() + p.h1 * t1 * t1.transpose();
  // Row j collects (lam0 u'(0) + lt1 u'(1)) w_j(0) + (lam1 u'(1) + lt0 u'(0)) w_j(1).
  sys.D = p.lam0 * t0 * t0.transpose() + p.lt1 * t0 * t1.transpose() +
          p.lam1 * t1 * t1.transpose() + p.lt0 * t1 * t0.transpose();
  sys.B = p.ht1 * t0 * t1.transpose() + p.ht0 * t1 * t0.transpose();
  return sys;
}

Vector load_vector(const GalerkinSystem& sys, const Forcing& forcing, double t) {
  const int n = sys.dim();
  Vector F = Vector::Zero(n);
  if (forcing.g0) F -= forcing.g0(t) * sys.trace0;
  if (forcing.g1) F -= forcing.g1(t) * sys.trace1;
  if (forcing.f) {
    if (!sys.mesh || sys.mesh->n_nodes() != n) {
      throw DimensionError("load_vector: interior forcing needs a mesh matching the system");
    }
    const Mesh& mesh = *sys.mesh;
    const double h = mesh.spacing();
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const double xl = mesh.node(e);
      double left = 0.0;
      double right = 0.0;
      for (int q = 0; q < GaussRule::size; ++q) {
        const double s = 0.5 * (GaussRule::nodes[q] + 1.0);
        const double w = 0.5 * h * GaussRule::weights[q] * forcing.f(xl + s * h, t);
        left += w * (1.0 - s);
        right += w * s;
      }
      F(e) += left;
      F(e + 1) += right;
    }
  }
  return F;
}

double norm_1_sq(const GalerkinSystem& sys, const Vector& c) {
  require_dim(sys, c, "norm_1_sq");
  const double u0 = sys.trace0.dot(c);
  return u0 * u0 + c.dot(sys.S * c);
}

double norm_a_sq(const GalerkinSystem& sys, const Vector& c) {
  require_dim(sys, c, "norm_a_sq");
  return c.dot(sys.A * c);
}

double sup_norm(const GalerkinSystem& sys, const Vector& c) {
  require_dim(sys, c, "sup_norm");
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

double integrate_over(const Mesh& mesh, const SpaceFn& g) {
  const double h = mesh.spacing();
  double total = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double xl = mesh.node(e);
    for (int q = 0; q < GaussRule::size; ++q) {
      const double s = 0.5 * (GaussRule::nodes[q] + 1.0);
      total += 0.5 * h * GaussRule::weights[q] * g(xl + s * h);
    }
  }
  return total;
}

double evaluate(const Mesh& mesh, const Vector& c, double x) {
  if (c.size() != mesh.n_nodes()) throw DimensionError("evaluate: vector does not match mesh");
  const double h = mesh.spacing();
  const int e = std::clamp(static_cast<int>(std::floor(x / h)), 0, mesh.n_elements() - 1);
  const double s = (x - mesh.node(e)) / h;
  return (1.0 - s) * c(e) + s * c(e + 1);
}

Vector interpolate(const Mesh& mesh, const SpaceFn& g) {
  Vector c(mesh.n_nodes());
  for (int i = 0; i < mesh.n_nodes(); ++i) c(i) = g(mesh.node(i));
  return c;
}

FieldErrors field_errors(const Mesh& mesh, const Vector& c, const SpaceFn& u, const SpaceFn& ux) {
  if (c.size() != mesh.n_nodes()) throw DimensionError("field_errors: vector does not match mesh");
  const double h = mesh.spacing();
  double l2 = 0.0;
  double grad = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double xl = mesh.node(e);
    const double slope = (c(e + 1) - c(e)) / h;
    for (int q = 0; q < GaussRule::size; ++q) {
      const double s = 0.5 * (GaussRule::nodes[q] + 1.0);
      const double x = xl + s * h;
      const double w = 0.5 * h * GaussRule::weights[q];
      const double eu = (1.0 - s) * c(e) + s * c(e + 1) - u(x);
      const double ex = slope - ux(x);
      l2 += w * eu * eu;
      grad += w * ex * ex;
    }
  }
  const double e0 = c(0) - u(0.0);
  return {std::sqrt(l2), std::sqrt(e0 * e0 + grad)};
}

}  // namespace twopoint
