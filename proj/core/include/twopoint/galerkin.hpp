#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "twopoint/params.hpp"

namespace twopoint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using SpaceFn = std::function<double(double x)>;
using TimeFn = std::function<double(double t)>;
using SpaceTimeFn = std::function<double(double x, double t)>;

/// Uniform partition of [0, 1] carrying one hat function per node.
class Mesh {
public:
  /// Throws MeshError for n_nodes < 2.
  explicit Mesh(int n_nodes);

  /// Accepts an explicit node list; throws MeshError unless it is a uniform,
  /// strictly increasing partition from 0 to 1.
  static Mesh from_nodes(std::vector<double> nodes);

  int n_nodes() const noexcept { return static_cast<int>(nodes_.size()); }
  int n_elements() const noexcept { return n_nodes() - 1; }
  double spacing() const noexcept { return h_; }
  double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }

private:
  Mesh(std::vector<double> nodes, double h) : nodes_(std::move(nodes)), h_(h) {}

  std::vector<double> nodes_;
  double h_;
};

/// Interior source f and boundary data g0, g1. An empty callable is zero.
struct Forcing {
  SpaceTimeFn f;
  TimeFn g0;
  TimeFn g1;

  bool is_zero() const noexcept { return !f && !g0 && !g1; }
  static Forcing none() { return {}; }
};

/// Matrices of the semi-discrete system
///
///   M c'' + (lam M + D) c' + (A + K M + B) c = F(t).
///
/// Fields are public so diagnostic systems (e.g. a scalar oscillator) can be
/// built by hand; `assemble` is the normal way to obtain one.
struct GalerkinSystem {
  std::optional<Mesh> mesh;  ///< absent for hand-built systems
  ProblemParams params;
  Matrix M;  ///< <w_i, w_j>
  Matrix S;  ///< <w_i', w_j'>
  Matrix A;  ///< a(w_i, w_j) = S + h0 t0 t0^T + h1 t1 t1^T
  Matrix D;  ///< boundary velocity coupling, nonsymmetric when lt0 != lt1
  Matrix B;  ///< boundary displacement cross-coupling
  Vector trace0;  ///< w_j(0)
  Vector trace1;  ///< w_j(1)

  int dim() const noexcept { return static_cast<int>(M.rows()); }
  Matrix damping() const { return params.lam * M + D; }
  Matrix restoring() const { return A + params.K * M + B; }
};

/// Builds the hat-basis system. The constants are not validated here; the
/// undamped or uncoupled limits are legitimate diagnostic configurations.
GalerkinSystem assemble(const Mesh& mesh, const ProblemParams& p);

/// F_j(t) = -g0(t) w_j(0) - g1(t) w_j(1) + <f(., t), w_j>, interior term by
/// 3-point Gauss-Legendre quadrature per element.
Vector load_vector(const GalerkinSystem& sys, const Forcing& forcing, double t);

/// (c . trace0)^2 + c^T S c
double norm_1_sq(const GalerkinSystem& sys, const Vector& c);
/// c^T A c
double norm_a_sq(const GalerkinSystem& sys, const Vector& c);
/// max over [0, 1] of |sum c_i w_i(x)|; for hats, the largest nodal magnitude.
double sup_norm(const GalerkinSystem& sys, const Vector& c);

// Quadrature and finite element evaluation helpers.

/// 3-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  static constexpr int size = 3;
  static const double nodes[size];
  static const double weights[size];
};

/// \int_0^1 g(x) dx with the element-wise Gauss rule.
double integrate_over(const Mesh& mesh, const SpaceFn& g);

/// Value of the piecewise-linear function with nodal values `c` at x in [0, 1].
double evaluate(const Mesh& mesh, const Vector& c, double x);

/// Nodal values of g.
Vector interpolate(const Mesh& mesh, const SpaceFn& g);

struct FieldErrors {
  double l2 = 0.0;     ///< ||u_h - u||
  double norm1 = 0.0;  ///< (e(0)^2 + ||e_x||^2)^{1/2}
};

/// Errors of the finite element function `c` against an exact profile with
/// derivative `ux`, integrated by the element-wise Gauss rule.
FieldErrors field_errors(const Mesh& mesh, const Vector& c, const SpaceFn& u, const SpaceFn& ux);

}  // namespace twopoint
