#pragma once

// Sets (affine subspaces, balls, boxes, spheres), their projectors and
// reflectors, and a small immutable expression tree of operators built from
// them: compositions, affine combinations, constants, scaled identities and
// general affine maps.

#include <ccmap/geometry.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ccmap {

struct unsupported_node_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// anchor + span(columns of basis); the columns are orthonormal.
class AffineSubspace {
 public:
  AffineSubspace(Vector anchor, const std::vector<Vector>& directions,
                 const Tolerances& tol = {})
      : anchor_(std::move(anchor)) {
    for (const auto& d : directions)
      if (d.size() != anchor_.size())
        throw dimension_error("AffineSubspace: direction dimension mismatch");
    basis_ = as_columns(orthonormal_basis(directions, tol).basis, anchor_.size());
  }

  static AffineSubspace point(const Vector& p) { return {p, {}}; }

  static AffineSubspace whole(Eigen::Index n) {
    std::vector<Vector> e;
    for (Eigen::Index i = 0; i < n; ++i) e.push_back(Vector::Unit(n, i));
    return {Vector::Zero(n), e};
  }

  static AffineSubspace line(const Vector& p, const Vector& dir) {
    return {p, {dir}};
  }

  static AffineSubspace span(const std::vector<Vector>& dirs) {
    if (dirs.empty()) throw std::invalid_argument("span: no directions");
    return {Vector::Zero(dirs.front().size()), dirs};
  }

  // {x : <normal, x> = offset}
  static AffineSubspace hyperplane(const Vector& normal, double offset) {
    const double nn = normal.squaredNorm();
    if (!(nn > 0.0)) throw std::invalid_argument("hyperplane: zero normal");
    const Eigen::Index n = normal.size();
    Matrix proj = Matrix::Identity(n, n) - normal * normal.transpose() / nn;
    std::vector<Vector> cols;
    for (Eigen::Index j = 0; j < n; ++j) cols.push_back(proj.col(j));
    return {(offset / nn) * normal, cols};
  }

  const Vector& anchor() const { return anchor_; }
  const Matrix& basis() const { return basis_; }
  Eigen::Index ambient_dim() const { return anchor_.size(); }
  Eigen::Index dim() const { return basis_.cols(); }

  std::vector<Vector> directions() const {
    std::vector<Vector> out;
    for (Eigen::Index j = 0; j < basis_.cols(); ++j) out.push_back(basis_.col(j));
    return out;
  }

  Vector project(const Vector& x) const {
    if (x.size() != ambient_dim())
      throw dimension_error("project_affine: dimension mismatch");
    return anchor_ + basis_ * (basis_.transpose() * (x - anchor_));
  }

  Vector reflect(const Vector& x) const { return 2.0 * project(x) - x; }

  bool contains(const Vector& x, double tol = 1e-9) const {
    return (project(x) - x).norm() <= tol * (1.0 + x.norm());
  }

  bool is_linear(double tol = 1e-12) const {
    return contains(Vector::Zero(ambient_dim()), tol);
  }

  // Linear part's orthogonal complement, anchored at the point of the
  // subspace nearest the origin. For a linear subspace this is A-perp.
  AffineSubspace orthogonal_complement() const {
    const Eigen::Index n = ambient_dim();
    Matrix proj = Matrix::Identity(n, n) - basis_ * basis_.transpose();
    std::vector<Vector> cols;
    for (Eigen::Index j = 0; j < n; ++j) cols.push_back(proj.col(j));
    return {project(Vector::Zero(n)), cols};
  }

 private:
  Vector anchor_;
  Matrix basis_;
};

struct Ball {
  Vector center;
  double radius = 0.0;
};

// Axis-aligned box; infinite bounds give orthants and slabs.
struct Box {
  Vector lower;
  Vector upper;

  static Box nonnegative_orthant(Eigen::Index n) {
    return {Vector::Zero(n),
            Vector::Constant(n, std::numeric_limits<double>::infinity())};
  }
};

// The sphere itself, not the ball; projection is the nearest point on it,
// set-valued at the center, where the +e1 pole is taken.
struct Sphere {
  Vector center;
  double radius = 0.0;
};

inline Vector project_affine(const AffineSubspace& a, const Vector& x) {
  return a.project(x);
}

inline Vector reflect_affine(const AffineSubspace& a, const Vector& x) {
  return a.reflect(x);
}

inline Vector project_ball(const Ball& b, const Vector& x) {
  if (x.size() != b.center.size())
    throw dimension_error("project_ball: dimension mismatch");
  const Vector d = x - b.center;
  const double dn = d.norm();
  if (dn <= b.radius) return x;
  return b.center + (b.radius / dn) * d;
}

inline Vector project_box(const Box& b, const Vector& x) {
  if (x.size() != b.lower.size() || x.size() != b.upper.size())
    throw dimension_error("project_box: dimension mismatch");
  return x.cwiseMax(b.lower).cwiseMin(b.upper);
}

inline Vector project_sphere(const Sphere& s, const Vector& x) {
  if (x.size() != s.center.size())
    throw dimension_error("project_sphere: dimension mismatch");
  const Vector d = x - s.center;
  const double dn = d.norm();
  if (dn == 0.0) return s.center + s.radius * Vector::Unit(x.size(), 0);
  return s.center + (s.radius / dn) * d;
}

class Operator;
inline Vector apply(const Operator& op, const Vector& x);

class Operator {
 public:
  struct Identity {};
  struct Constant { Vector c; };
  struct ScaledId { double gamma; };
  struct Translate { Vector v; };
  struct AffineMap { Matrix m; Vector b; };
  struct ProjAffine { AffineSubspace set; };
  struct ReflAffine { AffineSubspace set; };
  struct ProjBall { Ball set; };
  struct ReflBall { Ball set; };
  struct ProjBox { Box set; };
  struct ReflBox { Box set; };
  struct ProjSphere { Sphere set; };
  struct ReflSphere { Sphere set; };
  // ops.front() is applied last: Compose{A, B} is A∘B.
  struct Compose { std::vector<Operator> ops; };
  struct AffineComb { std::vector<std::pair<double, Operator>> terms; };

  using Node = std::variant<Identity, Constant, ScaledId, Translate, AffineMap,
                            ProjAffine, ReflAffine, ProjBall, ReflBall, ProjBox,
                            ReflBox, ProjSphere, ReflSphere, Compose, AffineComb>;

  Operator() : node_(std::make_shared<const Node>(Identity{})), label_("Id") {}

  Operator(Node node, std::string label)
      : node_(std::make_shared<const Node>(std::move(node))),
        label_(std::move(label)) {}

  const Node& node() const { return *node_; }
  const std::string& label() const { return label_; }

  template <class T>
  bool is() const { return std::holds_alternative<T>(*node_); }

  Vector operator()(const Vector& x) const { return apply(*this, x); }

 private:
  std::shared_ptr<const Node> node_;
  std::string label_;
};

namespace detail {

inline std::string fmt_real(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// A label needs parentheses when it is a sum.
inline std::string wrap(const std::string& s) {
  return s.find('+') == std::string::npos ? s : "(" + s + ")";
}

}  // namespace detail

inline Operator identity() { return {}; }

inline Operator constant(Vector c) {
  return {Operator::Constant{std::move(c)}, "Const"};
}

inline Operator scaled_identity(double gamma) {
  return {Operator::ScaledId{gamma}, detail::fmt_real(gamma) + "*Id"};
}

inline Operator translation(Vector v) {
  return {Operator::Translate{std::move(v)}, "Id+v"};
}

inline Operator affine_map(Matrix m, Vector b, std::string label = "M") {
  if (m.rows() != m.cols() || m.rows() != b.size())
    throw dimension_error("affine_map: shape mismatch");
  return {Operator::AffineMap{std::move(m), std::move(b)}, std::move(label)};
}

inline Operator projector(AffineSubspace a, const std::string& name = "U") {
  return {Operator::ProjAffine{std::move(a)}, "P_" + name};
}
inline Operator reflector(AffineSubspace a, const std::string& name = "U") {
  return {Operator::ReflAffine{std::move(a)}, "R_" + name};
}
inline Operator projector(Ball b, const std::string& name = "B") {
  return {Operator::ProjBall{std::move(b)}, "P_" + name};
}
inline Operator reflector(Ball b, const std::string& name = "B") {
  return {Operator::ReflBall{std::move(b)}, "R_" + name};
}
inline Operator projector(Box b, const std::string& name = "C") {
  return {Operator::ProjBox{std::move(b)}, "P_" + name};
}
inline Operator reflector(Box b, const std::string& name = "C") {
  return {Operator::ReflBox{std::move(b)}, "R_" + name};
}
inline Operator projector(Sphere s, const std::string& name = "S") {
  return {Operator::ProjSphere{std::move(s)}, "P_" + name};
}
inline Operator reflector(Sphere s, const std::string& name = "S") {
  return {Operator::ReflSphere{std::move(s)}, "R_" + name};
}

// compose({A, B, C}) = A∘B∘C, so C acts first.
inline Operator compose(std::vector<Operator> ops) {
  if (ops.empty()) throw std::invalid_argument("compose: empty list");
  if (ops.size() == 1) return ops.front();
  std::string label;
  for (const auto& o : ops)
    label += (label.empty() ? "" : " ") + detail::wrap(o.label());
  return {Operator::Compose{std::move(ops)}, label};
}

inline Operator operator*(const Operator& a, const Operator& b) {
  return compose({a, b});
}

inline Operator affine_combination(std::vector<std::pair<double, Operator>> terms) {
  if (terms.empty()) throw std::invalid_argument("affine_combination: empty");
  double sum = 0.0;
  for (const auto& t : terms) sum += t.first;
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("affine_combination: weights must sum to 1");
  std::string label;
  for (const auto& [w, op] : terms) {
    if (!label.empty()) label += "+";
    label += detail::fmt_real(w) + "*" + detail::wrap(op.label());
  }
  return {Operator::AffineComb{std::move(terms)}, label};
}

// (1 - alpha) Id + alpha T
inline Operator relaxed(const Operator& t, double alpha) {
  return affine_combination({{1.0 - alpha, identity()}, {alpha, t}});
}

inline Vector apply(const Operator& op, const Vector& x) {
  auto need = [&](Eigen::Index n, const char* who) {
    if (x.size() != n) throw dimension_error(std::string(who) + ": dimension mismatch");
  };
  return std::visit(
      [&](const auto& nd) -> Vector {
        using N = std::decay_t<decltype(nd)>;
        if constexpr (std::is_same_v<N, Operator::Identity>) {
          return x;
        } else if constexpr (std::is_same_v<N, Operator::Constant>) {
          need(nd.c.size(), "constant");
          return nd.c;
        } else if constexpr (std::is_same_v<N, Operator::ScaledId>) {
          return nd.gamma * x;
        } else if constexpr (std::is_same_v<N, Operator::Translate>) {
          need(nd.v.size(), "translate");
          return x + nd.v;
        } else if constexpr (std::is_same_v<N, Operator::AffineMap>) {
          need(nd.b.size(), "affine map");
          return nd.m * x + nd.b;
        } else if constexpr (std::is_same_v<N, Operator::ProjAffine>) {
          return nd.set.project(x);
        } else if constexpr (std::is_same_v<N, Operator::ReflAffine>) {
          return nd.set.reflect(x);
        } else if constexpr (std::is_same_v<N, Operator::ProjBall>) {
          return project_ball(nd.set, x);
        } else if constexpr (std::is_same_v<N, Operator::ReflBall>) {
          return 2.0 * project_ball(nd.set, x) - x;
        } else if constexpr (std::is_same_v<N, Operator::ProjBox>) {
          return project_box(nd.set, x);
        } else if constexpr (std::is_same_v<N, Operator::ReflBox>) {
          return 2.0 * project_box(nd.set, x) - x;
        } else if constexpr (std::is_same_v<N, Operator::ProjSphere>) {
          return project_sphere(nd.set, x);
        } else if constexpr (std::is_same_v<N, Operator::ReflSphere>) {
          return 2.0 * project_sphere(nd.set, x) - x;
        } else if constexpr (std::is_same_v<N, Operator::Compose>) {
          Vector y = x;
          for (auto it = nd.ops.rbegin(); it != nd.ops.rend(); ++it) y = apply(*it, y);
          return y;
        } else {
          Vector y = Vector::Zero(x.size());
          for (const auto& [w, t] : nd.terms) y += w * apply(t, x);
          return y;
        }
      },
      op.node());
}

namespace detail {

template <class Make>
Operator word(const std::vector<AffineSubspace>& subspaces,
              const std::vector<int>& indices, Make make) {
  if (indices.empty()) return identity();
  std::vector<Operator> ops;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    const int i = *it;
    if (i < 1 || static_cast<std::size_t>(i) > subspaces.size())
      throw std::out_of_range("word: subspace index out of range");
    ops.push_back(make(subspaces[static_cast<std::size_t>(i - 1)],
                       "U" + std::to_string(i)));
  }
  return compose(std::move(ops));
}

}  // namespace detail

// indices [i1, ..., ir] (1-based) give R_{U_ir} ... R_{U_i1}: i1 acts first.
inline Operator reflector_word(const std::vector<AffineSubspace>& subspaces,
                               const std::vector<int>& indices) {
  return detail::word(subspaces, indices,
                      [](const AffineSubspace& a, const std::string& n) {
                        return reflector(a, n);
                      });
}

inline Operator projector_word(const std::vector<AffineSubspace>& subspaces,
                               const std::vector<int>& indices) {
  return detail::word(subspaces, indices,
                      [](const AffineSubspace& a, const std::string& n) {
                        return projector(a, n);
                      });
}

// Reflected resolvent of A = alpha*Id: 2(Id + A)^{-1} - Id.
inline Operator reflected_resolvent_scaled_id(double alpha) {
  if (alpha < 0.0)
    throw std::invalid_argument("reflected_resolvent_scaled_id: alpha < 0");
  return scaled_identity((1.0 - alpha) / (1.0 + alpha));
}

// Reflected resolvent of the constant operator A = a: x - 2a.
inline Operator reflected_resolvent_const(const Vector& a) {
  return {Operator::Translate{-2.0 * a}, "R_const"};
}

namespace detail {

// Solution set of M x = b as anchor + null(M), or nothing when the
// least-squares residual exceeds eq_tol relative to the data.
inline std::optional<AffineSubspace> solve_affine_system(const Matrix& m,
                                                         const Vector& b,
                                                         double scale,
                                                         const Tolerances& tol) {
  const Eigen::Index n = m.cols();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? std::max(s(0), 1.0) : 1.0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol.rank_tol * smax) ++r;

  Vector x = Vector::Zero(n);
  if (r > 0) {
    const Vector ub = svd.matrixU().leftCols(r).transpose() * b;
    x = svd.matrixV().leftCols(r) * (ub.array() / s.head(r).array()).matrix();
  }
  if ((m * x - b).norm() > tol.eq_tol * scale) return std::nullopt;

  std::vector<Vector> null;
  for (Eigen::Index j = r; j < n; ++j) null.push_back(svd.matrixV().col(j));
  return AffineSubspace(x, null, tol);
}

}  // namespace detail

// Intersection of affine subspaces via the stacked constraints
// (I - B_i B_i^T)(x - a_i) = 0.
inline std::optional<AffineSubspace> intersect_affine(
    const std::vector<AffineSubspace>& subspaces, const Tolerances& tol = {}) {
  if (subspaces.empty()) throw std::invalid_argument("intersect_affine: empty list");
  const Eigen::Index n = subspaces.front().ambient_dim();
  for (const auto& u : subspaces)
    if (u.ambient_dim() != n) throw dimension_error("intersect_affine: dimension mismatch");

  const auto k = static_cast<Eigen::Index>(subspaces.size());
  Matrix m(n * k, n);
  Vector b(n * k);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& u = subspaces[static_cast<std::size_t>(i)];
    const Matrix c = Matrix::Identity(n, n) - u.basis() * u.basis().transpose();
    m.middleRows(i * n, n) = c;
    b.segment(i * n, n) = c * u.anchor();
    scale = std::max(scale, u.anchor().norm());
  }
  return detail::solve_affine_system(m, b, std::max(scale, 1e-300), tol);
}

// True when the tree contains only affine nodes.
inline bool is_affine(const Operator& op) {
  return std::visit(
      [](const auto& nd) -> bool {
        using N = std::decay_t<decltype(nd)>;
        if constexpr (std::is_same_v<N, Operator::Compose>) {
          for (const auto& o : nd.ops)
            if (!is_affine(o)) return false;
          return true;
        } else if constexpr (std::is_same_v<N, Operator::AffineComb>) {
          for (const auto& t : nd.terms)
            if (!is_affine(t.second)) return false;
          return true;
        } else {
          return std::is_same_v<N, Operator::Identity> ||
                 std::is_same_v<N, Operator::Constant> ||
                 std::is_same_v<N, Operator::ScaledId> ||
                 std::is_same_v<N, Operator::Translate> ||
                 std::is_same_v<N, Operator::AffineMap> ||
                 std::is_same_v<N, Operator::ProjAffine> ||
                 std::is_same_v<N, Operator::ReflAffine>;
        }
      },
      op.node());
}

struct AffineParts {
  Matrix m;
  Vector b;
};

// Recover x -> M x + b by evaluating the operator at 0 and at e_1..e_n.
inline AffineParts affine_parts(const Operator& op, Eigen::Index n) {
  if (!is_affine(op))
    throw unsupported_node_error("operator contains a non-affine node");
  AffineParts p{Matrix(n, n), apply(op, Vector::Zero(n))};
  for (Eigen::Index i = 0; i < n; ++i)
    p.m.col(i) = apply(op, Vector::Unit(n, i)) - p.b;
  return p;
}

inline std::optional<AffineSubspace> fixed_point_set_affine(const Operator& op,
                                                            Eigen::Index n,
                                                            const Tolerances& tol = {}) {
  const auto p = affine_parts(op, n);
  const Matrix a = p.m - Matrix::Identity(n, n);
  return detail::solve_affine_system(a, -p.b, std::max(p.b.norm(), 1e-300), tol);
}

}  // namespace ccmap
