#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace linechase {

using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a construction needs a point off a line (or a line not
/// perpendicular to a plane) and the input is within tolerance of that case.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kParallelTol = 1e-12;

/// Relative tolerance for "point lies on line" style tests.
inline double degeneracy_tol(const Point& p) { return 1e-12 * (1.0 + p.norm()); }

/// A line in R^d stored as a base point and a unit direction.
class Line {
 public:
  Line() = default;

  /// Normalizes `dir`; throws InvalidInput for a zero or non-finite direction.
  Line(Point base, Vector dir);

  static Line through(const Point& a, const Point& b);

  const Point& base() const { return base_; }
  const Vector& dir() const { return dir_; }
  Eigen::Index dim() const { return base_.size(); }

  Point at(double t) const { return base_ + t * dir_; }
  /// Parameter of the orthogonal projection of `p`.
  double param_of(const Point& p) const { return (p - base_).dot(dir_); }

 private:
  Point base_;
  Vector dir_;
};

/// A 2-plane with an orthonormal in-plane basis (u, v).
struct Plane {
  Point origin;
  Vector u;
  Vector v;

  Eigen::Vector2d to_local(const Point& p) const {
    const Vector d = p - origin;
    return {d.dot(u), d.dot(v)};
  }
  Point to_global(const Eigen::Vector2d& q) const { return origin + q.x() * u + q.y() * v; }
  Point project(const Point& p) const { return to_global(to_local(p)); }
};

/// p -> scale * rotation * p + translation, with rotation in SO(d) and scale > 0.
class DirectSimilarity {
 public:
  DirectSimilarity(Matrix rotation, Vector translation, double scale);

  static DirectSimilarity identity(Eigen::Index dim);

  const Matrix& rotation() const { return rotation_; }
  const Vector& translation() const { return translation_; }
  double scale() const { return scale_; }
  Eigen::Index dim() const { return translation_.size(); }

  Point operator()(const Point& p) const;
  Line operator()(const Line& line) const;

  DirectSimilarity inverse() const;
  /// (this ∘ other)(p) = this(other(p)).
  DirectSimilarity compose(const DirectSimilarity& other) const;

 private:
  Matrix rotation_;
  Vector translation_;
  double scale_ = 1.0;
};

void require_same_dim(const Point& a, const Point& b, const char* what);

double distance(const Point& p, const Point& q);

Point project_point_onto_line(const Point& p, const Line& line);

bool point_on_line(const Point& p, const Line& line);

/// Unique intersection of two planar lines, or nullopt when |sin(angle)| <= parallel_tol.
std::optional<Point> intersect_lines_2d(const Line& l1, const Line& l2,
                                        double parallel_tol = kParallelTol);

/// The plane containing `line` and `p`; u = line.dir, v points from the line toward p.
Plane plane_through_line_and_point(const Line& line, const Point& p);

/// Orthogonal projection of `line` into `plane`, expressed in the plane's
/// 2D coordinates. nullopt when the line is perpendicular to the plane.
std::optional<Line> project_line_onto_plane(const Line& line, const Plane& plane);

Point apply_similarity(const DirectSimilarity& f, const Point& p);
Line apply_similarity_line(const DirectSimilarity& f, const Line& line);

/// The direct similarity g of the plane with g(p0) = (0,1) and g(line) = x-axis.
DirectSimilarity canonical_similarity(const Point& p0, const Line& line);

Point reflect_across_line_2d(const Point& p, const Line& line);

/// Rotation of R^2 by `angle` radians (counter-clockwise for positive angles).
Eigen::Matrix2d rotation_2d(double angle);

/// Signed z-component of the planar cross product a x b.
inline double cross_2d(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  return a(0) * b(1) - a(1) * b(0);
}

}  // namespace linechase
