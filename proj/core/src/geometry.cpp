#include "linechase/geometry.hpp"

#include <cmath>
#include <limits>

namespace linechase {

namespace {

void require_2d(const Point& p, const char* what) {
  if (p.size() != 2) throw InvalidInput(std::string(what) + ": expected a 2-dimensional input");
}

}  // namespace

void require_same_dim(const Point& a, const Point& b, const char* what) {
  if (a.size() != b.size()) {
    throw InvalidInput(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                       " vs " + std::to_string(b.size()) + ")");
  }
}

Line::Line(Point base, Vector dir) : base_(std::move(base)), dir_(std::move(dir)) {
  require_same_dim(base_, dir_, "Line");
  if (base_.size() < 2) throw InvalidInput("Line: dimension must be at least 2");
  if (!base_.allFinite() || !dir_.allFinite()) throw InvalidInput("Line: non-finite coordinates");
  const double n = dir_.norm();
  if (n == 0.0) throw InvalidInput("Line: zero direction vector");
  // Leave already-unit directions bit-identical so normalization is idempotent.
  if (std::abs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) dir_ /= n;
}

Line Line::through(const Point& a, const Point& b) { return Line(a, b - a); }

DirectSimilarity::DirectSimilarity(Matrix rotation, Vector translation, double scale)
    : rotation_(std::move(rotation)), translation_(std::move(translation)), scale_(scale) {
  const auto d = translation_.size();
  if (rotation_.rows() != d || rotation_.cols() != d) {
    throw InvalidInput("DirectSimilarity: rotation shape does not match translation");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw InvalidInput("DirectSimilarity: scale must be positive and finite");
  }
  if (!(rotation_.transpose() * rotation_).isIdentity(1e-10)) {
    throw InvalidInput("DirectSimilarity: rotation is not orthogonal");
  }
  if (std::abs(rotation_.determinant() - 1.0) > 1e-10) {
    throw InvalidInput("DirectSimilarity: rotation does not preserve orientation");
  }
}

DirectSimilarity DirectSimilarity::identity(Eigen::Index dim) {
  return {Matrix::Identity(dim, dim), Vector::Zero(dim), 1.0};
}

Point DirectSimilarity::operator()(const Point& p) const {
  require_same_dim(p, translation_, "DirectSimilarity");
  return scale_ * (rotation_ * p) + translation_;
}

Line DirectSimilarity::operator()(const Line& line) const {
  return Line((*this)(line.base()), rotation_ * line.dir());
}

DirectSimilarity DirectSimilarity::inverse() const {
  // p = (R^T (q - t)) / s
  Matrix rt = rotation_.transpose();
  Vector t = -(rt * translation_) / scale_;
  return {std::move(rt), std::move(t), 1.0 / scale_};
}

DirectSimilarity DirectSimilarity::compose(const DirectSimilarity& other) const {
  Matrix r = rotation_ * other.rotation_;
  Vector t = scale_ * (rotation_ * other.translation_) + translation_;
  return {std::move(r), std::move(t), scale_ * other.scale_};
}

double distance(const Point& p, const Point& q) {
  require_same_dim(p, q, "distance");
  return (p - q).norm();
}

Point project_point_onto_line(const Point& p, const Line& line) {
  require_same_dim(p, line.base(), "project_point_onto_line");
  return line.at(line.param_of(p));
}

bool point_on_line(const Point& p, const Line& line) {
  return distance(p, project_point_onto_line(p, line)) <= degeneracy_tol(p);
}

std::optional<Point> intersect_lines_2d(const Line& l1, const Line& l2, double parallel_tol) {
  require_2d(l1.base(), "intersect_lines_2d");
  require_2d(l2.base(), "intersect_lines_2d");
  const double sin_angle = cross_2d(l1.dir(), l2.dir());
  if (std::abs(sin_angle) <= parallel_tol) return std::nullopt;
  const double t = cross_2d(l2.base() - l1.base(), l2.dir()) / sin_angle;
  return l1.at(t);
}

Plane plane_through_line_and_point(const Line& line, const Point& p) {
  require_same_dim(p, line.base(), "plane_through_line_and_point");
  const Vector offset = p - project_point_onto_line(p, line);
  const double dist = offset.norm();
  if (dist <= degeneracy_tol(p)) {
    throw DegenerateInput("plane_through_line_and_point: point lies on the line");
  }
  return Plane{line.base(), line.dir(), offset / dist};
}

std::optional<Line> project_line_onto_plane(const Line& line, const Plane& plane) {
  require_same_dim(line.base(), plane.origin, "project_line_onto_plane");
  const Eigen::Vector2d base = plane.to_local(line.base());
  const Eigen::Vector2d dir(line.dir().dot(plane.u), line.dir().dot(plane.v));
  // line.dir is a unit vector, so |dir| is the length of the projected unit step.
  if (dir.norm() <= degeneracy_tol(line.base())) return std::nullopt;
  return Line(base, dir);
}

Point apply_similarity(const DirectSimilarity& f, const Point& p) { return f(p); }

Line apply_similarity_line(const DirectSimilarity& f, const Line& line) { return f(line); }

DirectSimilarity canonical_similarity(const Point& p0, const Line& line) {
  require_2d(p0, "canonical_similarity");
  require_2d(line.base(), "canonical_similarity");
  const Point foot = project_point_onto_line(p0, line);
  const Vector normal = p0 - foot;
  const double height = normal.norm();
  if (height <= degeneracy_tol(p0)) {
    throw DegenerateInput("canonical_similarity: start point lies on the first line");
  }
  // Rotate the unit normal onto e2 = (0,1): angle(e2) - angle(normal).
  const double angle = std::atan2(1.0, 0.0) - std::atan2(normal.y(), normal.x());
  Matrix rotation = rotation_2d(angle);
  const double scale = 1.0 / height;
  Vector translation = -scale * (rotation * foot);
  return {std::move(rotation), std::move(translation), scale};
}

Point reflect_across_line_2d(const Point& p, const Line& line) {
  require_2d(p, "reflect_across_line_2d");
  return 2.0 * project_point_onto_line(p, line) - p;
}

Eigen::Matrix2d rotation_2d(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

}  // namespace linechase
