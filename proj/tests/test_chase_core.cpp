#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "linechase/chase_core.hpp"
#include "linechase/policies.hpp"
#include "linechase/verification.hpp"

using namespace linechase;

namespace {

Point pt(double x, double y) { return Eigen::Vector2d(x, y); }

// Returns a point that is deliberately off the requested line.
class OffLinePolicy final : public OnlinePolicy {
 public:
  Point next(const PolicyState& state, const Line& request) const override {
    Point p = project_point_onto_line(state.current, request);
    p(0) += 1.0;
    p(1) += 1.0;
    return p;
  }
  std::string name() const override { return "off-line"; }
};

}  // namespace

TEST_CASE("path cost") {
  CHECK(path_cost(std::vector<Point>{pt(0, 0)}) == 0.0);
  CHECK(path_cost(std::vector<Point>{pt(0, 0), pt(3, 4), pt(3, 0)}) == doctest::Approx(9.0));
  CHECK_THROWS_AS(path_cost(std::vector<Point>{}), InvalidInput);

  // Start, P1 = (0, c1), then a point of L2: the listed coordinates and the
  // point of L2 at x = 0.4388, both evaluated independently.
  CHECK(path_cost(std::vector<Point>{pt(0, 0), pt(0, 0.5535), pt(0.4388, 0.83462)}) ==
        doctest::Approx(1.074627522205458).epsilon(1e-14));
  CHECK(path_cost(std::vector<Point>{pt(0, 0), pt(0, 0.5535), pt(0.4388, 0.8321358)}) ==
        doctest::Approx(1.0732916400266936).epsilon(1e-14));

  // A repeated final point adds nothing.
  const std::vector<Point> pts{pt(0, 0), pt(0.4, 0.2), pt(0.4388, 0.8321), pt(0.4388, 0.8321)};
  const double expected = std::hypot(0.4, 0.2) + std::hypot(0.0388, 0.6321);
  CHECK(path_cost(pts) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("instance validation") {
  Instance inst;
  inst.start = pt(0, 1);
  inst.requests.push_back(Line(pt(0, 0), pt(1, 0)));
  CHECK_NOTHROW(inst.validate());
  CHECK(inst.diameter() == doctest::Approx(1.0));

  inst.initial_line = Line(pt(0, 0), pt(1, 0));
  CHECK_THROWS_AS(inst.validate(), InvalidInput);
  inst.initial_line = Line(pt(0, 1), pt(1, 0));
  CHECK_NOTHROW(inst.validate());

  inst.requests.push_back(Line(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0)));
  CHECK_THROWS_AS(inst.validate(), InvalidInput);

  Instance bad;
  bad.start = pt(NAN, 0);
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("run_policy visits every line and sums step costs") {
  Instance inst;
  inst.start = pt(0, 1);
  inst.requests = {Line(pt(0, 0), pt(1, 0)), Line(pt(5, 0), pt(0, 1))};
  const Path path = run_policy(GreedyPolicy{}, inst);
  REQUIRE(path.points.size() == 3);
  CHECK((path.points[1] - pt(0, 0)).norm() == 0.0);
  CHECK((path.points[2] - pt(5, 0)).norm() == 0.0);
  CHECK(path.cost == doctest::Approx(6.0));

  Instance empty;
  empty.start = pt(2, 3);
  const Path none = run_policy(DriftPolicy{}, empty);
  CHECK(none.points.size() == 1);
  CHECK(none.cost == 0.0);
}

TEST_CASE("run_policy rejects points off the requested line") {
  Instance inst;
  inst.start = pt(0, 1);
  inst.requests = {Line(pt(0, 0), pt(1, 0)), Line(pt(0, 0), pt(0, 1))};
  try {
    run_policy(OffLinePolicy{}, inst);
    FAIL("expected a contract violation");
  } catch (const ContractViolation& e) {
    CHECK(e.step() == 1);
  }
}

TEST_CASE("ratio conventions") {
  CHECK(ratio_of(0.0, 0.0) == 1.0);
  CHECK(ratio_of(1.0, 0.0) == std::numeric_limits<double>::infinity());
  CHECK(ratio_of(3.0, 2.0) == 1.5);
  Instance inst;
  inst.start = pt(0, 1);
  inst.requests = {Line(pt(0, 0), pt(1, 0))};
  CHECK(competitive_ratio(GreedyPolicy{}, inst, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("transform_instance maps every component") {
  std::mt19937_64 rng(3);
  const Instance inst = random_instance(3, 10, rng, true);
  const DirectSimilarity f = random_similarity(3, rng);
  const Instance g = transform_instance(f, inst);
  CHECK((g.start - f(inst.start)).norm() <= 1e-9 * (1.0 + g.start.norm()));
  REQUIRE(g.initial_line);
  CHECK(distance(g.start, project_point_onto_line(g.start, *g.initial_line)) <=
        feasibility_tol(g.start));
  for (std::size_t i = 0; i < inst.requests.size(); ++i) {
    const Point q = f(inst.requests[i].at(1.5));
    CHECK(distance(q, project_point_onto_line(q, g.requests[i])) <= 1e-9 * (1.0 + q.norm()));
  }
}
