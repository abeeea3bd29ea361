#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "smoothctl/errors.hpp"
#include "smoothctl/polyhedral.hpp"

using namespace smoothctl;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Box unit_square() { return Box::make(v2(0, 0), v2(1, 1)); }

}  // namespace

TEST_CASE("Box::make validates bounds") {
  CHECK_THROWS_AS(Box::make(v2(0, 0), (Vec(3) << 1, 1, 1).finished()),
                  DimensionError);
  CHECK_THROWS_AS(Box::make(v2(2, 0), v2(1, 1)), ConfigError);
  Vec bad(2);
  bad << 0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Box::make(v2(0, 0), bad), ConfigError);
}

TEST_CASE("Box membership, clamp, center") {
  Box b = unit_square();
  CHECK(b.contains(v2(0.5, 0.5)));
  CHECK(b.contains(v2(1.0 + 1e-8, 0.0)));  // inside tolerance
  CHECK_FALSE(b.contains(v2(1.1, 0.0)));
  CHECK(b.clamp(v2(2, -3)) == v2(1, 0));
  CHECK(b.center() == v2(0.5, 0.5));
}

TEST_CASE("diameter is the corner-to-corner distance") {
  CHECK(diameter(unit_square()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const double pi = 3.14159265358979323846;
  Box uni = Box::make(v2(-4, -pi), v2(4, pi));
  CHECK(diameter(uni) ==
        doctest::Approx(std::sqrt(64.0 + 4.0 * pi * pi)).epsilon(1e-12));
}

TEST_CASE("vertices of a square are the four corners in lex order") {
  Polyhedron p(unit_square());
  auto verts = p.vertices();
  REQUIRE(verts.size() == 4);
  CHECK(verts[0] == v2(0, 0));
  CHECK(verts[1] == v2(0, 1));
  CHECK(verts[2] == v2(1, 0));
  CHECK(verts[3] == v2(1, 1));
}

TEST_CASE("a cutting halfspace produces a triangle") {
  Polyhedron p(unit_square());
  p.add_halfspace(Halfspace::make(v2(1, 1), 1.0));  // x + y <= 1
  auto verts = p.vertices();
  REQUIRE(verts.size() == 3);
  CHECK((verts[0] - v2(0, 0)).norm() < 1e-9);
  CHECK((verts[1] - v2(0, 1)).norm() < 1e-9);
  CHECK((verts[2] - v2(1, 0)).norm() < 1e-9);
}

TEST_CASE("project onto a cut square solves the KKT system") {
  Polyhedron p(unit_square());
  p.add_halfspace(Halfspace::make(v2(1, 1), 1.0));
  auto proj = p.project(v2(1, 1));
  REQUIRE(proj.has_value());
  CHECK((*proj - v2(0.5, 0.5)).norm() < 1e-9);
}

TEST_CASE("projection is the identity on feasible points") {
  Polyhedron p(unit_square());
  p.add_halfspace(Halfspace::make(v2(1, 1), 1.0));
  Vec inside = v2(0.25, 0.25);
  auto proj = p.project(inside);
  REQUIRE(proj.has_value());
  CHECK((*proj - inside).norm() < 1e-10);
}

TEST_CASE("projection beats every feasible grid point") {
  Polyhedron p(Box::make(v2(-1, -1), v2(1, 1)));
  p.add_halfspace(Halfspace::make(v2(1, 2), 0.5));
  p.add_halfspace(Halfspace::make(v2(-1, 1), 0.8));
  UniformSource src(21);
  for (int trial = 0; trial < 20; ++trial) {
    Vec target = src.next_in_box(v2(-2, -2), v2(2, 2));
    auto proj = p.project(target);
    REQUIRE(proj.has_value());
    REQUIRE(p.contains(*proj, 1e-7));
    double best = (*proj - target).squaredNorm();
    for (double x = -1; x <= 1; x += 0.05) {
      for (double y = -1; y <= 1; y += 0.05) {
        Vec g = v2(x, y);
        if (!p.contains(g, 1e-12)) continue;
        CHECK(best <= (g - target).squaredNorm() + 1e-9);
      }
    }
  }
}

TEST_CASE("many halfspaces take the clipping path and stay optimal") {
  // Regular 16-gon: enough constraints to cross the clip threshold.
  Polyhedron many(Box::make(v2(-2, -2), v2(2, 2)));
  const double pi = 3.14159265358979323846;
  for (int k = 0; k < 16; ++k) {
    double a = 2 * pi * k / 16;
    many.add_halfspace(Halfspace::make(v2(std::cos(a), std::sin(a)), 1.0));
  }
  UniformSource src(9);
  for (int trial = 0; trial < 30; ++trial) {
    Vec t = src.next_in_box(v2(-3, -3), v2(3, 3));
    auto pm = many.project(t);
    REQUIRE(pm.has_value());
    CHECK(many.contains(*pm, 1e-6));
    double best = (*pm - t).squaredNorm();
    for (double x = -1.01; x <= 1.01; x += 0.02) {
      for (double y = -1.01; y <= 1.01; y += 0.02) {
        Vec g = v2(x, y);
        if (!many.contains(g, 1e-12)) continue;
        CHECK(best <= (g - t).squaredNorm() + 1e-6);
      }
    }
  }
}

TEST_CASE("infeasible halfspaces give empty projection") {
  Polyhedron p(unit_square());
  p.add_halfspace(Halfspace::make(v2(1, 0), -1.0));  // x <= -1, impossible
  CHECK_FALSE(p.project(v2(0.5, 0.5)).has_value());
  CHECK(p.vertices().empty());
}

TEST_CASE("box-only polyhedra project by clamping in any dimension") {
  Vec lo(5), hi(5);
  lo << -1, -1, -1, -1, -1;
  hi << 1, 1, 1, 1, 1;
  Polyhedron p(Box::make(lo, hi));
  Vec t(5);
  t << 3, -2, 0.5, 1, -1.5;
  auto proj = p.project(t);
  REQUIRE(proj.has_value());
  Vec expect(5);
  expect << 1, -1, 0.5, 1, -1;
  CHECK((*proj - expect).norm() == 0.0);
}

TEST_CASE("general constraints above the dimension cap are rejected") {
  Vec lo(5), hi(5);
  lo.setConstant(-1);
  hi.setConstant(1);
  Polyhedron p(Box::make(lo, hi));
  Vec n(5);
  n << 1, 1, 1, 1, 1;
  p.add_halfspace(Halfspace::make(n, 1.0));
  CHECK_THROWS_AS(p.project(Vec::Zero(5)), UnsupportedDimensionError);
}

TEST_CASE("3-D box has eight vertices") {
  Vec lo(3), hi(3);
  lo << 0, 0, 0;
  hi << 1, 2, 3;
  Polyhedron p(Box::make(lo, hi));
  auto verts = p.vertices();
  CHECK(verts.size() == 8);
  CHECK(std::is_sorted(verts.begin(), verts.end(),
                       [](const Vec& a, const Vec& b) { return lex_less(a, b); }));
}
