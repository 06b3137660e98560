#include <cmath>
#include <random>

#include "builders.hpp"
#include "doctest.h"
#include "latspec/graph.hpp"

using namespace latspec;
using namespace testsupport;

namespace {

bool has_violation(const ValidationReport& r, const std::string& code) {
  for (const Violation& v : r.violations)
    if (v.code == code) return true;
  return false;
}

WindowFunction window_pow2(std::int64_t lo, std::int64_t hi) {
  WindowFunction f = make_window(Box{{lo}, {hi}}, 1);
  for (std::int64_t z = lo; z <= hi; ++z)
    f.ref({z}, 0) = std::pow(2.0, double(z));
  return f;
}

}  // namespace

TEST_CASE("graph: line validates cleanly") {
  CHECK(validate(line_graph()).ok());
  CHECK(validate(dimer_graph()).ok());
  CHECK(validate(z2_graph()).ok());
}

TEST_CASE("graph: index-2 cycle lattice is rejected") {
  PeriodicGraph g;
  g.dimension = 2;
  g.vertex_names = {"a"};
  g.potential = {0.0};
  g.edges = {{0, 0, {2, 0}, 1.0},
             {0, 0, {-2, 0}, 1.0},
             {0, 0, {0, 1}, 1.0},
             {0, 0, {0, -1}, 1.0}};
  g.base_vertex = 0;
  ValidationReport r = validate(g);
  CHECK_FALSE(r.ok());
  CHECK(has_violation(r, "cycle_lattice"));
}

TEST_CASE("graph: missing reverse edge is rejected") {
  PeriodicGraph g = line_graph();
  g.edges.pop_back();  // drop the -1 edge
  ValidationReport r = validate(g);
  CHECK_FALSE(r.ok());
  CHECK(has_violation(r, "support_symmetry"));
}

TEST_CASE("graph: assorted invariant violations carry their codes") {
  PeriodicGraph g = line_graph();
  g.edges.push_back({0, 0, {1}, 1.0});
  CHECK(has_violation(validate(g), "edge_duplicate"));

  g = line_graph();
  g.edges[0].weight = -2.0;
  CHECK(has_violation(validate(g), "weight_positive"));

  g = line_graph();
  g.edges[0].offset = {1, 0};
  CHECK(has_violation(validate(g), "offset_length"));

  g = line_graph();
  g.base_vertex = 3;
  CHECK(has_violation(validate(g), "base_vertex"));

  PeriodicGraph two = dimer_graph();
  two.edges.clear();
  CHECK(has_violation(validate(two), "quotient_connected"));
}

TEST_CASE("graph: degree goldens") {
  CHECK(degree(line_graph(), 0) == 2.0);
  CHECK(degree(line_graph(1.0, 1.0, 5.0), 0) == 7.0);
  PeriodicGraph d1 = dimer_graph();
  CHECK(degree(d1, "a") == 3.0);
  CHECK(degree(d1, "b") == 3.0);
  CHECK_THROWS_AS(degree(d1, "zz"), KeyError);
  CHECK_THROWS_AS(degree(d1, 7), KeyError);
}

TEST_CASE("graph: operator application goldens") {
  PeriodicGraph g = line_graph();

  WindowFunction ones = make_window(Box{{-2}, {2}}, 1);
  for (std::int64_t z = -2; z <= 2; ++z) ones.ref({z}, 0) = 1.0;
  CHECK(apply_operator(g, ones, {{0}, 0}, 0.0) == 0.0);

  WindowFunction f = window_pow2(-2, 2);
  CHECK(apply_operator(g, f, {{0}, 0}, 0.0) == doctest::Approx(-0.5).epsilon(1e-15));

  WindowFunction ind = make_window(Box{{-2}, {2}}, 1);
  ind.ref({0}, 0) = 1.0;
  CHECK(apply_operator(g, ind, {{0}, 0}, 0.0) == 2.0);

  CHECK_THROWS_AS(apply_operator(g, f, {{2}, 0}, 0.0), WindowTooSmall);
  CHECK_THROWS_AS(apply_operator(g, f, {{5}, 0}, 0.0), WindowTooSmall);
}

TEST_CASE("graph: operator on the constant equals the potential") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    PeriodicGraph g = random_graph(rng, 1 + int(rng() % 2), 4, true);
    REQUIRE(validate(g).ok());
    WindowFunction ones = make_window(sym_box(g.dimension, 2), g.vertex_count());
    for (double& v : ones.values) v = 1.0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      Site at{Offset(g.dimension, 0), v};
      CHECK(apply_operator(g, ones, at, 0.0) ==
            doctest::Approx(g.potential[v]).epsilon(1e-14));
    }
  }
}

TEST_CASE("graph: shift relabels the box and composes") {
  WindowFunction f = window_pow2(-2, 2);
  WindowFunction same = shift(f, {0});
  CHECK(same.box.lo == f.box.lo);
  CHECK(same.values == f.values);

  WindowFunction s1 = shift(f, {1});
  CHECK(s1.box.lo == Offset{-1});
  CHECK(s1.box.hi == Offset{3});
  // (T_1 f)(z) = f(z - 1) = 2^{z-1}
  for (std::int64_t z = -1; z <= 3; ++z)
    CHECK(s1.at({z}, 0) == std::pow(2.0, double(z - 1)));

  WindowFunction s2 = shift(shift(f, {1}), {2});
  WindowFunction s3 = shift(f, {3});
  CHECK(s2.box.lo == s3.box.lo);
  CHECK(s2.values == s3.values);
}

TEST_CASE("graph: harnack goldens on the line") {
  PeriodicGraph g = line_graph();
  HarnackBound b1 = harnack_bound(g, {{0}, 0}, {{1}, 0}, 0.0);
  CHECK(b1.constant == 0.5);
  CHECK(b1.witness_path.size() == 2);

  HarnackBound b2 = harnack_bound(g, {{0}, 0}, {{2}, 0}, 0.0);
  CHECK(b2.constant == 0.25);

  HarnackBound b3 = harnack_bound(g, {{3}, 0}, {{3}, 0}, 0.0);
  CHECK(b3.constant == 1.0);
  CHECK(b3.witness_path.empty());
}

TEST_CASE("graph: harnack error paths") {
  PeriodicGraph g = line_graph();
  CHECK_THROWS_AS(harnack_bound(g, {{0}, 0}, {{1}, 0}, 2.0), DegenerateDegree);
  CHECK_THROWS_AS(harnack_bound(g, {{0}, 0}, {{1}, 0}, 5.0), DegenerateDegree);

  // offsets +-2 and +-3 span Z but leave no path inside a 2-cell window
  PeriodicGraph far;
  far.dimension = 1;
  far.vertex_names = {"a"};
  far.potential = {0.0};
  far.edges = {{0, 0, {2}, 1.0},
               {0, 0, {-2}, 1.0},
               {0, 0, {3}, 1.0},
               {0, 0, {-3}, 1.0}};
  far.base_vertex = 0;
  REQUIRE(validate(far).ok());
  CHECK_THROWS_AS(harnack_bound(far, {{0}, 0}, {{1}, 0}, 0.0, Box{{0}, {1}}),
                  NoPathInWindow);
  HarnackBound ok = harnack_bound(far, {{0}, 0}, {{1}, 0}, 0.0, Box{{-3}, {4}});
  CHECK(ok.constant > 0.0);
}

TEST_CASE("graph: harnack bound certifies sampled superharmonic values") {
  // f(z) = 2^z is (-0.5)-harmonic for the line; the bound at lambda = -0.5
  // must hold at sampled pairs
  PeriodicGraph g = line_graph();
  auto f = [](std::int64_t z) { return std::pow(2.0, double(z)); };
  for (std::int64_t from = -2; from <= 2; ++from)
    for (std::int64_t to = -2; to <= 2; ++to) {
      HarnackBound hb = harnack_bound(g, {{from}, 0}, {{to}, 0}, -0.5);
      CHECK(f(from) >= hb.constant * f(to) - 1e-12);
    }
  // tightness at lambda = 0 between adjacent cells
  HarnackBound tight = harnack_bound(g, {{0}, 0}, {{1}, 0}, 0.0);
  CHECK(std::abs(f(0) - tight.constant * f(1)) <= 1e-12);
}
