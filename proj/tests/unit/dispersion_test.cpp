#include <cmath>
#include <random>

#include "builders.hpp"
#include "doctest.h"
#include "latspec/dispersion.hpp"

using namespace latspec;
using namespace testsupport;

TEST_CASE("dispersion: line and dimer goldens") {
  PeriodicGraph line = line_graph();
  CHECK(lambda_at(line, {0.0}).lambda == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(lambda_at(line, {1.0}).lambda ==
        doctest::Approx(2.0 - 2.0 * std::cosh(1.0)).epsilon(1e-12));

  PeriodicGraph d1 = dimer_graph();
  CHECK(lambda_at(d1, {0.0}).lambda == doctest::Approx(0.0).epsilon(1e-12));
  for (double a : {-1.3, 0.4, 2.0})
    CHECK(lambda_at(d1, {a}).lambda ==
          doctest::Approx(3.0 - std::sqrt(5.0 + 4.0 * std::cosh(a)))
              .epsilon(1e-11));
}

TEST_CASE("dispersion: gradient goldens") {
  PeriodicGraph line = line_graph();
  CHECK(lambda_gradient(line, {0.0})[0] == 0.0);
  CHECK(lambda_gradient(line, {1.0})[0] ==
        doctest::Approx(-2.0 * std::sinh(1.0)).epsilon(1e-11));
  CHECK(lambda_gradient(z2_graph(), {0.0, 0.0})[0] == 0.0);
  CHECK(lambda_gradient(z2_graph(), {0.0, 0.0})[1] == 0.0);
}

TEST_CASE("dispersion: gradient matches central differences") {
  std::mt19937_64 rng(51);
  const double h = 1e-5;
  for (int trial = 0; trial < 25; ++trial) {
    PeriodicGraph g = random_graph(rng, 1 + int(rng() % 2), 4, true);
    REQUIRE(validate(g).ok());
    std::vector<double> alpha(g.dimension);
    for (double& a : alpha) a = dyadic(rng, -1.5, 1.5);
    std::vector<double> grad = lambda_gradient(g, alpha, 1e-13);
    for (int k = 0; k < g.dimension; ++k) {
      std::vector<double> up = alpha, dn = alpha;
      up[k] += h;
      dn[k] -= h;
      double fd = (lambda_at(g, up, 1e-13).lambda -
                   lambda_at(g, dn, 1e-13).lambda) /
                  (2.0 * h);
      CHECK(std::abs(fd - grad[k]) <= 1e-5 * std::max(1.0, std::abs(grad[k])));
    }
  }
}

TEST_CASE("dispersion: find_lambda0 goldens") {
  Lambda0Result line = find_lambda0(line_graph());
  CHECK(std::abs(line.lambda0) <= 1e-8);
  CHECK(std::abs(line.alpha_star[0]) <= 1e-6);

  Lambda0Result shifted = find_lambda0(line_graph(1.0, 1.0, 2.5));
  CHECK(shifted.lambda0 == doctest::Approx(2.5).epsilon(1e-8));

  Lambda0Result z2 = find_lambda0(z2_graph());
  CHECK(std::abs(z2.lambda0) <= 1e-8);
  CHECK(std::abs(z2.alpha_star[0]) <= 1e-6);
  CHECK(std::abs(z2.alpha_star[1]) <= 1e-6);

  // directed line: lambda0 = 3 - 2 sqrt 2 at alpha* = -ln(2)/2
  Lambda0Result asym = find_lambda0(asymmetric_line());
  CHECK(asym.lambda0 ==
        doctest::Approx(3.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(asym.alpha_star[0] ==
        doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("dispersion: maximizer is independent of the start") {
  std::mt19937_64 rng(52);
  PeriodicGraph g = random_graph(rng, 2, 3, true);
  REQUIRE(validate(g).ok());
  Lambda0Result ref = find_lambda0(g, 1e-9, 2000);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> start(g.dimension);
    for (double& s : start) s = dyadic(rng, -2.0, 2.0);
    Lambda0Result r = find_lambda0(g, 1e-9, 2000, start);
    CHECK(r.lambda0 == doctest::Approx(ref.lambda0).epsilon(1e-9));
    for (int k = 0; k < g.dimension; ++k)
      CHECK(std::abs(r.alpha_star[k] - ref.alpha_star[k]) <= 1e-6);
  }
}

TEST_CASE("dispersion: strict midpoint concavity on random pairs") {
  std::mt19937_64 rng(53);
  int done = 0;
  while (done < 60) {
    PeriodicGraph g = random_graph(rng, 1 + int(rng() % 2), 4, true);
    std::vector<double> a1(g.dimension), a2(g.dimension);
    double dist2 = 0.0;
    for (int k = 0; k < g.dimension; ++k) {
      a1[k] = dyadic(rng, -2.0, 2.0);
      a2[k] = dyadic(rng, -2.0, 2.0);
      dist2 += (a1[k] - a2[k]) * (a1[k] - a2[k]);
    }
    if (dist2 < 0.01) continue;
    ++done;
    std::vector<double> mid(g.dimension);
    for (int k = 0; k < g.dimension; ++k) mid[k] = 0.5 * (a1[k] + a2[k]);
    double l1 = lambda_at(g, a1, 1e-13).lambda;
    double l2 = lambda_at(g, a2, 1e-13).lambda;
    double lm = lambda_at(g, mid, 1e-13).lambda;
    CHECK(lm >= 0.5 * l1 + 0.5 * l2 + 1e-12);
  }
}

TEST_CASE("dispersion: evenness for symmetric weights") {
  PeriodicGraph line = line_graph();
  for (double a : {0.3, 1.0, 2.2})
    CHECK(lambda_at(line, {a}).lambda ==
          doctest::Approx(lambda_at(line, {-a}).lambda).epsilon(1e-10));
}

TEST_CASE("dispersion: lambda never exceeds the max degree") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    PeriodicGraph g = random_graph(rng, 1 + int(rng() % 2), 3, true);
    std::vector<double> alpha(g.dimension);
    for (double& a : alpha) a = dyadic(rng, -2.0, 2.0);
    CHECK(lambda_at(g, alpha).lambda <= max_degree(g));
  }
}

TEST_CASE("dispersion: spectral lower bound is tight only at the maximizer") {
  PeriodicGraph line = line_graph();
  CHECK(spectral_lower_bound(line, {0.0}) == doctest::Approx(0.0));
  CHECK(spectral_lower_bound(line, {1.0}) ==
        doctest::Approx(2.0 - 2.0 * std::cosh(1.0)).epsilon(1e-12));
  CHECK(spectral_lower_bound(line, {1.0}) < 0.0);
}

TEST_CASE("dispersion: d = 0 takes the single Floquet matrix") {
  PeriodicGraph torus;
  torus.dimension = 0;
  torus.vertex_names = {"u", "v"};
  torus.potential = {0.0, 0.0};
  torus.edges = {{0, 1, {}, 1.0}, {1, 0, {}, 1.0}};
  torus.base_vertex = 0;
  REQUIRE(validate(torus).ok());
  Lambda0Result r = find_lambda0(torus);
  CHECK(r.alpha_star.empty());
  CHECK(r.lambda0 == doctest::Approx(0.0).epsilon(1e-12));
}
