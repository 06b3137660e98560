#include <cmath>
#include <random>

#include "builders.hpp"
#include "doctest.h"
#include "latspec/floquet.hpp"

using namespace latspec;
using namespace testsupport;

TEST_CASE("floquet: assembled goldens") {
  FloquetMatrix q0 = assemble_q(line_graph(), {0.0});
  CHECK(q0.entries.rows() == 1);
  CHECK(q0.entries(0, 0) == 2.0);
  CHECK(q0.max_degree == 2.0);

  FloquetMatrix q1 = assemble_q(line_graph(), {std::log(2.0)});
  CHECK(q1.entries(0, 0) == doctest::Approx(2.5).epsilon(1e-15));

  for (double a : {-0.7, 0.0, 0.3, 1.1}) {
    FloquetMatrix qd = assemble_q(dimer_graph(), {a});
    CHECK(qd.entries(0, 0) == 0.0);
    CHECK(qd.entries(1, 1) == 0.0);
    CHECK(qd.entries(0, 1) ==
          doctest::Approx(1.0 + 2.0 * std::exp(-a)).epsilon(1e-15));
    CHECK(qd.entries(1, 0) ==
          doctest::Approx(1.0 + 2.0 * std::exp(a)).epsilon(1e-15));
  }
}

TEST_CASE("floquet: overflow guard names the edge") {
  CHECK_THROWS_AS(assemble_q(line_graph(), {800.0}), OverflowError);
  CHECK_THROWS_AS(assemble_q(line_graph(), {-701.0}), OverflowError);
}

TEST_CASE("floquet: irreducibility") {
  CHECK(is_irreducible(assemble_q(line_graph(), {0.0})));
  CHECK(is_irreducible(assemble_q(dimer_graph(), {0.4})));

  FloquetMatrix synthetic;
  synthetic.entries = Eigen::MatrixXd::Identity(2, 2);
  CHECK_FALSE(is_irreducible(synthetic));
}

TEST_CASE("floquet: support is strongly connected for random valid graphs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    PeriodicGraph g = random_graph(rng, 1 + int(rng() % 2), 4, true);
    REQUIRE(validate(g).ok());
    std::vector<double> alpha(g.dimension);
    for (double& a : alpha) a = dyadic(rng, -2.0, 2.0);
    CHECK(is_irreducible(assemble_q(g, alpha)));
  }
}

TEST_CASE("floquet: ground state operator goldens") {
  Eigen::MatrixXd g0 = ground_state_operator(line_graph(), {0.0});
  CHECK(g0(0, 0) == 0.0);

  Eigen::MatrixXd g1 = ground_state_operator(line_graph(), {std::log(2.0)});
  CHECK(g1(0, 0) == doctest::Approx(-0.5).epsilon(1e-15));

  Eigen::MatrixXd gd = ground_state_operator(dimer_graph(), {0.0});
  CHECK(gd(0, 0) == 3.0);
  CHECK(gd(1, 1) == 3.0);
  CHECK(gd(0, 1) == -3.0);
  CHECK(gd(1, 0) == -3.0);
}

TEST_CASE("floquet: ground state operator is the exact complement of Q") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    PeriodicGraph g = random_graph(rng, 1 + int(rng() % 2), 4, true);
    std::vector<double> alpha(g.dimension);
    for (double& a : alpha) a = dyadic(rng, -1.5, 1.5);
    FloquetMatrix q = assemble_q(g, alpha);
    Eigen::MatrixXd gs = ground_state_operator(g, alpha);
    for (int i = 0; i < q.entries.rows(); ++i)
      for (int j = 0; j < q.entries.cols(); ++j) {
        double expected =
            (i == j) ? q.max_degree - q.entries(i, j) : -q.entries(i, j);
        CHECK(gs(i, j) == expected);
      }
  }
}

TEST_CASE("floquet: symmetric weights give Q(-a) = Q(a)^T") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    PeriodicGraph g = random_graph(rng, 1 + int(rng() % 2), 4, true);
    // symmetrize the weights
    for (Edge& e : g.edges) {
      for (Edge& r : g.edges) {
        Offset neg(e.offset.size());
        for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -e.offset[k];
        if (r.tail == e.head && r.head == e.tail && r.offset == neg)
          r.weight = e.weight;
      }
    }
    REQUIRE(validate(g).ok());
    std::vector<double> alpha(g.dimension);
    for (double& a : alpha) a = dyadic(rng, -1.5, 1.5);
    std::vector<double> neg_alpha(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) neg_alpha[k] = -alpha[k];
    Eigen::MatrixXd lhs = assemble_q(g, neg_alpha).entries;
    Eigen::MatrixXd rhs = assemble_q(g, alpha).entries.transpose();
    for (int i = 0; i < lhs.rows(); ++i)
      for (int j = 0; j < lhs.cols(); ++j)
        CHECK(lhs(i, j) ==
              doctest::Approx(rhs(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("floquet: entries are log-convex along lines") {
  std::mt19937_64 rng(34);
  PeriodicGraph g = dimer_graph();
  for (int trial = 0; trial < 50; ++trial) {
    double a1 = dyadic(rng, -2.0, 2.0);
    double a2 = dyadic(rng, -2.0, 2.0);
    Eigen::MatrixXd qa = assemble_q(g, {a1}).entries;
    Eigen::MatrixXd qb = assemble_q(g, {a2}).entries;
    Eigen::MatrixXd qm = assemble_q(g, {0.5 * (a1 + a2)}).entries;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (qa(i, j) == 0.0) continue;
        CHECK(qm(i, j) <=
              std::sqrt(qa(i, j)) * std::sqrt(qb(i, j)) * (1.0 + 1e-12));
      }
  }
}
