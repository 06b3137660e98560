#include <cmath>
#include <random>

#include "builders.hpp"
#include "doctest.h"
#include "latspec/perron.hpp"

using namespace latspec;
using namespace testsupport;

namespace {

Eigen::MatrixXd random_irreducible(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  std::uniform_int_distribution<int> coin(0, 2);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (coin(rng) != 0) m(i, j) = unif(rng);
  // forced cycle keeps the support strongly connected
  for (int i = 0; i < n; ++i) {
    double w = unif(rng);
    m(i, (i + 1) % n) = w > 0.1 ? w : 0.5;
  }
  return m;
}

}  // namespace

TEST_CASE("perron: goldens") {
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  PerronResult r1 = perron_eigen(swap, 1e-12);
  CHECK(r1.theta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r1.right[0] == 1.0);
  CHECK(r1.right[1] == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXd m2(2, 2);
  m2 << 2, 1, 1, 2;
  PerronResult r2 = perron_eigen(m2, 1e-12);
  CHECK(r2.theta == doctest::Approx(3.0).epsilon(1e-12));

  Eigen::MatrixXd m3(2, 2);
  m3 << 1, 2, 3, 4;
  PerronResult r3 = perron_eigen(m3, 1e-12);
  // largest root of t^2 - 5t - 2
  CHECK(r3.theta ==
        doctest::Approx((5.0 + std::sqrt(33.0)) / 2.0).epsilon(1e-12));
}

TEST_CASE("perron: enclosure, residual and normalization invariants") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + int(rng() % 5);
    Eigen::MatrixXd m = random_irreducible(rng, n);
    PerronResult r = perron_eigen(m, 1e-12);
    CHECK(r.cw_upper - r.cw_lower <= 1e-12);
    CHECK(r.theta >= r.cw_lower);
    CHECK(r.theta <= r.cw_upper);
    CHECK(r.right.minCoeff() > 0.0);
    CHECK(r.left.minCoeff() > 0.0);
    CHECK(r.right[0] == 1.0);
    CHECK(r.left.dot(r.right) == doctest::Approx(1.0).epsilon(1e-12));
    double residual = (m * r.right - r.theta * r.right).lpNorm<Eigen::Infinity>();
    double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
    CHECK(residual <= 1e-11 * std::max(1.0, scale));
  }
}

TEST_CASE("perron: matches the characteristic polynomial oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + int(rng() % 5);  // up to 6x6
    Eigen::MatrixXd m = random_irreducible(rng, n);
    double theta = perron_eigen(m, 1e-12).theta;
    double oracle = charpoly_largest_root(m);
    CHECK(theta == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("perron: row-sum bracketing holds exactly") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + int(rng() % 6);
    Eigen::MatrixXd m = random_irreducible(rng, n);
    PerronResult r = perron_eigen(m, 1e-10);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += m(i, j);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    CHECK(r.theta >= lo);
    CHECK(r.theta <= hi);
  }
}

TEST_CASE("perron: increasing an entry strictly increases theta") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + int(rng() % 3);
    Eigen::MatrixXd m = random_irreducible(rng, n);
    double base = perron_eigen(m, 1e-13).theta;
    int i = int(rng() % n);
    int j = int(rng() % n);
    Eigen::MatrixXd bumped = m;
    bumped(i, j) += 0.5;
    CHECK(perron_eigen(bumped, 1e-13).theta > base);
  }
}

TEST_CASE("perron: transpose has the same theta and swapped vectors") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + int(rng() % 4);
    Eigen::MatrixXd m = random_irreducible(rng, n);
    PerronResult r = perron_eigen(m, 1e-12);
    PerronResult rt = perron_eigen(m.transpose(), 1e-12);
    CHECK(std::abs(r.theta - rt.theta) <= 2e-12 * std::max(1.0, r.theta));
    Eigen::VectorXd left_renorm = r.left / r.left[0];
    for (int i = 0; i < n; ++i)
      CHECK(rt.right[i] ==
            doctest::Approx(left_renorm[i]).epsilon(1e-9));
  }
}

TEST_CASE("perron: error paths") {
  // reducible with distinct diagonal blocks never converges
  Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(2, 2);
  blocks(0, 0) = 3.0;
  blocks(1, 1) = 2.0;
  try {
    perron_eigen(blocks, 1e-12, 200);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations == 200);
    CHECK(e.best_lower <= 3.0);
    CHECK(e.best_upper >= 3.0);
  }

  // zero row trips the ratio check immediately
  Eigen::MatrixXd zrow = Eigen::MatrixXd::Zero(2, 2);
  zrow(0, 1) = 1.0;
  CHECK_THROWS_AS(perron_eigen(zrow, 1e-12), IrreducibilityError);

  Eigen::MatrixXd neg(1, 1);
  neg << -1.0;
  CHECK_THROWS_AS(perron_eigen(neg, 1e-12), Error);
}

TEST_CASE("perron: custom start vectors reach the same eigenpair") {
  std::mt19937_64 rng(46);
  Eigen::MatrixXd m = random_irreducible(rng, 4);
  PerronResult a = perron_eigen(m, 1e-13);
  Eigen::VectorXd start(4);
  start << 0.3, 1.7, 0.9, 2.4;
  PerronResult b = perron_eigen(m, 1e-13, 100000, 0, start);
  for (int i = 0; i < 4; ++i)
    CHECK(a.right[i] == doctest::Approx(b.right[i]).epsilon(1e-10));
}
