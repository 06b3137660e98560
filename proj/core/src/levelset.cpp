#include "latspec/levelset.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "latspec/dispersion.hpp"
#include "latspec/json_io.hpp"

namespace latspec {

namespace {

double value_at(const PeriodicGraph& g, const std::vector<double>& alpha,
                double tol) {
  return spectral_lower_bound(g, alpha, tol);
}

std::vector<double> ray_point(const std::vector<double>& center,
                              const std::vector<double>& dir, double t) {
  std::vector<double> p(center.size());
  for (std::size_t k = 0; k < center.size(); ++k)
    p[k] = center[k] + t * dir[k];
  return p;
}

// Rational approximation for the inverse standard normal CDF (Acklam);
// plenty for direction generation.
double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p <= 1 - plow) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  }
  q = std::sqrt(-2 * std::log(1 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

std::vector<std::vector<double>> sphere_directions(int d, int n) {
  std::vector<std::vector<double>> dirs;
  if (d == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  if (d == 2) {
    for (int j = 0; j < n; ++j) {
      double phi = 2.0 * std::numbers::pi * double(j) / double(n);
      dirs.push_back({std::cos(phi), std::sin(phi)});
    }
    return dirs;
  }
  if (d == 3) {
    // spherical Fibonacci lattice
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int j = 0; j < n; ++j) {
      double z = 1.0 - 2.0 * (double(j) + 0.5) / double(n);
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double phi = 2.0 * std::numbers::pi * double(j) / golden;
      dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return dirs;
  }
  // d > 3: Kronecker sequence on [0,1)^d pushed through the inverse normal
  // CDF, then normalized; deterministic and reasonably uniform.
  static const double primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                  23, 29, 31, 37, 41, 43, 47, 53};
  for (int j = 0; j < n; ++j) {
    std::vector<double> v(d);
    double norm2 = 0.0;
    for (int k = 0; k < d; ++k) {
      double gamma = std::sqrt(primes[k % 16]);
      double u = std::fmod((double(j) + 1.0) * gamma, 1.0);
      u = std::min(std::max(u, 1e-9), 1.0 - 1e-9);
      v[k] = inverse_normal_cdf(u);
      norm2 += v[k] * v[k];
    }
    double norm = std::sqrt(norm2);
    if (norm == 0.0) {
      v.assign(d, 0.0);
      v[0] = 1.0;
      norm = 1.0;
    }
    for (int k = 0; k < d; ++k) v[k] /= norm;
    dirs.push_back(std::move(v));
  }
  return dirs;
}

}  // namespace

double radial_solve(const PeriodicGraph& g, const std::vector<double>& center,
                    const std::vector<double>& direction, double lambda,
                    double tol) {
  if (!(tol > 0.0)) throw Error("radial_solve: tol must be positive");
  const double pf_tol = std::min(1e-12, 0.1 * tol);
  double at_center = value_at(g, center, pf_tol);
  if (!(lambda < at_center - tol))
    throw NoSolution("radial_solve: lambda is not below Lambda(center) - tol");

  double lo = 0.0;
  double hi = 1.0;
  while (value_at(g, ray_point(center, direction, hi), pf_tol) >= lambda) {
    lo = hi;
    hi *= 2.0;  // an OverflowError from the Floquet assembly ends a runaway
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double v = value_at(g, ray_point(center, direction, mid), pf_tol);
    if (std::abs(v - lambda) <= tol) return mid;
    if (v > lambda)
      lo = mid;
    else
      hi = mid;
  }
  throw ConvergenceError("radial_solve: bisection failed to localize lambda",
                         200);
}

LevelSet trace_level_set(const PeriodicGraph& g, double lambda,
                         int n_directions, double tol) {
  const int d = g.dimension;
  if (d == 0)
    throw EmptySet("trace_level_set: level sets are empty for d = 0");
  if (n_directions < 1) throw Error("trace_level_set: need directions");

  Lambda0Result top = find_lambda0(g, std::min(1e-9, tol));
  if (!(lambda < top.lambda0 - tol))
    throw NoSolution(
        "trace_level_set: lambda is within tol of lambda_0 or above");

  LevelSet set;
  set.lambda = lambda;
  set.center = top.alpha_star;
  set.directions = sphere_directions(d, n_directions);
  for (const auto& dir : set.directions) {
    double r = radial_solve(g, set.center, dir, lambda, tol);
    set.radii.push_back(r);
    set.points.push_back(ray_point(set.center, dir, r));
  }
  return set;
}

std::string level_set_csv(const LevelSet& set) {
  std::ostringstream os;
  const std::size_t d = set.center.size();
  for (std::size_t k = 0; k < d; ++k) os << "alpha_" << (k + 1) << ",";
  os << "lambda\n";
  for (const auto& p : set.points) {
    for (std::size_t k = 0; k < d; ++k) os << format_number(p[k]) << ",";
    os << format_number(set.lambda) << "\n";
  }
  return os.str();
}

}  // namespace latspec
