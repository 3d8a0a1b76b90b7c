#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mcboost/regularizers.hpp"

using namespace mcboost;

TEST_CASE("norm values by hand") {
  MatrixXd w(3, 2);
  w << 3.0, -4.0, 0.0, 0.0, 1.0, 2.0;
  CHECK(norm_value(RegKind::L1, w) == doctest::Approx(10.0));
  CHECK(norm_value(RegKind::L12, w) == doctest::Approx(5.0 + std::sqrt(5.0)));
  CHECK(norm_value(RegKind::L1Inf, w) == doctest::Approx(4.0 + 2.0));
}

TEST_CASE("prox maps by hand") {
  VectorXd v(2);
  v << 3.0, -1.0;

  const VectorXd soft = prox_row(RegKind::L1, v, 1.5);
  CHECK(soft[0] == doctest::Approx(1.5));
  CHECK(soft[1] == doctest::Approx(0.0));

  VectorXd v34(2);
  v34 << 3.0, 4.0;
  const VectorXd block = prox_row(RegKind::L12, v34, 2.5);  // shrink by half
  CHECK(block[0] == doctest::Approx(1.5));
  CHECK(block[1] == doctest::Approx(2.0));
  CHECK(prox_row(RegKind::L12, v34, 10.0).isZero(0.0));

  VectorXd v31(2);
  v31 << 3.0, 1.0;
  const VectorXd inf = prox_row(RegKind::L1Inf, v31, 1.0);
  CHECK(inf[0] == doctest::Approx(2.0));
  CHECK(inf[1] == doctest::Approx(1.0));
}

TEST_CASE("l1 ball projection") {
  VectorXd v(3);
  v << 3.0, 1.0, -1.0;
  const VectorXd p = project_l1_ball(v, 1.0);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));
  CHECK(p[2] == doctest::Approx(0.0));
  // already inside: unchanged
  CHECK(project_l1_ball(p, 2.0) == p);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    VectorXd x(5);
    for (int i = 0; i < 5; ++i) x[i] = unif(rng);
    const double radius = std::abs(unif(rng)) + 0.01;
    const VectorXd proj = project_l1_ball(x, radius);
    CHECK(proj.cwiseAbs().sum() <= radius + 1e-10);
    // no feasible perturbation may be closer
    for (int probe = 0; probe < 20; ++probe) {
      VectorXd cand(5);
      for (int i = 0; i < 5; ++i) cand[i] = unif(rng);
      if (cand.cwiseAbs().sum() > radius) cand *= radius / cand.cwiseAbs().sum();
      CHECK((x - proj).squaredNorm() <= (x - cand).squaredNorm() + 1e-10);
    }
  }
}

namespace {

// Optimality of p = prox(kappa * Omega)(v) means v - p lies in kappa
// times the subdifferential of the row norm at p.
bool prox_certificate(RegKind kind, const VectorXd& v, const VectorXd& p, double kappa,
                      double tol) {
  const VectorXd g = v - p;
  switch (kind) {
    case RegKind::L1: {
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (p[i] != 0.0) {
          if (std::abs(g[i] - kappa * (p[i] > 0.0 ? 1.0 : -1.0)) > tol) return false;
        } else if (std::abs(g[i]) > kappa + tol) {
          return false;
        }
      }
      return true;
    }
    case RegKind::L12: {
      if (p.isZero(0.0)) return g.norm() <= kappa + tol;
      return (g - kappa * p / p.norm()).norm() <= tol;
    }
    case RegKind::L1Inf: {
      // subdifferential of the max norm: l1 norm at most kappa, aligned with
      // the max coordinates (certified through the inner product)
      if (g.cwiseAbs().sum() > kappa + tol) return false;
      if (p.isZero(0.0)) return true;
      return g.dot(p) >= kappa * p.cwiseAbs().maxCoeff() - tol;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("prox satisfies the subgradient certificate") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> unif(-4.0, 4.0);
  std::uniform_int_distribution<int> dim(1, 6);
  for (RegKind kind : {RegKind::L1, RegKind::L12, RegKind::L1Inf}) {
    for (int trial = 0; trial < 300; ++trial) {
      VectorXd v(dim(rng));
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = unif(rng);
      const double kappa = std::abs(unif(rng)) * 0.5 + 1e-3;
      const VectorXd p = prox_row(kind, v, kappa);
      CHECK(prox_certificate(kind, v, p, kappa, 1e-8));
    }
  }
}

TEST_CASE("prox beats a dense grid in two dimensions") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (RegKind kind : {RegKind::L1, RegKind::L12, RegKind::L1Inf}) {
    for (int trial = 0; trial < 5; ++trial) {
      const double v0 = unif(rng), v1 = unif(rng);
      const double kappa = std::abs(unif(rng)) * 0.4 + 0.05;
      auto objective = [&](double a, double b) {
        double norm = 0.0;
        switch (kind) {
          case RegKind::L1: norm = std::abs(a) + std::abs(b); break;
          case RegKind::L12: norm = std::hypot(a, b); break;
          case RegKind::L1Inf: norm = std::max(std::abs(a), std::abs(b)); break;
        }
        return kappa * norm + 0.5 * ((a - v0) * (a - v0) + (b - v1) * (b - v1));
      };
      double best = std::numeric_limits<double>::infinity();
      const double step = 0.004;
      for (double a = -2.5; a <= 2.5; a += step)
        for (double b = -2.5; b <= 2.5; b += step) best = std::min(best, objective(a, b));
      VectorXd v(2);
      v << v0, v1;
      const VectorXd p = prox_row(kind, v, kappa);
      CHECK(objective(p[0], p[1]) <= best + 1e-9);
      // the grid brackets the optimum up to (slope x step) resolution
      CHECK(best <= objective(p[0], p[1]) + 5e-4);
    }
  }
}

TEST_CASE("matrix prox equals row-by-row prox") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (RegKind kind : {RegKind::L1, RegKind::L12, RegKind::L1Inf}) {
    MatrixXd v(4, 3);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 3; ++j) v(i, j) = unif(rng);
    const MatrixXd p = prox_rows(kind, v, 0.7);
    for (Eigen::Index i = 0; i < 4; ++i) {
      const VectorXd row = prox_row(kind, v.row(i).transpose(), 0.7);
      CHECK((p.row(i).transpose() - row).norm() == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("stopping margins by hand") {
  VectorXd e(3);
  e << 1.0, -2.0, 3.0;
  CHECK(stopping_margin(RegKind::L1, e) == doctest::Approx(3.0));
  CHECK(stopping_margin(RegKind::L12, e) == doctest::Approx(std::sqrt(14.0)));
  CHECK(stopping_margin(RegKind::L1Inf, e) == doctest::Approx(4.0));
}
