#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "navsim/errors.hpp"
#include "navsim/potential.hpp"
#include "oracles.hpp"

using namespace navsim;

namespace {

PointWorld pw_of(Vec2 pd, std::vector<Vec2> obstacles) {
  PointWorld pw;
  pw.destination_point = pd;
  pw.obstacle_points = std::move(obstacles);
  return pw;
}

// Literal textbook form, for cross-checking the log-space implementation.
double phi_literal(const Vec2& h, const PointWorld& pw, int k) {
  long double v = std::log(static_cast<long double>(norm_sq(h - pw.destination_point)));
  for (const Vec2& p : pw.obstacle_points) v -= std::log(static_cast<long double>(norm_sq(h - p))) / k;
  return static_cast<double>(v);
}

}  // namespace

TEST(Sigma, Values) {
  EXPECT_DOUBLE_EQ(sigma(0.0), 0.5);
  EXPECT_NEAR(sigma(std::log(3.0)), 0.75, 1e-15);
  EXPECT_EQ(sigma(-std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_EQ(sigma(std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_EQ(sigma(800.0), 1.0);
  EXPECT_GT(sigma(-700.0), 0.0);
}

TEST(PhiK, Values) {
  EXPECT_DOUBLE_EQ(phi_k({1, 0}, pw_of({0, 0}, {}), 1), 0.0);
  EXPECT_EQ(phi_k({0, 0}, pw_of({0, 0}, {}), 1), -std::numeric_limits<double>::infinity());
  const PointWorld pw = pw_of({1, 0}, {{0, 2}});
  EXPECT_NEAR(phi_k({0, 0}, pw, 2), -0.5L * std::log(4.0L), 1e-15);
  EXPECT_NEAR(phi_k({0, 0}, pw, 2), -0.6931471805599453, 1e-15);
  EXPECT_EQ(phi_k({0, 2}, pw, 2), std::numeric_limits<double>::infinity());
}

TEST(PhiK, MatchesLiteralForm) {
  std::mt19937_64 rng(1);
  for (int w = 0; w < 20; ++w) {
    const PointWorld pw = oracle::random_point_world(rng, w % 7);
    for (int i = 0; i < 50; ++i) {
      const Vec2 h = oracle::random_free_point(rng, pw);
      EXPECT_NEAR(phi_k(h, pw, w % 7 + 1), phi_literal(h, pw, w % 7 + 1), 1e-12);
    }
  }
}

TEST(Varphi, Values) {
  const PointWorld pw = pw_of({1, 0}, {{0, 2}});
  EXPECT_EQ(varphi({1, 0}, pw, 2), 0.0);
  EXPECT_NEAR(varphi({0, 0}, pw, 2), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(varphi({0, 0}, pw, 2), sigma(-std::log(2.0)), 1e-12);
  EXPECT_EQ(varphi({0, 2}, pw, 2), 1.0);
}

TEST(Varphi, TendsToOneAtObstaclePoints) {
  const PointWorld pw = pw_of({1, 0}, {{0, 2}, {-1, -1}});
  double prev = 0;
  for (int d = 3; d <= 8; ++d) {
    const double v = varphi(Vec2{0, 2} + Vec2{std::pow(10.0, -d), 0}, pw, 3);
    EXPECT_GT(v, prev);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
  EXPECT_GT(prev, 0.99);
}

TEST(Varphi, AgreesWithSigmaOfPhi) {
  std::mt19937_64 rng(2);
  for (int w = 0; w < 20; ++w) {
    const PointWorld pw = oracle::random_point_world(rng, w % 7);
    const int k = w % 7 + 1;
    for (int i = 0; i < 50; ++i) {
      const Vec2 h = oracle::random_free_point(rng, pw);
      const double p = phi_k(h, pw, k);
      if (std::abs(p) < 30) EXPECT_NEAR(varphi(h, pw, k), sigma(p), 1e-12);
    }
  }
}

TEST(GradPhiK, Examples) {
  const Vec2 g0 = grad_phi_k({1, 0}, pw_of({0, 0}, {}), 1);
  EXPECT_DOUBLE_EQ(g0.x, 2.0);
  EXPECT_DOUBLE_EQ(g0.y, 0.0);
  const PointWorld pw = pw_of({1, 0}, {{0, 2}});
  const Vec2 g = grad_phi_k({0, 0}, pw, 2);
  EXPECT_NEAR(g.x, -2.0, 1e-15);
  EXPECT_NEAR(g.y, 0.5, 1e-15);
  const Vec2 fd = oracle::gradient([&](const Vec2& h) { return phi_k(h, pw, 2); }, {0, 0}, 1e-6);
  EXPECT_LT(oracle::rel_err(g, fd), 1e-6);
}

TEST(GradPhiK, PoleGuard) {
  const PointWorld pw = pw_of({1, 0}, {{0, 2}});
  EXPECT_THROW(grad_phi_k({0, 2}, pw, 2), DomainError);
  EXPECT_THROW(grad_phi_k({1, 1e-13}, pw, 2), DomainError);
  EXPECT_THROW(hess_phi_k({0, 2 + 1e-13}, pw, 2), DomainError);
  EXPECT_NO_THROW(grad_phi_k({1, 1e-9}, pw, 2));
}

TEST(HessPhiK, TraceFreeAndMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  for (int w = 0; w < 20; ++w) {
    const PointWorld pw = oracle::random_point_world(rng, w % 7);
    const int k = w % 7 + 1;
    for (int i = 0; i < 50; ++i) {
      const Vec2 h = oracle::random_free_point(rng, pw);
      const Mat2 H = hess_phi_k(h, pw, k);
      EXPECT_LE(std::abs(H.trace()), 1e-12 * H.frobenius());
      EXPECT_LE(H.det(), 1e-12);
      EXPECT_EQ(H.xy, H.yx);
      const Mat2 fd = oracle::jacobian_of([&](const Vec2& p) { return grad_phi_k(p, pw, k); }, h, 1e-6);
      EXPECT_LT(oracle::rel_err(H, fd), 1e-5);
    }
  }
}

TEST(GradVarphiPoint, FiniteAtDestinationAndMatchesFiniteDifferences) {
  const PointWorld pw = pw_of({0.3, -0.2}, {{1, 1}, {-1, 0.5}});
  EXPECT_EQ(grad_varphi_point(pw.destination_point, pw, 3), (Vec2{0, 0}));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Vec2 h = oracle::random_free_point(rng, pw);
    const Vec2 fd = oracle::gradient([&](const Vec2& p) { return varphi(p, pw, 3); }, h, 1e-5);
    EXPECT_LT(oracle::rel_err(grad_varphi_point(h, pw, 3), fd), 1e-6);
  }
}

TEST(HessianAtDestination, EmptyWorld) {
  const Mat2 H = hessian_at_destination(pw_of({0.4, 0.1}, {}), 1);
  EXPECT_DOUBLE_EQ(H.xx, 2.0);
  EXPECT_DOUBLE_EQ(H.yy, 2.0);
  EXPECT_DOUBLE_EQ(H.xy, 0.0);
}

TEST(HessianAtDestination, OneObstacleMatchesFiniteDifferences) {
  // The finite-difference Hessian of varphi at Pd = 0 with P1 = (2,0), k = 2
  // is 2 / |Pd - P1|^(2/k) = 1.
  const PointWorld pw = pw_of({0, 0}, {{2, 0}});
  const Mat2 fd = oracle::hessian([&](const Vec2& h) { return varphi(h, pw, 2); }, pw.destination_point, 1e-4);
  const Mat2 H = hessian_at_destination(pw, 2);
  EXPECT_NEAR(H.xx, 1.0, 1e-15);
  EXPECT_NEAR(H.yy, 1.0, 1e-15);
  EXPECT_LT((H - fd).frobenius(), 1e-6);
}

TEST(HessianAtDestination, RandomWorldsMatchFiniteDifferences) {
  std::mt19937_64 rng(5);
  for (int w = 0; w < 20; ++w) {
    const PointWorld pw = oracle::random_point_world(rng, w % 7, 0.5);
    const int k = w % 7 + 1;
    const Mat2 H = hessian_at_destination(pw, k);
    EXPECT_GT(H.xx, 0.0);
    const Mat2 fd = oracle::jacobian_of([&](const Vec2& p) { return grad_varphi_point(p, pw, k); },
                                        pw.destination_point, 1e-6);
    EXPECT_LT((H - fd).frobenius(), 1e-6 * std::max(1.0, H.frobenius()));
  }
}

TEST(NavFunction, DefaultExponentAndValidation) {
  Workspace ws;
  ws.outer_radius = 2;
  ws.obstacles = {{{1, 0}, 0.2, true}, {{-1, 0}, 0.2, true}};
  const NavTransform nt = NavTransform::build_all(ws);
  EXPECT_EQ(NavFunction(nt).k(), 3);
  EXPECT_EQ(NavFunction(nt, 5).k(), 5);
  EXPECT_THROW(NavFunction(nt, 2), std::invalid_argument);
}

TEST(GradVarphi, WorkspaceGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(6);
  for (int w = 0; w < 10; ++w) {
    const Workspace ws = oracle::random_workspace(rng, w % 5);
    const NavFunction nf(NavTransform::build_all(ws));
    EXPECT_EQ(grad_varphi(ws.destination, nf), (Vec2{0, 0}));
    for (int i = 0; i < 50; ++i) {
      const Vec2 x = oracle::random_free_workspace_point(rng, ws, 0.05);
      if (norm(x - ws.destination) < 0.05) continue;
      const Vec2 fd = oracle::gradient([&](const Vec2& p) { return nf.value(p); }, x, 1e-5);
      EXPECT_LT(oracle::rel_err(grad_varphi(x, nf), fd), 1e-6);
    }
  }
}

TEST(GradVarphi, PointsAwayFromObstacles) {
  Workspace ws;
  ws.outer_radius = 2;
  ws.obstacles = {{{1, 0.3}, 0.25, true}, {{-0.8, -0.6}, 0.3, true}};
  const NavFunction nf(NavTransform::build_all(ws));
  for (const auto& o : ws.obstacles)
    for (int j = 0; j < 32; ++j) {
      const double a = 2 * M_PI * j / 32;
      const Vec2 n{std::cos(a), std::sin(a)};
      const Vec2 x = o.center + n * (o.radius + 1e-3);
      EXPECT_LT(dot(grad_varphi(x, nf), n), 0.0);
    }
}

TEST(Varphi, TendsToOneAtOuterBoundary) {
  Workspace ws;
  ws.outer_radius = 2;
  ws.destination = {0.3, 0.2};
  const NavFunction nf(NavTransform::build_all(ws));
  double prev = 0;
  for (int d = 2; d <= 8; ++d) {
    const double v = nf.value({2 * (1 - std::pow(10.0, -d)), 0});
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_GT(prev, 0.999);
}

TEST(TotalEnergy, Values) {
  Workspace ws;
  ws.outer_radius = 2;
  const NavFunction nf(NavTransform::build_all(ws));
  EXPECT_EQ(total_energy({{0, 0}, {0, 0}, 0}, nf, 10, 1), 0.0);
  // Point with Theta = 0.5: |h|^2 = 1 with h = x / (4 - |x|^2), i.e. |x| = (sqrt(17) - 1) / 2.
  const double r = (std::sqrt(17.0) - 1) / 2;
  EXPECT_NEAR(nf.value({r, 0}), 0.5, 1e-14);
  EXPECT_NEAR(total_energy({{r, 0}, {1, 0}, 0}, nf, 10, 1), 5.5, 1e-13);
}
