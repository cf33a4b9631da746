#include "navsim/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "navsim/errors.hpp"

namespace navsim {
namespace {

void check_k(int k) {
  if (k < 1) throw std::invalid_argument("potential exponent k must be a positive integer");
}

void guard_poles(const Vec2& h, const PointWorld& pw) {
  if (norm(h - pw.destination_point) < kPoleGuard) throw DomainError("evaluation at the destination pole");
  for (std::size_t i = 0; i < pw.count(); ++i)
    if (norm(h - pw.obstacle_points[i]) < kPoleGuard)
      throw DomainError("evaluation at obstacle pole " + std::to_string(i));
}

// (1/k) sum ln|h - Pi|^2; -inf when h hits a pole.
double log_obstacle_product(const Vec2& h, const PointWorld& pw, int k) {
  double s = 0.0;
  for (const Vec2& p : pw.obstacle_points) s += std::log(norm_sq(h - p));
  return s / k;
}

}  // namespace

double sigma(double t) {
  if (std::isnan(t)) return t;
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double phi_k(const Vec2& h, const PointWorld& pw, int k) {
  check_k(k);
  double obstacle_sum = 0.0;
  for (const Vec2& p : pw.obstacle_points) {
    const double d = norm_sq(h - p);
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    obstacle_sum += std::log(d);
  }
  return std::log(norm_sq(h - pw.destination_point)) - obstacle_sum / k;
}

double varphi(const Vec2& h, const PointWorld& pw, int k) {
  check_k(k);
  const double a = norm_sq(h - pw.destination_point);
  if (a == 0.0) return 0.0;
  const double log_b = log_obstacle_product(h, pw, k);
  if (log_b == -std::numeric_limits<double>::infinity()) return 1.0;
  const double b = std::exp(log_b);
  if (!std::isfinite(b)) return sigma(std::log(a) - log_b);
  return a / (a + b);
}

Vec2 grad_phi_k(const Vec2& h, const PointWorld& pw, int k) {
  check_k(k);
  guard_poles(h, pw);
  const Vec2 hd = h - pw.destination_point;
  Vec2 g = hd * (2.0 / norm_sq(hd));
  Vec2 rep;
  for (const Vec2& p : pw.obstacle_points) {
    const Vec2 hi = h - p;
    rep += hi / norm_sq(hi);
  }
  return g - rep * (2.0 / k);
}

Mat2 hess_phi_k(const Vec2& h, const PointWorld& pw, int k) {
  check_k(k);
  guard_poles(h, pw);
  // Hessian of ln|v|^2 is (2/|v|^2) I - (4/|v|^4) v v^T.
  const auto log_hessian = [](const Vec2& v) {
    const double n2 = norm_sq(v);
    return Mat2::identity() * (2.0 / n2) - Mat2::outer(v, v) * (4.0 / (n2 * n2));
  };
  Mat2 hess = log_hessian(h - pw.destination_point);
  Mat2 rep;
  for (const Vec2& p : pw.obstacle_points) rep += log_hessian(h - p);
  return hess - rep * (1.0 / k);
}

Vec2 grad_varphi_point(const Vec2& h, const PointWorld& pw, int k) {
  check_k(k);
  for (std::size_t i = 0; i < pw.count(); ++i)
    if (norm(h - pw.obstacle_points[i]) < kPoleGuard)
      throw DomainError("evaluation at obstacle pole " + std::to_string(i));
  const Vec2 hd = h - pw.destination_point;
  const double a = norm_sq(hd);
  if (a == 0.0) return {};
  const double b = std::exp(log_obstacle_product(h, pw, k));
  const double v = a / (a + b);
  const double vc = b / (a + b);
  Vec2 rep;
  for (const Vec2& p : pw.obstacle_points) {
    const Vec2 hi = h - p;
    rep += hi / norm_sq(hi);
  }
  return hd * (2.0 * vc / (a + b)) - rep * (2.0 * v * vc / k);
}

Mat2 hessian_at_destination(const PointWorld& pw, int k) {
  check_k(k);
  const double log_b = log_obstacle_product(pw.destination_point, pw, k);
  return Mat2::identity() * (2.0 * std::exp(-log_b));
}

NavFunction::NavFunction(NavTransform transform)
    : transform_(std::move(transform)), k_(static_cast<int>(transform_.point_world().count()) + 1) {}

NavFunction::NavFunction(NavTransform transform, int k) : transform_(std::move(transform)), k_(k) {
  if (k_ <= static_cast<int>(transform_.point_world().count()))
    throw std::invalid_argument("navigation function requires k > M (k = " + std::to_string(k_) +
                                ", M = " + std::to_string(transform_.point_world().count()) + ")");
}

double NavFunction::value(const Vec2& x) const { return varphi(transform_.map(x), point_world(), k_); }

NavFunction::Eval NavFunction::evaluate(const Vec2& x) const {
  const MapValue m = transform_(x);
  const Vec2 g = grad_varphi_point(m.point, point_world(), k_);
  return {varphi(m.point, point_world(), k_), m.jacobian.transposed() * g};
}

Vec2 grad_varphi(const Vec2& x, const NavFunction& nf) { return nf.evaluate(x).gradient; }

double total_energy(const RobotState& state, const NavFunction& nf, double mu, double mass) {
  return mu * nf.value(state.position) + 0.5 * mass * norm_sq(state.velocity);
}

}  // namespace navsim
