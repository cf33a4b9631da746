#pragma once

#include "navsim/navtrans.hpp"
#include "navsim/state.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

/// Distance below which derivative evaluations at a pole are rejected.
inline constexpr double kPoleGuard = 1e-12;

/// Logistic map e^t / (1 + e^t); total on the extended real line.
double sigma(double t);

/// Harmonic point-world potential ln|h - Pd|^2 - (1/k) sum ln|h - Pi|^2.
/// -inf at Pd, +inf at any Pi.
double phi_k(const Vec2& h, const PointWorld& pw, int k);

/// sigma(phi_k(h)) in its rational form
///   |h - Pd|^2 / (|h - Pd|^2 + prod |h - Pi|^(2/k)).
/// 0 at Pd, 1 at any Pi.
double varphi(const Vec2& h, const PointWorld& pw, int k);

/// Gradient of phi_k. Throws DomainError within kPoleGuard of Pd or any Pi.
Vec2 grad_phi_k(const Vec2& h, const PointWorld& pw, int k);

/// Hessian of phi_k (trace-free). Same domain as grad_phi_k.
Mat2 hess_phi_k(const Vec2& h, const PointWorld& pw, int k);

/// Gradient of varphi in point-world coordinates; finite (zero) at Pd.
Vec2 grad_varphi_point(const Vec2& h, const PointWorld& pw, int k);

/// Hessian of varphi at Pd: 2 / prod |Pd - Pi|^(2/k) times the identity.
Mat2 hessian_at_destination(const PointWorld& pw, int k);

/// Workspace navigation function sigma o phi_k o Phi with k > M.
class NavFunction {
 public:
  struct Eval {
    double value;
    Vec2 gradient;
  };

  /// k = M + 1.
  explicit NavFunction(NavTransform transform);
  /// Explicit exponent; throws std::invalid_argument unless k > M.
  NavFunction(NavTransform transform, int k);

  double value(const Vec2& x) const;
  Eval evaluate(const Vec2& x) const;

  int k() const { return k_; }
  const NavTransform& transform() const { return transform_; }
  const PointWorld& point_world() const { return transform_.point_world(); }

 private:
  NavTransform transform_;
  int k_;
};

/// Workspace gradient J_Phi^T grad varphi(Phi(x)).
Vec2 grad_varphi(const Vec2& x, const NavFunction& nf);

/// mu * Theta(x) + m/2 |xdot|^2.
double total_energy(const RobotState& state, const NavFunction& nf, double mu, double mass);

}  // namespace navsim
