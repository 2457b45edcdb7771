#pragma once

namespace gsol {

/// Partial derivatives in the meridian half-plane (rho, z).
struct Gradient {
  double rho = 0.0;
  double z = 0.0;
};

struct Hessian {
  double rr = 0.0;
  double rz = 0.0;
  double zz = 0.0;
};

/// Uniformly charged axis segment [a, b].
struct ChargedInterval {
  double a = 0.0;
  double b = 0.0;
  [[nodiscard]] double length() const { return b - a; }
};

/// Value and derivatives of the segment potential at one point.
struct GreenJet {
  double value = 0.0;
  Gradient grad;
  Hessian hess;
};

/// U = -int_a^b ds / |x - s|, written as log(r_a - z_a) - log(r_b - z_b).
/// Evaluated through cancellation-free algebraic forms. Throws DomainError
/// for rho <= 0.
double green_log(const ChargedInterval& I, double rho, double z);

/// (dU/drho, dU/dz). Off the closed interval rho = 0 is allowed; a point
/// strictly inside the interval at rho = 0 throws SingularPointError.
Gradient green_log_grad(const ChargedInterval& I, double rho, double z);

/// Value, gradient and Hessian together. rho = 0 is accepted only off the
/// closed segment.
GreenJet green_log_jet(const ChargedInterval& I, double rho, double z);

/// Regular part U - 2 log(rho) for a < z < b, with derivatives; finite at
/// rho = 0. Throws DomainError when z is not strictly inside the interval.
GreenJet green_log_regular_jet(const ChargedInterval& I, double rho, double z);

}  // namespace gsol
