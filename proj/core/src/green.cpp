#include "gsol/green.hpp"

#include <cmath>

#include "gsol/errors.hpp"

namespace gsol {

namespace {

struct Geometry {
  double za, zb;  // z - a, z - b
  double ra, rb;
};

Geometry geometry(const ChargedInterval& I, double rho, double z) {
  const double za = z - I.a;
  const double zb = z - I.b;
  return {za, zb, std::hypot(rho, za), std::hypot(rho, zb)};
}

bool outside(const Geometry& g) { return (g.za >= 0.0 && g.zb >= 0.0) || (g.za <= 0.0 && g.zb <= 0.0); }

// U for a point level with or beyond one end of the segment.
double value_outside(const ChargedInterval& I, const Geometry& g) {
  const double len = I.length();
  double dn, df, rn, rf;
  if (g.zb >= 0.0) {
    dn = g.zb, df = g.za, rn = g.rb, rf = g.ra;
  } else {
    dn = -g.za, df = -g.zb, rn = g.ra, rf = g.rb;
  }
  const double sr = rn + rf;
  return std::log1p(-len * (sr + dn + df) / (sr * (rf + df)));
}

// U_rho / rho off the open segment; positive.
double rho_ratio_outside(const ChargedInterval& I, const Geometry& g) {
  const double den = g.ra * g.rb * (g.za * g.rb + g.zb * g.ra);
  if (den == 0.0) return 0.0;
  return I.length() * (g.za + g.zb) / den;
}

// Ubar_rho / rho inside the segment, Ubar = U - 2 log rho.
double rho_ratio_inside(const Geometry& g) {
  return -1.0 / (g.ra * (g.ra + g.za)) - 1.0 / (g.rb * (g.rb - g.zb));
}

double dz(const ChargedInterval& I, const Geometry& g) {
  const double sr = g.ra + g.rb;
  if (sr == 0.0) return 0.0;
  return I.length() * (g.za + g.zb) / (sr * g.ra * g.rb);
}

void fill_hessian(GreenJet& j, const Geometry& g, double rho, double rho_ratio) {
  const double ra3 = g.ra * g.ra * g.ra;
  const double rb3 = g.rb * g.rb * g.rb;
  j.hess.zz = g.za / ra3 - g.zb / rb3;
  j.hess.rz = rho * (1.0 / ra3 - 1.0 / rb3);
  j.hess.rr = -j.hess.zz - rho_ratio;
}

}  // namespace

double green_log(const ChargedInterval& I, double rho, double z) {
  if (!(rho > 0.0)) throw DomainError("green_log: rho must be positive");
  if (I.length() == 0.0) return 0.0;
  const Geometry g = geometry(I, rho, z);
  if (outside(g)) return value_outside(I, g);
  return 2.0 * std::log(rho) - std::log(g.ra + g.za) - std::log(g.rb - g.zb);
}

Gradient green_log_grad(const ChargedInterval& I, double rho, double z) {
  if (rho < 0.0) throw DomainError("green_log_grad: rho must be nonnegative");
  if (I.length() == 0.0) return {};
  const Geometry g = geometry(I, rho, z);
  if (outside(g)) {
    if (rho == 0.0 && (g.za == 0.0 || g.zb == 0.0)) {
      throw SingularPointError("green_log_grad: evaluation at a segment endpoint on the axis");
    }
    return {rho * rho_ratio_outside(I, g), dz(I, g)};
  }
  if (rho == 0.0) throw SingularPointError("green_log_grad: evaluation on the segment");
  return {2.0 / rho + rho * rho_ratio_inside(g), dz(I, g)};
}

GreenJet green_log_jet(const ChargedInterval& I, double rho, double z) {
  if (rho < 0.0) throw DomainError("green_log_jet: rho must be nonnegative");
  GreenJet j;
  if (I.length() == 0.0) return j;
  const Geometry g = geometry(I, rho, z);
  if (rho == 0.0 && !(g.za * g.zb > 0.0)) {
    throw SingularPointError("green_log_jet: axis point on the closed segment");
  }
  double ratio;
  if (outside(g)) {
    j.value = value_outside(I, g);
    ratio = rho_ratio_outside(I, g);
  } else {
    j.value = 2.0 * std::log(rho) - std::log(g.ra + g.za) - std::log(g.rb - g.zb);
    ratio = 2.0 / (rho * rho) + rho_ratio_inside(g);
  }
  j.grad = {rho * ratio, dz(I, g)};
  fill_hessian(j, g, rho, ratio);
  return j;
}

GreenJet green_log_regular_jet(const ChargedInterval& I, double rho, double z) {
  if (rho < 0.0) throw DomainError("green_log_regular_jet: rho must be nonnegative");
  const Geometry g = geometry(I, rho, z);
  if (!(g.za > 0.0 && g.zb < 0.0)) {
    throw DomainError("green_log_regular_jet: z must lie strictly inside the segment");
  }
  GreenJet j;
  j.value = -std::log(g.ra + g.za) - std::log(g.rb - g.zb);
  const double ratio = rho_ratio_inside(g);
  j.grad = {rho * ratio, dz(I, g)};
  fill_hessian(j, g, rho, ratio);
  return j;
}

}  // namespace gsol
