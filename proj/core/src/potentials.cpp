#include "gsol/potentials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "gsol/errors.hpp"

namespace gsol {

double PotentialJet::full_value(double rho) const { return singular ? value + 2.0 * std::log(rho) : value; }

Gradient PotentialJet::full_grad(double rho) const {
  return singular ? Gradient{grad.rho + 2.0 / rho, grad.z} : grad;
}

Hessian PotentialJet::full_hess(double rho) const {
  return singular ? Hessian{hess.rr - 2.0 / (rho * rho), hess.rz, hess.zz} : hess;
}

namespace {

// sum_{l > m} l^{-s}, by direct summation to N and Euler-Maclaurin beyond.
double zeta_tail(double s, int m) {
  const int N = std::max(m + 1, 30);
  double sum = 0.0;
  for (int l = N - 1; l > m; --l) sum += std::pow(l, -s);
  const double n = N;
  sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s) + s * std::pow(n, -s - 1.0) / 12.0 -
         s * (s + 1) * (s + 2) * std::pow(n, -s - 3.0) / 720.0 +
         s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * std::pow(n, -s - 5.0) / 30240.0;
  return sum;
}

struct Monomial {
  double c;
  int pw;  // power of w
  int pr;  // power of rho
};

// Antiderivatives in w of the even axial solid harmonics r^j P_j(-w/r).
const std::array<std::vector<Monomial>, 3> kMultipoles = {{
    {{1.0 / 3.0, 3, 0}, {-0.5, 1, 2}},
    {{0.2, 5, 0}, {-1.0, 3, 2}, {0.375, 1, 4}},
    {{1.0 / 7.0, 7, 0}, {-1.5, 5, 2}, {1.875, 3, 4}, {-0.3125, 1, 6}},
}};

double falling(int p, int k) {
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= p - i;
  return f;
}

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// d^{dw}_w d^{dr}_rho of the polynomial at (w, rho).
double poly(const std::vector<Monomial>& q, double w, double rho, int dw, int dr) {
  double s = 0.0;
  for (const auto& t : q) {
    if (t.pw < dw || t.pr < dr) continue;
    s += t.c * falling(t.pw, dw) * falling(t.pr, dr) * ipow(w, t.pw - dw) * ipow(rho, t.pr - dr);
  }
  return s;
}

void add(GreenJet& acc, const GreenJet& t) {
  acc.value += t.value;
  acc.grad.rho += t.grad.rho;
  acc.grad.z += t.grad.z;
  acc.hess.rr += t.hess.rr;
  acc.hess.rz += t.hess.rz;
  acc.hess.zz += t.hess.zz;
}

}  // namespace

PotentialSet::PotentialSet(RodDiagram diagram, PotentialOptions options, std::vector<double> kappa)
    : diagram_(std::move(diagram)), options_(options), kappa_(std::move(kappa)) {
  const std::size_t n = diagram_.n;
  if (n == 0) throw InputError("potentials need n >= 1");
  if (!(diagram_.period > 0.0) || !std::isfinite(diagram_.period)) throw InputError("period must be positive");
  if (options_.truncation < 1) throw InputError("truncation order must be at least 1");
  if (!(options_.tolerance > 0.0)) throw InputError("potential tolerance must be positive");
  if (kappa_.empty()) kappa_.assign(n, 0.0);
  if (kappa_.size() != n) throw InputError("expected one additive constant per family");
  if (diagram_.rods.empty()) throw InputError("diagram has no rods");

  share_.assign(n, 0.0);
  family_rods_.assign(n, {});
  for (std::size_t k = 0; k < diagram_.size(); ++k) {
    const Rod& r = diagram_.rods[k];
    if (r.kind != RodKind::axis) throw InputError("horizon rods are not supported in soliton potentials");
    if (r.structure.size() != n) throw InputError("rod " + std::to_string(k + 1) + " structure has wrong size");
    const auto f = diagram_.family_of(k);
    if (!f) {
      throw InputError("rod " + std::to_string(k + 1) + " structure " + r.structure.str() +
                       " is not a basis vector; unsupported in the diagonal ansatz");
    }
    family_rods_[*f].push_back({diagram_.start(k), diagram_.end(k)});
    share_[*f] += r.length().to_double();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (family_rods_[i].empty()) throw InputError("family " + std::to_string(i + 1) + " has no rods");
  }
  if (diagram_.size() > 1) {
    for (std::size_t k = 0; k < diagram_.size(); ++k) corners_.push_back(diagram_.start(k));
  }
}

double PotentialSet::lapse_constant() const {
  double s = 0.0;
  for (double k : kappa_) s += k;
  return s - 2.0 * std::log(2.0 * period());
}

double PotentialSet::far_constant(std::size_t i) const {
  return kappa_.at(i) - amplitude(i) * std::log(2.0 * period());
}

PotentialSet PotentialSet::with_kappa(std::vector<double> kappa) const {
  PotentialSet copy = *this;
  if (kappa.size() != n()) throw InputError("expected one additive constant per family");
  copy.kappa_ = std::move(kappa);
  return copy;
}

namespace {
double wrap(double z, double L) {
  double z0 = z - L * std::floor(z / L);
  if (z0 >= L) z0 -= L;
  if (z0 < 0.0) z0 = 0.0;
  return z0;
}
}  // namespace

std::optional<std::size_t> PotentialSet::rod_containing(double z) const {
  if (diagram_.size() == 1) return 0;
  const double z0 = wrap(z, period());
  for (std::size_t k = 0; k < diagram_.size(); ++k) {
    if (diagram_.start(k) < z0 && z0 < diagram_.end(k)) return k;
  }
  return std::nullopt;
}

double PotentialSet::corner_distance(double z) const {
  double best = std::numeric_limits<double>::infinity();
  const double L = period();
  const double z0 = wrap(z, L);
  for (double c : corners_) {
    const double d = std::abs(z0 - c);
    best = std::min({best, d, L - d});
  }
  return best;
}

bool PotentialSet::over_family_rod(std::size_t i, double z) const {
  const auto k = rod_containing(z);
  return k && diagram_.family_of(*k) == i;
}

PotentialJet PotentialSet::jet(std::size_t i, double rho, double z, Route route) const {
  if (i >= n()) throw InputError("family index out of range");
  if (!(rho >= 0.0) || !std::isfinite(rho) || !std::isfinite(z)) throw DomainError("invalid evaluation point");
  if (rho == 0.0 && corner_distance(z) == 0.0) {
    throw SingularPointError("potential evaluated at a corner on the axis (z = " + std::to_string(z) + ")");
  }
  if (diagram_.size() == 1) {
    // One rod covering the whole axis: the sum is exactly 2 log rho + c.
    PotentialJet j;
    j.singular = true;
    j.value = far_constant(0);
    return j;
  }
  if (route == Route::automatic) route = options_.route;
  if (route == Route::automatic) route = rho >= 0.5 * period() ? Route::cylindrical : Route::direct;
  return route == Route::direct ? direct(i, rho, z) : cylindrical(i, rho, z);
}

std::vector<PotentialJet> PotentialSet::jets(double rho, double z, Route route) const {
  std::vector<PotentialJet> out;
  out.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) out.push_back(jet(i, rho, z, route));
  return out;
}

PotentialJet PotentialSet::direct(std::size_t i, double rho, double z) const {
  const double L = period();
  const int m = options_.truncation;
  const double z0 = wrap(z, L);
  const bool singular = over_family_rod(i, z);
  const double lambda = share_[i];

  const double reach = std::hypot(L, rho);
  const double bound = 2.0 * lambda * ipow(reach / L, 8) * zeta_tail(9.0, m);
  if (bound > options_.tolerance) {
    throw AccuracyError("truncation order " + std::to_string(m) + " too low: tail bound " + std::to_string(bound));
  }

  GreenJet acc;
  for (int a = m; a >= 0; --a) {
    for (int sign : {1, -1}) {
      if (a == 0 && sign < 0) continue;
      const double shift = sign * a * L;
      for (const auto& rod : family_rods_[i]) {
        const ChargedInterval I{rod.a + shift, rod.b + shift};
        if (singular && a == 0 && I.a < z0 && z0 < I.b) {
          add(acc, green_log_regular_jet(I, rho, z0));
        } else {
          add(acc, green_log_jet(I, rho, z0));
        }
      }
    }
  }

  // Counterterm 2 lambda log m plus the monopole remainder of the far images.
  double harmonic = 0.0;
  for (int l = m; l >= 1; --l) harmonic += 1.0 / l;
  acc.value += 2.0 * lambda * (harmonic - std::numbers::egamma);

  // Even multipole remainders of the images beyond order m.
  for (std::size_t q = 0; q < kMultipoles.size(); ++q) {
    const int j = 2 * static_cast<int>(q) + 2;
    const double f = -2.0 * zeta_tail(j + 1, m) / ipow(L, j + 1);
    const auto& poly_q = kMultipoles[q];
    double v = 0, dr = 0, dz = 0, drr = 0, drz = 0, dzz = 0;
    for (const auto& rod : family_rods_[i]) {
      const double wb = rod.b - z0;
      const double wa = rod.a - z0;
      v += poly(poly_q, wb, rho, 0, 0) - poly(poly_q, wa, rho, 0, 0);
      dr += poly(poly_q, wb, rho, 0, 1) - poly(poly_q, wa, rho, 0, 1);
      dz -= poly(poly_q, wb, rho, 1, 0) - poly(poly_q, wa, rho, 1, 0);
      drr += poly(poly_q, wb, rho, 0, 2) - poly(poly_q, wa, rho, 0, 2);
      drz -= poly(poly_q, wb, rho, 1, 1) - poly(poly_q, wa, rho, 1, 1);
      dzz += poly(poly_q, wb, rho, 2, 0) - poly(poly_q, wa, rho, 2, 0);
    }
    acc.value += f * v;
    acc.grad.rho += f * dr;
    acc.grad.z += f * dz;
    acc.hess.rr += f * drr;
    acc.hess.rz += f * drz;
    acc.hess.zz += f * dzz;
  }

  PotentialJet out;
  out.value = acc.value + kappa_[i];
  out.grad = acc.grad;
  out.hess = acc.hess;
  out.singular = singular;
  return out;
}

PotentialJet PotentialSet::cylindrical(std::size_t i, double rho, double z) const {
  if (!(rho > 0.0)) throw DomainError("cylindrical expansion needs rho > 0");
  const double L = period();
  const double A = amplitude(i);
  const double z0 = wrap(z, L);
  PotentialJet out;
  out.singular = over_family_rod(i, z);
  out.value = far_constant(i) + A * std::log(rho);
  out.grad.rho = A / rho;
  out.hess.rr = -A / (rho * rho);

  const auto& rods = family_rods_[i];
  const double scale = 4.0 / std::numbers::pi * static_cast<double>(rods.size());
  for (int k = 1;; ++k) {
    if (k > 200000) throw AccuracyError("cylindrical expansion did not converge at rho = " + std::to_string(rho));
    const double q = 2.0 * std::numbers::pi * k / L;
    const double x = q * rho;
    const double k0 = std::cyl_bessel_k(0.0, x);
    const double k1 = std::cyl_bessel_k(1.0, x);
    double s = 0.0, c = 0.0;
    for (const auto& r : rods) {
      s += std::sin(q * (z0 - r.a)) - std::sin(q * (z0 - r.b));
      c += std::cos(q * (z0 - r.a)) - std::cos(q * (z0 - r.b));
    }
    const double coef = -2.0 / (std::numbers::pi * k);
    out.value += coef * k0 * s;
    out.grad.rho += coef * (-q * k1) * s;
    out.grad.z += coef * k0 * q * c;
    out.hess.rr += coef * q * q * (k0 + k1 / x) * s;
    out.hess.rz += coef * (-q * k1) * q * c;
    out.hess.zz += coef * k0 * (-q * q) * s;
    const double bound = scale / k * (1.0 + q) * (1.0 + q) * (k0 + k1 + k1 / x);
    if (bound < 1e-3 * options_.tolerance) break;
  }
  if (out.singular) {
    out.value -= 2.0 * std::log(rho);
    out.grad.rho -= 2.0 / rho;
    out.hess.rr += 2.0 / (rho * rho);
  }
  return out;
}

double renormalized_potential(const PotentialSet& set, std::size_t i, double rho, double z) {
  const PotentialJet j = set.jet(i, rho, z);
  if (j.singular && rho == 0.0) throw SingularPointError("u_i is singular on its own rods; use the regular part");
  return j.full_value(rho);
}

double regularized_potential(const PotentialSet& set, std::size_t i, double rho, double z) {
  if (set.corner_distance(z) == 0.0) throw SingularPointError("regular part requested at a corner");
  if (!set.over_family_rod(i, z)) throw DomainError("regular part requested away from a family rod");
  return set.jet(i, rho, z).value;
}

Gradient potential_gradient(const PotentialSet& set, std::size_t i, double rho, double z) {
  const PotentialJet j = set.jet(i, rho, z);
  if (j.singular && rho == 0.0) throw SingularPointError("gradient of u_i is singular on its own rods");
  return j.full_grad(rho);
}

double laplacian_residual(const PotentialSet& set, std::size_t i, double rho, double z, double h) {
  if (!(h > 0.0) || !(rho > h)) throw DomainError("laplacian_residual needs rho > h > 0");
  const Route route = rho >= 0.5 * set.period() ? Route::cylindrical : Route::direct;
  auto u = [&](double r, double zz) { return set.jet(i, r, zz, route).full_value(r); };
  const double c = u(rho, z);
  const double rp = u(rho + h, z), rm = u(rho - h, z);
  const double zp = u(rho, z + h), zm = u(rho, z - h);
  return (rp - 2.0 * c + rm) / (h * h) + (rp - rm) / (2.0 * h * rho) + (zp - 2.0 * c + zm) / (h * h);
}

FarFieldFit fit_log_law(const std::vector<double>& rho, const std::vector<double>& values) {
  if (rho.size() != values.size()) throw InputError("fit: sample size mismatch");
  if (rho.size() < 2) throw InputError("fit: need at least two samples");
  const double N = static_cast<double>(rho.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    sx += std::log(rho[k]);
    sy += values[k];
  }
  const double mx = sx / N, my = sy / N;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const double dx = std::log(rho[k]) - mx;
    sxx += dx * dx;
    sxy += dx * (values[k] - my);
  }
  if (!(sxx > 0.0)) throw AccuracyError("fit: samples must have distinct rho");
  FarFieldFit f;
  f.amplitude = sxy / sxx;
  f.constant = my - f.amplitude * mx;
  double ss = 0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const double r = values[k] - (f.amplitude * std::log(rho[k]) + f.constant);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / N);
  return f;
}

FarFieldFit far_field_fit(const PotentialSet& set, std::size_t i, const std::vector<double>& rho, double z) {
  if (rho.size() < 2) throw InputError("far_field_fit: need at least two samples");
  std::vector<double> values;
  values.reserve(rho.size());
  for (double r : rho) values.push_back(renormalized_potential(set, i, r, z));
  return fit_log_law(rho, values);
}

}  // namespace gsol
