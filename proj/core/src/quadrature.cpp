#include "gsol/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>

#include "gsol/errors.hpp"

namespace gsol {

namespace {

// Kronrod 15-point nodes (nonnegative half) and weights; every other node
// is shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467768170708,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b, double tol,
                                int max_intervals) {
  QuadratureResult r;
  if (a == b) return r;
  std::priority_queue<Piece> heap;
  Piece first = gk15(f, a, b);
  double value = first.value, error = first.error;
  heap.push(first);
  int count = 1;
  while (error > tol) {
    if (count >= max_intervals) {
      throw AccuracyError("adaptive quadrature exhausted " + std::to_string(max_intervals) +
                          " intervals (error estimate " + std::to_string(error) + ")");
    }
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw AccuracyError("adaptive quadrature reached machine resolution");
    }
    const Piece left = gk15(f, worst.a, mid);
    const Piece right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
    // Rebuild the running sums occasionally so cancellation does not drift.
    if (count % 64 == 0) {
      auto copy = heap;
      value = error = 0.0;
      while (!copy.empty()) {
        value += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  r.value = value;
  r.error = error;
  r.intervals = count;
  return r;
}

Gradient alpha_integrand(std::span<const PotentialJet> jets, double rho) {
  Gradient out;
  int singular = 0;
  for (const auto& j : jets) {
    const double gr = j.grad.rho, gz = j.grad.z;
    out.rho += rho / 8.0 * (gr * gr - gz * gz);
    out.z += rho / 4.0 * gr * gz;
    if (j.singular) {
      out.rho += 0.5 * gr;
      out.z += 0.5 * gz;
      ++singular;
    }
  }
  if (singular != 1) {
    if (rho == 0.0) throw SingularPointError("alpha integrand requested on the axis away from a rod interior");
    out.rho += (singular - 1) / (2.0 * rho);
  }
  return out;
}

Hessian alpha_hessian(std::span<const PotentialJet> jets, double rho) {
  if (!(rho > 0.0)) throw DomainError("alpha_hessian needs rho > 0");
  Hessian h;
  for (const auto& j : jets) {
    const Gradient g = j.full_grad(rho);
    const Hessian u = j.full_hess(rho);
    h.rr += (g.rho * g.rho - g.z * g.z) / 8.0 + rho / 4.0 * (g.rho * u.rr - g.z * u.rz);
    h.rz += rho / 4.0 * (g.rho * u.rz - g.z * u.zz);
    h.zz += rho / 4.0 * (u.rz * g.z + g.rho * u.zz);
  }
  h.rr += 0.5 / (rho * rho);
  return h;
}

AlphaField::AlphaField(const PotentialSet& potentials, AlphaOptions options)
    : potentials_(&potentials), options_(options) {
  if (options_.base_rho == 0.0) options_.base_rho = potentials.period();
  if (!(options_.base_rho > 0.0)) throw InputError("alpha base point must lie off the axis");
  if (!(options_.tolerance > 0.0)) throw InputError("quadrature tolerance must be positive");
}

AlphaField AlphaField::with_alpha0(double alpha0) const {
  AlphaField copy = *this;
  copy.options_.alpha0 = alpha0;
  return copy;
}

Gradient AlphaField::integrand(double rho, double z) const {
  const auto jets = potentials_->jets(rho, z);
  return alpha_integrand(jets, rho);
}

Hessian AlphaField::hessian(double rho, double z) const {
  const auto jets = potentials_->jets(rho, z);
  return alpha_hessian(jets, rho);
}

double AlphaField::integrate_segment(Point from, Point to) const {
  const double dr = to.rho - from.rho;
  const double dz = to.z - from.z;
  if (dr == 0.0 && dz == 0.0) return 0.0;
  auto f = [&](double t) {
    const Gradient g = integrand(from.rho + t * dr, from.z + t * dz);
    return g.rho * dr + g.z * dz;
  };
  return integrate_gk15(f, 0.0, 1.0, options_.tolerance).value;
}

double AlphaField::integrate_path(const std::vector<Point>& polyline) const {
  double sum = 0.0;
  for (std::size_t k = 1; k < polyline.size(); ++k) sum += integrate_segment(polyline[k - 1], polyline[k]);
  return sum;
}

double AlphaField::at(double rho, double z, PathKind path) const {
  const Point b = base();
  const Point corner = path == PathKind::axial_first ? Point{b.rho, z} : Point{rho, b.z};
  return options_.alpha0 + integrate_path({b, corner, {rho, z}});
}

double integrate_alpha(const AlphaField& field, const std::vector<Point>& polyline) {
  if (polyline.empty()) throw InputError("empty integration path");
  const Point b = field.base();
  if (polyline.front().rho != b.rho || polyline.front().z != b.z) {
    throw InputError("integration path must start at the base point");
  }
  return field.alpha0() + field.integrate_path(polyline);
}

double integrability_residual(const std::function<Gradient(double, double)>& integrand, double rho, double z,
                              double h) {
  if (!(h > 0.0) || !(rho > h)) throw DomainError("integrability_residual needs rho > h > 0");
  const double dz_arho = (integrand(rho, z + h).rho - integrand(rho, z - h).rho) / (2.0 * h);
  const double drho_az = (integrand(rho + h, z).z - integrand(rho - h, z).z) / (2.0 * h);
  return std::abs(dz_arho - drho_az);
}

double integrability_residual(const AlphaField& field, double rho, double z, double h) {
  return integrability_residual([&](double r, double zz) { return field.integrand(r, zz); }, rho, z, h);
}

double periodicity_defect(const AlphaField& field, double rho) {
  if (!(rho > 0.0)) throw DomainError("periodicity_defect needs rho > 0");
  const RodDiagram& d = field.potentials().diagram();
  const double tol = field.options().tolerance / static_cast<double>(d.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double a = d.start(k), b = d.end(k);
    auto f = [&](double z) { return field.integrand(rho, z).z; };
    sum += integrate_gk15(f, a, b, tol).value;
  }
  return sum;
}

AxisLimit alpha_axis_limit(const AlphaField& field, std::size_t rod, double z, double max_error) {
  const PotentialSet& p = field.potentials();
  if (rod >= p.diagram().size()) throw InputError("rod index out of range");
  if (p.rod_containing(z) != rod) throw DomainError("axis limit: z is not strictly inside the rod");
  // Radii 1e-2, 5e-3, 2.5e-3, pulled in near corners where the expansion in
  // rho^2 / d^2 would converge slowly.
  const double s = std::min(1e-2, p.corner_distance(z) / 16.0);
  const std::array<double, 3> rhos = {s, 0.5 * s, 0.25 * s};
  std::array<double, 3> a{};
  a[0] = field(rhos[0], z);
  for (std::size_t k = 1; k < rhos.size(); ++k) {
    a[k] = a[k - 1] + field.integrate_segment({rhos[k - 1], z}, {rhos[k], z});
  }
  // alpha is even and smooth in rho on a rod interior: eliminate rho^2, rho^4.
  const double r1a = (4.0 * a[1] - a[0]) / 3.0;
  const double r1b = (4.0 * a[2] - a[1]) / 3.0;
  const double r2 = (16.0 * r1b - r1a) / 15.0;
  AxisLimit out{r2, std::abs(r2 - r1b)};
  if (!(out.error <= max_error)) {
    throw AccuracyError("axis limit of alpha did not converge (estimate " + std::to_string(out.error) + ")");
  }
  return out;
}

}  // namespace gsol
