#include "lmscat/oracle.hpp"

#include <cmath>

namespace lmscat {

void SphBesselTable::compute(int n, double x) {
  if (x <= 0.0) fail(ErrorKind::invalid_config, "spherical_bessel: argument must be positive");
  j.resize(n + 1);
  jp.resize(n + 1);
  y.resize(n + 1);
  yp.resize(n + 1);

  // y_n: stable upward.
  y[0] = -std::cos(x) / x;
  if (n >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int k = 2; k <= n; ++k) y[k] = (2 * k - 1) / x * y[k - 1] - y[k - 2];

  // j_n: Miller's downward recurrence, normalized against j_0.
  const int start = n + 16 + int(x);
  double fp1 = 0.0, f = 1e-300;
  std::vector<double> tmp(n + 1);
  for (int k = start; k >= 0; --k) {
    const double fm1 = (2 * k + 3) / x * f - fp1;
    fp1 = f;
    f = fm1;
    if (k <= n) tmp[k] = f;  // unnormalized j_k
    // rescale to avoid overflow
    if (std::abs(f) > 1e250) {
      fp1 /= 1e250;
      f /= 1e250;
      for (int m = std::min(n, k); m <= n; ++m) tmp[m] /= 1e250;
    }
  }
  const double j0 = (std::abs(x) < 1e-8) ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  const double scale = j0 / f;
  for (int k = 0; k <= n; ++k) j[k] = tmp[k] * scale;

  const double j1 = (n >= 1) ? j[1] : std::sin(x) / (x * x) - std::cos(x) / x;
  const double y1 = (n >= 1) ? y[1] : -std::cos(x) / (x * x) - std::sin(x) / x;
  jp[0] = -j1;
  yp[0] = -y1;
  for (int k = 1; k <= n; ++k) {
    jp[k] = j[k - 1] - (k + 1) / x * j[k];
    yp[k] = y[k - 1] - (k + 1) / x * y[k];
  }
}

SphBessel spherical_bessel(int n, double x) {
  SphBesselTable tab;
  tab.compute(std::max(n, 1), x);
  SphBessel out;
  out.j = tab.j[n];
  out.jp = tab.jp[n];
  out.y = tab.y[n];
  out.yp = tab.yp[n];
  out.h1 = tab.h1(n);
  out.h1p = tab.h1p(n);
  return out;
}

int mie_default_order(double k0, double r0) { return int(std::ceil(k0 * r0)) + 20; }

MieCoefficients mie_layered(double k0, double k1, double lambda0, double r0, double r1,
                            CoreCondition core, double lambda_imp, const Vector3d& d, int order) {
  if (!(r1 > 0.0) || !(r0 > r1))
    fail(ErrorKind::invalid_config, "mie_layered: need 0 < r1 < r0");
  if (k0 <= 0.0 || k1 <= 0.0 || lambda0 <= 0.0)
    fail(ErrorKind::invalid_config, "mie_layered: wavenumbers and lambda0 must be positive");

  MieCoefficients mie;
  mie.k0 = k0;
  mie.k1 = k1;
  mie.lambda0 = lambda0;
  mie.r0 = r0;
  mie.r1 = r1;
  mie.core = core;
  mie.lambda_imp = lambda_imp;
  mie.incident_dir = d.normalized();
  mie.a.resize(order + 1);
  mie.b.resize(order + 1);
  mie.c.resize(order + 1);

  SphBesselTable out0, in0, in1;
  out0.compute(order, k0 * r0);   // exterior wavenumber at the interface
  in0.compute(order, k1 * r0);    // annulus wavenumber at the interface
  in1.compute(order, k1 * r1);    // annulus wavenumber at the core

  for (int n = 0; n <= order; ++n) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    Eigen::Vector3cd rhs = Eigen::Vector3cd::Zero();
    // continuity u = v at r0
    m(0, 0) = out0.h1(n);
    m(0, 1) = -in0.j[n];
    m(0, 2) = -in0.y[n];
    rhs(0) = -out0.j[n];
    // flux du/dr = lambda0 dv/dr at r0
    m(1, 0) = k0 * out0.h1p(n);
    m(1, 1) = -lambda0 * k1 * in0.jp[n];
    m(1, 2) = -lambda0 * k1 * in0.yp[n];
    rhs(1) = -k0 * out0.jp[n];
    // core condition at r1
    if (core == CoreCondition::soft) {
      m(2, 1) = in1.j[n];
      m(2, 2) = in1.y[n];
    } else {
      m(2, 1) = k1 * in1.jp[n] + iu * lambda_imp * in1.j[n];
      m(2, 2) = k1 * in1.yp[n] + iu * lambda_imp * in1.y[n];
    }

    const Eigen::PartialPivLU<Eigen::Matrix3cd> lu(m);
    const Eigen::Vector3cd sol = lu.solve(rhs);
    const double residual = (m * sol - rhs).norm();
    if (!sol.allFinite() || residual > 1e-8 * (1.0 + rhs.norm()))
      fail(ErrorKind::oracle_failure,
           "mie_layered: per-mode system numerically singular at order " + std::to_string(n));
    mie.a[n] = sol(0);
    mie.b[n] = sol(1);
    mie.c[n] = sol(2);
  }
  return mie;
}

namespace {

// sum over modes of (2n+1) i^n a_n f_n(r) P_n(cos gamma), with the plane-wave
// phase for a non-origin expansion center.
Complex mode_sum(const MieCoefficients& mie, const Vector3d& x, bool annulus) {
  const Vector3d rel = x - mie.center;
  const double r = rel.norm();
  const double cg = std::clamp(rel.normalized().dot(mie.incident_dir), -1.0, 1.0);
  const int order = mie.max_order();
  const std::vector<double> p = legendre_all(order, cg);
  SphBesselTable tab;
  tab.compute(order, (annulus ? mie.k1 : mie.k0) * r);
  Complex in = 1.0;  // i^n
  Complex acc = 0.0;
  for (int n = 0; n <= order; ++n) {
    if (annulus)
      acc += double(2 * n + 1) * in * (mie.b[n] * tab.j[n] + mie.c[n] * tab.y[n]) * p[n];
    else
      acc += double(2 * n + 1) * in * mie.a[n] * tab.h1(n) * p[n];
    in *= iu;
  }
  const Complex phase = std::polar(1.0, mie.k0 * mie.center.dot(mie.incident_dir));
  return phase * acc;
}

}  // namespace

Complex oracle_u_scattered(const MieCoefficients& mie, const Vector3d& x) {
  return mode_sum(mie, x, false);
}

Complex oracle_v(const MieCoefficients& mie, const Vector3d& x) { return mode_sum(mie, x, true); }

Complex oracle_far_field_at(const MieCoefficients& mie, const Vector3d& xhat) {
  const double cg = std::clamp(xhat.normalized().dot(mie.incident_dir), -1.0, 1.0);
  const int order = mie.max_order();
  const std::vector<double> p = legendre_all(order, cg);
  Complex acc = 0.0;
  for (int n = 0; n <= order; ++n) acc += double(2 * n + 1) * mie.a[n] * p[n];
  const Complex phase = std::polar(1.0, mie.k0 * mie.center.dot(mie.incident_dir - xhat));
  return phase * (-iu / mie.k0) * acc;
}

FarField oracle_far_field(const MieCoefficients& mie, const DirectionGrid& dirs) {
  FarField ff;
  ff.directions = dirs;
  ff.values.resize(dirs.size());
  for (int i = 0; i < dirs.size(); ++i) ff.values[i] = oracle_far_field_at(mie, dirs.dirs.col(i));
  ff.incident_tag = "plane-wave-oracle";
  return ff;
}

}  // namespace lmscat
