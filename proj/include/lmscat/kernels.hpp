#ifndef LMSCAT_KERNELS_HPP
#define LMSCAT_KERNELS_HPP

#include <functional>

#include "lmscat/common.hpp"

namespace lmscat {

/// Fundamental solution e^{ikr}/(4 pi r). k = 0 gives the Laplace kernel.
inline Complex phi_fs(const Vector3d& x, const Vector3d& y, double k) {
  const double r = (x - y).norm();
  if (r == 0.0) fail(ErrorKind::singularity, "phi evaluated at coincident points");
  return std::polar(1.0, k * r) / (4.0 * pi * r);
}

/// grad_y of the fundamental solution.
inline Eigen::Vector3cd grad_phi_y(const Vector3d& x, const Vector3d& y, double k) {
  const Vector3d d = y - x;
  const double r = d.norm();
  if (r == 0.0) fail(ErrorKind::singularity, "grad_phi_y at coincident points");
  const Complex dphi = std::polar(1.0, k * r) * (iu * k * r - 1.0) / (4.0 * pi * r * r);
  return (dphi / r) * d.cast<Complex>();
}

/// Double-layer kernel d(phi)/d(nu(y)).
inline Complex dnu_phi(const Vector3d& x, const Vector3d& y, const Vector3d& ny, double k) {
  const Vector3d d = y - x;
  const double r = d.norm();
  if (r == 0.0) fail(ErrorKind::singularity, "dnu_phi at coincident points");
  const Complex dphi = std::polar(1.0, k * r) * (iu * k * r - 1.0) / (4.0 * pi * r * r);
  return dphi * d.dot(ny) / r;
}

/// Adjoint double-layer kernel d(phi)/d(nu(x)).
inline Complex dnux_phi(const Vector3d& x, const Vector3d& nx, const Vector3d& y, double k) {
  const Vector3d d = x - y;
  const double r = d.norm();
  if (r == 0.0) fail(ErrorKind::singularity, "dnux_phi at coincident points");
  const Complex dphi = std::polar(1.0, k * r) * (iu * k * r - 1.0) / (4.0 * pi * r * r);
  return dphi * d.dot(nx) / r;
}

/// Hypersingular kernel d^2 phi / d nu(x) d nu(y) for x != y. Only usable
/// where the quadrature never meets the diagonal (disjoint surfaces/parts).
inline Complex t_kernel(const Vector3d& x, const Vector3d& nx, const Vector3d& y,
                        const Vector3d& ny, double k) {
  const Vector3d d = x - y;
  const double r = d.norm();
  if (r == 0.0) fail(ErrorKind::singularity, "t_kernel at coincident points");
  const Complex e = std::polar(1.0, k * r);
  const Complex kr = Complex(0.0, k * r);
  const Complex a = e * (3.0 - 3.0 * kr - k * k * r * r) / (4.0 * pi * std::pow(r, 5));
  const Complex b = e * (kr - 1.0) / (4.0 * pi * r * r * r);
  return -a * d.dot(nx) * d.dot(ny) - b * nx.dot(ny);
}

/// Radial factors of the hypersingular difference kernel
///   T_{ka} - T_{kb} = -A(r) ((x-y).nx)((x-y).ny) - B(r) (nx.ny),
/// with A = (g'' r - g')/r^3, B = g'/r for g = (e^{i ka r} - e^{i kb r})/(4 pi r).
/// The leading hypersingular parts cancel; B is weakly singular, A is O(1/r^3)
/// but always multiplied by two O(r^2) normal projections. Small kr uses the
/// power series of g, the direct form loses all digits there.
struct HyperDiffRadial {
  double ka, kb;

  HyperDiffRadial(double ka_, double kb_) : ka(ka_), kb(kb_) {
    if (ka == kb)
      fail(ErrorKind::degenerate_difference,
           "hypersingular difference requires distinct wavenumbers");
  }

  void eval(double r, Complex& a, Complex& b) const {
    const double kmax = std::max(std::abs(ka), std::abs(kb));
    if (kmax * r <= 2.0) {
      series(r, a, b);
    } else {
      a = a_direct(r, ka) - a_direct(r, kb);
      b = b_direct(r, ka) - b_direct(r, kb);
    }
  }

  Complex kernel(const Vector3d& x, const Vector3d& nx, const Vector3d& y,
                 const Vector3d& ny) const {
    const Vector3d d = x - y;
    const double r = d.norm();
    Complex a, b;
    eval(r, a, b);
    return -a * d.dot(nx) * d.dot(ny) - b * nx.dot(ny);
  }

 private:
  static Complex a_direct(double r, double k) {
    const Complex kr = Complex(0.0, k * r);
    return std::polar(1.0, k * r) * (3.0 - 3.0 * kr - k * k * r * r) / (4.0 * pi * std::pow(r, 5));
  }
  static Complex b_direct(double r, double k) {
    const Complex kr = Complex(0.0, k * r);
    return std::polar(1.0, k * r) * (kr - 1.0) / (4.0 * pi * r * r * r);
  }

  void series(double r, Complex& a, Complex& b) const {
    // c_m = i^m (ka^m - kb^m) / (4 pi m!), g = sum_{m>=1} c_m r^{m-1}
    // B = c_2/r + sum_{m>=3} (m-1) c_m r^{m-3}
    // A = -c_2/r^3 + sum_{m>=4} (m-1)(m-3) c_m r^{m-5}
    Complex ipow = 1.0;         // i^m
    double fact = 1.0;          // m!
    double pa = 1.0, pb = 1.0;  // ka^m, kb^m
    a = 0.0;
    b = 0.0;
    Complex c2{};
    for (int m = 1; m <= 40; ++m) {
      ipow *= iu;
      fact *= m;
      pa *= ka;
      pb *= kb;
      const Complex cm = ipow * (pa - pb) / (4.0 * pi * fact);
      if (m == 2) c2 = cm;
      if (m >= 3) b += double(m - 1) * cm * std::pow(r, m - 3);
      if (m >= 4) a += double((m - 1) * (m - 3)) * cm * std::pow(r, m - 5);
    }
    b += c2 / r;
    a += -c2 / (r * r * r);
  }
};

/// Scalar surface kernel used by the assembly engines.
using KernelFn =
    std::function<Complex(const Vector3d& x, const Vector3d& nx, const Vector3d& y,
                          const Vector3d& ny)>;

}  // namespace lmscat

#endif
