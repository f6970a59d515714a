#ifndef LMSCAT_ORACLE_HPP
#define LMSCAT_ORACLE_HPP

#include <vector>

#include "lmscat/farfield.hpp"

namespace lmscat {

/// Spherical Bessel/Hankel values and derivatives at one argument.
struct SphBessel {
  double j, jp, y, yp;
  Complex h1, h1p;
};

SphBessel spherical_bessel(int n, double x);

/// j_0..j_n and derivatives (downward Miller recurrence for j, upward for y).
struct SphBesselTable {
  VectorXd j, jp, y, yp;
  void compute(int n, double x);
  Complex h1(int n) const { return {j[n], y[n]}; }
  Complex h1p(int n) const { return {jp[n], yp[n]}; }
};

enum class CoreCondition { soft, impedance };

/// Mode-matching solution for a concentric two-layer scatterer: penetrable
/// sphere of radius r0 (transmission constants lambda0, wavenumbers k0 out /
/// k1 in) around an impenetrable core of radius r1.
struct MieCoefficients {
  std::vector<Complex> a;  // radiating exterior modes
  std::vector<Complex> b;  // annulus j modes
  std::vector<Complex> c;  // annulus y modes
  double k0 = 0, k1 = 0, lambda0 = 1, r0 = 0, r1 = 0;
  CoreCondition core = CoreCondition::soft;
  double lambda_imp = 0.0;
  Vector3d incident_dir = Vector3d::UnitZ();
  Vector3d center = Vector3d::Zero();

  int max_order() const { return int(a.size()) - 1; }
};

MieCoefficients mie_layered(double k0, double k1, double lambda0, double r0, double r1,
                            CoreCondition core, double lambda_imp, const Vector3d& d, int order);

/// Default truncation: k0 r0 + margin.
int mie_default_order(double k0, double r0);

FarField oracle_far_field(const MieCoefficients& mie, const DirectionGrid& dirs);
Complex oracle_far_field_at(const MieCoefficients& mie, const Vector3d& xhat);

/// Scattered exterior field u^s at x (|x - center| > r0).
Complex oracle_u_scattered(const MieCoefficients& mie, const Vector3d& x);
/// Total annulus field v at x (r1 < |x - center| < r0).
Complex oracle_v(const MieCoefficients& mie, const Vector3d& x);

}  // namespace lmscat

#endif
