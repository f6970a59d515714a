#ifndef LMSCAT_SHT_HPP
#define LMSCAT_SHT_HPP

#include "lmscat/legendre.hpp"

namespace lmscat {

/// Gauss-Legendre x uniform product grid on the unit sphere. Node ordering is
/// polar-ring major: j = ip * n_azimuth + ia, with t = cos(theta) ascending.
struct SphereGrid {
  int n_polar = 0;
  int n_azimuth = 0;
  GaussRule polar;

  SphereGrid() = default;
  SphereGrid(int np, int na) : n_polar(np), n_azimuth(na), polar(gauss_legendre(np)) {}

  int size() const { return n_polar * n_azimuth; }
  double cos_theta(int ip) const { return polar.nodes[ip]; }
  double phi(int ia) const { return 2.0 * pi * ia / n_azimuth; }
  /// Quadrature weight for the unit-sphere measure d(sigma).
  double sigma_weight(int ip) const { return polar.weights[ip] * 2.0 * pi / n_azimuth; }
  Vector3d direction(int ip, int ia) const {
    double t = cos_theta(ip), s = std::sqrt(std::max(0.0, 1.0 - t * t)), p = phi(ia);
    return {s * std::cos(p), s * std::sin(p), t};
  }
};

/// All complex Y_n^m at one point, flat layout sh_index(n, m), degree <= L.
void sh_eval_point(int L, double cos_theta, double phi, Complex* out);

/// Rows: points (columns of dirs), cols: sh_index layout.
MatrixXcd sh_eval_matrix(int L, const Matrix3Xd& dirs);

/// Hyperinterpolation basis tied to one grid and truncation degree:
/// coeffs = analysis * nodal_values recovers a degree-L expansion exactly for
/// band-limited data and is the discrete L2 projection otherwise.
struct ShtBasis {
  int degree = -1;
  MatrixXcd analysis;   // N_sh x N
  MatrixXcd synth_val;  // N x N_sh, Y at grid nodes
  MatrixXcd synth_dth;  // N x N_sh, d/dtheta Y at grid nodes
  MatrixXcd synth_dps;  // N x N_sh, (1/sin theta) d/dphi Y at grid nodes
};

ShtBasis make_sht_basis(const SphereGrid& grid, int degree);

/// d/dtheta and (1/sin)d/dphi of Y, all orders, at one point.
void sh_eval_derivs_point(int L, double cos_theta, double phi, Complex* dth, Complex* dps);

}  // namespace lmscat

#endif
