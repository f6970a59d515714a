#ifndef LMSCAT_FARFIELD_HPP
#define LMSCAT_FARFIELD_HPP

#include <string>

#include "lmscat/sht.hpp"

namespace lmscat {

/// Quadrature-capable direction grid on the unit sphere. With an even azimuth
/// count the grid is closed under direction reversal.
struct DirectionGrid {
  SphereGrid grid;
  Matrix3Xd dirs;
  VectorXd weights;  // unit-sphere measure

  DirectionGrid() = default;
  DirectionGrid(int n_polar, int n_azimuth) : grid(n_polar, n_azimuth) {
    const int n = grid.size();
    dirs.resize(3, n);
    weights.resize(n);
    for (int ip = 0; ip < n_polar; ++ip)
      for (int ia = 0; ia < n_azimuth; ++ia) {
        const int j = ip * n_azimuth + ia;
        dirs.col(j) = grid.direction(ip, ia);
        weights[j] = grid.sigma_weight(ip);
      }
  }

  int size() const { return grid.size(); }
  double theta(int j) const { return std::acos(std::clamp(dirs.col(j).z(), -1.0, 1.0)); }
  double phi_angle(int j) const { return std::atan2(dirs.col(j).y(), dirs.col(j).x()); }

  /// Index of the reversed direction; requires an even azimuth count.
  int antipodal(int j) const {
    const int na = grid.n_azimuth;
    if (na % 2 != 0) fail(ErrorKind::invalid_config, "antipodal map needs an even azimuth count");
    const int ip = j / na, ia = j % na;
    return (grid.n_polar - 1 - ip) * na + (ia + na / 2) % na;
  }
};

/// Far-field samples on a direction grid, Eq.-(1.8)-normalized amplitudes.
struct FarField {
  DirectionGrid directions;
  VectorXcd values;
  std::string incident_tag;
};

/// Weighted relative L2 distance against the reference values.
inline double relative_l2(const VectorXcd& a, const VectorXcd& ref, const VectorXd& w) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    num += w[i] * std::norm(a[i] - ref[i]);
    den += w[i] * std::norm(ref[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace lmscat

#endif
