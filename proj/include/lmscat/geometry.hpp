#ifndef LMSCAT_GEOMETRY_HPP
#define LMSCAT_GEOMETRY_HPP

#include <functional>
#include <string>
#include <vector>

#include "lmscat/sht.hpp"

namespace lmscat {

enum class PartLabel { gamma0, gamma1, interface_part };

/// Star-shaped radial map r(direction) = constant + sum of real orthonormal
/// spherical-harmonic terms c * Y_{n,m} (m >= 0: cosine branch, m < 0: sine).
struct RadialMap {
  struct Term {
    int n = 0;
    int m = 0;
    double c = 0.0;
  };
  double constant = 1.0;
  std::vector<Term> terms;

  int max_degree() const;
  bool is_constant() const { return terms.empty(); }
  /// rho, d(rho)/d(theta), (1/sin theta) d(rho)/d(phi).
  void eval(double cos_theta, double phi, double& rho, double& rho_th, double& rho_ps) const;
};

/// Geometry of the surface at one parameter direction.
struct ChartPoint {
  Vector3d point;
  Vector3d normal;    // unit, outward
  double jacobian;    // area density against the unit-sphere measure
  double rho;
  Vector3d y_theta;   // tangent d(point)/d(theta)
  Vector3d y_phis;    // tangent (1/sin theta) d(point)/d(phi)
};

/// Discretized closed star-shaped surface with Gauss x uniform quadrature.
struct QuadSurface {
  SphereGrid grid;
  Vector3d center = Vector3d::Zero();
  RadialMap map;

  Matrix3Xd nodes;    // 3 x N
  Matrix3Xd normals;  // 3 x N, unit outward
  VectorXd weights;   // N, positive, sums to the surface area
  std::vector<PartLabel> labels;

  int n_nodes() const { return int(nodes.cols()); }
  bool is_sphere() const { return map.is_constant(); }
  double sphere_radius() const { return map.constant; }

  ChartPoint chart(double cos_theta, double phi) const;
  ChartPoint chart(const Vector3d& unit_dir) const;

  /// Strictly inside the surface (star-shaped test against the radial map).
  bool contains(const Vector3d& x) const;
  double min_node_distance(const Vector3d& x) const;
  /// Characteristic mesh width: max over nodes of sqrt(weight).
  double mesh_width() const;

  std::vector<int> part_nodes(PartLabel label) const;
  double part_measure(PartLabel label) const;
};

/// Areas of the two boundary parts of an obstacle surface.
struct BoundaryPartition {
  std::string rule;
  double measure_gamma0 = 0.0;
  double measure_gamma1 = 0.0;
};

QuadSurface make_sphere(const Vector3d& center, double radius, int n_polar, int n_azimuth);
QuadSurface make_star_surface(const Vector3d& center, const RadialMap& map, int n_polar,
                              int n_azimuth);

/// Relabel obstacle nodes: predicate true -> Gamma0 (Dirichlet), false -> Gamma1.
QuadSurface partition_boundary(const QuadSurface& surface,
                               const std::function<bool(const Vector3d&)>& gamma0_rule);

/// Named partition rules accepted by run configurations.
std::function<bool(const Vector3d&)> partition_rule(const std::string& name,
                                                    const Vector3d& center);

BoundaryPartition partition_measures(const QuadSurface& surface, const std::string& rule_name = "");

Complex surface_integral(const QuadSurface& surface, const VectorXcd& f);

}  // namespace lmscat

#endif
