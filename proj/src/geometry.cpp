#include "lmscat/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lmscat {

int RadialMap::max_degree() const {
  int L = 0;
  for (const auto& t : terms) L = std::max(L, t.n);
  return L;
}

void RadialMap::eval(double cos_theta, double phi, double& rho, double& rho_th,
                     double& rho_ps) const {
  rho = constant;
  rho_th = 0.0;
  rho_ps = 0.0;
  if (terms.empty()) return;
  thread_local AssocLegendreTable tab;
  tab.compute(max_degree(), cos_theta);
  for (const auto& term : terms) {
    const int am = std::abs(term.m);
    if (am > term.n) fail(ErrorKind::invalid_geometry, "radial term with |m| > n");
    const double p = tab.val[tri_index(term.n, am)];
    const double dp = tab.dth[tri_index(term.n, am)];
    if (term.m == 0) {
      rho += term.c * p;
      rho_th += term.c * dp;
    } else {
      const double q = tab.over_sin[tri_index(term.n, am)];
      const double s2 = std::numbers::sqrt2;
      if (term.m > 0) {
        rho += term.c * s2 * p * std::cos(am * phi);
        rho_th += term.c * s2 * dp * std::cos(am * phi);
        rho_ps += -term.c * s2 * am * q * std::sin(am * phi);
      } else {
        rho += term.c * s2 * p * std::sin(am * phi);
        rho_th += term.c * s2 * dp * std::sin(am * phi);
        rho_ps += term.c * s2 * am * q * std::cos(am * phi);
      }
    }
  }
}

ChartPoint QuadSurface::chart(double cos_theta, double phi) const {
  const double t = std::clamp(cos_theta, -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  const double cp = std::cos(phi), sp = std::sin(phi);
  const Vector3d er(s * cp, s * sp, t);
  const Vector3d eth(t * cp, t * sp, -s);
  const Vector3d eph(-sp, cp, 0.0);

  double rho, rho_th, rho_ps;
  map.eval(t, phi, rho, rho_th, rho_ps);

  ChartPoint out;
  out.rho = rho;
  out.point = center + rho * er;
  out.y_theta = rho_th * er + rho * eth;
  out.y_phis = rho_ps * er + rho * eph;
  const Vector3d big_n = rho * er - rho_th * eth - rho_ps * eph;
  const double len = big_n.norm();
  out.normal = big_n / len;
  out.jacobian = rho * len;
  return out;
}

ChartPoint QuadSurface::chart(const Vector3d& unit_dir) const {
  return chart(unit_dir.z(), std::atan2(unit_dir.y(), unit_dir.x()));
}

bool QuadSurface::contains(const Vector3d& x) const {
  const Vector3d d = x - center;
  const double r = d.norm();
  if (r == 0.0) return true;
  double rho, rho_th, rho_ps;
  map.eval(std::clamp(d.z() / r, -1.0, 1.0), std::atan2(d.y(), d.x()), rho, rho_th, rho_ps);
  return r < rho;
}

double QuadSurface::min_node_distance(const Vector3d& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_nodes(); ++j) best = std::min(best, (nodes.col(j) - x).norm());
  return best;
}

double QuadSurface::mesh_width() const {
  return std::sqrt(weights.maxCoeff());
}

std::vector<int> QuadSurface::part_nodes(PartLabel label) const {
  std::vector<int> idx;
  for (int j = 0; j < n_nodes(); ++j)
    if (labels[j] == label) idx.push_back(j);
  return idx;
}

double QuadSurface::part_measure(PartLabel label) const {
  double a = 0.0;
  for (int j = 0; j < n_nodes(); ++j)
    if (labels[j] == label) a += weights[j];
  return a;
}

namespace {

QuadSurface build_surface(const Vector3d& center, const RadialMap& map, int n_polar,
                          int n_azimuth) {
  if (n_polar < 4 || n_azimuth < 8)
    fail(ErrorKind::invalid_geometry, "surface grid too coarse: need n_polar >= 4, n_azimuth >= 8");
  QuadSurface s;
  s.grid = SphereGrid(n_polar, n_azimuth);
  s.center = center;
  s.map = map;
  const int n = s.grid.size();
  s.nodes.resize(3, n);
  s.normals.resize(3, n);
  s.weights.resize(n);
  s.labels.assign(n, PartLabel::interface_part);
  for (int ip = 0; ip < n_polar; ++ip) {
    for (int ia = 0; ia < n_azimuth; ++ia) {
      const int j = ip * n_azimuth + ia;
      const ChartPoint c = s.chart(s.grid.cos_theta(ip), s.grid.phi(ia));
      s.nodes.col(j) = c.point;
      s.normals.col(j) = c.normal;
      s.weights[j] = s.grid.sigma_weight(ip) * c.jacobian;
    }
  }
  return s;
}

}  // namespace

QuadSurface make_sphere(const Vector3d& center, double radius, int n_polar, int n_azimuth) {
  if (radius <= 0.0) fail(ErrorKind::invalid_geometry, "sphere radius must be positive");
  RadialMap map;
  map.constant = radius;
  return build_surface(center, map, n_polar, n_azimuth);
}

QuadSurface make_star_surface(const Vector3d& center, const RadialMap& map, int n_polar,
                              int n_azimuth) {
  // Positivity on a dense sample grid; quadrature nodes alone could miss a dip.
  const int ns_t = 8 * std::max(map.max_degree() + 1, 8);
  const int ns_p = 2 * ns_t;
  for (int i = 0; i <= ns_t; ++i) {
    const double t = -1.0 + 2.0 * i / ns_t;
    for (int a = 0; a < ns_p; ++a) {
      double rho, d1, d2;
      map.eval(t, 2.0 * pi * a / ns_p, rho, d1, d2);
      if (rho <= 0.0) fail(ErrorKind::invalid_geometry, "radial map not strictly positive");
    }
  }
  return build_surface(center, map, n_polar, n_azimuth);
}

QuadSurface partition_boundary(const QuadSurface& surface,
                               const std::function<bool(const Vector3d&)>& gamma0_rule) {
  QuadSurface out = surface;
  for (int j = 0; j < out.n_nodes(); ++j)
    out.labels[j] = gamma0_rule(out.nodes.col(j)) ? PartLabel::gamma0 : PartLabel::gamma1;
  return out;
}

std::function<bool(const Vector3d&)> partition_rule(const std::string& name,
                                                    const Vector3d& center) {
  if (name == "all-dirichlet") return [](const Vector3d&) { return true; };
  if (name == "all-impedance") return [](const Vector3d&) { return false; };
  if (name == "hemisphere-z")
    return [center](const Vector3d& x) { return x.z() >= center.z(); };
  fail(ErrorKind::invalid_config, "unknown partition rule: " + name);
}

BoundaryPartition partition_measures(const QuadSurface& surface, const std::string& rule_name) {
  BoundaryPartition p;
  p.rule = rule_name;
  p.measure_gamma0 = surface.part_measure(PartLabel::gamma0);
  p.measure_gamma1 = surface.part_measure(PartLabel::gamma1);
  return p;
}

Complex surface_integral(const QuadSurface& surface, const VectorXcd& f) {
  if (f.size() != surface.n_nodes())
    fail(ErrorKind::dimension_mismatch, "surface_integral: sample count does not match node count");
  Complex acc = 0.0;
  for (int j = 0; j < surface.n_nodes(); ++j) acc += surface.weights[j] * f[j];
  return acc;
}

}  // namespace lmscat
