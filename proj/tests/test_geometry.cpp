#include <doctest.h>

#include <cmath>

#include "lmscat/geometry.hpp"

using namespace lmscat;

TEST_CASE("sphere areas and structure") {
  const QuadSurface s = make_sphere(Vector3d::Zero(), 1.0, 16, 32);
  CHECK(s.n_nodes() == 512);
  CHECK(s.weights.sum() == doctest::Approx(4.0 * pi).epsilon(1e-12));
  for (int j = 0; j < s.n_nodes(); ++j) {
    CHECK(s.weights[j] > 0.0);
    CHECK(std::abs(s.normals.col(j).norm() - 1.0) < 1e-12);
    // radial normals
    CHECK((s.normals.col(j) - s.nodes.col(j)).norm() < 1e-12);
  }
  const QuadSurface s2 = make_sphere(Vector3d::Zero(), 2.0, 16, 32);
  CHECK(s2.weights.sum() == doctest::Approx(16.0 * pi).epsilon(1e-10));
}

TEST_CASE("invalid geometry rejected") {
  CHECK_THROWS_AS(make_sphere(Vector3d::Zero(), -1.0, 16, 32), Error);
  CHECK_THROWS_AS(make_sphere(Vector3d::Zero(), 1.0, 3, 32), Error);
  CHECK_THROWS_AS(make_sphere(Vector3d::Zero(), 1.0, 16, 4), Error);
  RadialMap bad;
  bad.constant = 0.2;
  bad.terms.push_back({2, 0, -1.0});  // dips negative
  CHECK_THROWS_AS(make_star_surface(Vector3d::Zero(), bad, 16, 32), Error);
}

TEST_CASE("constant radial map reproduces the sphere") {
  RadialMap unit;
  unit.constant = 1.0;
  const QuadSurface star = make_star_surface(Vector3d::Zero(), unit, 12, 24);
  const QuadSurface sph = make_sphere(Vector3d::Zero(), 1.0, 12, 24);
  CHECK((star.nodes - sph.nodes).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((star.normals - sph.normals).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((star.weights - sph.weights).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("perturbed star surface: area self-convergence and normals") {
  RadialMap map;
  map.constant = 1.0;
  map.terms.push_back({2, 0, 0.2});
  const QuadSurface a = make_star_surface(Vector3d::Zero(), map, 16, 32);
  const QuadSurface b = make_star_surface(Vector3d::Zero(), map, 24, 48);
  CHECK(a.weights.sum() == doctest::Approx(b.weights.sum()).epsilon(1e-8));
  // normals unit
  for (int j = 0; j < a.n_nodes(); ++j) CHECK(std::abs(a.normals.col(j).norm() - 1.0) < 1e-12);
  // closed surface: integral of the normal vanishes
  const Vector3d total = a.normals * a.weights;
  CHECK(total.norm() < 1e-9);
}

TEST_CASE("spectral refinement of area error for the Y20 surface") {
  RadialMap map;
  map.constant = 1.0;
  map.terms.push_back({2, 0, 0.2});
  const double ref = make_star_surface(Vector3d::Zero(), map, 48, 96).weights.sum();
  const double e12 = std::abs(make_star_surface(Vector3d::Zero(), map, 12, 24).weights.sum() - ref);
  const double e24 = std::abs(make_star_surface(Vector3d::Zero(), map, 24, 48).weights.sum() - ref);
  // The area quadrature collapses fast; accept either machine floor or the
  // demanded three-decade drop.
  CHECK((e24 <= 1e-3 * e12 || e24 < 1e-13));
}

TEST_CASE("surface integral quadrature exactness") {
  const QuadSurface s = make_sphere(Vector3d::Zero(), 1.0, 16, 32);
  VectorXcd ones = VectorXcd::Ones(s.n_nodes());
  CHECK(std::abs(surface_integral(s, ones) - Complex(4.0 * pi)) < 1e-10);

  // harmonics integrate to zero, |Y_3^2|^2 to one
  std::vector<Complex> buf(sh_count(8));
  VectorXcd y10(s.n_nodes()), y32sq(s.n_nodes());
  for (int ip = 0; ip < s.grid.n_polar; ++ip)
    for (int ia = 0; ia < s.grid.n_azimuth; ++ia) {
      sh_eval_point(8, s.grid.cos_theta(ip), s.grid.phi(ia), buf.data());
      y10[ip * s.grid.n_azimuth + ia] = buf[sh_index(1, 0)];
      y32sq[ip * s.grid.n_azimuth + ia] = std::norm(buf[sh_index(3, 2)]);
    }
  CHECK(std::abs(surface_integral(s, y10)) < 1e-10);
  CHECK(std::abs(surface_integral(s, y32sq) - Complex(1.0)) < 1e-8);

  // all low harmonics except (0,0) vanish
  for (int n = 1; n < s.grid.n_polar; ++n) {
    VectorXcd f(s.n_nodes());
    for (int ip = 0; ip < s.grid.n_polar; ++ip)
      for (int ia = 0; ia < s.grid.n_azimuth; ++ia) {
        sh_eval_point(n, s.grid.cos_theta(ip), s.grid.phi(ia), buf.data());
        f[ip * s.grid.n_azimuth + ia] = buf[sh_index(n, std::min(n, 2))];
      }
    CHECK(std::abs(surface_integral(s, f)) < 1e-10);
  }

  VectorXcd wrong(3);
  CHECK_THROWS_AS(surface_integral(s, wrong), Error);
}

TEST_CASE("partitions: pure and hemisphere") {
  const QuadSurface s = make_sphere(Vector3d::Zero(), 2.0, 16, 32);

  const QuadSurface soft = partition_boundary(s, partition_rule("all-dirichlet", s.center));
  CHECK(soft.part_nodes(PartLabel::gamma1).empty());
  CHECK(soft.part_nodes(PartLabel::gamma0).size() == size_t(s.n_nodes()));

  const QuadSurface imp = partition_boundary(s, partition_rule("all-impedance", s.center));
  CHECK(imp.part_nodes(PartLabel::gamma0).empty());

  const QuadSurface hemi = partition_boundary(s, partition_rule("hemisphere-z", s.center));
  const BoundaryPartition bp = partition_measures(hemi, "hemisphere-z");
  CHECK(bp.measure_gamma0 == doctest::Approx(2.0 * pi * 4.0).epsilon(1e-10));
  CHECK(bp.measure_gamma0 + bp.measure_gamma1 ==
        doctest::Approx(s.weights.sum()).epsilon(1e-12));

  CHECK_THROWS_AS(partition_rule("nonsense", s.center), Error);
}

TEST_CASE("containment and chart evaluation") {
  RadialMap map;
  map.constant = 1.0;
  map.terms.push_back({2, 0, 0.2});
  const QuadSurface s = make_star_surface(Vector3d::Zero(), map, 16, 32);
  CHECK(s.contains(Vector3d(0.0, 0.0, 0.5)));
  CHECK(!s.contains(Vector3d(0.0, 0.0, 3.0)));
  // chart at a grid node reproduces the stored node
  const ChartPoint c = s.chart(s.grid.cos_theta(3), s.grid.phi(5));
  CHECK((c.point - s.nodes.col(3 * 32 + 5)).norm() < 1e-13);
  CHECK((c.normal - s.normals.col(3 * 32 + 5)).norm() < 1e-13);
}
