#include <doctest.h>

#include <cmath>

#include "lmscat/legendre.hpp"

using namespace lmscat;

TEST_CASE("gauss-legendre small rules match known nodes") {
  const GaussRule g2 = gauss_legendre(2);
  CHECK(g2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  const GaussRule g5 = gauss_legendre(5);
  CHECK(g5.nodes[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g5.weights[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  for (int n : {4, 9, 16, 31}) {
    const GaussRule g = gauss_legendre(n);
    // degree 2n-1 monomial
    const int d = 2 * n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += g.weights[i] * std::pow(g.nodes[i], d - 1);
    const double exact = 2.0 / d;  // integral of x^{d-1}, d-1 even
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
    CHECK(g.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("legendre recurrence values") {
  const auto p = legendre_all(5, 0.3);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.3);
  CHECK(p[2] == doctest::Approx(0.5 * (3 * 0.09 - 1)).epsilon(1e-15));
  CHECK(p[4] == doctest::Approx((35 * std::pow(0.3, 4) - 30 * 0.09 + 3) / 8.0).epsilon(1e-14));
}

TEST_CASE("normalized associated legendre: orthonormality via quadrature") {
  const int L = 10;
  const GaussRule g = gauss_legendre(24);
  // int_{-1}^{1} Pbar_n^m Pbar_n'^m dt = delta_{nn'} / (2 pi)
  AssocLegendreTable tab;
  for (int m : {0, 1, 3}) {
    for (int n = m; n <= L; ++n) {
      for (int n2 = m; n2 <= L; ++n2) {
        double acc = 0.0;
        for (int q = 0; q < g.nodes.size(); ++q) {
          tab.compute(L, g.nodes[q]);
          acc += g.weights[q] * tab.val[tri_index(n, m)] * tab.val[tri_index(n2, m)];
        }
        const double expd = (n == n2) ? 1.0 / (2.0 * pi) : 0.0;
        CHECK(acc == doctest::Approx(expd).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("theta derivative matches finite differences away from poles") {
  const int L = 12;
  const double theta = 1.1, h = 1e-6;
  AssocLegendreTable t0, tp, tm;
  t0.compute(L, std::cos(theta));
  tp.compute(L, std::cos(theta + h));
  tm.compute(L, std::cos(theta - h));
  for (int n = 0; n <= L; ++n) {
    for (int m = 0; m <= n; ++m) {
      const double fd = (tp.val[tri_index(n, m)] - tm.val[tri_index(n, m)]) / (2 * h);
      CHECK(t0.dth[tri_index(n, m)] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("over_sin is Pbar/sin including near the pole") {
  const int L = 8;
  AssocLegendreTable tab;
  const double theta = 1e-7;
  tab.compute(L, std::cos(theta));
  // m=1 entries stay finite and match the analytic limit slope for Y_1^1
  CHECK(std::isfinite(tab.over_sin[tri_index(1, 1)]));
  CHECK(tab.over_sin[tri_index(1, 1)] ==
        doctest::Approx(-std::sqrt(3.0 / (8.0 * pi))).epsilon(1e-9));
  const double theta2 = 0.7;
  tab.compute(L, std::cos(theta2));
  for (int n = 1; n <= L; ++n)
    for (int m = 1; m <= n; ++m)
      CHECK(tab.over_sin[tri_index(n, m)] ==
            doctest::Approx(tab.val[tri_index(n, m)] / std::sin(theta2)).epsilon(1e-12));
}
