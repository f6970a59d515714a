#include "lmscat/legendre.hpp"

#include <cmath>

namespace lmscat {

GaussRule gauss_legendre(int n) {
  if (n < 1) fail(ErrorKind::invalid_config, "gauss_legendre: need n >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n, symmetric in pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one more polish step
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / dp;
        break;
      }
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;  // ascending order
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    // midpoint node is exactly zero
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

std::vector<double> legendre_all(int n, double x) {
  std::vector<double> p(n + 1);
  p[0] = 1.0;
  if (n >= 1) p[1] = x;
  for (int k = 2; k <= n; ++k) p[k] = ((2 * k - 1) * x * p[k - 1] - (k - 1) * p[k - 2]) / k;
  return p;
}

void AssocLegendreTable::compute(int L, double t) {
  degree = L;
  const int sz = tri_index(L, L) + 1;
  val.assign(sz, 0.0);
  dth.assign(sz, 0.0);
  over_sin.assign(sz, 0.0);

  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));

  // val: upward in n for each m; seeds on the diagonal.
  val[tri_index(0, 0)] = 1.0 / std::sqrt(4.0 * pi);
  for (int m = 1; m <= L; ++m)
    val[tri_index(m, m)] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * val[tri_index(m - 1, m - 1)];
  for (int m = 0; m < L; ++m)
    val[tri_index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * t * val[tri_index(m, m)];
  for (int m = 0; m <= L; ++m) {
    for (int n = m + 2; n <= L; ++n) {
      double a = std::sqrt((4.0 * n * n - 1.0) / (double(n) * n - double(m) * m));
      double b = std::sqrt((double(n - 1) * (n - 1) - double(m) * m) / (4.0 * double(n - 1) * (n - 1) - 1.0));
      val[tri_index(n, m)] = a * (t * val[tri_index(n - 1, m)] - b * val[tri_index(n - 2, m)]);
    }
  }

  // over_sin: same recurrences with the sin factor divided out of the seed.
  for (int m = 1; m <= L; ++m) {
    const double seed = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * val[tri_index(m - 1, m - 1)];
    over_sin[tri_index(m, m)] = seed;
    if (m + 1 <= L) over_sin[tri_index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * t * seed;
    for (int n = m + 2; n <= L; ++n) {
      double a = std::sqrt((4.0 * n * n - 1.0) / (double(n) * n - double(m) * m));
      double b = std::sqrt((double(n - 1) * (n - 1) - double(m) * m) / (4.0 * double(n - 1) * (n - 1) - 1.0));
      over_sin[tri_index(n, m)] = a * (t * over_sin[tri_index(n - 1, m)] - b * over_sin[tri_index(n - 2, m)]);
    }
  }

  // dth: m = 0 via Pbar_n^1, m >= 1 via the over_sin combination.
  for (int n = 1; n <= L; ++n)
    dth[tri_index(n, 0)] = std::sqrt(double(n) * (n + 1.0)) * val[tri_index(n, 1)];
  for (int m = 1; m <= L; ++m) {
    for (int n = m; n <= L; ++n) {
      double d = n * t * over_sin[tri_index(n, m)];
      if (n > m) {
        double c = std::sqrt((2.0 * n + 1.0) * (double(n) - m) * (double(n) + m) / (2.0 * n - 1.0));
        d -= c * over_sin[tri_index(n - 1, m)];
      }
      dth[tri_index(n, m)] = d;
    }
  }
}

}  // namespace lmscat
