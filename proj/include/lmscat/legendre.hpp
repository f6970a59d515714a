#ifndef LMSCAT_LEGENDRE_HPP
#define LMSCAT_LEGENDRE_HPP

#include <vector>

#include "lmscat/common.hpp"

namespace lmscat {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  VectorXd nodes;
  VectorXd weights;
};

GaussRule gauss_legendre(int n);

/// Legendre polynomials P_0..P_n at x.
std::vector<double> legendre_all(int n, double x);

/// Triangular index for (n, m) with 0 <= m <= n.
inline int tri_index(int n, int m) { return n * (n + 1) / 2 + m; }

/// Flat index for complex spherical-harmonic coefficients, -n <= m <= n.
inline int sh_index(int n, int m) { return n * n + n + m; }
inline int sh_count(int degree) { return (degree + 1) * (degree + 1); }

/// Orthonormalized associated Legendre data at one colatitude:
/// val = Pbar_n^m(cos th), dth = d/dth Pbar_n^m(cos th),
/// over_sin = Pbar_n^m / sin th (m >= 1 only; stable at the poles).
/// Normalization: Y_n^m = Pbar_n^m e^{im phi} with int |Y|^2 dsigma = 1,
/// Condon-Shortley phase included.
struct AssocLegendreTable {
  int degree = -1;
  std::vector<double> val;
  std::vector<double> dth;
  std::vector<double> over_sin;

  void compute(int L, double cos_theta);
};

}  // namespace lmscat

#endif
