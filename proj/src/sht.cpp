#include "lmscat/sht.hpp"

#include <cmath>

namespace lmscat {

namespace {

// e^{i m phi} for m = 0..L
void phase_table(int L, double phi, std::vector<Complex>& e) {
  e.resize(L + 1);
  e[0] = 1.0;
  const Complex w = std::polar(1.0, phi);
  for (int m = 1; m <= L; ++m) e[m] = e[m - 1] * w;
}

}  // namespace

void sh_eval_point(int L, double cos_theta, double phi, Complex* out) {
  thread_local AssocLegendreTable tab;
  thread_local std::vector<Complex> e;
  tab.compute(L, cos_theta);
  phase_table(L, phi, e);
  for (int n = 0; n <= L; ++n) {
    out[sh_index(n, 0)] = tab.val[tri_index(n, 0)];
    for (int m = 1; m <= n; ++m) {
      const Complex v = tab.val[tri_index(n, m)] * e[m];
      out[sh_index(n, m)] = v;
      const double cs = (m % 2 == 0) ? 1.0 : -1.0;
      out[sh_index(n, -m)] = cs * std::conj(v);
    }
  }
}

void sh_eval_derivs_point(int L, double cos_theta, double phi, Complex* dth, Complex* dps) {
  thread_local AssocLegendreTable tab;
  thread_local std::vector<Complex> e;
  tab.compute(L, cos_theta);
  phase_table(L, phi, e);
  for (int n = 0; n <= L; ++n) {
    dth[sh_index(n, 0)] = tab.dth[tri_index(n, 0)];
    dps[sh_index(n, 0)] = 0.0;
    for (int m = 1; m <= n; ++m) {
      const Complex dv = tab.dth[tri_index(n, m)] * e[m];
      const Complex pv = iu * double(m) * tab.over_sin[tri_index(n, m)] * e[m];
      const double cs = (m % 2 == 0) ? 1.0 : -1.0;
      dth[sh_index(n, m)] = dv;
      dth[sh_index(n, -m)] = cs * std::conj(dv);
      dps[sh_index(n, m)] = pv;
      dps[sh_index(n, -m)] = cs * std::conj(pv);
    }
  }
}

MatrixXcd sh_eval_matrix(int L, const Matrix3Xd& dirs) {
  const int npt = int(dirs.cols());
  MatrixXcd out(npt, sh_count(L));
  std::vector<Complex> row(sh_count(L));
  for (int p = 0; p < npt; ++p) {
    const Vector3d d = dirs.col(p);
    sh_eval_point(L, std::clamp(d.z(), -1.0, 1.0), std::atan2(d.y(), d.x()), row.data());
    for (int k = 0; k < sh_count(L); ++k) out(p, k) = row[k];
  }
  return out;
}

ShtBasis make_sht_basis(const SphereGrid& grid, int degree) {
  ShtBasis basis;
  basis.degree = degree;
  const int nsh = sh_count(degree);
  const int n = grid.size();
  basis.analysis.resize(nsh, n);
  basis.synth_val.resize(n, nsh);
  basis.synth_dth.resize(n, nsh);
  basis.synth_dps.resize(n, nsh);
  std::vector<Complex> v(nsh), dt(nsh), dp(nsh);
  for (int ip = 0; ip < grid.n_polar; ++ip) {
    const double w = grid.sigma_weight(ip);
    for (int ia = 0; ia < grid.n_azimuth; ++ia) {
      const int j = ip * grid.n_azimuth + ia;
      sh_eval_point(degree, grid.cos_theta(ip), grid.phi(ia), v.data());
      sh_eval_derivs_point(degree, grid.cos_theta(ip), grid.phi(ia), dt.data(), dp.data());
      for (int k = 0; k < nsh; ++k) {
        basis.analysis(k, j) = w * std::conj(v[k]);
        basis.synth_val(j, k) = v[k];
        basis.synth_dth(j, k) = dt[k];
        basis.synth_dps(j, k) = dp[k];
      }
    }
  }
  return basis;
}

}  // namespace lmscat
