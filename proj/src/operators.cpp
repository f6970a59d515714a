#include "lmscat/operators.hpp"

#include <cmath>

#include <omp.h>

namespace lmscat {

namespace {

// Quadrature grid in rotated coordinates: Gauss-Legendre in the polar angle
// itself (the integrand is smooth in theta once sin theta cancels the kernel
// singularity, but carries sqrt terms in cos theta), uniform in azimuth.
struct RotatedRef {
  int nth = 0, nph = 0;
  Matrix3Xd dirs;    // reference directions, pole at +z
  VectorXd weight;   // per point: w_theta * (2 pi / nph) * sin(theta)
  VectorXd theta;

  RotatedRef(int n_theta, int n_phi) : nth(n_theta), nph(n_phi) {
    const GaussRule g = gauss_legendre(nth);
    const int m = nth * nph;
    dirs.resize(3, m);
    weight.resize(m);
    theta.resize(m);
    for (int a = 0; a < nth; ++a) {
      const double th = 0.5 * pi * (g.nodes[a] + 1.0);
      const double wth = 0.5 * pi * g.weights[a];
      const double s = std::sin(th), c = std::cos(th);
      for (int b = 0; b < nph; ++b) {
        const double ph = 2.0 * pi * b / nph;
        const int ab = a * nph + b;
        dirs.col(ab) = Vector3d(s * std::cos(ph), s * std::sin(ph), c);
        weight[ab] = wth * (2.0 * pi / nph) * s;
        theta[ab] = th;
      }
    }
  }
};

Eigen::Matrix3d rot_y(double th) {
  Eigen::Matrix3d r;
  r << std::cos(th), 0.0, std::sin(th), 0.0, 1.0, 0.0, -std::sin(th), 0.0, std::cos(th);
  return r;
}

Eigen::Matrix3d rot_z(double ph) {
  Eigen::Matrix3d r;
  r << std::cos(ph), -std::sin(ph), 0.0, std::sin(ph), std::cos(ph), 0.0, 0.0, 0.0, 1.0;
  return r;
}

// m-order of each flat spherical-harmonic index.
std::vector<int> order_of_column(int degree) {
  std::vector<int> m(sh_count(degree));
  for (int n = 0; n <= degree; ++n)
    for (int mm = -n; mm <= n; ++mm) m[sh_index(n, mm)] = mm;
  return m;
}

// Surface geometry sampled at a batch of parameter directions.
struct SampledGeometry {
  Matrix3Xd points;
  Matrix3Xd normals;
  VectorXd jac;

  void compute(const QuadSurface& surf, const Matrix3Xd& d) {
    const int m = int(d.cols());
    points.resize(3, m);
    normals.resize(3, m);
    jac.resize(m);
    for (int j = 0; j < m; ++j) {
      const ChartPoint c = surf.chart(d.col(j));
      points.col(j) = c.point;
      normals.col(j) = c.normal;
      jac[j] = c.jacobian;
    }
  }
};

void kernel_rows(const std::vector<KernelFn>& kernels, const Vector3d& x, const Vector3d& nx,
                 const SampledGeometry& geo, const VectorXd& weight, MatrixXcd& rows,
                 int row_offset) {
  const int nk = int(kernels.size());
  const int m = int(geo.jac.size());
  for (int ab = 0; ab < m; ++ab) {
    const double w = weight[ab] * geo.jac[ab];
    const Vector3d y = geo.points.col(ab);
    const Vector3d ny = geo.normals.col(ab);
    for (int ik = 0; ik < nk; ++ik) rows(row_offset + ik, ab) = w * kernels[ik](x, nx, y, ny);
  }
}

}  // namespace

std::vector<int> part_indices(const QuadSurface& surf, std::optional<PartLabel> part) {
  if (!part) {
    std::vector<int> all(surf.n_nodes());
    for (int j = 0; j < surf.n_nodes(); ++j) all[j] = j;
    return all;
  }
  return surf.part_nodes(*part);
}

MatrixXcd restrict_rows(const MatrixXcd& m, const std::vector<int>& rows) {
  MatrixXcd out(rows.size(), m.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(i) = m.row(rows[i]);
  return out;
}

MatrixXcd restrict_cols(const MatrixXcd& m, const std::vector<int>& cols) {
  MatrixXcd out(m.rows(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) out.col(j) = m.col(cols[j]);
  return out;
}

std::vector<MatrixXcd> assemble_singular_batch(const QuadSurface& surf,
                                               const std::vector<KernelFn>& kernels,
                                               SingularQuadSpec spec, RunPolicy policy) {
  spec.resolve(surf.grid);
  const int nk = int(kernels.size());
  const int n = surf.n_nodes();
  const int na = surf.grid.n_azimuth;
  const int np = surf.grid.n_polar;
  const RotatedRef ref(spec.n_theta, spec.n_phi);
  const int m = ref.nth * ref.nph;
  const ShtBasis basis = make_sht_basis(surf.grid, spec.degree);
  const int nsh = sh_count(spec.degree);
  const std::vector<int> morder = order_of_column(spec.degree);
  const bool par = policy == RunPolicy::openmp;

  // Hyperinterpolation coefficients of the quadrature rows, one block per kernel.
  std::vector<MatrixXcd> coef(nk, MatrixXcd(n, nsh));

  if (surf.is_sphere()) {
    // All pairwise kernel invariants are rotation invariant on a sphere, so a
    // single reference row (target at the rotated pole) serves every node.
    SampledGeometry geo;
    geo.compute(surf, ref.dirs);
    const Vector3d x_ref = surf.center + Vector3d(0, 0, surf.sphere_radius());
    const Vector3d n_ref(0, 0, 1);
    MatrixXcd krow(nk, m);
    kernel_rows(kernels, x_ref, n_ref, geo, ref.weight, krow, 0);

#pragma omp parallel for schedule(dynamic) if (par)
    for (int ip = 0; ip < np; ++ip) {
      const double th = std::acos(surf.grid.cos_theta(ip));
      const Eigen::Matrix3d ry = rot_y(th);
      const Matrix3Xd q = ry * ref.dirs;
      const MatrixXcd b_ring = sh_eval_matrix(spec.degree, q);
      MatrixXcd c_base(nk, nsh);
      c_base.noalias() = krow * b_ring;
      for (int ia = 0; ia < na; ++ia) {
        const double phi = surf.grid.phi(ia);
        const int row = ip * na + ia;
        for (int col = 0; col < nsh; ++col) {
          const Complex ph = std::polar(1.0, morder[col] * phi);
          for (int ik = 0; ik < nk; ++ik) coef[ik](row, col) = c_base(ik, col) * ph;
        }
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic) if (par)
    for (int ip = 0; ip < np; ++ip) {
      const double th = std::acos(surf.grid.cos_theta(ip));
      const Eigen::Matrix3d ry = rot_y(th);
      const Matrix3Xd q = ry * ref.dirs;
      const MatrixXcd b_ring = sh_eval_matrix(spec.degree, q);
      MatrixXcd ring_rows(na * nk, m);
      SampledGeometry geo;
      for (int ia = 0; ia < na; ++ia) {
        const double phi = surf.grid.phi(ia);
        const Matrix3Xd d = rot_z(phi) * q;
        geo.compute(surf, d);
        const int node = ip * na + ia;
        kernel_rows(kernels, surf.nodes.col(node), surf.normals.col(node), geo, ref.weight,
                    ring_rows, ia * nk);
      }
      MatrixXcd c_ring(na * nk, nsh);
      c_ring.noalias() = ring_rows * b_ring;
      for (int ia = 0; ia < na; ++ia) {
        const double phi = surf.grid.phi(ia);
        const int row = ip * na + ia;
        for (int col = 0; col < nsh; ++col) {
          const Complex ph = std::polar(1.0, morder[col] * phi);
          for (int ik = 0; ik < nk; ++ik) coef[ik](row, col) = c_ring(ia * nk + ik, col) * ph;
        }
      }
    }
  }

  std::vector<MatrixXcd> out(nk);
  for (int ik = 0; ik < nk; ++ik) {
    out[ik].resize(n, n);
    out[ik].noalias() = coef[ik] * basis.analysis;
  }
  return out;
}

std::vector<MatrixXcd> assemble_singular_rows(const QuadSurface& surf,
                                              const Matrix3Xd& target_dirs,
                                              const std::vector<KernelFn>& kernels,
                                              SingularQuadSpec spec, RunPolicy policy) {
  spec.resolve(surf.grid);
  const int nk = int(kernels.size());
  const int nt = int(target_dirs.cols());
  const RotatedRef ref(spec.n_theta, spec.n_phi);
  const ShtBasis basis = make_sht_basis(surf.grid, spec.degree);
  const int nsh = sh_count(spec.degree);
  const bool par = policy == RunPolicy::openmp;

  std::vector<MatrixXcd> coef(nk, MatrixXcd(nt, nsh));

#pragma omp parallel for schedule(dynamic) if (par)
  for (int it = 0; it < nt; ++it) {
    const Vector3d dir = target_dirs.col(it).normalized();
    const double th = std::acos(std::clamp(dir.z(), -1.0, 1.0));
    const double phi = std::atan2(dir.y(), dir.x());
    const Matrix3Xd d = (rot_z(phi) * rot_y(th)) * ref.dirs;
    const MatrixXcd b_t = sh_eval_matrix(spec.degree, d);
    SampledGeometry geo;
    geo.compute(surf, d);
    const ChartPoint tc = surf.chart(dir);
    MatrixXcd krow(nk, ref.nth * ref.nph);
    kernel_rows(kernels, tc.point, tc.normal, geo, ref.weight, krow, 0);
    MatrixXcd c_t(nk, nsh);
    c_t.noalias() = krow * b_t;
    for (int ik = 0; ik < nk; ++ik) coef[ik].row(it) = c_t.row(ik);
  }

  std::vector<MatrixXcd> out(nk);
  for (int ik = 0; ik < nk; ++ik) {
    out[ik].resize(nt, surf.n_nodes());
    out[ik].noalias() = coef[ik] * basis.analysis;
  }
  return out;
}

MatrixXcd assemble_smooth(const Matrix3Xd& tgt_points, const Matrix3Xd& tgt_normals,
                          const QuadSurface& src, std::optional<PartLabel> src_part,
                          const KernelFn& kernel, RunPolicy policy) {
  const std::vector<int> cols = part_indices(src, src_part);
  const int nt = int(tgt_points.cols());
  const int ns = int(cols.size());
  MatrixXcd out(nt, ns);
  const bool par = policy == RunPolicy::openmp;
#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < nt; ++i) {
    const Vector3d x = tgt_points.col(i);
    const Vector3d nx = tgt_normals.col(i);
    for (int j = 0; j < ns; ++j) {
      const int jj = cols[j];
      out(i, j) =
          src.weights[jj] * kernel(x, nx, src.nodes.col(jj), src.normals.col(jj));
    }
  }
  return out;
}

namespace {

KernelFn layer_kernel(LayerKind kind, double k) {
  switch (kind) {
    case LayerKind::single:
      return [k](const Vector3d& x, const Vector3d&, const Vector3d& y, const Vector3d&) {
        return phi_fs(x, y, k);
      };
    case LayerKind::double_layer:
      return [k](const Vector3d& x, const Vector3d&, const Vector3d& y, const Vector3d& ny) {
        return dnu_phi(x, y, ny, k);
      };
    case LayerKind::adjoint_double_layer:
      return [k](const Vector3d& x, const Vector3d& nx, const Vector3d& y, const Vector3d&) {
        return dnux_phi(x, nx, y, k);
      };
  }
  fail(ErrorKind::unsupported_kernel, "unknown layer kind");
}

OperatorKind op_kind_of(LayerKind kind) {
  switch (kind) {
    case LayerKind::single: return OperatorKind::S;
    case LayerKind::double_layer: return OperatorKind::K;
    default: return OperatorKind::Kprime;
  }
}

}  // namespace

OperatorMatrix assemble_layer(LayerKind kind, const KernelParams& params, SingularQuadSpec spec,
                              RunPolicy policy) {
  if (!params.src || !params.tgt) fail(ErrorKind::invalid_geometry, "assemble_layer: null surface");
  if (params.k < 0.0) fail(ErrorKind::unsupported_kernel, "negative wavenumber");
  if (params.k == 0.0 && kind != LayerKind::single)
    fail(ErrorKind::unsupported_kernel, "k = 0 is supported only for the single layer");

  const KernelFn kernel = layer_kernel(kind, params.k);
  OperatorMatrix out;
  out.kind = op_kind_of(kind);
  if (params.src == params.tgt) {
    spec.resolve(params.src->grid);
    out.quadrature_order = spec.n_theta;
    out.entries = assemble_singular_batch(*params.src, {kernel}, spec, policy)[0];
    if (params.src_part)
      out.entries = restrict_cols(out.entries, part_indices(*params.src, params.src_part));
  } else {
    out.quadrature_order = params.src->grid.n_polar;
    out.entries = assemble_smooth(params.tgt->nodes, params.tgt->normals, *params.src,
                                  params.src_part, kernel, policy);
  }
  return out;
}

OperatorMatrix assemble_laplace_single(const QuadSurface& src, std::optional<PartLabel> src_part,
                                       const QuadSurface& tgt, SingularQuadSpec spec,
                                       RunPolicy policy) {
  KernelParams p;
  p.k = 0.0;
  p.src = &src;
  p.tgt = &tgt;
  p.src_part = src_part;
  OperatorMatrix out = assemble_layer(LayerKind::single, p, spec, policy);
  out.kind = OperatorKind::LaplaceS;
  return out;
}

MatrixXcd laplace_single_squared(const QuadSurface& surf, std::optional<PartLabel> part,
                                 SingularQuadSpec spec, RunPolicy policy) {
  spec.resolve(surf.grid);
  const KernelFn kernel = layer_kernel(LayerKind::single, 0.0);
  const MatrixXcd full = assemble_singular_batch(surf, {kernel}, spec, policy)[0];
  const std::vector<int> idx = part_indices(surf, part);
  const MatrixXcd restricted = restrict_rows(restrict_cols(full, idx), idx);
  return restricted * restricted;
}

OperatorMatrix assemble_hyper_diff(double ka, double kb, const QuadSurface& surf,
                                   SingularQuadSpec spec, RunPolicy policy) {
  const HyperDiffRadial radial(ka, kb);  // rejects ka == kb
  spec.resolve(surf.grid);
  const KernelFn kernel = [radial](const Vector3d& x, const Vector3d& nx, const Vector3d& y,
                                   const Vector3d& ny) { return radial.kernel(x, nx, y, ny); };
  OperatorMatrix out;
  out.kind = OperatorKind::Tdiff;
  out.quadrature_order = spec.n_theta;
  out.entries = assemble_singular_batch(surf, {kernel}, spec, policy)[0];
  return out;
}

SurfaceCalculus make_surface_calculus(const QuadSurface& surf) {
  SurfaceCalculus calc;
  const ShtBasis basis = make_sht_basis(surf.grid, surf.grid.n_polar - 1);
  calc.dth.noalias() = basis.synth_dth * basis.analysis;
  calc.dps.noalias() = basis.synth_dps * basis.analysis;
  const int n = surf.n_nodes();
  calc.a_theta.resize(3, n);
  calc.a_phis.resize(3, n);
  calc.normals = surf.normals;
  for (int ip = 0; ip < surf.grid.n_polar; ++ip) {
    for (int ia = 0; ia < surf.grid.n_azimuth; ++ia) {
      const int j = ip * surf.grid.n_azimuth + ia;
      const ChartPoint c = surf.chart(surf.grid.cos_theta(ip), surf.grid.phi(ia));
      const double g11 = c.y_theta.squaredNorm();
      const double g12 = c.y_theta.dot(c.y_phis);
      const double g22 = c.y_phis.squaredNorm();
      const double det = g11 * g22 - g12 * g12;
      calc.a_theta.col(j) = (g22 * c.y_theta - g12 * c.y_phis) / det;
      calc.a_phis.col(j) = (g11 * c.y_phis - g12 * c.y_theta) / det;
    }
  }
  return calc;
}

MatrixXcd SurfaceCalculus::grad_component(int c, const MatrixXcd& f_th,
                                          const MatrixXcd& f_ps) const {
  return (f_th.array().colwise() * a_theta.row(c).transpose().array().cast<Complex>() +
          f_ps.array().colwise() * a_phis.row(c).transpose().array().cast<Complex>())
      .matrix();
}

MatrixXcd apply_hypersingular_maue(const QuadSurface& surf, double k,
                                   const MatrixXcd& single_layer_same,
                                   const SurfaceCalculus& calc, const MatrixXcd& densities) {
  const auto scale_rows = [](const MatrixXcd& m, const Eigen::VectorXd& v) -> MatrixXcd {
    return (m.array().colwise() * v.array().cast<Complex>()).matrix();
  };

  const MatrixXcd f_th = calc.dth * densities;
  const MatrixXcd f_ps = calc.dps * densities;
  std::array<MatrixXcd, 3> grad;
  for (int c = 0; c < 3; ++c) grad[c] = calc.grad_component(c, f_th, f_ps);

  const VectorXd n0 = calc.normals.row(0).transpose();
  const VectorXd n1 = calc.normals.row(1).transpose();
  const VectorXd n2 = calc.normals.row(2).transpose();

  // m = nu x grad, W = S_k m, U = W x nu
  std::array<MatrixXcd, 3> w;
  w[0] = single_layer_same * (scale_rows(grad[2], n1) - scale_rows(grad[1], n2));
  w[1] = single_layer_same * (scale_rows(grad[0], n2) - scale_rows(grad[2], n0));
  w[2] = single_layer_same * (scale_rows(grad[1], n0) - scale_rows(grad[0], n1));
  std::array<MatrixXcd, 3> u;
  u[0] = scale_rows(w[1], n2) - scale_rows(w[2], n1);
  u[1] = scale_rows(w[2], n0) - scale_rows(w[0], n2);
  u[2] = scale_rows(w[0], n1) - scale_rows(w[1], n0);

  MatrixXcd out = MatrixXcd::Zero(densities.rows(), densities.cols());
  for (int c = 0; c < 3; ++c) {
    const MatrixXcd u_th = calc.dth * u[c];
    const MatrixXcd u_ps = calc.dps * u[c];
    out += scale_rows(u_th, calc.a_theta.row(c).transpose()) +
           scale_rows(u_ps, calc.a_phis.row(c).transpose());
  }
  if (k != 0.0) {
    for (int c = 0; c < 3; ++c) {
      const VectorXd nc = calc.normals.row(c).transpose();
      out += k * k * scale_rows(single_layer_same * scale_rows(densities, nc), nc);
    }
  }
  return out;
}

OperatorMatrix assemble_T_regularized(const KernelParams& params,
                                      const MatrixXcd* smooth_postcompose, SingularQuadSpec spec,
                                      RunPolicy policy) {
  if (!params.src || !params.tgt)
    fail(ErrorKind::invalid_geometry, "assemble_T_regularized: null surface");
  const double k = params.k;
  OperatorMatrix out;
  out.kind = OperatorKind::TcomposedMaue;

  const KernelFn bare = [k](const Vector3d& x, const Vector3d& nx, const Vector3d& y,
                            const Vector3d& ny) { return t_kernel(x, nx, y, ny, k); };

  if (params.src != params.tgt) {
    out.quadrature_order = params.src->grid.n_polar;
    out.entries = assemble_smooth(params.tgt->nodes, params.tgt->normals, *params.src,
                                  params.src_part, bare, policy);
    if (smooth_postcompose) out.entries = out.entries * (*smooth_postcompose);
    return out;
  }

  if (params.src_part && params.tgt_part && *params.src_part != *params.tgt_part) {
    // disjoint parts of one surface: the quadrature never meets the diagonal
    const std::vector<int> rows = part_indices(*params.tgt, params.tgt_part);
    Matrix3Xd tp(3, rows.size()), tn(3, rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      tp.col(i) = params.tgt->nodes.col(rows[i]);
      tn.col(i) = params.tgt->normals.col(rows[i]);
    }
    out.quadrature_order = params.src->grid.n_polar;
    out.entries = assemble_smooth(tp, tn, *params.src, params.src_part, bare, policy);
    if (smooth_postcompose) out.entries = out.entries * (*smooth_postcompose);
    return out;
  }

  if (!smooth_postcompose)
    fail(ErrorKind::unsupported_operation,
         "same-surface hypersingular operator requires a smoothing composition");

  spec.resolve(params.src->grid);
  out.quadrature_order = spec.n_theta;
  const KernelFn single = layer_kernel(LayerKind::single, k);
  const MatrixXcd s_same = assemble_singular_batch(*params.src, {single}, spec, policy)[0];
  const SurfaceCalculus calc = make_surface_calculus(*params.src);
  const std::vector<int> idx = part_indices(*params.src, params.src_part);
  MatrixXcd extended = MatrixXcd::Zero(params.src->n_nodes(), smooth_postcompose->cols());
  for (size_t r = 0; r < idx.size(); ++r) extended.row(idx[r]) = smooth_postcompose->row(r);
  out.entries = apply_hypersingular_maue(*params.src, k, s_same, calc, extended);
  return out;
}

}  // namespace lmscat
