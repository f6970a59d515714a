#ifndef LMSCAT_OPERATORS_HPP
#define LMSCAT_OPERATORS_HPP

#include <optional>
#include <vector>

#include "lmscat/geometry.hpp"
#include "lmscat/kernels.hpp"

namespace lmscat {

enum class LayerKind { single, double_layer, adjoint_double_layer };

enum class OperatorKind { S, K, Kprime, Tdiff, TcomposedMaue, LaplaceS };

/// One boundary operator discretized with Nystrom quadrature.
struct OperatorMatrix {
  MatrixXcd entries;  // target nodes x source nodes
  OperatorKind kind;
  int quadrature_order = 0;
};

struct KernelParams {
  double k = 0.0;
  const QuadSurface* src = nullptr;
  const QuadSurface* tgt = nullptr;
  std::optional<PartLabel> src_part;
  std::optional<PartLabel> tgt_part;  // only consulted by the hypersingular paths
};

/// Rotated-grid sizes and hyperinterpolation degree of the pole-rotation
/// singular quadrature. Zeros resolve against the surface grid.
struct SingularQuadSpec {
  int n_theta = 0;
  int n_phi = 0;
  int degree = -1;

  void resolve(const SphereGrid& grid) {
    if (n_theta <= 0) n_theta = grid.n_polar + 4;
    if (n_phi <= 0) n_phi = grid.n_azimuth;
    if (degree < 0) degree = grid.n_polar - 1;
  }
};

// ---------------------------------------------------------------------------
// Assembly engines.

/// Same-surface weakly singular operators by pole rotation: for every surface
/// node the parametrization pole is rotated onto the node, the sin factor of
/// the rotated Jacobian cancels the 1/|x-y| singularity, and the density is
/// hyperinterpolated from the nodal grid. One dense matrix per kernel, all
/// kernels sharing the rotated geometry pass.
std::vector<MatrixXcd> assemble_singular_batch(const QuadSurface& surf,
                                               const std::vector<KernelFn>& kernels,
                                               SingularQuadSpec spec,
                                               RunPolicy policy = RunPolicy::openmp);

/// Same quadrature, arbitrary on-surface target directions (unit vectors on
/// the parameter sphere). Rows map nodal densities to values at the targets.
std::vector<MatrixXcd> assemble_singular_rows(const QuadSurface& surf,
                                              const Matrix3Xd& target_dirs,
                                              const std::vector<KernelFn>& kernels,
                                              SingularQuadSpec spec,
                                              RunPolicy policy = RunPolicy::openmp);

/// Smooth direct Nystrom quadrature for targets off the source surface.
MatrixXcd assemble_smooth(const Matrix3Xd& tgt_points, const Matrix3Xd& tgt_normals,
                          const QuadSurface& src, std::optional<PartLabel> src_part,
                          const KernelFn& kernel, RunPolicy policy = RunPolicy::openmp);

std::vector<int> part_indices(const QuadSurface& surf, std::optional<PartLabel> part);
MatrixXcd restrict_rows(const MatrixXcd& m, const std::vector<int>& rows);
MatrixXcd restrict_cols(const MatrixXcd& m, const std::vector<int>& cols);

// ---------------------------------------------------------------------------
// Named operators.

/// S, K or K' for wavenumber k. Same-surface pairs take the singular path,
/// disjoint surfaces the smooth one. k = 0 is allowed only for the single layer.
OperatorMatrix assemble_layer(LayerKind kind, const KernelParams& params,
                              SingularQuadSpec spec = {}, RunPolicy policy = RunPolicy::openmp);

/// Laplace single layer (k = 0 exactly) from a part of src onto tgt.
OperatorMatrix assemble_laplace_single(const QuadSurface& src, std::optional<PartLabel> src_part,
                                       const QuadSurface& tgt, SingularQuadSpec spec = {},
                                       RunPolicy policy = RunPolicy::openmp);

/// Square of the part-restricted Laplace single layer (matrix product of the
/// restriction with itself); the smoothing composition of the field ansatz.
MatrixXcd laplace_single_squared(const QuadSurface& surf, std::optional<PartLabel> part,
                                 SingularQuadSpec spec = {}, RunPolicy policy = RunPolicy::openmp);

/// T_{ka} - T_{kb} on one surface as a single weakly singular operator.
OperatorMatrix assemble_hyper_diff(double ka, double kb, const QuadSurface& surf,
                                   SingularQuadSpec spec = {},
                                   RunPolicy policy = RunPolicy::openmp);

/// Spectral tangential calculus on one surface grid: hyperinterpolation-based
/// theta/phi differentiation plus the metric frames turning parameter
/// derivatives into the surface gradient.
struct SurfaceCalculus {
  MatrixXcd dth;        // N x N, d/dtheta
  MatrixXcd dps;        // N x N, (1/sin) d/dphi
  Matrix3Xd a_theta;    // gradient frame for the theta derivative
  Matrix3Xd a_phis;     // gradient frame for the scaled phi derivative
  Matrix3Xd normals;

  Eigen::MatrixXcd grad_component(int c, const MatrixXcd& f_th, const MatrixXcd& f_ps) const;
};

SurfaceCalculus make_surface_calculus(const QuadSurface& surf);

/// Hypersingular operator applied through the Maue identity
///   T psi = div_S( (S_k[nu x Grad_S psi]) x nu ) + k^2 nu . S_k[nu psi],
/// valid for smooth densities; columns of `densities` are treated as nodal
/// functions on the full surface grid.
MatrixXcd apply_hypersingular_maue(const QuadSurface& surf, double k,
                                   const MatrixXcd& single_layer_same,
                                   const SurfaceCalculus& calc, const MatrixXcd& densities);

/// The regularized hypersingular blocks of the integral-equation system.
/// Disjoint target/source (different surfaces, or disjoint parts of one
/// surface) are assembled by direct smooth quadrature; a same-surface request
/// must carry the smoothing composition and goes through the Maue identity.
/// `smooth_postcompose`, when given, maps the source-part density space into
/// itself and multiplies from the right.
OperatorMatrix assemble_T_regularized(const KernelParams& params,
                                      const MatrixXcd* smooth_postcompose = nullptr,
                                      SingularQuadSpec spec = {},
                                      RunPolicy policy = RunPolicy::openmp);

}  // namespace lmscat

#endif
