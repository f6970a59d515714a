#ifndef LMSCAT_COMMON_HPP
#define LMSCAT_COMMON_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lmscat {

using Complex = std::complex<double>;
using Eigen::Matrix3Xd;
using Eigen::MatrixXcd;
using Eigen::Vector3d;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex iu{0.0, 1.0};

/// What went wrong; the CLI maps these onto its exit-code contract.
enum class ErrorKind {
  invalid_geometry,
  invalid_config,
  invalid_incidence,
  dimension_mismatch,
  singularity,
  unsupported_kernel,
  unsupported_operation,
  degenerate_difference,
  wrong_region,
  probe_hypothesis,
  solver_failure,
  oracle_failure,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// path kept for testing; `openmp` must produce identical results (row-wise
/// work only, no shared reductions).
enum class RunPolicy { serial, openmp };

}  // namespace lmscat

#endif
