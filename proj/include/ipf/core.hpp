#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ipf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kLn2 = std::numbers::ln2;

/// Base of every error the library raises. `kind()` is a stable machine tag
/// used by the CLI when reporting failures.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define IPF_DEFINE_ERROR(Name, tag)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(tag, what) {}     \
  };

IPF_DEFINE_ERROR(InputError, "input")
IPF_DEFINE_ERROR(SingularDiffusionError, "singular-diffusion")
IPF_DEFINE_ERROR(DegenerateEnsembleError, "degenerate-ensemble")
IPF_DEFINE_ERROR(DegenerateFunctionalError, "degenerate-functional")
IPF_DEFINE_ERROR(UndefinedAngleError, "undefined-angle")
IPF_DEFINE_ERROR(SingularRenovationError, "singular-renovation")
IPF_DEFINE_ERROR(NeedsNeedleControlError, "needs-needle-control")
IPF_DEFINE_ERROR(NoCooperationError, "no-cooperation")
IPF_DEFINE_ERROR(NoRootError, "no-root")
IPF_DEFINE_ERROR(DomainError, "domain")
IPF_DEFINE_ERROR(UndefinedLogError, "undefined-log")

#undef IPF_DEFINE_ERROR

class SimulationDivergedError : public Error {
 public:
  SimulationDivergedError(double time, const std::string& what)
      : Error("simulation-diverged", what), time_(time) {}
  /// First grid time at which a non-finite state was seen.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

// Inversions above this condition number are refused rather than returning noise.
inline constexpr double kMaxConditionNumber = 1e12;

double condition_number(const Matrix& m);

/// Inverse guarded by `kMaxConditionNumber`; throws `Err` with `context` on failure.
template <typename Err = DegenerateEnsembleError>
Matrix guarded_inverse(const Matrix& m, const std::string& context) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InputError(context + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw Err(context + ": matrix has non-finite entries");
  const double cond = condition_number(m);
  if (!std::isfinite(cond) || cond > kMaxConditionNumber) {
    throw Err(context + ": matrix is singular (condition number " + std::to_string(cond) + ")");
  }
  return m.partialPivLu().inverse();
}

inline Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace ipf
