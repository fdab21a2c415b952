#pragma once

#include "ngwp/best_basis.hpp"
#include "ngwp/spectral.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace ngwp {

/// Relative l2 error of the best k-term approximation for k = 0, 1, ...
struct ErrorCurve {
  std::vector<double> fractions;
  std::vector<double> errors;
  std::string label;

  /// Error at the largest sampled fraction not exceeding `fraction`.
  double error_at(double fraction) const;
};

/// Keeps the k largest-magnitude coefficients (ties to the lower position in
/// `coeffs`) for k = 0 .. floor(max_fraction * N), so no
/// sampled fraction exceeds max_fraction. Errors come from the energy
/// of the discarded coefficients, which equals the reconstruction error for
/// an orthonormal basis. Throws ErrorCode::InvalidArgument for a zero signal.
ErrorCurve topk_error_curve(const Eigen::VectorXd& coeffs, double signal_norm, std::string label,
                            double max_fraction = 0.5);

ErrorCurve topk_error_curve(const BasisSelection& sel, const Eigen::VectorXd& f,
                            std::string label = "basis", double max_fraction = 0.5);

/// Order in which coefficients enter the approximation.
std::vector<Index> significance_order(const Eigen::VectorXd& coeffs);

struct LabeledBasis {
  std::string label;
  const BasisSelection* selection = nullptr;
};

/// One curve per basis, plus one for the global eigenbasis when `eigen` is
/// given (coefficients from the graph Fourier transform).
std::vector<ErrorCurve> compare_bases(const Eigen::VectorXd& f,
                                      const std::vector<LabeledBasis>& bases,
                                      const EigenSystem* eigen = nullptr,
                                      double max_fraction = 0.5);

}  // namespace ngwp
