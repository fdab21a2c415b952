#include "ngwp/approximation.hpp"

#include "ngwp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ngwp {

double ErrorCurve::error_at(double fraction) const {
  double value = errors.empty() ? 1.0 : errors.front();
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (fractions[i] <= fraction + 1e-12) value = errors[i];
  }
  return value;
}

std::vector<Index> significance_order(const Eigen::VectorXd& coeffs) {
  std::vector<Index> order(static_cast<std::size_t>(coeffs.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(coeffs(a)) > std::abs(coeffs(b));
  });
  return order;
}

ErrorCurve topk_error_curve(const Eigen::VectorXd& coeffs, double signal_norm, std::string label,
                            double max_fraction) {
  if (!(signal_norm > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "approximation error needs a nonzero signal");
  }
  if (!(max_fraction >= 0.0 && max_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "max fraction must lie in [0, 1]");
  }
  const Index n = coeffs.size();
  const auto order = significance_order(coeffs);

  // tail[k] = energy of everything outside the top k, accumulated from the
  // smallest coefficient up to avoid cancellation.
  std::vector<double> tail(static_cast<std::size_t>(n) + 1, 0.0);
  for (Index k = n; k-- > 0;) tail[k] = tail[k + 1] + coeffs(order[k]) * coeffs(order[k]);

  const auto kmax = std::min<Index>(n, static_cast<Index>(std::floor(max_fraction * n + 1e-9)));
  ErrorCurve curve;
  curve.label = std::move(label);
  for (Index k = 0; k <= kmax; ++k) {
    curve.fractions.push_back(static_cast<double>(k) / static_cast<double>(n));
    curve.errors.push_back(std::sqrt(tail[k]) / signal_norm);
  }
  return curve;
}

ErrorCurve topk_error_curve(const BasisSelection& sel, const Eigen::VectorXd& f,
                            std::string label, double max_fraction) {
  return topk_error_curve(coefficients(sel, f), f.norm(), std::move(label), max_fraction);
}

std::vector<ErrorCurve> compare_bases(const Eigen::VectorXd& f,
                                      const std::vector<LabeledBasis>& bases,
                                      const EigenSystem* eigen, double max_fraction) {
  std::vector<ErrorCurve> curves;
  for (const auto& b : bases) {
    curves.push_back(topk_error_curve(*b.selection, f, b.label, max_fraction));
  }
  if (eigen != nullptr) {
    curves.push_back(topk_error_curve(gft(*eigen, f), f.norm(), "eigenbasis", max_fraction));
  }
  return curves;
}

}  // namespace ngwp
