#pragma once

#include <span>

namespace zakharov {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< rms of the fit residuals in log space
  int points = 0;
};

/// Least-squares fit of log y against log x. Requires >= 3 positive points.
FitResult fit_loglog(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace zakharov
