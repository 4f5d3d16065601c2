#pragma once

#include <span>

namespace slipmhd {

/// values ~ constant * (1 + t)^(-exponent) by least squares in log-log
/// coordinates over lo <= t <= hi. residual is the RMS misfit of log(values).
struct PowerLawFit {
  double exponent = 0.0;
  double constant = 0.0;
  double residual = 0.0;
  double lo = 0.0, hi = 0.0;
  int samples = 0;
};

/// Throws std::invalid_argument with fewer than 8 samples in the window or a
/// nonpositive value there.
PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values,
                          double lo, double hi);

/// y ~ constant * x^slope. Needs two or more points with distinct positive x
/// and positive y.
struct SlopeFit {
  double slope = 0.0;
  double constant = 0.0;
  double residual = 0.0;
};

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace slipmhd
