#include "slipmhd/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace slipmhd {

namespace {

struct Line {
  double slope, intercept, rms;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) throw std::invalid_argument("fit: abscissae are all equal");
  const double slope = sxy / sxx, icpt = my - slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (icpt + slope * x[i]);
    ss += r * r;
  }
  return {slope, icpt, std::sqrt(ss / n)};
}

}  // namespace

PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> v, double lo,
                          double hi) {
  if (t.size() != v.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < lo || t[i] > hi) continue;
    if (!(v[i] > 0)) throw std::invalid_argument("fit_power_law: nonpositive value in window");
    x.push_back(std::log1p(t[i]));
    y.push_back(std::log(v[i]));
  }
  if (x.size() < 8) throw std::invalid_argument("fit_power_law: fewer than 8 samples in window");
  const Line l = least_squares(x, y);
  return {-l.slope, std::exp(l.intercept), l.rms, lo, hi, static_cast<int>(x.size())};
}

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_loglog: size mismatch");
  if (x.size() < 2) throw std::invalid_argument("fit_loglog: need two points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("fit_loglog: nonpositive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const Line l = least_squares(lx, ly);
  return {l.slope, std::exp(l.intercept), l.rms};
}

}  // namespace slipmhd
