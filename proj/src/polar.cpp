#include "nfbt/polar.hpp"

#include <cmath>
#include <stdexcept>

namespace nfbt {

namespace {

void check_angle(double angle) {
  if (!(std::abs(angle) < 1.0)) throw std::invalid_argument("spatial angle must satisfy |theta| < 1");
}

}  // namespace

double curvature_from_range(double range, double angle) { return (1.0 - angle * angle) / (2.0 * range); }

double range_from_curvature(double curvature, double angle) {
  return (1.0 - angle * angle) / (2.0 * curvature);
}

PolarPoint PolarPoint::from_range_angle(double range, double angle) {
  if (!(range > 0.0)) throw std::invalid_argument("range must be positive");
  check_angle(angle);
  return {range, angle, curvature_from_range(range, angle)};
}

PolarPoint PolarPoint::from_curvature_angle(double curvature, double angle) {
  if (!(curvature > 0.0)) throw std::invalid_argument("curvature must be positive");
  check_angle(angle);
  return {range_from_curvature(curvature, angle), angle, curvature};
}

double PolarPoint::x() const { return range_ * std::sqrt(1.0 - angle_ * angle_); }

double PolarPoint::y() const { return range_ * angle_; }

}  // namespace nfbt
