#pragma once

namespace nfbt {

// mu = (1 - theta^2) / (2 r)
double curvature_from_range(double range, double angle);
double range_from_curvature(double curvature, double angle);

// User location in polar form: range r (m), spatial angle theta in (-1, 1),
// and the curvature parameter mu (1/m). Immutable once built.
class PolarPoint {
 public:
  static PolarPoint from_range_angle(double range, double angle);
  static PolarPoint from_curvature_angle(double curvature, double angle);

  double range() const { return range_; }
  double angle() const { return angle_; }
  double curvature() const { return curvature_; }
  double x() const;  // broadside coordinate r sqrt(1 - theta^2)
  double y() const;  // along-array coordinate r theta

 private:
  PolarPoint(double r, double theta, double mu) : range_(r), angle_(theta), curvature_(mu) {}
  double range_;
  double angle_;
  double curvature_;
};

}  // namespace nfbt
