#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "nfbt/config.hpp"
#include "nfbt/geometry.hpp"
#include "nfbt/kernels.hpp"
#include "nfbt/polar.hpp"

namespace nfbt {

// How the antenna-to-user path length r_n is computed.
//   Exact   - spherical wavefront, Euclidean distance
//   Fresnel - r_0 - x theta + x^2 mu (second-order expansion)
//   Planar  - r_0 - x theta (far-field plane wave)
enum class PathModel { Exact, Fresnel, Planar };

std::string_view to_string(PathModel model);
PathModel parse_path_model(std::string_view name);

/// Distance from the antenna at (0, position) to the user at (r sqrt(1-theta^2), r theta).
double exact_element_range(const PolarPoint& user, double position);

/// Fresnel approximation r_0 - n d theta + n^2 d^2 mu.
double fresnel_element_range(const PolarPoint& user, int n, double spacing);

double element_path(const PolarPoint& user, double position, PathModel model);

// Response of a geometry toward a user at one frequency, stored in row form (the
// conjugate-transposed channel direction), so the array gain of a beamformer w is
// |sum_n entries[n] * w[n]|. Each entry has magnitude 1/sqrt(count).
struct SteeringVector {
  ArrayKind kind = ArrayKind::Full;
  double freq = 0.0;
  CVector entries;
};

/// entries[n] = exp(-j 2 pi / lambda (r_n - r_0)) / sqrt(count); full or dense geometry only.
SteeringVector near_field_steering(const PolarPoint& user, const AntennaIndexSet& geometry, double freq,
                                   PathModel model = PathModel::Exact);

/// entries[q] = exp(+j 2 pi / lambda x_q theta) / sqrt(count)
SteeringVector far_field_steering(double angle, const AntennaIndexSet& geometry, double freq);

// Unrestricted version used by diagnostics: any geometry, any path model.
SteeringVector response_vector(const PolarPoint& user, const AntennaIndexSet& geometry, double freq,
                               PathModel model);

/// |a^H b| between two path models for the same user (1 = models agree).
double model_agreement(const PolarPoint& user, const AntennaIndexSet& geometry, double freq, PathModel a,
                       PathModel b);

// Single-path LoS channel over a set of subcarriers. rows(m, n) holds [h_m^H]_n, i.e.
// sqrt(count) beta_m times the steering row; the spherical models carry the global
// phase exp(-j 2 pi r_0 / lambda_m), the planar model omits it.
struct LosChannel {
  ArrayKind kind = ArrayKind::Full;
  PathModel model = PathModel::Exact;
  PolarPoint user = PolarPoint::from_range_angle(1.0, 0.0);
  std::vector<double> freqs;
  std::vector<double> path_gains;  // beta_m = lambda_m / (4 pi r_0)
  ComplexMatrix rows;

  std::size_t size() const { return freqs.size(); }
  std::size_t antennas() const { return rows.cols(); }
};

double path_gain(double freq, double range);

/// Throws std::out_of_range when the user range lies outside the configured bounds.
LosChannel los_channel(const ValidatedConfig& cfg, const PolarPoint& user, const AntennaIndexSet& geometry,
                       std::span<const double> freqs, PathModel model, Execution ex = Execution::Serial);

}  // namespace nfbt
