#pragma once

#include <span>
#include <vector>

#include "nfbt/channel.hpp"
#include "nfbt/geometry.hpp"
#include "nfbt/kernels.hpp"
#include "nfbt/polar.hpp"

namespace nfbt {

// Joint time-delay / phase-shifter parameters. The TD part (angle, curvature) scales with
// the subcarrier frequency; the PS part is evaluated at the carrier. Values outside the
// physical range are allowed on purpose.
struct TdPsParams {
  double td_angle = 0.0;
  double td_curvature = 0.0;
  double ps_angle = 0.0;
  double ps_curvature = 0.0;
};

struct Beamformer {
  ArrayKind kind = ArrayKind::Full;
  double freq = 0.0;
  TdPsParams params;
  CVector entries;
};

// [w]_n = exp(-j 2 pi f / c (x_n theta' - x_n^2 mu')) / sqrt(count)
Beamformer td_beamformer(const TdPsParams& params, const AntennaIndexSet& geometry, double freq);
// Same form with the PS parameters at the carrier frequency.
Beamformer ps_beamformer(const TdPsParams& params, const AntennaIndexSet& geometry, double carrier);

/// Entrywise phase sum of two beamformers on the same geometry, renormalized to unit norm.
Beamformer combine(const Beamformer& td, const Beamformer& ps);
Beamformer combined_beamformer(const TdPsParams& params, const AntennaIndexSet& geometry, double freq,
                               double carrier);

/// Rows are subcarriers: row m is the combined beamformer at freqs[m].
ComplexMatrix combined_beamformer_matrix(const TdPsParams& params, const AntennaIndexSet& geometry,
                                         std::span<const double> freqs, double carrier,
                                         Execution ex = Execution::Serial);

/// Equivalent true-time delays tau_n = (x_n theta' - x_n^2 mu') / c of the TD part.
std::vector<double> td_delays(const TdPsParams& params, const AntennaIndexSet& geometry);

/// Beamformer conjugate-matched to a steering row (gain exactly 1).
Beamformer matched_beamformer(const SteeringVector& a);

double array_gain(std::span<const cdouble> w, const SteeringVector& a);
double array_gain(const Beamformer& w, const SteeringVector& a);

/// |sin(pi rho Qs U (theta - theta') / 2) / (Qs sin(pi rho U (theta - theta') / 2))|, 1 at the poles.
double sparse_gain_closed_form(double angle, double td_angle, int interval, int sparse_count, double ratio);

/// h_m^H w_m for every subcarrier of a channel; beamformers given as matrix rows.
CVector channel_responses(const LosChannel& ch, const ComplexMatrix& beams, Execution ex = Execution::Serial);
/// h_m^H w for one beamformer applied on every subcarrier.
CVector channel_responses(const LosChannel& ch, std::span<const cdouble> w, Execution ex = Execution::Serial);

}  // namespace nfbt
