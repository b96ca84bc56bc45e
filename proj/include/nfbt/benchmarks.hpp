#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nfbt/training.hpp"

namespace nfbt {

// Near-field polar grid: N angles (2n - N + 1) / N, and V rings per angle at
// r = alpha (1 - theta^2) / v, i.e. curvature v / (2 alpha).
class PolarCodebook {
 public:
  PolarCodebook(int num_angles, int rings, double alpha);

  int num_angles() const { return static_cast<int>(angles_.size()); }
  int rings() const { return rings_; }
  double alpha() const { return alpha_; }
  int size() const { return num_angles() * rings_; }
  const std::vector<double>& angles() const { return angles_; }
  double angle(int n) const { return angles_.at(static_cast<std::size_t>(n)); }  // 0-based
  double range(int n, int v) const;                                             // v = 1..V
  double ring_curvature(int v) const { return v / (2.0 * alpha_); }

 private:
  std::vector<double> angles_;
  int rings_;
  double alpha_;
};

struct BenchmarkParams {
  int rings = 6;        // V
  double alpha = 0.0;   // alpha_Delta; <= 0 means r_max
  int two_phase_k = 3;  // K
};

enum class Scheme { Proposed, PerfectCsi, Exhaustive, NearFieldRainbow, TwoPhase };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

// Estimates and the beamformers used afterwards for data. Narrowband schemes keep a
// single vector used on every subcarrier; perfect CSI keeps one row per subcarrier.
struct BenchmarkOutcome {
  Scheme scheme = Scheme::PerfectCsi;
  double angle = 0.0;
  double range = 0.0;
  int pilot_overhead = 0;
  std::string codeword;  // human-readable index of the winning codeword
  CVector narrowband_beam;
  ComplexMatrix wideband_beams;
  bool wideband = false;
};

/// Shared per-configuration state (the exhaustive codebook matrix is built once).
class BenchmarkContext {
 public:
  BenchmarkContext(const TrainingSetup& setup, const BenchmarkParams& params);

  const TrainingSetup& setup() const { return *setup_; }
  const BenchmarkParams& params() const { return params_; }
  const PolarCodebook& codebook() const { return codebook_; }
  int central_subcarrier() const { return central_; }
  /// Rows are codewords n * V + (v - 1) at the carrier frequency.
  const ComplexMatrix& codebook_matrix() const { return *matrix_; }
  /// Same codebook (shared, not rebuilt) bound to another setup, e.g. another transmit power.
  BenchmarkContext rebind(const TrainingSetup& setup) const;

 private:
  const TrainingSetup* setup_;
  BenchmarkParams params_;
  PolarCodebook codebook_;
  int central_;
  std::shared_ptr<const ComplexMatrix> matrix_;
};

/// Carrier-frequency beamformer conjugate-matched to the exact near-field response.
CVector polar_codeword(const AntennaIndexSet& geometry, double angle, double range, double carrier);

BenchmarkOutcome perfect_csi(const LosChannel& full_channel);
BenchmarkOutcome exhaustive_polar_search(const BenchmarkContext& ctx, const LosChannel& full_channel,
                                         std::uint64_t seed);

// Fan design of the rainbow benchmark: TD-only full-array beam whose per-subcarrier angle
// q (2 / rho_m - 1 / rho_L - 1 / rho_H) sweeps [-1, 1) on a constant curvature ring.
struct RainbowFan {
  int q = 0;
  double td_angle = 0.0;
  std::vector<double> angles;  // per subcarrier; outside [-1, 1) when no lobe is visible
};
RainbowFan rainbow_fan(const FrequencyGrid& grid);

BenchmarkOutcome nearfield_rainbow_training(const BenchmarkContext& ctx, const LosChannel& full_channel,
                                            std::uint64_t seed);
BenchmarkOutcome two_phase_training(const BenchmarkContext& ctx, const LosChannel& full_channel,
                                    std::uint64_t seed);

/// Pilot overhead of each scheme for a configuration.
int pilot_overhead(Scheme s, int num_antennas, const BenchmarkParams& params);

}  // namespace nfbt
