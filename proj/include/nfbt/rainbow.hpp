#pragma once

#include <optional>
#include <vector>

#include "nfbt/frequency_grid.hpp"

namespace nfbt {

// Beam-split analytics for the sparse subarray driven by a TD beamformer with angle
// parameter theta'. At relative frequency rho the array forms grating beams at
// theta' + 2k / (U rho) for every integer k landing in [-1, 1).

struct BeamAngle {
  int k = 0;
  double angle = 0.0;
};

/// Ascending list of physical beam angles at `freq`.
std::vector<BeamAngle> multi_beam_angles(double td_angle, int interval, double freq, double carrier);
int num_beams(double td_angle, int interval, double freq, double carrier);
/// Piecewise floor(U rho) / floor(U rho)+1 rule using the first beam of the enumerated set.
int num_beams_closed_form(double td_angle, int interval, double freq, double carrier);

/// All subcarriers steer one beam to theta' itself: the sweep is wasted.
bool is_ineffective_td(double td_angle);

struct RainbowBlock {
  int index = 0;       // u_c, 1-based
  int central_k = 0;   // k_c of the carrier-frequency beam
  std::vector<double> angles;     // one per subcarrier, grid order
  std::vector<bool> physical;     // angle inside [-1, 1)
  double edge_high = 0.0;         // angle at the highest subcarrier (left edge)
  double edge_low = 0.0;          // angle at the lowest subcarrier (right edge)
  double width = 0.0;
  std::optional<double> gap_to_next;
};

/// Requires td_angle < -1; throws std::invalid_argument otherwise.
std::vector<RainbowBlock> rainbow_blocks(double td_angle, int interval, const FrequencyGrid& grid);

/// -1 + (1 - 2 ceil(k_th)) / U with k_th = f_H / B.
double solve_sweep_td_parameter(int interval, const FrequencyGrid& grid);
double sweep_td_parameter_from_threshold(double k_th, int interval);

struct CoverageReport {
  bool covered = false;
  double max_gap = 0.0;      // largest uncovered stretch of [-1, 1]; <= 0 when covered
  double max_overlap = 0.0;  // largest overlap between adjacent blocks
  double overlap_estimate = 0.0;  // 2B / f_c
};

CoverageReport coverage_report(double td_angle, int interval, const FrequencyGrid& grid);

struct RangeSpread {
  int s = 0;
  double delta_mu = 0.0;            // first-order spread per subcarrier, 4 s B / (c M)
  std::vector<double> focus;        // mu' + (2 s / d_c) (f_c / f_m), grid order
};

/// TD-only curvature aliasing; throws std::invalid_argument for s = 0.
RangeSpread td_only_range_spread(int s, double td_curvature, const FrequencyGrid& grid);
/// Number of focus points that fit inside a curvature span of width `span`.
int beams_in_span(double span, double delta_mu);

struct BeamTableRow {
  int subcarrier = 0;
  double freq = 0.0;
  int k = 0;
  double angle = 0.0;
  int block = 0;
  bool physical = false;
};

/// Every (block, subcarrier) pair of rainbow_blocks flattened in block-major order.
std::vector<BeamTableRow> rainbow_beam_table(double td_angle, int interval, const FrequencyGrid& grid);

}  // namespace nfbt
