#include "nfbt/rainbow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nfbt/config.hpp"

namespace nfbt {

std::vector<BeamAngle> multi_beam_angles(double td_angle, int interval, double freq, double carrier) {
  if (interval < 1) throw std::invalid_argument("multi_beam_angles: U must be >= 1");
  const double step = 2.0 / (interval * (freq / carrier));
  std::vector<BeamAngle> out;
  auto k = static_cast<long long>(std::ceil((-1.0 - td_angle) / step));
  if (td_angle + static_cast<double>(k - 1) * step >= -1.0) --k;
  for (;; ++k) {
    const double angle = td_angle + static_cast<double>(k) * step;
    if (angle < -1.0) continue;
    if (angle >= 1.0) break;
    out.push_back({static_cast<int>(k), angle});
  }
  return out;
}

int num_beams(double td_angle, int interval, double freq, double carrier) {
  return static_cast<int>(multi_beam_angles(td_angle, interval, freq, carrier).size());
}

int num_beams_closed_form(double td_angle, int interval, double freq, double carrier) {
  const double u_rho = interval * freq / carrier;
  const double first_k = std::ceil((-1.0 - td_angle) * u_rho / 2.0);
  const double first = td_angle + 2.0 * first_k / u_rho;
  const double fl = std::floor(u_rho);
  return static_cast<int>(first < 1.0 - 2.0 * fl / u_rho ? fl + 1 : fl);
}

bool is_ineffective_td(double td_angle) { return td_angle >= -1.0 && td_angle < 1.0; }

std::vector<RainbowBlock> rainbow_blocks(double td_angle, int interval, const FrequencyGrid& grid) {
  if (!(td_angle < -1.0)) throw std::invalid_argument("rainbow_blocks: TD angle must be below -1");
  const auto central = multi_beam_angles(td_angle, interval, grid.carrier(), grid.carrier());
  const double fc = grid.carrier();
  const double fl = grid.low();
  const double fh = grid.high();

  std::vector<RainbowBlock> blocks;
  for (std::size_t u = 0; u < central.size() && static_cast<int>(u) < interval; ++u) {
    RainbowBlock b;
    b.index = static_cast<int>(u) + 1;
    b.central_k = central[u].k;
    b.angles.reserve(static_cast<std::size_t>(grid.size()));
    for (double f : grid.freqs()) {
      const double angle = td_angle + 2.0 * b.central_k / (interval * f / fc);
      b.angles.push_back(angle);
      b.physical.push_back(angle >= -1.0 && angle < 1.0);
    }
    b.edge_high = b.angles.back();
    b.edge_low = b.angles.front();
    b.width = 2.0 * fc * (fh - fl) * b.central_k / (interval * fl * fh);
    blocks.push_back(std::move(b));
  }
  for (std::size_t u = 0; u + 1 < blocks.size(); ++u)
    blocks[u].gap_to_next = blocks[u + 1].edge_high - blocks[u].edge_low;
  return blocks;
}

double sweep_td_parameter_from_threshold(double k_th, int interval) {
  // Guard against k_th landing a few ulps above an integer.
  const double k = std::ceil(k_th - 1e-9);
  return -1.0 + (1.0 - 2.0 * k) / interval;
}

double solve_sweep_td_parameter(int interval, const FrequencyGrid& grid) {
  return sweep_td_parameter_from_threshold(grid.high() / grid.bandwidth(), interval);
}

CoverageReport coverage_report(double td_angle, int interval, const FrequencyGrid& grid) {
  CoverageReport rep;
  rep.overlap_estimate = 2.0 * grid.bandwidth() / grid.carrier();
  const auto blocks = rainbow_blocks(td_angle, interval, grid);
  if (blocks.empty()) {
    rep.max_gap = 2.0;
    return rep;
  }
  std::vector<std::pair<double, double>> spans;
  for (const auto& b : blocks) spans.emplace_back(b.edge_high, b.edge_low);
  std::sort(spans.begin(), spans.end());

  double reach = -1.0;
  double gap = -std::numeric_limits<double>::infinity();
  double overlap = 0.0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (i > 0) overlap = std::max(overlap, spans[i - 1].second - spans[i].first);
    gap = std::max(gap, spans[i].first - reach);
    reach = std::max(reach, spans[i].second);
  }
  gap = std::max(gap, 1.0 - reach);
  rep.max_gap = gap;
  rep.max_overlap = overlap;
  rep.covered = gap <= 0.0;
  return rep;
}

RangeSpread td_only_range_spread(int s, double td_curvature, const FrequencyGrid& grid) {
  if (s == 0) throw std::invalid_argument("td_only_range_spread: s = 0 produces no spread");
  RangeSpread out;
  out.s = s;
  out.delta_mu = 4.0 * s * grid.bandwidth() / (kSpeedOfLight * grid.size());
  const double dc = kSpeedOfLight / grid.carrier() / 2.0;
  for (double f : grid.freqs()) out.focus.push_back(td_curvature + (2.0 * s / dc) * (grid.carrier() / f));
  return out;
}

int beams_in_span(double span, double delta_mu) {
  if (delta_mu == 0.0) throw std::invalid_argument("beams_in_span: zero spacing");
  return static_cast<int>(std::floor(std::abs(span / delta_mu))) + 1;
}

std::vector<BeamTableRow> rainbow_beam_table(double td_angle, int interval, const FrequencyGrid& grid) {
  std::vector<BeamTableRow> rows;
  const auto blocks = rainbow_blocks(td_angle, interval, grid);
  for (const auto& b : blocks) {
    for (int m = 1; m <= grid.size(); ++m) {
      const auto i = static_cast<std::size_t>(m - 1);
      rows.push_back({m, grid.freq(m), b.central_k, b.angles[i], b.index, static_cast<bool>(b.physical[i])});
    }
  }
  return rows;
}

}  // namespace nfbt
