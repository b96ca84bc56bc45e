#include "nfbt/report.hpp"

#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace nfbt {

namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{:.10g}", i ? ", " : "", v[i]);
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{}", i ? ", " : "", v[i]);
  return out;
}

}  // namespace

PatternSpec pattern_spec_from(const Settings& s) {
  PatternSpec p;
  p.geometry = parse_array_kind(s.get("pattern_geometry"));
  p.td_angles = s.numbers("pattern_td_angle");
  p.td_curvature = s.number("pattern_td_curvature");
  p.ps_angle = s.number("pattern_ps_angle");
  p.ps_curvature = s.number("pattern_ps_curvature");
  p.subcarriers = parse_index_list(s.get("pattern_subcarriers"));
  const auto axis = s.get("pattern_axis");
  if (axis == "angle") p.axis = PatternAxis::Angle;
  else if (axis == "range") p.axis = PatternAxis::Range;
  else throw std::invalid_argument("pattern_axis must be angle or range");
  p.from = s.number("pattern_from");
  p.to = s.number("pattern_to");
  p.points = s.integer("pattern_points");
  p.fixed_range = s.number("pattern_fixed_range");
  p.fixed_angle = s.number("pattern_fixed_angle");
  return p;
}

std::vector<PatternSample> compute_beam_pattern(const PatternSpec& spec, const ValidatedConfig& cfg, Execution ex) {
  if (spec.points < 1) throw std::invalid_argument("pattern_points must be >= 1");
  if (spec.td_angles.empty()) throw std::invalid_argument("pattern_td_angle must list at least one value");
  if (spec.subcarriers.empty()) throw std::invalid_argument("pattern_subcarriers must not be empty");
  const bool far = spec.geometry != ArrayKind::Full;
  if (far && spec.axis == PatternAxis::Range)
    throw std::invalid_argument("range sweeps need the full array (subarrays are modeled far-field)");
  if (!far && spec.axis == PatternAxis::Angle && !(std::abs(spec.fixed_range) > 0.0))
    throw std::invalid_argument("pattern_fixed_range must be positive");

  const auto grid = make_frequency_grid(cfg);
  const auto geom = make_geometry(cfg, spec.geometry);
  for (int m : spec.subcarriers)
    if (m < 1 || m > grid.size())
      throw std::invalid_argument(fmt::format("subcarrier {} outside 1..{}", m, grid.size()));

  std::vector<double> xs(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i)
    xs[static_cast<std::size_t>(i)] =
        spec.points == 1 ? spec.from : spec.from + (spec.to - spec.from) * i / (spec.points - 1);

  // Steering rows for each sample, reused across beamformers at a given frequency.
  std::vector<PatternSample> out;
  for (std::size_t t = 0; t < spec.td_angles.size(); ++t) {
    TdPsParams params{spec.td_angles[t], spec.td_curvature, spec.ps_angle, spec.ps_curvature};
    for (int m : spec.subcarriers) {
      const double f = grid.freq(m);
      const auto w = combined_beamformer(params, geom, f, grid.carrier());
      ComplexMatrix rows(xs.size(), static_cast<std::size_t>(geom.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        SteeringVector a;
        if (far) a = far_field_steering(xs[i], geom, f);
        else if (spec.axis == PatternAxis::Angle)
          a = near_field_steering(PolarPoint::from_range_angle(spec.fixed_range, xs[i]), geom, f);
        else
          a = near_field_steering(PolarPoint::from_range_angle(xs[i], spec.fixed_angle), geom, f);
        std::copy(a.entries.begin(), a.entries.end(), rows.row(i).begin());
      }
      CVector g(xs.size());
      kernels::broadcast_products(ex, w.entries, rows, g);
      for (std::size_t i = 0; i < xs.size(); ++i)
        out.push_back({static_cast<int>(t) + 1, m, f, xs[i], std::abs(g[i])});
    }
  }
  return out;
}

void write_beam_pattern(std::ostream& os, const std::vector<PatternSample>& rows) {
  os << "table,subcarrier,freq_hz,x,gain\n";
  for (const auto& r : rows) os << fmt::format("{},{},{:.6f},{:.8g},{:.8f}\n", r.table, r.subcarrier, r.freq, r.x, r.gain);
}

void write_rainbow_table(std::ostream& os, double td_angle, int interval, const FrequencyGrid& grid) {
  const auto blocks = rainbow_blocks(td_angle, interval, grid);
  const auto cov = coverage_report(td_angle, interval, grid);
  os << fmt::format("# td_angle = {:.10g}\n", td_angle);
  os << fmt::format("# coverage covered = {} max_gap = {:.8g} max_overlap = {:.8g} overlap_estimate = {:.8g}\n",
                    cov.covered ? "true" : "false", cov.max_gap, cov.max_overlap, cov.overlap_estimate);
  os << "# block,central_k,edge_high,edge_low,width,gap_to_next\n";
  for (const auto& b : blocks)
    os << fmt::format("# {},{},{:.8g},{:.8g},{:.8g},{}\n", b.index, b.central_k, b.edge_high, b.edge_low, b.width,
                      b.gap_to_next ? fmt::format("{:.8g}", *b.gap_to_next) : std::string("none"));
  os << "m,f_m,k,theta,block,physical\n";
  for (const auto& r : rainbow_beam_table(td_angle, interval, grid))
    os << fmt::format("{},{:.6f},{},{:.10f},{},{}\n", r.subcarrier, r.freq, r.k, r.angle, r.block, r.physical ? 1 : 0);
}

void write_training_trace(std::ostream& os, const TrainingOutcome& o, const PolarPoint& user) {
  const auto& s1 = o.stage1;
  const auto& s2 = o.stage2;
  const auto& s3 = o.stage3;
  std::vector<double> cand, sel_f, steer, align;
  std::vector<int> sel_m, flagged;
  for (const auto& c : s1.candidates) cand.push_back(c.angle);
  for (const auto& s : s2.selected) {
    sel_m.push_back(s.subcarrier);
    sel_f.push_back(s.freq);
    steer.push_back(s.steered_angle);
    align.push_back(s.alignment_error);
    if (s.flagged) flagged.push_back(s.candidate);
  }

  os << "[user]\n";
  os << fmt::format("angle = {:.10g}\nrange = {:.10g}\ncurvature = {:.10g}\n", user.angle(), user.range(), user.curvature());
  os << "\n[stage1]\n";
  os << fmt::format("td_angle = {:.10g}\n", s1.td_angle);
  os << fmt::format("best_subcarrier = {}\nbest_freq_hz = {:.6f}\n", s1.best_subcarrier, s1.best_freq);
  os << fmt::format("k_first = {}\ncandidate_count = {}\ncandidates = {}\n", s1.k_first, s1.candidates.size(), join(cand));
  os << "\n[stage2]\n";
  os << fmt::format("td_angle = {:.10g}\np = {}\n", s2.param.td_angle, s2.param.p);
  os << fmt::format("selected_subcarriers = {}\nselected_freqs_hz = {}\n", join(sel_m), join(sel_f));
  os << fmt::format("steered_angles = {}\nalignment_errors = {}\n", join(steer), join(align));
  os << fmt::format("flagged = {}\n", flagged.empty() ? std::string("none") : join(flagged));
  os << fmt::format("winner = {}\nsteered_angle = {:.10g}\nestimated_angle = {:.10g}\n", s2.winner, s2.steered_angle,
                    s2.estimated_angle);
  os << "\n[stage3]\n";
  os << fmt::format("mu_min = {:.10g}\nmu_max = {:.10g}\nmu_bar = {:.10g}\nmu_th = {:.10g}\n", s3.setup.mu_min,
                    s3.setup.mu_max, s3.setup.mu_bar, s3.setup.mu_th);
  os << fmt::format("td_angle = {:.10g}\ntd_curvature = {:.10g}\nps_angle = {:.10g}\nps_curvature = {:.10g}\n",
                    s3.setup.params.td_angle, s3.setup.params.td_curvature, s3.setup.params.ps_angle,
                    s3.setup.params.ps_curvature);
  os << fmt::format("degenerate = {}\n", s3.setup.degenerate ? "true" : "false");
  os << fmt::format("focus_first = {:.10g}\nfocus_last = {:.10g}\n", s3.focus.front(), s3.focus.back());
  os << fmt::format("best_subcarrier = {}\nestimated_curvature = {:.10g}\nestimated_range = {:.10g}\n",
                    s3.best_subcarrier, s3.estimated_curvature, s3.estimated_range);
  os << "\n[result]\n";
  os << fmt::format("angle = {:.10g}\nrange = {:.10g}\npilot_count = {}\n", o.angle, o.range, o.pilot_count);
  os << fmt::format("angle_error = {:.6e}\nrange_error = {:.6e}\n", o.angle - user.angle(), o.range - user.range());
}

void write_validation_report(std::ostream& os, const ValidatedConfig& cfg) {
  os << "[derived]\n";
  os << fmt::format("wavelength_m = {:.10g}\nantenna_spacing_m = {:.10g}\nsparse_antennas = {}\n", cfg.wavelength,
                    cfg.antenna_spacing, cfg.sparse_antennas);
  os << fmt::format("aperture_m = {:.10g}\nfresnel_distance_m = {:.10g}\nrayleigh_distance_m = {:.10g}\n", cfg.aperture,
                    cfg.fresnel_distance, cfg.rayleigh_distance);
  os << fmt::format("subarray_rayleigh_distance_m = {:.10g}\nsubarray_size_limit = {:.10g}\n",
                    cfg.subarray_rayleigh_distance, cfg.subarray_size_limit);
  os << "\n[warnings]\n";
  if (cfg.warnings.empty()) os << "none\n";
  for (const auto& w : cfg.warnings) os << "warning = " << w << '\n';
}

}  // namespace nfbt
