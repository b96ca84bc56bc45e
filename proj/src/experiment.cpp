#include "nfbt/experiment.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <omp.h>

#include "nfbt/random.hpp"

namespace nfbt {

double nmse(std::span<const double> estimates, std::span<const double> truths) {
  if (estimates.size() != truths.size() || truths.empty())
    throw std::invalid_argument("nmse: need equal-length, nonempty lists");
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    err += (estimates[i] - truths[i]) * (estimates[i] - truths[i]);
    ref += truths[i] * truths[i];
  }
  if (ref == 0.0) throw std::domain_error("nmse: all truths are zero");
  return err / ref;
}

double reference_snr_db(const ValidatedConfig& cfg, double range, double freq) {
  const double beta = path_gain(freq, range);
  const double snr =
      cfg.sparse_antennas * cfg.params.transmit_power * beta / (range * range * cfg.params.noise_power);
  return 10.0 * std::log10(snr);
}

double achievable_rate(std::span<const cdouble> responses, double tx_power, double noise_power) {
  if (!(noise_power > 0.0)) throw std::invalid_argument("achievable_rate: noise power must be positive");
  if (responses.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : responses) sum += std::log2(1.0 + tx_power * std::norm(r) / noise_power);
  return sum / static_cast<double>(responses.size());
}

std::string_view to_string(SweepAxis a) { return a == SweepAxis::TransmitPower ? "transmit_power" : "user_range"; }

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "transmit_power") return SweepAxis::TransmitPower;
  if (name == "user_range") return SweepAxis::UserRange;
  throw std::invalid_argument("unknown axis '" + std::string(name) + "' (transmit_power|user_range)");
}

namespace {

double range_lo(const ExperimentSpec& s) { return s.users.range_lo > 0.0 ? s.users.range_lo : s.cfg.params.range_min; }
double range_hi(const ExperimentSpec& s) { return s.users.range_hi > 0.0 ? s.users.range_hi : s.cfg.params.range_max; }

struct Sample {
  bool ok = false;
  double angle = 0.0, range = 0.0;
  double true_angle = 0.0, true_range = 0.0;
  double rate = 0.0;
};

}  // namespace

void validate_spec(const ExperimentSpec& s) {
  if (s.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (s.axis_values.empty()) throw std::invalid_argument("axis_values must not be empty");
  if (s.schemes.empty()) throw std::invalid_argument("schemes must not be empty");
  if (!(s.cfg.params.noise_power > 0.0)) throw std::invalid_argument("noise_power must be positive for rate evaluation");
  for (double v : s.axis_values) {
    if (!(v > 0.0)) throw std::invalid_argument("axis values must be positive");
    if (s.axis == SweepAxis::UserRange && (v < s.cfg.params.range_min || v > s.cfg.params.range_max))
      throw std::invalid_argument(fmt::format("axis range {} m outside the configured range bounds", v));
  }
  const auto& u = s.users;
  if (u.fixed) {
    if (!(std::abs(u.angle) < 1.0)) throw std::invalid_argument("user_angle must lie in (-1, 1)");
    if (s.axis == SweepAxis::TransmitPower && (u.range < s.cfg.params.range_min || u.range > s.cfg.params.range_max))
      throw std::invalid_argument("user_range outside the configured range bounds");
  } else {
    if (!(u.angle_lo <= u.angle_hi) || !(u.angle_lo > -1.0) || !(u.angle_hi < 1.0))
      throw std::invalid_argument("user_angle_range must satisfy -1 < lo <= hi < 1");
    if (!(range_lo(s) <= range_hi(s)) || range_lo(s) < s.cfg.params.range_min || range_hi(s) > s.cfg.params.range_max)
      throw std::invalid_argument("user range interval outside the configured range bounds");
  }
  if (s.bench.rings < 1) throw std::invalid_argument("polar_rings must be >= 1");
  if (s.bench.two_phase_k < 1) throw std::invalid_argument("two_phase_k must be >= 1");
}

MetricTable run_experiment(const ExperimentSpec& spec, Execution ex) {
  validate_spec(spec);
  const std::size_t P = spec.axis_values.size();
  const std::size_t S = spec.schemes.size();
  const auto T = static_cast<std::size_t>(spec.trials);

  // One setup (and benchmark context) per axis point; kernels inside a trial stay serial.
  std::vector<TrainingSetup> setups;
  setups.reserve(P);
  for (double v : spec.axis_values) {
    auto cfg = spec.cfg;
    if (spec.axis == SweepAxis::TransmitPower) cfg.params.transmit_power = v;
    setups.push_back(make_training_setup(cfg, spec.array_model, spec.subarray_model, Execution::Serial));
  }
  bool need_bench = false;
  for (auto s : spec.schemes)
    need_bench |= s == Scheme::Exhaustive || s == Scheme::NearFieldRainbow || s == Scheme::TwoPhase;
  std::vector<std::optional<BenchmarkContext>> contexts(P);
  if (need_bench) {
    // The codebook does not depend on the axis value; build it once and share rows by copy.
    BenchmarkContext first(setups[0], spec.bench);
    for (std::size_t p = 0; p < P; ++p) contexts[p].emplace(first.rebind(setups[p]));
  }

  std::vector<Sample> samples(T * P * S);
  auto at = [&](std::size_t t, std::size_t p, std::size_t s) -> Sample& { return samples[(t * P + p) * S + s]; };

  auto run_trial = [&](std::size_t t) {
    std::optional<TrainingChannels> shared_channels;
    for (std::size_t p = 0; p < P; ++p) {
      const auto& setup = setups[p];
      const std::uint64_t user_seed = spec.common_random_numbers ? derive_seed(spec.seed, {0, t})
                                                                 : derive_seed(spec.seed, {1, p, t});
      std::mt19937_64 rng(user_seed);
      double angle = spec.users.angle;
      double range = spec.users.range;
      if (!spec.users.fixed) {
        angle = std::uniform_real_distribution<double>(spec.users.angle_lo, spec.users.angle_hi)(rng);
        range = std::uniform_real_distribution<double>(range_lo(spec), range_hi(spec))(rng);
      }
      if (spec.axis == SweepAxis::UserRange) range = spec.axis_values[p];

      std::optional<TrainingChannels> local;
      const TrainingChannels* ch = nullptr;
      try {
        const auto user = PolarPoint::from_range_angle(range, angle);
        if (spec.axis == SweepAxis::TransmitPower && spec.common_random_numbers) {
          if (!shared_channels) shared_channels = make_training_channels(setup, user);
          ch = &*shared_channels;
        } else {
          local = make_training_channels(setup, user);
          ch = &*local;
        }
      } catch (const std::exception&) {
        continue;  // every scheme of this point stays marked failed
      }

      const auto noise_base = derive_seed(user_seed, {2, spec.common_random_numbers ? 0 : p});
      for (std::size_t s = 0; s < S; ++s) {
        Sample& out = at(t, p, s);
        out.true_angle = angle;
        out.true_range = range;
        const auto seed = derive_seed(noise_base, {static_cast<std::uint64_t>(spec.schemes[s])});
        try {
          CVector responses;
          switch (spec.schemes[s]) {
            case Scheme::Proposed: {
              const auto o = run_full_training(setup, *ch, seed);
              out.angle = o.angle;
              out.range = o.range;
              responses = channel_responses(ch->full, data_beamformers(setup, o));
              break;
            }
            default: {
              BenchmarkOutcome o;
              if (spec.schemes[s] == Scheme::PerfectCsi) o = perfect_csi(ch->full);
              else if (spec.schemes[s] == Scheme::Exhaustive) o = exhaustive_polar_search(*contexts[p], ch->full, seed);
              else if (spec.schemes[s] == Scheme::NearFieldRainbow) o = nearfield_rainbow_training(*contexts[p], ch->full, seed);
              else o = two_phase_training(*contexts[p], ch->full, seed);
              out.angle = o.angle;
              out.range = o.range;
              responses = o.wideband ? channel_responses(ch->full, o.wideband_beams)
                                     : channel_responses(ch->full, std::span<const cdouble>(o.narrowband_beam));
            }
          }
          out.rate = achievable_rate(responses, setup.tx_power(), setup.noise_power());
          out.ok = true;
        } catch (const std::exception&) {
          out.ok = false;
        }
      }
    }
  };

  const auto nt = static_cast<std::ptrdiff_t>(T);
  if (ex == Execution::Parallel) {
    const int threads = spec.threads > 0 ? spec.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t t = 0; t < nt; ++t) run_trial(static_cast<std::size_t>(t));
  } else {
    for (std::ptrdiff_t t = 0; t < nt; ++t) run_trial(static_cast<std::size_t>(t));
  }

  MetricTable table;
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t p = 0; p < P; ++p) {
      MetricRow row;
      row.scheme = spec.schemes[s];
      const double v = spec.axis_values[p];
      row.axis = spec.axis == SweepAxis::TransmitPower ? watts_to_dbm(v) : v;
      const double label_range = spec.axis == SweepAxis::UserRange ? v
                                 : spec.users.fixed                 ? spec.users.range
                                                                    : 0.5 * (range_lo(spec) + range_hi(spec));
      row.snr_db = reference_snr_db(setups[p].cfg, label_range, setups[p].grid.freq(setups[p].grid.central_index()));
      row.overhead = pilot_overhead(row.scheme, spec.cfg.N(), spec.bench);
      std::vector<double> ea, ta, er, tr;
      double rate = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        const auto& x = at(t, p, s);
        if (!x.ok) {
          ++row.failures;
          continue;
        }
        ea.push_back(x.angle);
        ta.push_back(x.true_angle);
        er.push_back(x.range);
        tr.push_back(x.true_range);
        rate += x.rate;
      }
      row.trials = static_cast<int>(ea.size());
      const double nan = std::numeric_limits<double>::quiet_NaN();
      auto safe_nmse = [&](const std::vector<double>& e, const std::vector<double>& tv) {
        try {
          return nmse(e, tv);
        } catch (const std::exception&) {
          return nan;
        }
      };
      row.nmse_angle = safe_nmse(ea, ta);
      row.nmse_range = safe_nmse(er, tr);
      row.rate = row.trials > 0 ? rate / row.trials : nan;
      table.rows.push_back(row);
    }
  }
  return table;
}

void write_metric_csv(std::ostream& os, const MetricTable& table) {
  os << "scheme,axis,snr_db,nmse_angle,nmse_range,rate,trials,overhead\n";
  for (const auto& r : table.rows)
    os << fmt::format("{},{:.6g},{:.4f},{:.6e},{:.6e},{:.6f},{},{}\n", to_string(r.scheme), r.axis, r.snr_db,
                      r.nmse_angle, r.nmse_range, r.rate, r.trials, r.overhead);
  for (const auto& r : table.rows)
    if (r.failures > 0)
      os << fmt::format("# failures {} axis={:.6g}: {}\n", to_string(r.scheme), r.axis, r.failures);
}

}  // namespace nfbt
