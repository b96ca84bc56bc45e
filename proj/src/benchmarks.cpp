#include "nfbt/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "nfbt/random.hpp"

namespace nfbt {

PolarCodebook::PolarCodebook(int num_angles, int rings, double alpha) : rings_(rings), alpha_(alpha) {
  if (num_angles < 1 || rings < 1 || !(alpha > 0.0))
    throw std::invalid_argument("PolarCodebook: need N >= 1, V >= 1 and alpha > 0");
  angles_.reserve(static_cast<std::size_t>(num_angles));
  for (int n = 0; n < num_angles; ++n)
    angles_.push_back(static_cast<double>(2 * n - num_angles + 1) / num_angles);
}

double PolarCodebook::range(int n, int v) const {
  const double t = angle(n);
  return alpha_ * (1.0 - t * t) / v;
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Proposed: return "proposed";
    case Scheme::PerfectCsi: return "perfect-csi";
    case Scheme::Exhaustive: return "exhaustive";
    case Scheme::NearFieldRainbow: return "nf-rainbow";
    case Scheme::TwoPhase: return "two-phase";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (auto s : {Scheme::Proposed, Scheme::PerfectCsi, Scheme::Exhaustive, Scheme::NearFieldRainbow,
                 Scheme::TwoPhase})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (proposed|perfect-csi|exhaustive|nf-rainbow|two-phase)");
}

int pilot_overhead(Scheme s, int num_antennas, const BenchmarkParams& p) {
  switch (s) {
    case Scheme::Proposed: return 3;
    case Scheme::PerfectCsi: return 0;
    case Scheme::Exhaustive: return num_antennas * p.rings;
    case Scheme::NearFieldRainbow: return p.rings;
    case Scheme::TwoPhase: return num_antennas + p.two_phase_k * p.rings;
  }
  return 0;
}

CVector polar_codeword(const AntennaIndexSet& geometry, double angle, double range, double carrier) {
  const auto sv = response_vector(PolarPoint::from_range_angle(range, angle), geometry, carrier, PathModel::Exact);
  CVector w(sv.entries.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::conj(sv.entries[i]);
  return w;
}

namespace {

double resolve_alpha(const BenchmarkParams& p, const ValidatedConfig& cfg) {
  return p.alpha > 0.0 ? p.alpha : cfg.params.range_max;
}

// Narrowband pilots on one subcarrier: y_i = sqrt(P) h^H w_i + n_i, noise drawn in order.
class NarrowbandProbe {
 public:
  NarrowbandProbe(std::span<const cdouble> row, double tx_power, double noise_power, std::uint64_t seed)
      : row_(row), amp_(std::sqrt(tx_power)), noise_(noise_power), rng_(seed),
        normal_(0.0, std::sqrt(noise_power / 2.0)) {}

  double power(std::span<const cdouble> w) {
    cdouble acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += row_[i] * w[i];
    acc *= amp_;
    if (noise_ > 0.0) {
      const double re = normal_(rng_);
      const double im = normal_(rng_);
      acc += cdouble(re, im);
    }
    return std::norm(acc);
  }

 private:
  std::span<const cdouble> row_;
  double amp_;
  double noise_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

}  // namespace

BenchmarkContext::BenchmarkContext(const TrainingSetup& setup, const BenchmarkParams& params)
    : setup_(&setup),
      params_(params),
      codebook_(setup.cfg.N(), params.rings, resolve_alpha(params, setup.cfg)),
      central_(setup.grid.central_index()) {
  if (params.two_phase_k < 1) throw std::invalid_argument("two-phase K must be >= 1");
  params_.alpha = codebook_.alpha();
  const auto rows = static_cast<std::ptrdiff_t>(codebook_.size());
  auto matrix = std::make_shared<ComplexMatrix>(static_cast<std::size_t>(rows),
                                                static_cast<std::size_t>(setup.full.size()));
  const int V = codebook_.rings();
  auto fill = [&](std::ptrdiff_t i) {
    const int n = static_cast<int>(i / V);
    const int v = static_cast<int>(i % V) + 1;
    const auto w = polar_codeword(setup.full, codebook_.angle(n), codebook_.range(n, v), setup.grid.carrier());
    std::copy(w.begin(), w.end(), matrix->row(static_cast<std::size_t>(i)).begin());
  };
  if (setup.ex == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) fill(i);
  } else {
    for (std::ptrdiff_t i = 0; i < rows; ++i) fill(i);
  }
  matrix_ = std::move(matrix);
}

BenchmarkContext BenchmarkContext::rebind(const TrainingSetup& setup) const {
  BenchmarkContext out = *this;
  out.setup_ = &setup;
  return out;
}

BenchmarkOutcome perfect_csi(const LosChannel& ch) {
  BenchmarkOutcome out;
  out.scheme = Scheme::PerfectCsi;
  out.angle = ch.user.angle();
  out.range = ch.user.range();
  out.pilot_overhead = 0;
  out.codeword = "matched";
  out.wideband = true;
  out.wideband_beams = ComplexMatrix(ch.size(), ch.antennas());
  for (std::size_t m = 0; m < ch.size(); ++m) {
    const auto row = ch.rows.row(m);
    double norm = 0.0;
    for (const auto& v : row) norm += std::norm(v);
    norm = std::sqrt(norm);
    auto dst = out.wideband_beams.row(m);
    for (std::size_t i = 0; i < row.size(); ++i) dst[i] = std::conj(row[i]) / norm;
  }
  return out;
}

BenchmarkOutcome exhaustive_polar_search(const BenchmarkContext& ctx, const LosChannel& ch, std::uint64_t seed) {
  const auto& s = ctx.setup();
  const auto& cb = ctx.codebook();
  NarrowbandProbe probe(ch.rows.row(static_cast<std::size_t>(ctx.central_subcarrier() - 1)), s.tx_power(),
                        s.noise_power(), seed);
  const auto& mat = ctx.codebook_matrix();
  std::vector<double> p(mat.rows());
  for (std::size_t i = 0; i < mat.rows(); ++i) p[i] = probe.power(mat.row(i));
  const auto best = argmax_first(p);
  const int n = static_cast<int>(best) / cb.rings();
  const int v = static_cast<int>(best) % cb.rings() + 1;

  BenchmarkOutcome out;
  out.scheme = Scheme::Exhaustive;
  out.angle = cb.angle(n);
  out.range = cb.range(n, v);
  out.pilot_overhead = pilot_overhead(Scheme::Exhaustive, s.cfg.N(), ctx.params());
  out.codeword = fmt::format("n={} v={}", n + 1, v);
  const auto row = mat.row(best);
  out.narrowband_beam.assign(row.begin(), row.end());
  return out;
}

RainbowFan rainbow_fan(const FrequencyGrid& grid) {
  RainbowFan fan;
  const double il = 1.0 / grid.low_ratio();
  const double ih = 1.0 / grid.high_ratio();
  fan.q = static_cast<int>(std::ceil(1.0 / (il - ih)));
  fan.td_angle = -fan.q * (il + ih);
  for (int m = 1; m <= grid.size(); ++m) {
    const double rho = grid.ratio(m);
    double a = fan.td_angle + 2.0 * fan.q / rho;
    // Report the physical grating lobe of this subcarrier.
    while (a >= 1.0) a -= 2.0 / rho;
    while (a < -1.0) a += 2.0 / rho;
    fan.angles.push_back(a);
  }
  return fan;
}

BenchmarkOutcome nearfield_rainbow_training(const BenchmarkContext& ctx, const LosChannel& ch, std::uint64_t seed) {
  const auto& s = ctx.setup();
  const auto& cb = ctx.codebook();
  const auto fan = rainbow_fan(s.grid);

  double best_p = -1.0;
  int best_v = 1;
  std::size_t best_m = 0;
  for (int v = 1; v <= cb.rings(); ++v) {
    TdPsParams td;
    td.td_angle = fan.td_angle;
    td.td_curvature = cb.ring_curvature(v);
    const auto beams = combined_beamformer_matrix(td, s.full, s.grid.freqs(), s.grid.carrier(), s.ex);
    const auto y = simulate_pilot(ch, beams, s.tx_power(), s.noise_power(),
                                  derive_seed(seed, {static_cast<std::uint64_t>(v)}), s.ex);
    auto p = calibrated_powers(s.grid.freqs(), y);
    // Subcarriers whose fan beam has no visible lobe cannot name an angle.
    for (std::size_t i = 0; i < p.size(); ++i)
      if (!(fan.angles[i] >= -1.0 && fan.angles[i] < 1.0)) p[i] = -1.0;
    const auto m = argmax_first(p);
    if (p[m] > best_p) {
      best_p = p[m];
      best_v = v;
      best_m = m;
    }
  }

  BenchmarkOutcome out;
  out.scheme = Scheme::NearFieldRainbow;
  out.angle = fan.angles[best_m];
  out.range = range_from_curvature(cb.ring_curvature(best_v), out.angle);
  out.pilot_overhead = pilot_overhead(Scheme::NearFieldRainbow, s.cfg.N(), ctx.params());
  out.codeword = fmt::format("v={} m={}", best_v, best_m + 1);
  out.narrowband_beam = polar_codeword(s.full, out.angle, out.range, s.grid.carrier());
  return out;
}

BenchmarkOutcome two_phase_training(const BenchmarkContext& ctx, const LosChannel& ch, std::uint64_t seed) {
  const auto& s = ctx.setup();
  const auto& cb = ctx.codebook();
  const int N = s.cfg.N();
  const int K = ctx.params().two_phase_k;
  NarrowbandProbe probe(ch.rows.row(static_cast<std::size_t>(ctx.central_subcarrier() - 1)), s.tx_power(),
                        s.noise_power(), seed);

  // Phase 1: far-field DFT sweep.
  const double kc = 2.0 * kPi * s.grid.carrier() / kSpeedOfLight;
  const double amp = 1.0 / std::sqrt(static_cast<double>(N));
  const auto pos = s.full.positions();
  std::vector<double> p1(static_cast<std::size_t>(N));
  CVector w(pos.size());
  for (int n = 0; n < N; ++n) {
    for (std::size_t i = 0; i < pos.size(); ++i) w[i] = std::polar(amp, -kc * pos[i] * cb.angle(n));
    p1[static_cast<std::size_t>(n)] = probe.power(w);
  }
  const auto peak = argmax_first(p1);
  std::size_t lo = peak, hi = peak;
  while (lo > 0 && p1[lo - 1] >= 0.5 * p1[peak]) --lo;
  while (hi + 1 < p1.size() && p1[hi + 1] >= 0.5 * p1[peak]) ++hi;
  const double mid = 0.5 * (cb.angle(static_cast<int>(lo)) + cb.angle(static_cast<int>(hi)));

  // Phase 2: polar rings at the K middle angles.
  const double edge = 1.0 - 1.0 / N;
  double best_p = -1.0;
  double best_angle = mid;
  double best_range = 0.0;
  std::string best_id;
  for (int j = 0; j < K; ++j) {
    const double a = std::clamp(mid + (j - (K - 1) / 2.0) * 2.0 / N, -edge, edge);
    for (int v = 1; v <= cb.rings(); ++v) {
      const double r = cb.alpha() * (1.0 - a * a) / v;
      const auto cw = polar_codeword(s.full, a, r, s.grid.carrier());
      const double p = probe.power(cw);
      if (p > best_p) {
        best_p = p;
        best_angle = a;
        best_range = r;
        best_id = fmt::format("j={} v={}", j + 1, v);
      }
    }
  }

  BenchmarkOutcome out;
  out.scheme = Scheme::TwoPhase;
  out.angle = best_angle;
  out.range = best_range;
  out.pilot_overhead = pilot_overhead(Scheme::TwoPhase, N, ctx.params());
  out.codeword = best_id;
  out.narrowband_beam = polar_codeword(s.full, best_angle, best_range, s.grid.carrier());
  return out;
}

}  // namespace nfbt
