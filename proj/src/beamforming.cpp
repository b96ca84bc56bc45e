#include "nfbt/beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace nfbt {

namespace {

double wavenumber(double freq) { return 2.0 * kPi * freq / kSpeedOfLight; }

// x theta - x^2 mu per antenna
std::vector<double> phase_profile(double angle, double curvature, const AntennaIndexSet& geometry) {
  std::vector<double> out(static_cast<std::size_t>(geometry.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = geometry.position(i);
    out[i] = x * angle - x * x * curvature;
  }
  return out;
}

Beamformer from_profile(std::span<const double> profile, double k, const AntennaIndexSet& geometry,
                        double freq, const TdPsParams& params) {
  Beamformer bf;
  bf.kind = geometry.kind();
  bf.freq = freq;
  bf.params = params;
  bf.entries.resize(profile.size());
  const double amp = 1.0 / std::sqrt(static_cast<double>(profile.size()));
  for (std::size_t i = 0; i < profile.size(); ++i) bf.entries[i] = std::polar(amp, -k * profile[i]);
  return bf;
}

}  // namespace

Beamformer td_beamformer(const TdPsParams& params, const AntennaIndexSet& geometry, double freq) {
  const auto profile = phase_profile(params.td_angle, params.td_curvature, geometry);
  TdPsParams td = params;
  td.ps_angle = td.ps_curvature = 0.0;
  return from_profile(profile, wavenumber(freq), geometry, freq, td);
}

Beamformer ps_beamformer(const TdPsParams& params, const AntennaIndexSet& geometry, double carrier) {
  const auto profile = phase_profile(params.ps_angle, params.ps_curvature, geometry);
  TdPsParams ps = params;
  ps.td_angle = ps.td_curvature = 0.0;
  return from_profile(profile, wavenumber(carrier), geometry, carrier, ps);
}

Beamformer combine(const Beamformer& td, const Beamformer& ps) {
  if (td.kind != ps.kind || td.entries.size() != ps.entries.size())
    throw std::invalid_argument("combine: TD and PS beamformers are on different geometries");
  Beamformer out;
  out.kind = td.kind;
  out.freq = td.freq;
  out.params = td.params;
  out.params.ps_angle = ps.params.ps_angle;
  out.params.ps_curvature = ps.params.ps_curvature;
  out.entries.resize(td.entries.size());
  const double amp = 1.0 / std::sqrt(static_cast<double>(td.entries.size()));
  for (std::size_t i = 0; i < td.entries.size(); ++i)
    out.entries[i] = std::polar(amp, std::arg(td.entries[i]) + std::arg(ps.entries[i]));
  return out;
}

Beamformer combined_beamformer(const TdPsParams& params, const AntennaIndexSet& geometry, double freq,
                               double carrier) {
  const auto td = phase_profile(params.td_angle, params.td_curvature, geometry);
  const auto ps = phase_profile(params.ps_angle, params.ps_curvature, geometry);
  Beamformer bf;
  bf.kind = geometry.kind();
  bf.freq = freq;
  bf.params = params;
  bf.entries.resize(td.size());
  const double k = wavenumber(freq);
  const double kc = wavenumber(carrier);
  const double amp = 1.0 / std::sqrt(static_cast<double>(td.size()));
  for (std::size_t i = 0; i < td.size(); ++i) bf.entries[i] = std::polar(amp, -k * td[i] - kc * ps[i]);
  return bf;
}

ComplexMatrix combined_beamformer_matrix(const TdPsParams& params, const AntennaIndexSet& geometry,
                                         std::span<const double> freqs, double carrier, Execution ex) {
  const auto td = phase_profile(params.td_angle, params.td_curvature, geometry);
  auto ps = phase_profile(params.ps_angle, params.ps_curvature, geometry);
  const double kc = wavenumber(carrier);
  for (auto& v : ps) v *= -kc;
  std::vector<double> neg_k(freqs.size());
  for (std::size_t m = 0; m < freqs.size(); ++m) neg_k[m] = -wavenumber(freqs[m]);
  ComplexMatrix out(freqs.size(), td.size());
  kernels::fill_phase_matrix(ex, neg_k, td, ps, 1.0 / std::sqrt(static_cast<double>(td.size())), out);
  return out;
}

std::vector<double> td_delays(const TdPsParams& params, const AntennaIndexSet& geometry) {
  auto out = phase_profile(params.td_angle, params.td_curvature, geometry);
  for (auto& v : out) v /= kSpeedOfLight;
  return out;
}

Beamformer matched_beamformer(const SteeringVector& a) {
  Beamformer bf;
  bf.kind = a.kind;
  bf.freq = a.freq;
  bf.entries.resize(a.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) bf.entries[i] = std::conj(a.entries[i]);
  return bf;
}

double array_gain(std::span<const cdouble> w, const SteeringVector& a) {
  if (w.size() != a.entries.size()) throw std::invalid_argument("array_gain: dimension mismatch");
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += a.entries[i] * w[i];
  return std::abs(acc);
}

double array_gain(const Beamformer& w, const SteeringVector& a) {
  if (w.kind != a.kind) throw std::invalid_argument("array_gain: geometry mismatch");
  return array_gain(std::span<const cdouble>(w.entries), a);
}

double sparse_gain_closed_form(double angle, double td_angle, int interval, int sparse_count, double ratio) {
  const double half = kPi * ratio * interval * (angle - td_angle) / 2.0;
  const double s = std::sin(half);
  // l'Hopital near the grating-lobe poles
  if (std::abs(s) < 1e-9) return std::abs(std::cos(sparse_count * half) / std::cos(half));
  return std::abs(std::sin(sparse_count * half) / (sparse_count * s));
}

CVector channel_responses(const LosChannel& ch, const ComplexMatrix& beams, Execution ex) {
  CVector out(ch.size());
  kernels::row_products(ex, ch.rows, beams, out);
  return out;
}

CVector channel_responses(const LosChannel& ch, std::span<const cdouble> w, Execution ex) {
  CVector out(ch.size());
  kernels::broadcast_products(ex, w, ch.rows, out);
  return out;
}

}  // namespace nfbt
