#include "nfbt/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace nfbt {

std::string_view to_string(PathModel model) {
  switch (model) {
    case PathModel::Exact: return "exact";
    case PathModel::Fresnel: return "fresnel";
    case PathModel::Planar: return "planar";
  }
  return "unknown";
}

PathModel parse_path_model(std::string_view name) {
  if (name == "exact") return PathModel::Exact;
  if (name == "fresnel") return PathModel::Fresnel;
  if (name == "planar") return PathModel::Planar;
  throw std::invalid_argument("unknown path model '" + std::string(name) + "' (exact|fresnel|planar)");
}

double exact_element_range(const PolarPoint& user, double position) {
  const double r = user.range();
  return std::sqrt(r * r + position * position - 2.0 * r * user.angle() * position);
}

double fresnel_element_range(const PolarPoint& user, int n, double spacing) {
  const double x = n * spacing;
  return user.range() - x * user.angle() + x * x * user.curvature();
}

double element_path(const PolarPoint& user, double position, PathModel model) {
  switch (model) {
    case PathModel::Exact: return exact_element_range(user, position);
    case PathModel::Fresnel:
      return user.range() - position * user.angle() + position * position * user.curvature();
    case PathModel::Planar: return user.range() - position * user.angle();
  }
  return 0.0;
}

namespace {

// Path differences r_n - r_0, per antenna.
std::vector<double> path_offsets(const PolarPoint& user, const AntennaIndexSet& geometry, PathModel model) {
  std::vector<double> out(static_cast<std::size_t>(geometry.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = element_path(user, geometry.position(i), model) - user.range();
  return out;
}

SteeringVector steering_from_offsets(std::span<const double> offsets, ArrayKind kind, double freq) {
  SteeringVector sv;
  sv.kind = kind;
  sv.freq = freq;
  sv.entries.resize(offsets.size());
  const double k = 2.0 * kPi * freq / kSpeedOfLight;
  const double amp = 1.0 / std::sqrt(static_cast<double>(offsets.size()));
  for (std::size_t i = 0; i < offsets.size(); ++i) sv.entries[i] = std::polar(amp, -k * offsets[i]);
  return sv;
}

}  // namespace

SteeringVector response_vector(const PolarPoint& user, const AntennaIndexSet& geometry, double freq,
                               PathModel model) {
  const auto offsets = path_offsets(user, geometry, model);
  return steering_from_offsets(offsets, geometry.kind(), freq);
}

SteeringVector near_field_steering(const PolarPoint& user, const AntennaIndexSet& geometry, double freq,
                                   PathModel model) {
  if (geometry.kind() == ArrayKind::SparseSubarray)
    throw std::invalid_argument("near_field_steering: the sparse subarray link is modeled far-field");
  if (model == PathModel::Planar)
    throw std::invalid_argument("near_field_steering: use far_field_steering for the planar model");
  return response_vector(user, geometry, freq, model);
}

SteeringVector far_field_steering(double angle, const AntennaIndexSet& geometry, double freq) {
  std::vector<double> offsets(static_cast<std::size_t>(geometry.size()));
  for (std::size_t i = 0; i < offsets.size(); ++i) offsets[i] = -geometry.position(i) * angle;
  return steering_from_offsets(offsets, geometry.kind(), freq);
}

double model_agreement(const PolarPoint& user, const AntennaIndexSet& geometry, double freq, PathModel a,
                       PathModel b) {
  const auto va = response_vector(user, geometry, freq, a);
  const auto vb = response_vector(user, geometry, freq, b);
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < va.entries.size(); ++i) acc += std::conj(va.entries[i]) * vb.entries[i];
  return std::abs(acc);
}

double path_gain(double freq, double range) { return kSpeedOfLight / freq / (4.0 * kPi * range); }

LosChannel los_channel(const ValidatedConfig& cfg, const PolarPoint& user, const AntennaIndexSet& geometry,
                       std::span<const double> freqs, PathModel model, Execution ex) {
  const double r0 = user.range();
  if (r0 < cfg.params.range_min || r0 > cfg.params.range_max)
    throw std::out_of_range(fmt::format("user range {} m outside [{}, {}] m", r0, cfg.params.range_min,
                                        cfg.params.range_max));

  LosChannel ch;
  ch.kind = geometry.kind();
  ch.model = model;
  ch.user = user;
  ch.freqs.assign(freqs.begin(), freqs.end());
  ch.path_gains.resize(freqs.size());
  ch.rows = ComplexMatrix(freqs.size(), static_cast<std::size_t>(geometry.size()));

  const auto offsets = path_offsets(user, geometry, model);
  std::vector<double> neg_k(freqs.size());
  for (std::size_t m = 0; m < freqs.size(); ++m) neg_k[m] = -2.0 * kPi * freqs[m] / kSpeedOfLight;

  // Entry magnitude sqrt(count) * beta / sqrt(count) = beta.
  kernels::fill_phase_matrix(ex, neg_k, offsets, {}, 1.0, ch.rows);
  const bool global_phase = model != PathModel::Planar;
  for (std::size_t m = 0; m < freqs.size(); ++m) {
    const double beta = path_gain(freqs[m], r0);
    ch.path_gains[m] = beta;
    const cdouble scale = global_phase ? std::polar(beta, neg_k[m] * r0) : cdouble(beta, 0.0);
    for (auto& v : ch.rows.row(m)) v *= scale;
  }
  return ch;
}

}  // namespace nfbt
