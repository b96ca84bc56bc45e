#include "nfbt/config.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nfbt {

ConfigError::ConfigError(ConfigErrorCode code, std::string parameter, const std::string& message)
    : std::invalid_argument(message), code_(code), parameter_(std::move(parameter)) {}

namespace {

[[noreturn]] void fail(ConfigErrorCode code, const char* parameter, const std::string& message) {
  throw ConfigError(code, parameter, fmt::format("{}: {}", parameter, message));
}

}  // namespace

ValidatedConfig validate_config(const SystemConfig& cfg) {
  const int n = cfg.num_antennas_total;
  const int q = cfg.subarray_antennas;
  const int u = cfg.activation_interval;

  if (n <= 0) fail(ConfigErrorCode::AntennasNotPositive, "num_antennas_total", "N must be positive");
  if (n % 2 == 0) fail(ConfigErrorCode::AntennasEven, "num_antennas_total", "N must be odd");
  if (q <= 0) fail(ConfigErrorCode::SubarrayNotPositive, "subarray_antennas", "Q must be positive");
  if (q % 2 == 0) fail(ConfigErrorCode::SubarrayEven, "subarray_antennas", "Q must be odd");
  if (q > n) fail(ConfigErrorCode::SubarrayExceedsArray, "subarray_antennas", "Q must not exceed N");
  if (u <= 0) fail(ConfigErrorCode::IntervalNotPositive, "activation_interval", "U must be positive");
  if ((q - 1) % u != 0)
    fail(ConfigErrorCode::IntervalNotDividing, "activation_interval",
         fmt::format("(Q-1) not divisible by U (Q={}, U={})", q, u));
  if (u > q) fail(ConfigErrorCode::IntervalExceedsSubarray, "activation_interval", "U must not exceed Q");

  if (!(cfg.carrier_freq > 0.0))
    fail(ConfigErrorCode::CarrierNotPositive, "carrier_freq", "carrier frequency must be positive");
  if (!(cfg.bandwidth > 0.0))
    fail(ConfigErrorCode::BandwidthNotPositive, "bandwidth", "bandwidth must be positive");
  if (!(cfg.bandwidth < cfg.carrier_freq))
    fail(ConfigErrorCode::BandwidthNotBelowCarrier, "bandwidth", "bandwidth must be below the carrier");
  if (cfg.num_subcarriers <= 0)
    fail(ConfigErrorCode::SubcarriersNotPositive, "num_subcarriers", "M must be positive");
  if (!(cfg.transmit_power > 0.0))
    fail(ConfigErrorCode::TransmitPowerNotPositive, "transmit_power", "transmit power must be positive");
  if (!(cfg.noise_power >= 0.0))
    fail(ConfigErrorCode::NoisePowerNegative, "noise_power", "noise power must be non-negative");
  if (!(cfg.range_min > 0.0 && cfg.range_min <= cfg.range_max))
    fail(ConfigErrorCode::RangeBoundsOrder, "range_bounds", "need 0 < r_min <= r_max");

  ValidatedConfig v;
  v.params = cfg;
  v.wavelength = kSpeedOfLight / cfg.carrier_freq;
  v.antenna_spacing = v.wavelength / 2.0;
  v.sparse_antennas = (q - 1) / u + 1;
  v.aperture = (n - 1) * v.antenna_spacing;
  v.fresnel_distance = 1.2 * v.aperture;
  v.rayleigh_distance = 0.367 * 2.0 * v.aperture * v.aperture / v.wavelength;
  const double sub_aperture = (q - 1) * v.antenna_spacing;
  v.subarray_rayleigh_distance = 0.367 * 2.0 * sub_aperture * sub_aperture / v.wavelength;
  v.subarray_size_limit = std::sqrt(cfg.range_min / (0.367 * v.antenna_spacing));

  if (!(cfg.range_min > v.fresnel_distance))
    fail(ConfigErrorCode::RangeInsideFresnel, "range_bounds",
         fmt::format("r_min={} m must exceed the Fresnel distance {:.4f} m", cfg.range_min,
                     v.fresnel_distance));
  if (!(cfg.range_max < v.rayleigh_distance))
    fail(ConfigErrorCode::RangeBeyondRayleigh, "range_bounds",
         fmt::format("r_max={} m must be below the effective Rayleigh distance {:.4f} m",
                     cfg.range_max, v.rayleigh_distance));
  if (!(cfg.range_max > v.subarray_rayleigh_distance))
    fail(ConfigErrorCode::RangeInsideSubarrayRayleigh, "range_bounds",
         fmt::format("r_max={} m must exceed the subarray effective Rayleigh distance {:.4f} m",
                     cfg.range_max, v.subarray_rayleigh_distance));

  // The 60 GHz / Q=129 / r_min=10 m setup sits above this bound, so it is advisory.
  if (q > v.subarray_size_limit)
    v.warnings.push_back(fmt::format(
        "subarray_antennas: Q={} exceeds sqrt(r_min/(0.367 d_c)) = {:.2f}; users near r_min see "
        "energy spread on the central subarray",
        q, v.subarray_size_limit));
  return v;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace nfbt
