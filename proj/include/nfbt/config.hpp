#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nfbt {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

enum class ConfigErrorCode {
  AntennasNotPositive,
  AntennasEven,
  SubarrayNotPositive,
  SubarrayEven,
  SubarrayExceedsArray,
  IntervalNotPositive,
  IntervalNotDividing,
  IntervalExceedsSubarray,
  CarrierNotPositive,
  BandwidthNotPositive,
  BandwidthNotBelowCarrier,
  SubcarriersNotPositive,
  TransmitPowerNotPositive,
  NoisePowerNegative,
  RangeBoundsOrder,
  RangeInsideFresnel,
  RangeBeyondRayleigh,
  RangeInsideSubarrayRayleigh,
};

/// Raised by validate_config; code() and parameter() name the violated rule.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(ConfigErrorCode code, std::string parameter, const std::string& message);

  ConfigErrorCode code() const noexcept { return code_; }
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  ConfigErrorCode code_;
  std::string parameter_;
};

// Raw parameter bundle. Powers are linear watts; frequencies Hz; ranges meters.
// Defaults are the 60 GHz / 513-antenna desk setup.
struct SystemConfig {
  int num_antennas_total = 513;
  int subarray_antennas = 129;
  int activation_interval = 8;
  double carrier_freq = 60e9;
  double bandwidth = 3e9;
  int num_subcarriers = 1024;
  double transmit_power = 1.0;    // 30 dBm
  double noise_power = 1e-11;     // -80 dBm
  double range_min = 10.0;
  double range_max = 50.0;
};

// A SystemConfig that passed every invariant, plus the quantities derived from it.
struct ValidatedConfig {
  SystemConfig params;
  double wavelength = 0.0;          // lambda_c
  double antenna_spacing = 0.0;     // d_c = lambda_c / 2
  int sparse_antennas = 0;          // (Q - 1) / U + 1
  double aperture = 0.0;            // (N - 1) d_c
  double fresnel_distance = 0.0;    // 1.2 D
  double rayleigh_distance = 0.0;   // 0.367 * 2 D^2 / lambda_c
  double subarray_rayleigh_distance = 0.0;
  double subarray_size_limit = 0.0; // sqrt(r_min / (0.367 d_c))
  std::vector<std::string> warnings;

  int N() const { return params.num_antennas_total; }
  int Q() const { return params.subarray_antennas; }
  int U() const { return params.activation_interval; }
  int M() const { return params.num_subcarriers; }
};

ValidatedConfig validate_config(const SystemConfig& cfg);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace nfbt
