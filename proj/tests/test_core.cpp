#include <cmath>
#include <random>

#include "doctest.h"
#include "nfbt/config.hpp"
#include "nfbt/frequency_grid.hpp"
#include "nfbt/geometry.hpp"
#include "nfbt/polar.hpp"

using namespace nfbt;

namespace {
ConfigErrorCode error_code_of(const SystemConfig& c) {
  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    return e.code();
  }
  FAIL("expected a ConfigError");
  return ConfigErrorCode::AntennasNotPositive;
}
}  // namespace

TEST_CASE("default desk config validates with the expected derived sizes") {
  const auto cfg = validate_config(SystemConfig{});
  CHECK(cfg.sparse_antennas == 17);
  CHECK(cfg.antenna_spacing == doctest::Approx(2.4982e-3).epsilon(1e-4));
  CHECK(cfg.wavelength == doctest::Approx(kSpeedOfLight / 60e9));
  CHECK(cfg.aperture == doctest::Approx(512 * cfg.antenna_spacing));
  CHECK(cfg.fresnel_distance < 10.0);
  CHECK(cfg.rayleigh_distance > 50.0);
}

TEST_CASE("config rules reject broken parameter sets") {
  SystemConfig c;
  c.subarray_antennas = 128;
  CHECK(error_code_of(c) == ConfigErrorCode::SubarrayEven);
  c = {};
  c.subarray_antennas = 131;  // 130 not divisible by 8
  CHECK(error_code_of(c) == ConfigErrorCode::IntervalNotDividing);
  c = {};
  c.num_antennas_total = 512;
  CHECK(error_code_of(c) == ConfigErrorCode::AntennasEven);
  c = {};
  c.bandwidth = 60e9;
  CHECK(error_code_of(c) == ConfigErrorCode::BandwidthNotBelowCarrier);
  c = {};
  c.range_min = 60.0;
  CHECK(error_code_of(c) == ConfigErrorCode::RangeBoundsOrder);
  c = {};
  c.range_min = 0.5;
  CHECK(error_code_of(c) == ConfigErrorCode::RangeInsideFresnel);
  c = {};
  c.range_max = 1000.0;
  CHECK(error_code_of(c) == ConfigErrorCode::RangeBeyondRayleigh);
  c = {};
  c.num_subcarriers = 0;
  CHECK(error_code_of(c) == ConfigErrorCode::SubcarriersNotPositive);
}

TEST_CASE("ConfigError names the parameter") {
  SystemConfig c;
  c.subarray_antennas = 128;
  try {
    validate_config(c);
    FAIL("no throw");
  } catch (const ConfigError& e) {
    CHECK(e.parameter() == "subarray_antennas");
  }
}

TEST_CASE("dBm conversion") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(-80.0) == doctest::Approx(1e-11));
  CHECK(watts_to_dbm(dbm_to_watts(12.5)) == doctest::Approx(12.5));
}

TEST_CASE("frequency grid follows the centered subcarrier formula") {
  const FrequencyGrid g(60e9, 3e9, 1024);
  REQUIRE(g.size() == 1024);
  for (int m = 1; m <= 1024; ++m) {
    const double expect = 60e9 + (m - 1 - 511.5) * 3e9 / 1024;
    CHECK(g.freq(m) == doctest::Approx(expect).epsilon(1e-15));
  }
  CHECK(g.low() == doctest::Approx(58.5015e9).epsilon(1e-6));
  CHECK(g.high() == doctest::Approx(60e9 + 1023 * 3e9 / 2048).epsilon(1e-15));
  CHECK(g.high() == doctest::Approx(61.5e9).epsilon(1e-4));
  CHECK(g.freq(512) < 60e9);
  CHECK(g.freq(513) > 60e9);
  for (int m = 2; m <= 1024; ++m) CHECK(g.freq(m) - g.freq(m - 1) == doctest::Approx(g.spacing()));
  CHECK(g.central_index() == 513);
  CHECK(g.nearest_index(59.3774e9) == 300);
  CHECK(g.nearest_index(1.0) == 1);
  CHECK(g.nearest_index(1e12) == 1024);
}

TEST_CASE("single-subcarrier grid sits on the carrier") {
  const FrequencyGrid g(60e9, 3e9, 1);
  CHECK(g.size() == 1);
  CHECK(g.freq(1) == 60e9);
}

TEST_CASE("polar point conversions") {
  CHECK(PolarPoint::from_range_angle(10.0, 0.0).curvature() == doctest::Approx(0.05));
  CHECK(PolarPoint::from_curvature_angle(0.01, 0.0).range() == doctest::Approx(50.0));
  const auto p = PolarPoint::from_range_angle(25.0, 0.6);
  CHECK(p.curvature() == doctest::Approx(0.0128));
  CHECK(PolarPoint::from_curvature_angle(p.curvature(), 0.6).range() == doctest::Approx(25.0).epsilon(1e-14));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(1.0, 200.0), ua(-0.99, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const double r = ur(rng), t = ua(rng);
    const auto q = PolarPoint::from_range_angle(r, t);
    // Cartesian round trip
    const double back_r = std::hypot(q.x(), q.y());
    CHECK(std::abs(back_r - r) <= 1e-12 * r);
    CHECK(std::abs(q.y() / back_r - t) <= 1e-12);
    const auto z = PolarPoint::from_curvature_angle(q.curvature(), t);
    CHECK(std::abs(z.range() - r) <= 1e-12 * r);
  }
}

TEST_CASE("polar point rejects invalid input") {
  CHECK_THROWS(PolarPoint::from_range_angle(-1.0, 0.0));
  CHECK_THROWS(PolarPoint::from_range_angle(10.0, 1.5));
  CHECK_THROWS(PolarPoint::from_curvature_angle(0.0, 0.2));
}

TEST_CASE("geometries") {
  const auto cfg = validate_config(SystemConfig{});
  const auto full = full_array(cfg);
  const auto dense = dense_subarray(cfg);
  const auto sparse = sparse_subarray(cfg);
  CHECK(full.size() == 513);
  CHECK(dense.size() == 129);
  CHECK(sparse.size() == 17);
  CHECK(full.indices().front() == -256);
  CHECK(full.indices().back() == 256);
  CHECK(sparse.spacing() == doctest::Approx(8 * cfg.antenna_spacing));
  CHECK(sparse.position(16) == doctest::Approx(dense.position(128)));
  CHECK(make_geometry(cfg, ArrayKind::DenseSubarray).size() == 129);
  CHECK(parse_array_kind(to_string(ArrayKind::SparseSubarray)) == ArrayKind::SparseSubarray);
  CHECK_THROWS_AS(parse_array_kind("ring"), std::invalid_argument);
}
