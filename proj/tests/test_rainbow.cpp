#include <cmath>

#include "doctest.h"
#include "nfbt/rainbow.hpp"

using namespace nfbt;

namespace {
const FrequencyGrid& grid() {
  static const FrequencyGrid g(60e9, 3e9, 1024);
  return g;
}
}  // namespace

TEST_CASE("multi-beam angles at the top of the band") {
  const auto a = multi_beam_angles(-1.46, 8, 61.5e9, 60e9);
  REQUIRE(a.size() == 9);
  CHECK(a.front().k == 2);
  CHECK(a.back().k == 10);
  CHECK(a.front().angle == doctest::Approx(-1.46 + 4 / (8 * 1.025)).epsilon(1e-12));
  CHECK(a.front().angle == doctest::Approx(-0.9722).epsilon(1e-4));
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i].angle > a[i - 1].angle);
  for (auto b : a) CHECK((b.angle >= -1.0 && b.angle < 1.0));

  CHECK(num_beams(-1.46, 8, 61.5e9, 60e9) == 9);
  CHECK(num_beams(-0.9, 8, 61.5e9, 60e9) == 8);
  const auto one = multi_beam_angles(0.0, 1, 60e9, 60e9);
  REQUIRE(one.size() == 1);
  CHECK(one[0].angle == 0.0);
}

TEST_CASE("closed-form beam count agrees with enumeration") {
  for (double td : {-6.125, -1.46, -0.9, -0.33, 0.0, 0.7, -3.01})
    for (int m : {1, 200, 512, 513, 900, 1024})
      CHECK(num_beams_closed_form(td, 8, grid().freq(m), 60e9) == num_beams(td, 8, grid().freq(m), 60e9));
}

TEST_CASE("ineffective TD angles") {
  CHECK(is_ineffective_td(-0.5));
  CHECK_FALSE(is_ineffective_td(-6.125));
  CHECK_FALSE(is_ineffective_td(1.0));
  CHECK(is_ineffective_td(-1.0));
}

TEST_CASE("sweep TD solver") {
  CHECK(solve_sweep_td_parameter(8, grid()) == doctest::Approx(-6.125).epsilon(1e-15));
  CHECK(sweep_td_parameter_from_threshold(20.5, 8) == doctest::Approx(-6.125));
  CHECK(sweep_td_parameter_from_threshold(21.0, 8) == doctest::Approx(-6.125));
  CHECK(sweep_td_parameter_from_threshold(3.0, 4) == doctest::Approx(-1 + (1 - 6) / 4.0));
  for (int u : {2, 4, 8, 16}) CHECK(solve_sweep_td_parameter(u, grid()) < -1.0);
}

TEST_CASE("rainbow blocks of the solved TD angle") {
  const auto blocks = rainbow_blocks(-6.125, 8, grid());
  REQUIRE(blocks.size() == 8);
  for (std::size_t u = 0; u < blocks.size(); ++u) {
    const auto& b = blocks[u];
    CHECK(b.index == static_cast<int>(u) + 1);
    // value at rho = 1, interpolated between the two central subcarriers
    const double center = -6.125 + 2.0 * b.central_k / 8;
    CHECK(center == doctest::Approx(-1 + (2.0 * b.index - 1) / 8).epsilon(1e-12));
    CHECK(b.angles.size() == 1024);
    CHECK(b.width == doctest::Approx(b.edge_low - b.edge_high).epsilon(1e-9));
    if (u > 0) CHECK(b.width > blocks[u - 1].width);
  }
  // gaps (negative means overlap) shrink as k_c grows
  for (std::size_t u = 1; u + 1 < blocks.size(); ++u) CHECK(*blocks[u].gap_to_next < *blocks[u - 1].gap_to_next);
  CHECK_FALSE(blocks.back().gap_to_next.has_value());
  CHECK_THROWS_AS(rainbow_blocks(-0.5, 8, grid()), std::invalid_argument);
}

TEST_CASE("coverage of the solved TD angle") {
  const auto rep = coverage_report(-6.125, 8, grid());
  CHECK(rep.covered);
  CHECK(rep.max_gap <= 0.0);
  CHECK(rep.overlap_estimate == doctest::Approx(0.1));
  CHECK(rep.max_overlap == doctest::Approx(0.1).epsilon(0.2));
}

TEST_CASE("coverage fails just below -1") {
  const double td = -1.0 - 1e-3;
  const auto rep = coverage_report(td, 8, grid());
  CHECK_FALSE(rep.covered);
  CHECK(rep.max_gap > 0.0);

  // brute-force union of the physical block intervals
  auto blocks = rainbow_blocks(td, 8, grid());
  std::vector<std::pair<double, double>> iv;
  for (const auto& b : blocks) iv.emplace_back(std::max(-1.0, b.edge_high), std::min(1.0, b.edge_low));
  std::sort(iv.begin(), iv.end());
  double reach = -1.0, gap = 0.0;
  for (auto [lo, hi] : iv) {
    gap = std::max(gap, lo - reach);
    reach = std::max(reach, hi);
  }
  gap = std::max(gap, 1.0 - reach);
  CHECK(rep.max_gap == doctest::Approx(gap).epsilon(1e-9));
}

TEST_CASE("TD-only range spread") {
  const auto s1 = td_only_range_spread(1, -800.5538284756, grid());
  CHECK(std::abs(s1.delta_mu) == doctest::Approx(0.039).epsilon(0.01));
  CHECK(s1.delta_mu == doctest::Approx(4 * 3e9 / (kSpeedOfLight * 1024)).epsilon(1e-12));
  REQUIRE(s1.focus.size() == 1024);
  const double dc = kSpeedOfLight / 60e9 / 2;
  CHECK(s1.focus[300] == doctest::Approx(-800.5538284756 + 2 / dc * 60e9 / grid().freq(301)).epsilon(1e-12));
  // adjacent focus points differ by about delta_mu near the carrier
  CHECK(std::abs(s1.focus[511] - s1.focus[512]) == doctest::Approx(std::abs(s1.delta_mu)).epsilon(1e-3));
  CHECK(beams_in_span(0.1, s1.delta_mu) == 3);

  const auto s2 = td_only_range_spread(2, 0.0, grid());
  CHECK(s2.delta_mu == doctest::Approx(2 * s1.delta_mu));
  CHECK_THROWS_AS(td_only_range_spread(0, 0.0, grid()), std::invalid_argument);
}

TEST_CASE("beam table flattens blocks") {
  const auto rows = rainbow_beam_table(-6.125, 8, grid());
  CHECK(rows.size() == 8u * 1024u);
  CHECK(rows.front().block == 1);
  CHECK(rows.front().subcarrier == 1);
  CHECK(rows.back().block == 8);
  CHECK(rows.back().subcarrier == 1024);
  for (const auto& r : rows) CHECK(r.physical == (r.angle >= -1.0 && r.angle < 1.0));
}
