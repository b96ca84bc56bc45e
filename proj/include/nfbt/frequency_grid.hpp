#pragma once

#include <span>
#include <vector>

#include "nfbt/config.hpp"

namespace nfbt {

// Uniform OFDM subcarrier grid. All public indices are 1-based (m = 1..M).
class FrequencyGrid {
 public:
  FrequencyGrid(double carrier, double bandwidth, int num_subcarriers);

  int size() const { return static_cast<int>(freqs_.size()); }
  double freq(int m) const { return freqs_.at(static_cast<std::size_t>(m - 1)); }
  double ratio(int m) const { return freq(m) / carrier_; }
  std::span<const double> freqs() const { return freqs_; }

  double carrier() const { return carrier_; }
  double bandwidth() const { return bandwidth_; }
  double low() const { return freqs_.front(); }
  double high() const { return freqs_.back(); }
  double spacing() const { return bandwidth_ / static_cast<double>(freqs_.size()); }
  double low_ratio() const { return low() / carrier_; }
  double high_ratio() const { return high() / carrier_; }

  // floor(M/2) + 1: the subcarrier at (or just above) the carrier.
  int central_index() const { return size() / 2 + 1; }
  int nearest_index(double f) const;

 private:
  double carrier_;
  double bandwidth_;
  std::vector<double> freqs_;
};

FrequencyGrid make_frequency_grid(const ValidatedConfig& cfg);

}  // namespace nfbt
