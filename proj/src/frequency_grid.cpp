#include "nfbt/frequency_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nfbt {

FrequencyGrid::FrequencyGrid(double carrier, double bandwidth, int num_subcarriers)
    : carrier_(carrier), bandwidth_(bandwidth) {
  if (num_subcarriers <= 0) throw std::invalid_argument("FrequencyGrid: M must be positive");
  const double step = bandwidth / num_subcarriers;
  const double half = (num_subcarriers - 1) / 2.0;
  freqs_.resize(static_cast<std::size_t>(num_subcarriers));
  for (int m = 1; m <= num_subcarriers; ++m)
    freqs_[static_cast<std::size_t>(m - 1)] = carrier + (m - 1 - half) * step;
}

int FrequencyGrid::nearest_index(double f) const {
  const double pos = (f - freqs_.front()) / spacing();
  const long idx = std::lround(pos);
  return static_cast<int>(std::clamp<long>(idx, 0, size() - 1)) + 1;
}

FrequencyGrid make_frequency_grid(const ValidatedConfig& cfg) {
  return FrequencyGrid(cfg.params.carrier_freq, cfg.params.bandwidth, cfg.params.num_subcarriers);
}

}  // namespace nfbt
