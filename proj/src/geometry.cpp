#include "nfbt/geometry.hpp"

#include <stdexcept>
#include <string>

namespace nfbt {

std::string_view to_string(ArrayKind kind) {
  switch (kind) {
    case ArrayKind::Full: return "full";
    case ArrayKind::DenseSubarray: return "dense";
    case ArrayKind::SparseSubarray: return "sparse";
  }
  return "unknown";
}

ArrayKind parse_array_kind(std::string_view name) {
  if (name == "full") return ArrayKind::Full;
  if (name == "dense") return ArrayKind::DenseSubarray;
  if (name == "sparse") return ArrayKind::SparseSubarray;
  throw std::invalid_argument("unknown geometry '" + std::string(name) + "' (full|dense|sparse)");
}

AntennaIndexSet::AntennaIndexSet(ArrayKind kind, int count, double spacing)
    : kind_(kind), spacing_(spacing) {
  if (count <= 0 || count % 2 == 0)
    throw std::invalid_argument("AntennaIndexSet: count must be positive and odd");
  const int half = (count - 1) / 2;
  indices_.reserve(static_cast<std::size_t>(count));
  for (int i = -half; i <= half; ++i) indices_.push_back(i);
}

std::vector<double> AntennaIndexSet::positions() const {
  std::vector<double> out(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) out[i] = position(i);
  return out;
}

AntennaIndexSet full_array(const ValidatedConfig& cfg) {
  return {ArrayKind::Full, cfg.N(), cfg.antenna_spacing};
}

AntennaIndexSet dense_subarray(const ValidatedConfig& cfg) {
  return {ArrayKind::DenseSubarray, cfg.Q(), cfg.antenna_spacing};
}

AntennaIndexSet sparse_subarray(const ValidatedConfig& cfg) {
  return {ArrayKind::SparseSubarray, cfg.sparse_antennas, cfg.U() * cfg.antenna_spacing};
}

AntennaIndexSet make_geometry(const ValidatedConfig& cfg, ArrayKind kind) {
  switch (kind) {
    case ArrayKind::Full: return full_array(cfg);
    case ArrayKind::DenseSubarray: return dense_subarray(cfg);
    case ArrayKind::SparseSubarray: return sparse_subarray(cfg);
  }
  throw std::invalid_argument("make_geometry: bad kind");
}

}  // namespace nfbt
