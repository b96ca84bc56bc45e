#pragma once

#include <string_view>
#include <vector>

#include "nfbt/config.hpp"

namespace nfbt {

enum class ArrayKind { Full, DenseSubarray, SparseSubarray };

std::string_view to_string(ArrayKind kind);
ArrayKind parse_array_kind(std::string_view name);

// Symmetric antenna index set {-(K-1)/2, ..., (K-1)/2} with a physical element spacing.
// For the sparse subarray the indices are the activated q~ and spacing is U d_c.
class AntennaIndexSet {
 public:
  AntennaIndexSet(ArrayKind kind, int count, double spacing);

  ArrayKind kind() const { return kind_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }
  double spacing() const { return spacing_; }
  double position(std::size_t i) const { return indices_[i] * spacing_; }
  std::vector<double> positions() const;

 private:
  ArrayKind kind_;
  std::vector<int> indices_;
  double spacing_;
};

AntennaIndexSet full_array(const ValidatedConfig& cfg);
AntennaIndexSet dense_subarray(const ValidatedConfig& cfg);
AntennaIndexSet sparse_subarray(const ValidatedConfig& cfg);
AntennaIndexSet make_geometry(const ValidatedConfig& cfg, ArrayKind kind);

}  // namespace nfbt
