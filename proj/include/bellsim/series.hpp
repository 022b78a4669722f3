#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace bellsim {

/// One detection trial: 1 means the photon passed its polarizer and was
/// detected, 0 means it was blocked.
struct TrialOutcome {
  bool bit_a = false;
  bool bit_b = false;
};

/// Ordered per-trial record for a single detector.
class OutcomeSeries {
 public:
  OutcomeSeries() = default;
  explicit OutcomeSeries(std::vector<std::uint8_t> bits);  // validates entries are 0/1

  /// Parse a compact bit string such as "001010110110".
  static OutcomeSeries from_string(std::string_view s);

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const OutcomeSeries&, const OutcomeSeries&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace bellsim
