#include "bellsim/series.hpp"

#include <stdexcept>
#include <utility>

namespace bellsim {

OutcomeSeries::OutcomeSeries(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_) {
    if (b > 1) {
      throw std::invalid_argument("outcome series entries must be 0 or 1");
    }
  }
}

OutcomeSeries OutcomeSeries::from_string(std::string_view s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("outcome series string must contain only 0 and 1");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return OutcomeSeries(std::move(bits));
}

}  // namespace bellsim
