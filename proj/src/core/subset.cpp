#include "omd/core/subset.hpp"

#include <string>

#include "omd/core/error.hpp"

namespace omd {

Subset Subset::full(int n) {
  if (n < 0 || n > kMaxItems) throw PreconditionError("ground set size out of range");
  return Subset(n == 0 ? 0 : (~Mask{0} >> (64 - n)));
}

Subset Subset::from_indices(std::span<const int> one_based, int ground_size) {
  Subset s;
  for (int index : one_based) {
    if (index < 1 || index > ground_size) {
      throw std::out_of_range("item index " + std::to_string(index) + " outside 1.." +
                              std::to_string(ground_size));
    }
    if (s.contains(index - 1)) {
      throw PreconditionError("duplicate item index " + std::to_string(index));
    }
    s = s.with(index - 1);
  }
  return s;
}

std::vector<int> Subset::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string Subset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : indices()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace omd
