#pragma once

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace evlab {

/// Sets of worlds, indexed against a model's world table.
using WorldSet = boost::dynamic_bitset<>;

inline WorldSet ws_empty(std::size_t n) { return WorldSet(n); }

inline WorldSet ws_full(std::size_t n) {
  WorldSet w(n);
  w.set();
  return w;
}

/// Member indices in increasing order.
inline std::vector<std::size_t> ws_members(const WorldSet& w) {
  std::vector<std::size_t> out;
  for (auto i = w.find_first(); i != WorldSet::npos; i = w.find_next(i))
    out.push_back(i);
  return out;
}

/// First member of a \ b, or npos if a ⊆ b.
inline std::size_t ws_first_outside(const WorldSet& a, const WorldSet& b) {
  WorldSet diff = a - b;
  return diff.find_first();
}

}  // namespace evlab
