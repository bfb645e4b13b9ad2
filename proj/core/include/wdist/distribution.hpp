#pragma once

#include <map>
#include <vector>

#include "wdist/bigint.hpp"

namespace wdist {

/// Sorted map from a classification key to an exact frequency.
template <class Key>
class DistributionTable {
 public:
  using Map = std::map<Key, BigInt>;

  void add(const Key& key, const BigInt& frequency) {
    if (frequency == 0) return;
    rows_[key] += frequency;
  }

  BigInt frequency(const Key& key) const {
    auto it = rows_.find(key);
    return it == rows_.end() ? BigInt(0) : it->second;
  }

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [k, f] : rows_) t += f;
    return t;
  }

  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const Map& rows() const { return rows_; }
  auto begin() const { return rows_.begin(); }
  auto end() const { return rows_.end(); }

  friend bool operator==(const DistributionTable&, const DistributionTable&) = default;

 private:
  Map rows_;
};

template <class Key>
struct Divergence {
  Key key;
  BigInt expected;
  BigInt observed;
};

/// Every key whose frequency differs, in key order (absent keys count as 0).
template <class Key>
std::vector<Divergence<Key>> compare_tables(const DistributionTable<Key>& expected,
                                            const DistributionTable<Key>& observed) {
  std::vector<Divergence<Key>> out;
  auto e = expected.begin(), o = observed.begin();
  while (e != expected.end() || o != observed.end()) {
    if (o == observed.end() || (e != expected.end() && e->first < o->first)) {
      out.push_back({e->first, e->second, 0});
      ++e;
    } else if (e == expected.end() || o->first < e->first) {
      out.push_back({o->first, 0, o->second});
      ++o;
    } else {
      if (e->second != o->second) out.push_back({e->first, e->second, o->second});
      ++e;
      ++o;
    }
  }
  return out;
}

}  // namespace wdist
