#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

namespace msns {

// Fixed-order pairwise summation: terms are combined as
// ((t0+t1)+(t2+t3))+... regardless of who produces them, so a batch reduced
// by parallel workers in index order agrees bitwise with a serial pass.
template <class T>
class PairwiseAccumulator {
 public:
  void add(T value) {
    std::size_t level = 0;
    while (level < slots_.size() && filled_[level]) {
      value = slots_[level] + value;  // earlier partial on the left
      filled_[level] = false;
      ++level;
    }
    if (level == slots_.size()) {
      slots_.push_back(std::move(value));
      filled_.push_back(true);
    } else {
      slots_[level] = std::move(value);
      filled_[level] = true;
    }
    ++count_;
  }

  std::size_t count() const { return count_; }

  // Remaining partials combined lowest level first; earlier terms stay on
  // the left so the order is a pure function of count().
  T total() const {
    assert(count_ > 0);
    bool have = false;
    T acc{};
    for (std::size_t level = 0; level < slots_.size(); ++level) {
      if (!filled_[level]) continue;
      if (!have) {
        acc = slots_[level];
        have = true;
      } else {
        acc = slots_[level] + acc;
      }
    }
    return acc;
  }

 private:
  std::vector<T> slots_;
  std::vector<bool> filled_;
  std::size_t count_ = 0;
};

}  // namespace msns
