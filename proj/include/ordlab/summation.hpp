#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace ordlab {

// Streaming pairwise summation with a fixed tree shape: leaves of 64 terms are
// added naively, then merged like a binary counter. The rounding pattern only
// depends on the number of terms.
template <typename T>
class PairwiseSum {
 public:
  void add(T term) {
    leaf_ += term;
    if (++in_leaf_ == kLeaf) flush_leaf();
  }

  T total() const {
    T sum = leaf_;
    for (std::size_t level = 0; level < levels_.size(); ++level) {
      if (occupied_[level]) sum = levels_[level] + sum;
    }
    return sum;
  }

 private:
  static constexpr std::size_t kLeaf = 64;

  void flush_leaf() {
    T carry = leaf_;
    leaf_ = T{};
    in_leaf_ = 0;
    for (std::size_t level = 0;; ++level) {
      if (level == levels_.size()) {
        levels_.push_back(T{});
        occupied_.push_back(false);
      }
      if (!occupied_[level]) {
        levels_[level] = carry;
        occupied_[level] = true;
        return;
      }
      carry = levels_[level] + carry;
      occupied_[level] = false;
    }
  }

  T leaf_{};
  std::size_t in_leaf_ = 0;
  std::vector<T> levels_;
  std::vector<bool> occupied_;
};

// Neumaier-compensated running sum of doubles.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }
  double total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace ordlab
