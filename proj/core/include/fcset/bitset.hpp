#pragma once

#include <cstdint>
#include <vector>

namespace fcs {

/// Fixed-universe bitset over primary indices, with value semantics and a
/// total order for deterministic containers.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  static Bitset of(int universe, std::initializer_list<int> bits) {
    Bitset b(universe);
    for (int i : bits) b.set(i);
    return b;
  }

  int universe() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= (std::uint64_t)1 << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~((std::uint64_t)1 << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(count());
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  bool contains(const Bitset& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if ((o.w_[k] & ~w_[k]) != 0) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (o.w_[k] & w_[k]) return true;
    return false;
  }

  Bitset operator&(const Bitset& o) const {
    Bitset r(n_);
    for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  Bitset operator|(const Bitset& o) const {
    Bitset r(n_);
    for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] | o.w_[k];
    return r;
  }
  Bitset& operator|=(const Bitset& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }
  friend bool operator<(const Bitset& a, const Bitset& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (size_t k = a.w_.size(); k-- > 0;)
      if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k];
    return false;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace fcs
