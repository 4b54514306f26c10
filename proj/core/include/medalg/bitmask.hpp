#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace medalg {

/// Fixed-universe bitset over element indices 0..n-1. All set algebra used by
/// the wall / cover / topology kernels funnels through this type, so the word
/// loops below are the hot path of the whole library.
class SubsetMask {
public:
  SubsetMask() = default;

  explicit SubsetMask(int universe, bool filled = false)
      : n_(universe), w_((universe + 63) / 64, 0) {
    if (universe < 0) throw std::invalid_argument("SubsetMask: negative universe");
    if (filled) fill();
  }

  static SubsetMask singleton(int universe, int i) {
    SubsetMask m(universe);
    m.set(i);
    return m;
  }

  int universe_size() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

  void set(int i) {
    check_index(i);
    w_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int i) {
    check_index(i);
    w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  void fill() {
    for (auto& w : w_) w = ~std::uint64_t{0};
    trim();
  }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  bool any() const { return !empty(); }

  bool full() const { return count() == n_; }

  SubsetMask& operator&=(const SubsetMask& o) {
    check_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  SubsetMask& operator|=(const SubsetMask& o) {
    check_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  SubsetMask& operator^=(const SubsetMask& o) {
    check_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }

  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator^(SubsetMask a, const SubsetMask& b) { return a ^= b; }

  SubsetMask complement() const {
    SubsetMask r(*this);
    for (auto& w : r.w_) w = ~w;
    r.trim();
    return r;
  }

  bool is_subset_of(const SubsetMask& o) const {
    check_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool intersects(const SubsetMask& o) const {
    check_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  /// First set bit, or -1 when empty.
  int first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }

  /// First set bit strictly after i, or -1.
  int next(int i) const {
    ++i;
    if (i >= n_) return -1;
    std::size_t blk = std::size_t(i) >> 6;
    std::uint64_t cur = w_[blk] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (cur) return int(blk * 64 + std::countr_zero(cur));
      if (++blk >= w_.size()) return -1;
      cur = w_[blk];
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (int i = first(); i >= 0; i = next(i)) f(i);
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const SubsetMask& a, const SubsetMask& b) { return !(a == b); }

  /// Lexicographic on words; used for deterministic ordering of reports.
  friend bool operator<(const SubsetMask& a, const SubsetMask& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.w_ < b.w_;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ std::uint64_t(n_);
    for (auto w : w_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return std::size_t(h);
  }

  std::string to_string() const {
    std::string s = "{";
    bool first_el = true;
    for_each([&](int i) {
      if (!first_el) s += ",";
      s += std::to_string(i);
      first_el = false;
    });
    s += "}";
    return s;
  }

private:
  void check_index(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("SubsetMask: index out of range");
  }
  void check_universe(const SubsetMask& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SubsetMask: universe mismatch");
  }
  void trim() {
    if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct SubsetMaskHash {
  std::size_t operator()(const SubsetMask& m) const { return m.hash(); }
};

}  // namespace medalg
