#include "medalg/periodic.hpp"

#include <numeric>
#include <stdexcept>

#include "medalg/algebra.hpp"

namespace medalg {

namespace {

std::vector<std::uint8_t> minimize(std::vector<std::uint8_t> pattern) {
  if (pattern.empty()) throw Error("size-out-of-range", "pattern must be nonempty");
  const int n = int(pattern.size());
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (int i = d; i < n && periodic; ++i)
      if (pattern[i] != pattern[i - d]) periodic = false;
    if (periodic) {
      pattern.resize(d);
      return pattern;
    }
  }
  return pattern;
}

long long lcm2(long long a, long long b) { return a / std::gcd(a, b) * b; }

constexpr long long kMaxWindow = 1 << 20;

}  // namespace

PeriodicBiSequence::PeriodicBiSequence(std::vector<std::uint8_t> pattern)
    : pattern_(minimize(std::move(pattern))) {
  for (auto b : pattern_)
    if (b > 1) throw Error("malformed-table", "pattern bits must be 0 or 1");
}

PeriodicBiSequence::PeriodicBiSequence(const std::string& bits) {
  std::vector<std::uint8_t> p;
  p.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("malformed-table", "pattern characters must be 0 or 1");
    p.push_back(std::uint8_t(c - '0'));
  }
  pattern_ = minimize(std::move(p));
}

std::string PeriodicBiSequence::to_string() const {
  std::string s;
  s.reserve(pattern_.size());
  for (auto b : pattern_) s += char('0' + b);
  return s;
}

PeriodicBiSequence periodic_median(const PeriodicBiSequence& x, const PeriodicBiSequence& y,
                                   const PeriodicBiSequence& z) {
  long long window = lcm2(lcm2(x.period(), y.period()), z.period());
  if (window > kMaxWindow) throw Error("size-overflow", "lcm window too large");
  std::vector<std::uint8_t> pat(static_cast<std::size_t>(window));
  for (long long i = 0; i < window; ++i) {
    int s = x.at(i) + y.at(i) + z.at(i);
    pat[std::size_t(i)] = s >= 2 ? 1 : 0;
  }
  return PeriodicBiSequence(std::move(pat));
}

bool periodic_interval_member(const PeriodicBiSequence& x, const PeriodicBiSequence& y,
                              const PeriodicBiSequence& z) {
  long long window = lcm2(lcm2(x.period(), y.period()), z.period());
  if (window > kMaxWindow) throw Error("size-overflow", "lcm window too large");
  for (long long i = 0; i < window; ++i)
    if (x.at(i) == y.at(i) && z.at(i) != x.at(i)) return false;
  return true;
}

PeriodicSquare periodic_square_witness(const PeriodicBiSequence& x, const PeriodicBiSequence& y) {
  if (x == y) throw Error("equal-inputs", "square witness needs distinct sequences");
  long long window = lcm2(x.period(), y.period());
  if (window > kMaxWindow) throw Error("size-overflow", "lcm window too large");

  std::vector<long long> diff;
  for (long long i = 0; i < window; ++i)
    if (x.at(i) != y.at(i)) diff.push_back(i);

  auto build = [&](long long w, long long r1, long long r2, bool a, bool b) {
    std::vector<std::uint8_t> pat(static_cast<std::size_t>(w));
    for (long long i = 0; i < w; ++i) {
      if (i == r1)
        pat[std::size_t(i)] = a ? y.at(i) : x.at(i);
      else if (i == r2)
        pat[std::size_t(i)] = b ? y.at(i) : x.at(i);
      else
        pat[std::size_t(i)] = x.at(i);
    }
    return PeriodicBiSequence(std::move(pat));
  };

  if (diff.size() >= 2) {
    long long r1 = diff[0], r2 = diff[1];
    return PeriodicSquare{{build(window, r1, r2, false, false), build(window, r1, r2, false, true),
                           build(window, r1, r2, true, false), build(window, r1, r2, true, true)}};
  }

  // One differing residue: double the window and vary the two copies.
  long long w2 = 2 * window;
  if (w2 > kMaxWindow) throw Error("size-overflow", "doubled window too large");
  long long r1 = diff[0], r2 = diff[0] + window;
  return PeriodicSquare{{build(w2, r1, r2, false, false), build(w2, r1, r2, false, true),
                         build(w2, r1, r2, true, false), build(w2, r1, r2, true, true)}};
}

bool verify_periodic_square(const PeriodicBiSequence& x, const PeriodicBiSequence& y,
                            const PeriodicSquare& sq) {
  for (int i = 0; i < 4; ++i) {
    if (!periodic_interval_member(x, y, sq.corner[i])) return false;
    for (int j = i + 1; j < 4; ++j)
      if (sq.corner[i] == sq.corner[j]) return false;
  }
  // Median of corners follows the 2-cube bit pattern.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        auto maj = [](int a, int b, int c) { return a + b + c >= 2 ? 1 : 0; };
        int target = maj(i & 1, j & 1, k & 1) | (maj(i >> 1, j >> 1, k >> 1) << 1);
        if (periodic_median(sq.corner[i], sq.corner[j], sq.corner[k]) != sq.corner[target])
          return false;
      }
  return true;
}

}  // namespace medalg
