#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace medalg {

/// Periodic bi-infinite binary sequence, canonicalized to its minimal period.
/// Two sequences are equal iff their minimal patterns are identical (patterns
/// are anchored at position 0; rotations are different sequences).
class PeriodicBiSequence {
public:
  explicit PeriodicBiSequence(std::vector<std::uint8_t> pattern);
  /// From a string of '0'/'1' characters.
  explicit PeriodicBiSequence(const std::string& bits);

  int period() const { return int(pattern_.size()); }
  const std::vector<std::uint8_t>& pattern() const { return pattern_; }
  std::uint8_t at(long long i) const {
    long long p = period();
    long long r = i % p;
    return pattern_[std::size_t(r < 0 ? r + p : r)];
  }
  std::string to_string() const;

  friend bool operator==(const PeriodicBiSequence& a, const PeriodicBiSequence& b) {
    return a.pattern_ == b.pattern_;
  }
  friend bool operator!=(const PeriodicBiSequence& a, const PeriodicBiSequence& b) {
    return !(a == b);
  }
  friend bool operator<(const PeriodicBiSequence& a, const PeriodicBiSequence& b) {
    return a.pattern_ < b.pattern_;
  }

private:
  std::vector<std::uint8_t> pattern_;
};

/// Pointwise majority over the lcm window, re-minimized.
PeriodicBiSequence periodic_median(const PeriodicBiSequence& x, const PeriodicBiSequence& y,
                                   const PeriodicBiSequence& z);

/// z lies in [x,y]: z agrees with x and y at every position where they agree.
bool periodic_interval_member(const PeriodicBiSequence& x, const PeriodicBiSequence& y,
                              const PeriodicBiSequence& z);

/// Four sequences forming a 2-cube inside [x,y]: if x and y differ at two or
/// more residues mod lcm, two of them vary independently; if at exactly one,
/// the period doubles and the two copies vary independently.
struct PeriodicSquare {
  std::array<PeriodicBiSequence, 4> corner;  // z00, z01, z10, z11
};

PeriodicSquare periodic_square_witness(const PeriodicBiSequence& x, const PeriodicBiSequence& y);

/// Re-verifies a square: four distinct members of [x,y] whose pairwise
/// medians realize the 2-cube laws.
bool verify_periodic_square(const PeriodicBiSequence& x, const PeriodicBiSequence& y,
                            const PeriodicSquare& sq);

}  // namespace medalg
