#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medalg/algebra.hpp"
#include "medalg/walls.hpp"

namespace medalg {

/// Choice of one side per wall such that all chosen sides pairwise intersect
/// (an ultrafilter on the halfspace pocset). side_b_chosen bit i set means
/// wall i contributes side_b.
struct Orientation {
  SubsetMask side_b_chosen;     // universe = wall count
  Element principal = -1;       // the vertex realizing it, when one exists
};

struct RollerEmbedding {
  /// Per element: indicator over walls (bit set = element on side_b).
  std::vector<SubsetMask> coordinates;
  bool injective;
  bool median_preserving;  // coordinatewise majority matches med
};

RollerEmbedding roller_embedding(const FiniteMedianAlgebra& a);

/// All consistent orientations, by backtracking with nesting propagation.
/// Wall count <= 40. For a finite algebra every consistent orientation is
/// principal, so the count equals the carrier size.
std::vector<Orientation> consistent_orientations(const FiniteMedianAlgebra& a);

// ---- symbolic compactifications ---------------------------------------------

/// Coordinate of a compactified factor: an integer, or one of the two ends.
struct ExtCoord {
  enum Kind : std::uint8_t { NegInf, Finite, PosInf } kind = Finite;
  long long value = 0;

  static ExtCoord neg_inf() { return {NegInf, 0}; }
  static ExtCoord pos_inf() { return {PosInf, 0}; }
  static ExtCoord fin(long long v) { return {Finite, v}; }

  bool infinite() const { return kind != Finite; }
  friend bool operator==(const ExtCoord& a, const ExtCoord& b) {
    return a.kind == b.kind && (a.kind != Finite || a.value == b.value);
  }
  friend bool operator<(const ExtCoord& a, const ExtCoord& b) {
    if (a.kind != b.kind) return a.kind < b.kind;  // NegInf < Finite < PosInf
    return a.kind == Finite && a.value < b.value;
  }
  std::string to_string() const;
};

using ExtPoint = std::vector<ExtCoord>;

struct SymbolicFactor {
  enum Kind { FiniteChain, IntegerLine } kind = IntegerLine;
  int chain_length = 0;  // for FiniteChain
};

/// Compactified product of integer lines and finite chains, or the hardcoded
/// starlet compactification (center, leaves, and the leaf-limit point).
class SymbolicCompactification {
public:
  static SymbolicCompactification product(std::vector<SymbolicFactor> factors);
  static SymbolicCompactification starlet(int leaves);

  bool is_starlet() const { return leaves_ > 0; }
  int starlet_leaves() const { return leaves_; }
  const std::vector<SymbolicFactor>& factors() const { return factors_; }

  // Product queries.
  bool contains(const ExtPoint& p) const;
  bool is_boundary(const ExtPoint& p) const;
  ExtPoint med(const ExtPoint& p, const ExtPoint& q, const ExtPoint& r) const;

  // Starlet queries; points are 0 = center, 1..n = leaves, n+1 = leaf limit.
  int starlet_point_count() const { return leaves_ + 2; }
  bool starlet_is_boundary(int p) const { return p == leaves_ + 1; }
  int starlet_med(int p, int q, int r) const;

  /// Human-readable boundary summary, e.g. "{-inf, +inf} (2 ends)".
  std::string boundary_description() const;

private:
  std::vector<SymbolicFactor> factors_;
  int leaves_ = 0;
};

/// Parses "zline", "chain:k", "starlet:n", products with "x" and powers with
/// "^" (e.g. "zline^2", "zline x chain:3").
SymbolicCompactification parse_symbolic_spec(const std::string& spec);

/// Sampled axiom check for the symbolic median (M1/M2 on triples, M3 on
/// quadruples of random compactified points).
bool symbolic_axiom_check(const SymbolicCompactification& s, std::uint64_t samples = 100000);

/// Truncates every integer-line factor to [-r, r] and checks: the truncation
/// embeds convexly in the (r+1)-truncation, every wall of the truncation is
/// the trace of a unique wall one level up with matching side indicators,
/// and boundary points induce the orientation of their nearest corner on
/// both levels consistently.
bool truncation_consistency(const std::vector<SymbolicFactor>& factors, int r);

}  // namespace medalg
