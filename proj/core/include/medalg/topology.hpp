#pragma once

#include <optional>
#include <vector>

#include "medalg/algebra.hpp"
#include "medalg/bitmask.hpp"

namespace medalg {

/// Finite topology as the map x -> minimal open neighbourhood (intersection
/// of all subbasic opens containing x). Opens are exactly the unions of
/// minimal neighbourhoods; equality of topologies is equality of the maps.
class FiniteTopology {
public:
  FiniteTopology() = default;
  /// From an open subbase; an empty subbase yields the indiscrete topology.
  FiniteTopology(int carrier, const std::vector<SubsetMask>& subbase);

  int carrier_size() const { return int(min_nbhd_.size()); }
  const SubsetMask& min_nbhd(Element x) const { return min_nbhd_[x]; }
  bool is_open(const SubsetMask& s) const;
  bool discrete() const;
  bool indiscrete() const;

  friend bool operator==(const FiniteTopology& a, const FiniteTopology& b) {
    return a.min_nbhd_ == b.min_nbhd_;
  }
  friend bool operator!=(const FiniteTopology& a, const FiniteTopology& b) { return !(a == b); }

private:
  std::vector<SubsetMask> min_nbhd_;
};

/// Intrinsic topology: subbase = all branches over nontrivial chain pairs.
FiniteTopology tau_m(const FiniteMedianAlgebra& a);

/// Subbase = all halfspaces (wall sides).
FiniteTopology halfspace_topology(const FiniteMedianAlgebra& a);

/// Initial topology of the gate retractions onto intervals carrying their own
/// intrinsic topology. With all_intervals=false only chain intervals are
/// targets.
FiniteTopology gate_initial_topology(const FiniteMedianAlgebra& a, bool all_intervals);

/// Minimum number of subbasic branches whose intersection is {x}. Exact: the
/// greedy one-branch-per-neighbour cover is matched against the lower bound
/// that a convex branch can exclude at most one neighbour of x; falls back to
/// exhaustive search when the two disagree.
/// Throws Error("not-isolated") when min_nbhd(x) is not a singleton.
int min_isolating_branches(const FiniteMedianAlgebra& a, Element x);

struct GeometricBranchingResult {
  int branches_used;                    // 0 means the whole carrier fits
  std::vector<SubsetMask> star_members; // the chosen branches
  SubsetMask star;                      // their intersection
};

/// Finds a minimal basic star at x inside the open metric ball of radius eps
/// (wall-count metric, strict inequality). Always succeeds on finite
/// algebras; the interesting output is the minimum branch count.
GeometricBranchingResult geometric_branching_check(const FiniteMedianAlgebra& a, Element x, int eps);

}  // namespace medalg
