#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "medalg/algebra.hpp"
#include "medalg/bitmask.hpp"

namespace medalg {

/// Complementary pair of nonempty convex halfspaces. side_a is the canonical
/// side (the one containing element 0), which is also the dedup key.
struct Wall {
  SubsetMask side_a;
  SubsetMask side_b;

  bool separates(Element x, Element y) const {
    return side_a.test(x) != side_a.test(y);
  }
  const SubsetMask& side_of(Element x) const { return side_a.test(x) ? side_a : side_b; }
  const SubsetMask& side_against(Element x) const { return side_a.test(x) ? side_b : side_a; }
};

/// Wall with a designated minus side.
struct OrientedWall {
  int wall_index = -1;
  SubsetMask minus;
  SubsetMask plus;
};

struct WallSet {
  std::vector<Wall> walls;
  /// Per-element halfspace indicator over wall indices (bit set = side_b).
  std::vector<SubsetMask> side_bits;

  int count() const { return int(walls.size()); }
  int distance(Element x, Element y) const { return (side_bits[x] ^ side_bits[y]).count(); }
};

/// All walls, generated from adjacent pairs, deduplicated and verified
/// (convex sides, separation of every pair). Cached on the algebra.
const WallSet& walls(const FiniteMedianAlgebra& a);
const WallSet& walls(FiniteMedianAlgebra&&) = delete;  // reference into the cache

std::vector<int> separating_wall_indices(const FiniteMedianAlgebra& a, Element x, Element y);
std::vector<Wall> separating_walls(const FiniteMedianAlgebra& a, Element x, Element y);

bool crossing(const Wall& w1, const Wall& w2);

/// Maximum size of a pairwise-crossing wall family (exact branch-and-bound
/// max clique on the crossing graph). Wall count <= 64.
int rank(const FiniteMedianAlgebra& a);

struct WallFingerprint {
  Element basepoint;
  /// Per element: set of wall indices separating basepoint from it.
  std::vector<SubsetMask> separating;
  bool injective;
};

WallFingerprint wall_fingerprint(const FiniteMedianAlgebra& a, Element x0);

/// Partition of the walls separating x and y (oriented with x on the minus
/// side) into totally ordered classes; a minimum chain cover of the nesting
/// order computed via bipartite matching.
struct DilworthColouring {
  std::vector<OrientedWall> oriented;          // the separating walls
  std::vector<std::vector<int>> classes;       // indices into `oriented`, each nested
};

DilworthColouring dilworth_colouring(const FiniteMedianAlgebra& a, Element x, Element y);

/// Coordinates of interval members in the product of chains C_{|class_i|+1}:
/// coordinate i of z counts the walls in class i whose plus side contains z.
struct IntervalChainEmbedding {
  DilworthColouring colouring;
  std::vector<Element> members;                 // of [x,y]
  std::vector<std::vector<int>> coords;         // per member
  bool injective;
  bool median_preserving;
};

IntervalChainEmbedding interval_chain_embedding(const FiniteMedianAlgebra& a, Element x, Element y);

/// d(x,y) = number of separating walls; the discrete l1 median metric.
std::vector<std::vector<int>> wall_metric(const FiniteMedianAlgebra& a);

/// d(med(x1,y1,z1), med(x2,y2,z2)) <= d(x1,x2)+d(y1,y2)+d(z1,z2).
/// Exhaustive for |a| <= 16, sampled above.
bool lipschitz_median_check(const FiniteMedianAlgebra& a, std::uint64_t samples = 100000);

}  // namespace medalg
