#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "medalg/algebra.hpp"
#include "medalg/cover.hpp"

namespace medalg {

/// Shadow of u with light source v: { x : med(u,x,v) = u }, the gate fiber
/// over u. shadow(a,u,u) is the whole carrier.
SubsetMask shadow(const FiniteMedianAlgebra& a, Element u, Element v);

/// Complement of the shadow. Throws Error("degenerate-pair") when u == v.
SubsetMask branch(const FiniteMedianAlgebra& a, Element u, Element v);

/// Two-member cover { branch(v,u), branch(u,v) } of a nontrivial chain
/// interval [u,v]. Throws Error("not-a-chain-interval") otherwise.
Cover subbasic_cover(const FiniteMedianAlgebra& a, Element u, Element v);

/// Per-algebra chain structure: every unordered pair with a nontrivial chain
/// interval, the deduplicated subbasic covers they generate, and the
/// adjacent-pairs-only subbase. Cached on the algebra.
struct ChainStructure {
  std::vector<std::pair<Element, Element>> chain_pairs;
  UniformSubbase subbase;           // all chain pairs
  UniformSubbase adjacent_subbase;  // adjacent pairs only
};

const ChainStructure& chain_structure(const FiniteMedianAlgebra& a);
const ChainStructure& chain_structure(FiniteMedianAlgebra&&) = delete;

inline const UniformSubbase& chain_subbase(const FiniteMedianAlgebra& a) {
  return chain_structure(a).subbase;
}
const UniformSubbase& chain_subbase(FiniteMedianAlgebra&&) = delete;

/// Intersection over all subbasic covers of St(x, cover) is {x} for every x.
bool is_hausdorff_um(const FiniteMedianAlgebra& a);

/// Witness for a separated pair: the chain interval [u,v] with
/// {gate(u,v,x), gate(u,v,y)} = {u,v}.
struct SeparationWitness {
  Element x, y;
  Element u, v;
};

struct SeparationCheck {
  bool pass;
  std::vector<SeparationWitness> witnesses;  // one per unordered pair x<y
  std::optional<std::pair<Element, Element>> failing_pair;
};

/// For each pair x != y, finds and re-verifies a chain interval whose gate
/// retraction separates the pair onto its endpoints.
SeparationCheck t2m_check(const FiniteMedianAlgebra& a);

/// For each pair x != y, finds c,d in [x,y] with c <_x d and [c,d] a
/// nontrivial chain; witnesses are re-verified.
SeparationCheck chain_solvable_check(const FiniteMedianAlgebra& a);

/// Turns a verified t2m witness into a chain-solvability witness by gating
/// the witness chain back into [x,y]; returns it re-verified or nullopt.
std::optional<SeparationWitness> transform_t2m_witness(const FiniteMedianAlgebra& a,
                                                       const SeparationWitness& w);

/// Every product member of cover^3 maps under med into a single member.
/// Exhaustive on small carriers, sampled above (samples per cover).
struct TripleContinuityResult {
  bool pass;
  std::array<Element, 3> witness;  // when !pass
  std::string cover;
};
TripleContinuityResult median_uniform_continuity_check(const FiniteMedianAlgebra& a,
                                                       std::uint64_t sample_budget = 1000000);

/// Pullbacks of the two-ray covers of [u,v] along gate(u,v,.), with the ray
/// preimage identities verified pointwise against branch masks.
std::vector<Cover> gate_pullback_two_ray_covers(const FiniteMedianAlgebra& a, Element u, Element v);

/// The chain-cover filter equals the filter of gate pullbacks of interval
/// two-ray covers (mutual refinement of the two total wedges).
bool initial_uniformity_check(const FiniteMedianAlgebra& a);

/// Both clauses of the product law: a product interval is a chain iff at
/// most one coordinate interval is non-singleton, and the product subbase
/// generates the same filter as the pullbacks of the factor subbases.
struct ProductUniformityResult {
  bool chain_clause;
  bool filter_clause;
  bool pass() const { return chain_clause && filter_clause; }
};
ProductUniformityResult product_uniformity_check(const FiniteMedianAlgebra& a,
                                                 const FiniteMedianAlgebra& b);

/// The intrinsic subbase of the algebra induced on convex C generates the
/// trace filter of the ambient subbase on C.
bool convex_restriction_check(const FiniteMedianAlgebra& a, const SubsetMask& c);

/// g(branch(u,v)) = branch(g(u),g(v)) for every chain pair; consequently g
/// permutes the subbasic covers.
bool equivariance_check(const FiniteMedianAlgebra& a, const Automorphism& g);

/// Branch equality along a chain: for chain [x,y] and z in [x,y),
/// branch(y,x) == branch(y,z); symmetrically on the other side.
bool branch_equivalence_check(const FiniteMedianAlgebra& a);

/// Star trichotomy: St(x, cover of [u,v]) is one of the two branches or the
/// whole carrier according to gate(u,v,x); the cover is a partition iff the
/// pair is adjacent.
bool subbasic_star_check(const FiniteMedianAlgebra& a);

/// Ray preimage identities for every chain interval and every cut.
bool preimage_ray_check(const FiniteMedianAlgebra& a);

/// Images of chain intervals under gate retractions are chains.
bool hom_image_chain_check(const FiniteMedianAlgebra& a);

/// Gate composition laws: composition collapses to the gate onto the gated
/// image interval, and the induced maps between mutually gated intervals are
/// inverse median isomorphisms.
bool gate_composition_check(const FiniteMedianAlgebra& a, std::uint64_t sample_budget = 200000);

}  // namespace medalg
