#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "medalg/bitmask.hpp"

namespace medalg {

using Element = int;

/// Library-wide error with a stable machine-readable code ("not-median-graph",
/// "axiom-violation", "size-overflow", ...) next to the human message.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& what)
      : std::runtime_error(what), code(std::move(c)) {}
};

enum class Provenance { Hypercube, Chain, Product, Closure, Graph, Table };

std::string to_string(Provenance p);

struct AxiomViolation {
  std::string axiom;               // "M1" | "M2" | "M3" | "closure"
  std::array<Element, 4> witness;  // unused slots = -1
};

struct AxiomReport {
  bool ok = false;
  bool exhaustive = true;  // false => randomized M1/M3, "sampled" verdict
  std::uint64_t samples = 0;
  std::optional<AxiomViolation> violation;
};

namespace detail {

/// Idempotent type-erased memo. Concurrent initializers may race; they compute
/// equal values and the last writer wins, so readers always see a valid value.
class MemoSlot {
public:
  MemoSlot() = default;
  MemoSlot(const MemoSlot&) {}  // caches do not travel with copies
  MemoSlot& operator=(const MemoSlot&) {
    reset();
    return *this;
  }

  void reset() {
    std::lock_guard<std::mutex> lk(mu_);
    value_.reset();
  }

  template <class T, class F>
  const T& get_or_compute(F&& f) const {
    {
      std::lock_guard<std::mutex> lk(mu_);
      if (value_) return *static_cast<const T*>(value_.get());
    }
    auto computed = std::make_shared<const T>(f());
    std::lock_guard<std::mutex> lk(mu_);
    if (!value_) value_ = computed;
    return *static_cast<const T*>(value_.get());
  }

private:
  mutable std::mutex mu_;
  mutable std::shared_ptr<const void> value_;
};

struct AlgebraImpl;

}  // namespace detail

/// Finite median algebra: a carrier 0..n-1 with a verified ternary median.
/// Value type with shared immutable state; copies are cheap and all queries
/// are safe to run concurrently.
///
/// Two backends share this interface: an explicit n^3 table (the oracle,
/// n <= 128) and a coordinatewise rule for subalgebras of products of chains
/// (the fast path, n up to 2^16).
class FiniteMedianAlgebra {
public:
  FiniteMedianAlgebra() = default;

  int size() const;
  Element med(Element a, Element b, Element c) const;
  Element gate(Element u, Element v, Element z) const { return med(u, z, v); }

  Provenance provenance() const;
  /// True when the axiom verdict at construction was randomized (n > 128).
  bool sampled_verified() const;

  /// Coordinate labels per element; empty when the backend is a bare table.
  const std::vector<std::vector<int>>& labels() const;
  /// Chain lengths of the ambient product, empty for table backends.
  const std::vector<int>& factors() const;
  bool has_labels() const { return !labels().empty(); }
  std::string label_string(Element x) const;
  /// Index of a label tuple (labels are kept sorted), or -1.
  Element index_of_label(const std::vector<int>& label) const;

  /// Edge list when provenance == Graph (kept for serialization round trips).
  const std::vector<std::pair<int, int>>& graph_edges() const;

  /// [x,y] = { z : med(x,y,z) = z } as a mask. Cached for small carriers.
  SubsetMask interval_mask(Element x, Element y) const;
  bool between(Element x, Element z, Element y) const { return med(x, y, z) == z; }

  /// All unordered pairs with a two-element interval, each listed once.
  const std::vector<std::pair<Element, Element>>& adjacent_pairs() const;
  /// Neighbours of x in the median graph.
  const std::vector<std::vector<Element>>& adjacency() const;

  /// Structural equality (same carrier, labels and median values).
  friend bool operator==(const FiniteMedianAlgebra& a, const FiniteMedianAlgebra& b);

  // Internal cache hooks for the wall / uniformity layers.
  const detail::MemoSlot& walls_memo() const;
  const detail::MemoSlot& subbase_memo() const;

  explicit FiniteMedianAlgebra(std::shared_ptr<const detail::AlgebraImpl> impl)
      : impl_(std::move(impl)) {}
  const detail::AlgebraImpl& impl() const;

private:
  std::shared_ptr<const detail::AlgebraImpl> impl_;
};

// ---- constructors -----------------------------------------------------------

/// Boolean k-cube with the coordinatewise majority median, 0 <= k <= 16.
FiniteMedianAlgebra make_hypercube(int k);

/// Linearly ordered algebra 0 < 1 < ... < k-1 with the betweenness median.
FiniteMedianAlgebra make_chain(int k);

/// Coordinatewise median on pairs; labels are concatenated.
FiniteMedianAlgebra make_product(const FiniteMedianAlgebra& a, const FiniteMedianAlgebra& b);

/// Star tree: one center, `leaves` leaves. The median of three distinct
/// points is the center.
FiniteMedianAlgebra make_starlet(int leaves);

/// Smallest med-closed subset of `ambient` containing `seeds`, returned as a
/// standalone algebra with inherited labels.
FiniteMedianAlgebra median_closure(const FiniteMedianAlgebra& ambient,
                                   const std::vector<Element>& seeds,
                                   int size_cap = 4096);

/// Wraps an explicit table; throws Error("axiom-violation", ...) with the
/// witnessing triple/quadruple unless M1-M3 hold (exhaustive for n <= 128,
/// randomized above with >= 10^6 samples and a "sampled" verdict).
FiniteMedianAlgebra from_median_table(int n, const std::vector<int>& table);

/// Median graph route: shortest-path intervals of a connected graph must
/// intersect in exactly one point for every triple; that point is the median.
FiniteMedianAlgebra median_graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

// ---- elementary calculus ----------------------------------------------------

struct Interval {
  Element x, y;
  SubsetMask members;
};

Interval interval(const FiniteMedianAlgebra& a, Element x, Element y);

bool is_convex(const FiniteMedianAlgebra& a, const SubsetMask& s);
SubsetMask convex_hull(const FiniteMedianAlgebra& a, const SubsetMask& s);

/// True iff <=_x is total on [x,y]; equivalently the interval is a chain.
bool is_chain_interval(const FiniteMedianAlgebra& a, Element x, Element y);

/// True iff the (med-closed) subset s is totally ordered by <=_e from one of
/// its elements, i.e. the induced algebra is a chain.
bool is_chain_subset(const FiniteMedianAlgebra& a, const SubsetMask& s);

/// med(p,q,r) in {p,q,r} for all triples of the carrier.
bool is_conservative(const FiniteMedianAlgebra& a);

/// The whole carrier is a chain.
bool is_linear(const FiniteMedianAlgebra& a);

/// Induced algebra on a med-closed subset; labels inherited. Throws
/// Error("not-a-subalgebra") when the subset is not closed.
FiniteMedianAlgebra induced_subalgebra(const FiniteMedianAlgebra& a, const SubsetMask& s);

/// Same, but trusts the caller that the subset is closed.
FiniteMedianAlgebra induced_unchecked(const FiniteMedianAlgebra& a, const SubsetMask& s);

// ---- axioms -----------------------------------------------------------------

AxiomReport verify_axioms(const FiniteMedianAlgebra& a);

// ---- automorphisms ----------------------------------------------------------

struct Automorphism {
  std::vector<Element> perm;
  Element operator()(Element x) const { return perm[x]; }
};

/// Complete list of median-preserving permutations, |a| <= 64. The result is
/// a group (closed under composition and inverse).
std::vector<Automorphism> automorphisms(const FiniteMedianAlgebra& a);

bool is_automorphism(const FiniteMedianAlgebra& a, const std::vector<Element>& perm);

/// Exhaustive backtracking isomorphism test with degree pruning (desk scale).
bool is_isomorphic(const FiniteMedianAlgebra& a, const FiniteMedianAlgebra& b);

}  // namespace medalg
