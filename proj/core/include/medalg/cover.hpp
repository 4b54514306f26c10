#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "medalg/algebra.hpp"
#include "medalg/bitmask.hpp"

namespace medalg {

/// Finite cover of a carrier in canonical form: no empty members, no member
/// contained in another, members sorted. Refinement and star semantics are
/// invariant under this normalization.
class Cover {
public:
  Cover() = default;
  Cover(int carrier, std::vector<SubsetMask> members);

  static Cover trivial(int carrier) {
    return Cover(carrier, {SubsetMask(carrier, true)});
  }
  static Cover singleton_partition(int carrier);

  int carrier_size() const { return n_; }
  const std::vector<SubsetMask>& members() const { return members_; }
  bool is_partition() const;

  /// St(x, cover) = union of the members containing x.
  SubsetMask star(Element x) const;
  /// St(C, cover) = union of the members meeting C.
  SubsetMask star_of(const SubsetMask& c) const;
  /// The cover { St(M, cover) : M member }.
  Cover star_cover() const;

  friend bool operator==(const Cover& a, const Cover& b) {
    return a.n_ == b.n_ && a.members_ == b.members_;
  }
  friend bool operator!=(const Cover& a, const Cover& b) { return !(a == b); }
  friend bool operator<(const Cover& a, const Cover& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.members_ < b.members_;
  }

  std::size_t hash() const;
  std::string to_string() const;

private:
  int n_ = 0;
  std::vector<SubsetMask> members_;
};

struct CoverHash {
  std::size_t operator()(const Cover& c) const { return c.hash(); }
};

/// Pairwise intersections, renormalized.
Cover wedge(const Cover& c1, const Cover& c2);

/// Every member of c1 lies inside some member of c2.
bool refines(const Cover& c1, const Cover& c2);

/// The member-star cover of c1 refines c2.
bool star_refines(const Cover& c1, const Cover& c2);

/// Subbase of a covering uniformity: a list of covers whose finite wedges
/// form a base. On a finite carrier the single total wedge is the finest
/// base element, so filter membership reduces to one refinement test.
class UniformSubbase {
public:
  explicit UniformSubbase(int carrier) : n_(carrier) {}

  int carrier_size() const { return n_; }

  /// Adds a cover; duplicates (as covers) are merged, tags accumulate.
  void add(Cover c, std::optional<std::pair<Element, Element>> tag = std::nullopt);

  const std::vector<Cover>& covers() const { return covers_; }
  /// Generating chain-interval pairs per cover (may be empty for ad-hoc covers).
  const std::vector<std::vector<std::pair<Element, Element>>>& tags() const { return tags_; }

  /// Wedge of all subbasic covers; {X} when the subbase is empty.
  const Cover& total_wedge() const;

  /// True iff the total wedge refines c; monotone under adding covers.
  bool contains(const Cover& c) const { return refines(total_wedge(), c); }

  bool empty() const { return covers_.empty(); }
  std::size_t size() const { return covers_.size(); }

private:
  int n_;
  std::vector<Cover> covers_;
  std::vector<std::vector<std::pair<Element, Element>>> tags_;
  detail::MemoSlot wedge_slot_;  // idempotent, safe under concurrent readers
};

/// Filter equality on a finite carrier: mutual refinement of total wedges.
bool same_filter(const UniformSubbase& a, const UniformSubbase& b);

}  // namespace medalg
