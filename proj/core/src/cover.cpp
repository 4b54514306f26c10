#include "medalg/cover.hpp"

#include <algorithm>

namespace medalg {

namespace {

/// Canonical form: drop empties and members contained in other members,
/// dedup, sort. Keeps exactly the maximal members.
std::vector<SubsetMask> canonicalize(int n, std::vector<SubsetMask> ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<SubsetMask> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i].empty()) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < ms.size() && !dominated; ++j)
      if (i != j && ms[i].is_subset_of(ms[j]) && ms[i] != ms[j]) dominated = true;
    if (!dominated) out.push_back(ms[i]);
  }
  std::sort(out.begin(), out.end());

  SubsetMask uni(n);
  for (const auto& m : out) uni |= m;
  if (!uni.full()) throw Error("not-a-cover", "members do not cover the carrier");
  return out;
}

}  // namespace

Cover::Cover(int carrier, std::vector<SubsetMask> members)
    : n_(carrier), members_(canonicalize(carrier, std::move(members))) {
  for (const auto& m : members_)
    if (m.universe_size() != n_) throw Error("carrier-mismatch", "cover member universe differs");
}

Cover Cover::singleton_partition(int carrier) {
  std::vector<SubsetMask> ms;
  ms.reserve(carrier);
  for (int i = 0; i < carrier; ++i) ms.push_back(SubsetMask::singleton(carrier, i));
  return Cover(carrier, std::move(ms));
}

bool Cover::is_partition() const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j)
      if (members_[i].intersects(members_[j])) return false;
  return true;
}

SubsetMask Cover::star(Element x) const {
  SubsetMask s(n_);
  for (const auto& m : members_)
    if (m.test(x)) s |= m;
  return s;
}

SubsetMask Cover::star_of(const SubsetMask& c) const {
  SubsetMask s(n_);
  for (const auto& m : members_)
    if (m.intersects(c)) s |= m;
  return s;
}

Cover Cover::star_cover() const {
  std::vector<SubsetMask> ms;
  ms.reserve(members_.size());
  for (const auto& m : members_) ms.push_back(star_of(m));
  return Cover(n_, std::move(ms));
}

std::size_t Cover::hash() const {
  std::size_t h = 0x51ab9ull ^ std::size_t(n_);
  for (const auto& m : members_) h = h * 1099511628211ull + m.hash();
  return h;
}

std::string Cover::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ", ";
    s += members_[i].to_string();
  }
  return s + "}";
}

Cover wedge(const Cover& c1, const Cover& c2) {
  if (c1.carrier_size() != c2.carrier_size())
    throw Error("carrier-mismatch", "wedge of covers over different carriers");
  std::vector<SubsetMask> ms;
  ms.reserve(c1.members().size() * c2.members().size());
  for (const auto& m1 : c1.members())
    for (const auto& m2 : c2.members()) ms.push_back(m1 & m2);
  return Cover(c1.carrier_size(), std::move(ms));
}

bool refines(const Cover& c1, const Cover& c2) {
  if (c1.carrier_size() != c2.carrier_size())
    throw Error("carrier-mismatch", "refinement over different carriers");
  for (const auto& m : c1.members()) {
    bool inside = false;
    for (const auto& big : c2.members())
      if (m.is_subset_of(big)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

bool star_refines(const Cover& c1, const Cover& c2) {
  return refines(c1.star_cover(), c2);
}

void UniformSubbase::add(Cover c, std::optional<std::pair<Element, Element>> tag) {
  if (c.carrier_size() != n_) throw Error("carrier-mismatch", "subbasic cover carrier differs");
  for (std::size_t i = 0; i < covers_.size(); ++i)
    if (covers_[i] == c) {
      if (tag) tags_[i].push_back(*tag);
      return;
    }
  covers_.push_back(std::move(c));
  tags_.emplace_back();
  if (tag) tags_.back().push_back(*tag);
  wedge_slot_.reset();
}

const Cover& UniformSubbase::total_wedge() const {
  return wedge_slot_.get_or_compute<Cover>([&] {
    Cover w = Cover::trivial(n_);
    for (const auto& c : covers_) w = wedge(w, c);
    return w;
  });
}

bool same_filter(const UniformSubbase& a, const UniformSubbase& b) {
  return refines(a.total_wedge(), b.total_wedge()) && refines(b.total_wedge(), a.total_wedge());
}

}  // namespace medalg
