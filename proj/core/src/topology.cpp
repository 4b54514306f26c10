#include "medalg/topology.hpp"

#include <algorithm>
#include <limits>

#include "medalg/uniformity.hpp"
#include "medalg/walls.hpp"

namespace medalg {

FiniteTopology::FiniteTopology(int carrier, const std::vector<SubsetMask>& subbase) {
  min_nbhd_.assign(carrier, SubsetMask(carrier, true));
  for (const auto& s : subbase) {
    if (s.universe_size() != carrier) throw Error("carrier-mismatch", "subbase member universe differs");
    for (int x = 0; x < carrier; ++x)
      if (s.test(x)) min_nbhd_[x] &= s;
  }
}

bool FiniteTopology::is_open(const SubsetMask& s) const {
  bool open = true;
  s.for_each([&](int x) {
    if (!min_nbhd_[x].is_subset_of(s)) open = false;
  });
  return open;
}

bool FiniteTopology::discrete() const {
  for (std::size_t x = 0; x < min_nbhd_.size(); ++x)
    if (min_nbhd_[x].count() != 1) return false;
  return true;
}

bool FiniteTopology::indiscrete() const {
  for (const auto& m : min_nbhd_)
    if (!m.full()) return false;
  return true;
}

namespace {

std::vector<SubsetMask> branch_subbase(const FiniteMedianAlgebra& a) {
  std::vector<SubsetMask> subbase;
  for (auto [u, v] : chain_structure(a).chain_pairs) {
    subbase.push_back(branch(a, u, v));
    subbase.push_back(branch(a, v, u));
  }
  return subbase;
}

}  // namespace

FiniteTopology tau_m(const FiniteMedianAlgebra& a) {
  return FiniteTopology(a.size(), branch_subbase(a));
}

FiniteTopology halfspace_topology(const FiniteMedianAlgebra& a) {
  std::vector<SubsetMask> subbase;
  for (const auto& w : walls(a).walls) {
    subbase.push_back(w.side_a);
    subbase.push_back(w.side_b);
  }
  return FiniteTopology(a.size(), subbase);
}

FiniteTopology gate_initial_topology(const FiniteMedianAlgebra& a, bool all_intervals) {
  const int n = a.size();
  std::vector<SubsetMask> subbase;

  std::vector<std::pair<Element, Element>> targets;
  if (all_intervals) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) targets.emplace_back(u, v);
  } else {
    targets = chain_structure(a).chain_pairs;
  }

  for (auto [u, v] : targets) {
    SubsetMask ival = a.interval_mask(u, v);
    if (ival.count() < 2) continue;
    FiniteMedianAlgebra target = induced_unchecked(a, ival);
    auto elems = ival.to_vector();
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = int(i);

    for (const auto& member : branch_subbase(target)) {
      SubsetMask pulled(n);
      for (int z = 0; z < n; ++z)
        if (member.test(pos[a.gate(u, v, z)])) pulled.set(z);
      subbase.push_back(std::move(pulled));
    }
  }
  return FiniteTopology(n, subbase);
}

namespace {

/// Exact minimum set cover by branch and bound, seeded with a greedy bound.
/// `sets` cover `universe`; returns indices of a minimum subfamily.
std::vector<int> exact_set_cover(const SubsetMask& universe, const std::vector<SubsetMask>& sets) {
  if (universe.empty()) return {};
  const int k = int(sets.size());

  std::vector<int> greedy;
  {
    SubsetMask left = universe;
    while (!left.empty()) {
      int best = -1, best_gain = 0;
      for (int i = 0; i < k; ++i) {
        int gain = (sets[i] & left).count();
        if (gain > best_gain) {
          best_gain = gain;
          best = i;
        }
      }
      if (best < 0) throw Error("internal-consistency", "set cover infeasible");
      greedy.push_back(best);
      left &= sets[best].complement();
    }
  }

  int max_size = 1;
  for (const auto& s : sets) max_size = std::max(max_size, s.count());

  std::vector<int> best = greedy;
  std::vector<int> chosen;
  std::function<void(SubsetMask)> rec = [&](SubsetMask left) {
    if (left.empty()) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    int need = (left.count() + max_size - 1) / max_size;
    if (chosen.size() + need >= best.size()) return;
    // Branch on the uncovered element with the fewest covering sets.
    int pivot = -1, fewest = std::numeric_limits<int>::max();
    left.for_each([&](int e) {
      int c = 0;
      for (int i = 0; i < k; ++i)
        if (sets[i].test(e)) ++c;
      if (c < fewest) {
        fewest = c;
        pivot = e;
      }
    });
    for (int i = 0; i < k; ++i) {
      if (!sets[i].test(pivot)) continue;
      chosen.push_back(i);
      rec(left & sets[i].complement());
      chosen.pop_back();
    }
  };
  rec(universe);
  return best;
}

/// Distinct subbasic branches containing x, paired with what they exclude.
struct CandidateBranches {
  std::vector<SubsetMask> branches;
  std::vector<SubsetMask> excluded;  // complements
};

CandidateBranches candidates_at(const FiniteMedianAlgebra& a, Element x) {
  CandidateBranches out;
  std::vector<SubsetMask> seen;
  for (const auto& b : branch_subbase(a)) {
    if (!b.test(x)) continue;
    if (std::find(seen.begin(), seen.end(), b) != seen.end()) continue;
    seen.push_back(b);
    out.branches.push_back(b);
    out.excluded.push_back(b.complement());
  }
  return out;
}

}  // namespace

int min_isolating_branches(const FiniteMedianAlgebra& a, Element x) {
  const int n = a.size();
  if (n == 1) return 0;
  FiniteTopology t = tau_m(a);
  if (t.min_nbhd(x).count() != 1) throw Error("not-isolated", "element has a non-singleton minimal neighbourhood");

  const auto& nbrs = a.adjacency()[x];
  auto cand = candidates_at(a, x);

  // Convex branches exclude at most one neighbour of x; when that holds the
  // degree is a lower bound, and one branch per neighbour meets it.
  bool bound_valid = true;
  for (const auto& b : cand.branches) {
    int missed = 0;
    for (int v : nbrs)
      if (!b.test(v)) ++missed;
    if (missed > 1) bound_valid = false;
  }
  if (bound_valid) {
    SubsetMask inter(n, true);
    int used = 0;
    for (int v : nbrs) {
      inter &= branch(a, v, x);  // contains x, excludes v
      ++used;
    }
    if (inter.count() == 1 && inter.test(x) && used == int(nbrs.size())) return used;
  }

  auto chosen = exact_set_cover(SubsetMask::singleton(n, x).complement(), cand.excluded);
  return int(chosen.size());
}

GeometricBranchingResult geometric_branching_check(const FiniteMedianAlgebra& a, Element x, int eps) {
  if (eps < 1) throw Error("size-out-of-range", "metric radius must be a positive integer");
  const int n = a.size();
  const auto& ws = walls(a);
  SubsetMask ball(n);
  for (int y = 0; y < n; ++y)
    if (ws.distance(x, y) < eps) ball.set(y);

  GeometricBranchingResult res;
  if (ball.full()) {
    res.branches_used = 0;
    res.star = SubsetMask(n, true);
    return res;
  }

  auto cand = candidates_at(a, x);
  auto chosen = exact_set_cover(ball.complement(), cand.excluded);
  res.branches_used = int(chosen.size());
  res.star = SubsetMask(n, true);
  for (int i : chosen) {
    res.star_members.push_back(cand.branches[i]);
    res.star &= cand.branches[i];
  }
  return res;
}

}  // namespace medalg
