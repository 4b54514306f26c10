#include "medalg/uniformity.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

namespace medalg {

SubsetMask shadow(const FiniteMedianAlgebra& a, Element u, Element v) {
  const int n = a.size();
  SubsetMask s(n);
  for (int x = 0; x < n; ++x)
    if (a.med(u, x, v) == u) s.set(x);
  return s;
}

SubsetMask branch(const FiniteMedianAlgebra& a, Element u, Element v) {
  if (u == v) throw Error("degenerate-pair", "branch of a degenerate pair is empty");
  return shadow(a, u, v).complement();
}

Cover subbasic_cover(const FiniteMedianAlgebra& a, Element u, Element v) {
  if (u == v) throw Error("degenerate-pair", "subbasic cover needs distinct endpoints");
  if (!is_chain_interval(a, u, v))
    throw Error("not-a-chain-interval", "subbasic covers come from chain intervals only");
  return Cover(a.size(), {branch(a, v, u), branch(a, u, v)});
}

const ChainStructure& chain_structure(const FiniteMedianAlgebra& a) {
  return a.subbase_memo().get_or_compute<ChainStructure>([&] {
    const int n = a.size();
    ChainStructure cs{{}, UniformSubbase(n), UniformSubbase(n)};
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (!is_chain_interval(a, u, v)) continue;
        cs.chain_pairs.emplace_back(u, v);
        Cover c = subbasic_cover(a, u, v);
        bool adjacent = a.interval_mask(u, v).count() == 2;
        if (adjacent) cs.adjacent_subbase.add(c, std::make_pair(u, v));
        cs.subbase.add(std::move(c), std::make_pair(u, v));
      }
    cs.subbase.total_wedge();  // freeze before the structure is shared
    cs.adjacent_subbase.total_wedge();
    return cs;
  });
}

bool is_hausdorff_um(const FiniteMedianAlgebra& a) {
  const int n = a.size();
  if (n == 1) return true;  // trivial uniformity on a point, declared Hausdorff
  const auto& sb = chain_subbase(a);
  if (sb.empty()) return false;
  for (int x = 0; x < n; ++x) {
    SubsetMask inter(n, true);
    for (const auto& c : sb.covers()) inter &= c.star(x);
    if (inter.count() != 1 || !inter.test(x)) return false;
  }
  return true;
}

namespace {

/// Element of (x,y] minimizing |[x,z]|; in a median algebra the minimum is an
/// adjacent neighbour of x inside the interval.
Element step_toward(const FiniteMedianAlgebra& a, Element x, Element y) {
  SubsetMask ival = a.interval_mask(x, y);
  Element best = -1;
  int best_size = a.size() + 1;
  ival.for_each([&](int z) {
    if (z == x) return;
    int s = a.interval_mask(x, z).count();
    if (s < best_size) {
      best_size = s;
      best = z;
    }
  });
  return best;
}

}  // namespace

SeparationCheck t2m_check(const FiniteMedianAlgebra& a) {
  SeparationCheck out{true, {}, std::nullopt};
  const int n = a.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      Element z = step_toward(a, x, y);
      bool ok = z >= 0 && a.interval_mask(x, z).count() == 2 && is_chain_interval(a, x, z);
      if (ok) {
        Element gx = a.gate(x, z, x), gy = a.gate(x, z, y);
        ok = (gx == x && gy == z) || (gx == z && gy == x);
      }
      if (!ok) {
        out.pass = false;
        out.failing_pair = {x, y};
        return out;
      }
      out.witnesses.push_back(SeparationWitness{x, y, x, z});
    }
  return out;
}

SeparationCheck chain_solvable_check(const FiniteMedianAlgebra& a) {
  SeparationCheck out{true, {}, std::nullopt};
  const int n = a.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      Element d = step_toward(a, x, y);
      SubsetMask ival = a.interval_mask(x, y);
      bool ok = d >= 0 && ival.test(x) && ival.test(d) && d != x &&
                a.med(x, x, d) == x &&  // x <=_x d
                is_chain_interval(a, x, d) && a.interval_mask(x, d).count() >= 2;
      if (!ok) {
        out.pass = false;
        out.failing_pair = {x, y};
        return out;
      }
      out.witnesses.push_back(SeparationWitness{x, y, x, d});
    }
  return out;
}

std::optional<SeparationWitness> transform_t2m_witness(const FiniteMedianAlgebra& a,
                                                       const SeparationWitness& w) {
  Element u2 = a.gate(w.u, w.v, w.x);
  Element v2 = a.gate(w.u, w.v, w.y);
  if (!((u2 == w.u && v2 == w.v) || (u2 == w.v && v2 == w.u))) return std::nullopt;
  Element c = a.gate(w.x, w.y, u2);
  Element d = a.gate(w.x, w.y, v2);
  SubsetMask ival = a.interval_mask(w.x, w.y);
  if (c == d || !ival.test(c) || !ival.test(d)) return std::nullopt;
  if (a.med(w.x, c, d) != c) return std::nullopt;  // c <_x d
  if (!is_chain_interval(a, c, d)) return std::nullopt;
  return SeparationWitness{w.x, w.y, c, d};
}

TripleContinuityResult median_uniform_continuity_check(const FiniteMedianAlgebra& a,
                                                       std::uint64_t sample_budget) {
  const auto& sb = chain_subbase(a);
  const int n = a.size();
  const std::uint64_t cube = std::uint64_t(n) * n * n;
  const std::uint64_t per_cover =
      sb.empty() ? 0 : std::max<std::uint64_t>(1000, sample_budget / sb.size());

  for (const auto& cover : sb.covers()) {
    const auto& ms = cover.members();
    auto bits = [&](int e) {
      unsigned b = 0;
      for (std::size_t i = 0; i < ms.size(); ++i)
        if (ms[i].test(e)) b |= 1u << i;
      return b;
    };
    unsigned allowed[8];
    std::fill(std::begin(allowed), std::end(allowed), 3u);

    auto feed = [&](int x, int y, int z) -> bool {
      unsigned bx = bits(x), by = bits(y), bz = bits(z);
      unsigned bm = bits(a.med(x, y, z));
      for (int i = 0; i < 2; ++i) {
        if (!((bx >> i) & 1)) continue;
        for (int j = 0; j < 2; ++j) {
          if (!((by >> j) & 1)) continue;
          for (int k = 0; k < 2; ++k) {
            if (!((bz >> k) & 1)) continue;
            allowed[i + 2 * j + 4 * k] &= bm;
            if (!allowed[i + 2 * j + 4 * k]) return false;
          }
        }
      }
      return true;
    };

    if (cube <= per_cover) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            if (!feed(x, y, z)) return {false, {x, y, z}, cover.to_string()};
    } else {
      std::mt19937_64 rng(0xc0fefe ^ cube);
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (std::uint64_t t = 0; t < per_cover; ++t) {
        int x = pick(rng), y = pick(rng), z = pick(rng);
        if (!feed(x, y, z)) return {false, {x, y, z}, cover.to_string()};
      }
    }
  }
  return {true, {-1, -1, -1}, ""};
}

std::vector<Cover> gate_pullback_two_ray_covers(const FiniteMedianAlgebra& a, Element u, Element v) {
  const int n = a.size();
  auto ival = a.interval_mask(u, v).to_vector();
  std::sort(ival.begin(), ival.end(),
            [&](int p, int q) { return p != q && a.med(u, p, q) == p; });  // <=_u

  std::vector<int> gate_of(n);
  for (int z = 0; z < n; ++z) gate_of[z] = a.gate(u, v, z);

  std::vector<Cover> out;
  const int k = int(ival.size());
  for (int ci = 0; ci < k; ++ci)
    for (int di = ci + 1; di < k; ++di) {
      Element c = ival[ci], d = ival[di];
      SubsetMask below_d(n), above_c(n);
      for (int z = 0; z < n; ++z) {
        Element p = gate_of[z];
        if (p != d && a.med(u, p, d) == p) below_d.set(z);  // p <_u d
        if (p != c && a.med(u, c, p) == c) above_c.set(z);  // c <_u p
      }
      // Ray preimages are branches of the cut pairs.
      if (below_d != branch(a, d, u) || above_c != branch(a, c, v))
        throw Error("internal-consistency", "ray preimage does not match its branch");
      out.emplace_back(n, std::vector<SubsetMask>{below_d, above_c});
    }
  return out;
}

bool preimage_ray_check(const FiniteMedianAlgebra& a) {
  const auto& cs = chain_structure(a);
  const int n = a.size();
  for (auto [u, v] : cs.chain_pairs) {
    auto ival = a.interval_mask(u, v).to_vector();
    for (Element d : ival) {
      // gate^{-1}(strictly below d) vs {z : med(d,z,u) != d}
      SubsetMask lhs(n), rhs(n);
      for (int z = 0; z < n; ++z) {
        Element p = a.gate(u, v, z);
        if (p != d && a.med(u, p, d) == p) lhs.set(z);
        if (a.med(d, z, u) != d) rhs.set(z);
      }
      if (lhs != rhs) return false;
    }
    for (Element c : ival) {
      SubsetMask lhs(n), rhs(n);
      for (int z = 0; z < n; ++z) {
        Element p = a.gate(u, v, z);
        if (p != c && a.med(u, c, p) == c) lhs.set(z);
        if (a.med(c, z, v) != c) rhs.set(z);
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

bool initial_uniformity_check(const FiniteMedianAlgebra& a) {
  const auto& cs = chain_structure(a);
  UniformSubbase pullbacks(a.size());
  for (auto [u, v] : cs.chain_pairs)
    for (auto& c : gate_pullback_two_ray_covers(a, u, v)) pullbacks.add(std::move(c));
  return same_filter(cs.subbase, pullbacks);
}

ProductUniformityResult product_uniformity_check(const FiniteMedianAlgebra& a,
                                                 const FiniteMedianAlgebra& b) {
  FiniteMedianAlgebra p = make_product(a, b);
  const int nb = b.size(), np = p.size();
  auto split = [&](int e) { return std::pair<int, int>{e / nb, e % nb}; };

  ProductUniformityResult res{true, true};

  // Clause 1: product interval is a chain iff at most one coordinate interval
  // is non-singleton and that one is a chain.
  for (int x = 0; x < np && res.chain_clause; ++x)
    for (int y = x + 1; y < np && res.chain_clause; ++y) {
      auto [xa, xb] = split(x);
      auto [ya, yb] = split(y);
      int ia = a.interval_mask(xa, ya).count();
      int ib = b.interval_mask(xb, yb).count();
      bool expect;
      if (ia > 1 && ib > 1)
        expect = false;
      else if (ia > 1)
        expect = is_chain_interval(a, xa, ya);
      else if (ib > 1)
        expect = is_chain_interval(b, xb, yb);
      else
        expect = true;
      if (is_chain_interval(p, x, y) != expect) res.chain_clause = false;
    }

  // Clause 2: the intrinsic filter of the product equals the product filter
  // generated by projection pullbacks of the factor subbases.
  UniformSubbase pulled(np);
  for (const auto& c : chain_subbase(a).covers()) {
    std::vector<SubsetMask> ms;
    for (const auto& m : c.members()) {
      SubsetMask big(np);
      for (int e = 0; e < np; ++e)
        if (m.test(split(e).first)) big.set(e);
      ms.push_back(std::move(big));
    }
    pulled.add(Cover(np, std::move(ms)));
  }
  for (const auto& c : chain_subbase(b).covers()) {
    std::vector<SubsetMask> ms;
    for (const auto& m : c.members()) {
      SubsetMask big(np);
      for (int e = 0; e < np; ++e)
        if (m.test(split(e).second)) big.set(e);
      ms.push_back(std::move(big));
    }
    pulled.add(Cover(np, std::move(ms)));
  }
  res.filter_clause = same_filter(chain_subbase(p), pulled);
  return res;
}

bool convex_restriction_check(const FiniteMedianAlgebra& a, const SubsetMask& c) {
  if (c.empty()) throw Error("not-convex", "restriction needs a nonempty convex subset");
  if (!is_convex(a, c)) throw Error("not-convex", "restriction subset fails convexity");

  FiniteMedianAlgebra sub = induced_unchecked(a, c);
  const int m = sub.size();
  auto elems = c.to_vector();
  std::vector<int> pos(a.size(), -1);
  for (int i = 0; i < m; ++i) pos[elems[i]] = i;

  UniformSubbase trace(m);
  for (const auto& cov : chain_subbase(a).covers()) {
    std::vector<SubsetMask> ms;
    for (const auto& mem : cov.members()) {
      SubsetMask t(m);
      for (int i = 0; i < m; ++i)
        if (mem.test(elems[i])) t.set(i);
      ms.push_back(std::move(t));
    }
    trace.add(Cover(m, std::move(ms)));
  }
  return same_filter(chain_subbase(sub), trace);
}

bool equivariance_check(const FiniteMedianAlgebra& a, const Automorphism& g) {
  const auto& cs = chain_structure(a);
  const int n = a.size();

  std::unordered_set<Cover, CoverHash> cover_set(cs.subbase.covers().begin(),
                                                 cs.subbase.covers().end());
  for (auto [u, v] : cs.chain_pairs) {
    if (!is_chain_interval(a, g(u), g(v))) return false;
    SubsetMask b = branch(a, u, v);
    SubsetMask image(n);
    b.for_each([&](int x) { image.set(g(x)); });
    if (image != branch(a, g(u), g(v))) return false;

    SubsetMask b2 = branch(a, v, u);
    SubsetMask image2(n);
    b2.for_each([&](int x) { image2.set(g(x)); });
    if (cover_set.find(Cover(n, {image, image2})) == cover_set.end()) return false;
  }
  return true;
}

bool branch_equivalence_check(const FiniteMedianAlgebra& a) {
  const auto& cs = chain_structure(a);
  for (auto [x, y] : cs.chain_pairs) {
    SubsetMask ival = a.interval_mask(x, y);
    SubsetMask bxy = branch(a, y, x);  // complement of the shadow at y
    SubsetMask byx = branch(a, x, y);
    bool ok = true;
    ival.for_each([&](int z) {
      if (!ok) return;
      if (z != y && branch(a, y, z) != bxy) ok = false;
      if (z != x && branch(a, x, z) != byx) ok = false;
    });
    if (!ok) return false;
  }
  // Adjacent pairs already generate the whole intrinsic filter.
  return same_filter(cs.subbase, cs.adjacent_subbase);
}

bool subbasic_star_check(const FiniteMedianAlgebra& a) {
  const auto& cs = chain_structure(a);
  const int n = a.size();
  SubsetMask full(n, true);
  for (auto [u, v] : cs.chain_pairs) {
    Cover cov = subbasic_cover(a, u, v);
    SubsetMask bu = branch(a, v, u);  // star target when the gate lands on u
    SubsetMask bv = branch(a, u, v);
    for (int x = 0; x < n; ++x) {
      SubsetMask st = cov.star(x);
      Element g = a.gate(u, v, x);
      const SubsetMask& expect = (g == u) ? bu : (g == v) ? bv : full;
      if (st != expect) return false;
    }
    if (cov.is_partition() != (a.interval_mask(u, v).count() == 2)) return false;
  }
  return true;
}

bool hom_image_chain_check(const FiniteMedianAlgebra& a) {
  const auto& cs = chain_structure(a);
  const int n = a.size();

  std::vector<std::pair<int, int>> gate_pairs;
  if (n <= 24) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) gate_pairs.emplace_back(u, v);
  } else {
    std::mt19937_64 rng(0x9a7e ^ std::uint64_t(n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 300; ++t) {
      int u = pick(rng), v = pick(rng);
      if (u != v) gate_pairs.emplace_back(u, v);
    }
  }

  for (auto [u, v] : gate_pairs)
    for (auto [x, y] : cs.chain_pairs) {
      SubsetMask image(n);
      a.interval_mask(x, y).for_each([&](int z) { image.set(a.gate(u, v, z)); });
      if (!is_chain_subset(a, image)) return false;
    }
  return true;
}

bool gate_composition_check(const FiniteMedianAlgebra& a, std::uint64_t sample_budget) {
  const int n = a.size();

  auto clause1 = [&](int u, int v, int x, int y, int z) {
    int c = a.gate(u, v, x), d = a.gate(u, v, y);
    return a.gate(u, v, a.gate(x, y, z)) == a.gate(c, d, z);
  };

  if (std::uint64_t(n) * n * n * n * n <= sample_budget * 4) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
              if (!clause1(u, v, x, y, z)) return false;
  } else {
    std::mt19937_64 rng(0x6a7e5 ^ std::uint64_t(n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::uint64_t t = 0; t < sample_budget; ++t)
      if (!clause1(pick(rng), pick(rng), pick(rng), pick(rng), pick(rng))) return false;
  }

  // Clause 2: mutually gated intervals are isomorphic via the two gates.
  auto clause2 = [&](int u, int v, int x, int y) {
    if (a.gate(x, y, u) != x || a.gate(x, y, v) != y) return true;  // hypothesis empty
    int c = a.gate(u, v, x), d = a.gate(u, v, y);
    auto xy = a.interval_mask(x, y).to_vector();
    SubsetMask cd = a.interval_mask(c, d);
    for (int t : xy) {
      int ft = a.gate(u, v, t);
      if (!cd.test(ft) || a.gate(x, y, ft) != t) return false;
    }
    for (int s : cd.to_vector()) {
      int hs = a.gate(x, y, s);
      if (a.gate(u, v, hs) != s) return false;
    }
    for (std::size_t i = 0; i < xy.size(); ++i)
      for (std::size_t j = i; j < xy.size(); ++j)
        for (std::size_t k = j; k < xy.size(); ++k) {
          int m = a.med(xy[i], xy[j], xy[k]);
          if (a.gate(u, v, m) !=
              a.med(a.gate(u, v, xy[i]), a.gate(u, v, xy[j]), a.gate(u, v, xy[k])))
            return false;
        }
    return true;
  };

  if (n <= 12) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if (!clause2(u, v, x, y)) return false;
  } else {
    std::mt19937_64 rng(0x15a6e ^ std::uint64_t(n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 4000; ++t)
      if (!clause2(pick(rng), pick(rng), pick(rng), pick(rng))) return false;
  }
  return true;
}

}  // namespace medalg
