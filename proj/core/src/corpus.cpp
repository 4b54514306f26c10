#include <algorithm>
#include <cstdlib>
#include <random>
#include <thread>

#include "medalg/harness.hpp"

namespace medalg {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string pad3(int i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%03d", i);
  return buf;
}

}  // namespace

int worker_threads() {
  if (const char* env = std::getenv("MEDALG_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 4;
}

FiniteMedianAlgebra random_subalgebra(const CorpusSpec& spec, const FiniteMedianAlgebra& ambient,
                                      int seed_count, std::uint64_t index) {
  if (seed_count < 1) throw Error("size-out-of-range", "need at least one closure seed");
  for (int attempt = 0; attempt < spec.closure_retries; ++attempt) {
    std::mt19937_64 rng(splitmix(spec.seed ^ splitmix(index * 2 + 1) ^ (std::uint64_t(attempt) << 48)));
    std::uniform_int_distribution<int> pick(0, ambient.size() - 1);
    std::vector<Element> seeds;
    for (int i = 0; i < seed_count; ++i) seeds.push_back(pick(rng));
    try {
      return median_closure(ambient, seeds, spec.instance_cap);
    } catch (const Error& e) {
      if (e.code != "size-overflow") throw;
    }
  }
  throw Error("retry-exhaustion", "closure repeatedly exceeded the instance cap");
}

std::vector<FiniteMedianAlgebra> enumerate_subalgebras(const FiniteMedianAlgebra& ambient) {
  const int n = ambient.size();
  if (n > 10) throw Error("size-overflow", "exhaustive subalgebra scan limited to 10 elements");
  std::vector<FiniteMedianAlgebra> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) elems.push_back(i);
    bool closed = true;
    for (std::size_t i = 0; i < elems.size() && closed; ++i)
      for (std::size_t j = i; j < elems.size() && closed; ++j)
        for (std::size_t k = j; k < elems.size() && closed; ++k)
          if (!((mask >> ambient.med(elems[i], elems[j], elems[k])) & 1)) closed = false;
    if (!closed) continue;
    SubsetMask s(n);
    for (int e : elems) s.set(e);
    out.push_back(induced_unchecked(ambient, s));
  }
  return out;
}

std::vector<Wall> brute_force_walls(const FiniteMedianAlgebra& a) {
  const int n = a.size();
  if (n > 20) throw Error("size-overflow", "brute-force wall scan limited to 20 elements");
  std::vector<Wall> out;
  // Canonical side contains element 0; scan masks with bit 0 set.
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); mask += 2) {
    if (mask + 1 == (std::uint64_t(1) << n)) continue;  // full carrier
    SubsetMask side(n);
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) side.set(i);
    SubsetMask co = side.complement();
    if (co.empty()) continue;
    if (is_convex(a, side) && is_convex(a, co)) out.push_back(Wall{side, co});
  }
  return out;
}

namespace {

/// Exhaustive search for a median embedding of the Boolean k-cube.
bool cube_embeds(const FiniteMedianAlgebra& a, int k) {
  const int n = a.size();
  const int cube = 1 << k;
  if (cube > n) return false;
  if (k == 0) return n >= 1;

  auto cube_med = [](int p, int q, int r) { return (p & q) | (q & r) | (p & r); };

  std::vector<int> f(cube, -1);
  std::vector<bool> used(n, false);

  std::function<bool(int)> rec = [&](int t) -> bool {
    if (t == cube) {
      for (int p = 0; p < cube; ++p)
        for (int q = p; q < cube; ++q)
          for (int r = q; r < cube; ++r)
            if (a.med(f[p], f[q], f[r]) != f[cube_med(p, q, r)]) return false;
      return true;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w]) continue;
      f[t] = w;
      bool ok = true;
      for (int p = 0; p < t && ok; ++p)
        for (int q = p; q <= t && ok; ++q) {
          int m = cube_med(p, q, t);
          if (m <= t && a.med(f[p], f[q], w) != f[m]) ok = false;
        }
      if (ok) {
        used[w] = true;
        if (rec(t + 1)) return true;
        used[w] = false;
      }
      f[t] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

int rank_by_cube_embedding(const FiniteMedianAlgebra& a) {
  const int n = a.size();
  if (n > 16) throw Error("size-overflow", "embedding oracle limited to 16 elements");
  if (n <= 1) return 0;
  int best = 0;
  for (int k = 1; (1 << k) <= n; ++k) {
    if (cube_embeds(a, k))
      best = k;
    else
      break;  // cube(k) fails => cube(k+1) fails
  }
  return best;
}

std::vector<CorpusInstance> build_default_corpus(const CorpusSpec& spec) {
  std::vector<CorpusInstance> corpus;
  auto add = [&](std::string id, FiniteMedianAlgebra alg) {
    corpus.push_back(CorpusInstance{std::move(id), std::move(alg), std::nullopt});
  };

  // Fixed shapes: chains, cubes, grids.
  for (int k = 2; k <= 8; ++k) add("chain-" + std::to_string(k), make_chain(k));
  for (int k = 1; k <= 5; ++k) add("cube-" + std::to_string(k), make_hypercube(k));
  add("grid-3x3", make_product(make_chain(3), make_chain(3)));
  add("grid-3x3x3", make_product(make_product(make_chain(3), make_chain(3)), make_chain(3)));
  for (int k = spec.starlet_min; k <= spec.starlet_max; ++k)
    add("starlet-" + std::to_string(k), make_starlet(k));

  // Every subalgebra of the 3-cube.
  {
    auto subs = enumerate_subalgebras(make_hypercube(3));
    for (std::size_t i = 0; i < subs.size(); ++i)
      add("cube3-sub-" + pad3(int(i)), subs[i]);
  }

  // Random closures in the two ambient shapes.
  {
    FiniteMedianAlgebra cube5 = make_hypercube(5);
    for (int i = 0; i < spec.cube5_closures; ++i) {
      int seeds = 2 + int(splitmix(spec.seed ^ (0xc5u + i)) % 4);  // 2..5
      add("closure5-" + pad3(i), random_subalgebra(spec, cube5, seeds, 1000 + i));
    }
    FiniteMedianAlgebra c333 = make_product(make_product(make_chain(3), make_chain(3)), make_chain(3));
    for (int i = 0; i < spec.c333_closures; ++i) {
      int seeds = 2 + int(splitmix(spec.seed ^ (0x333u + i)) % 4);
      add("closure333-" + pad3(i), random_subalgebra(spec, c333, seeds, 2000 + i));
    }
  }

  // Random trees through the graph route.
  for (int i = 0; i < spec.tree_count; ++i) {
    std::mt19937_64 rng(splitmix(spec.seed ^ splitmix(3000 + i)));
    int nodes = 2 + int(rng() % 23);  // 2..24
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < nodes; ++v) edges.emplace_back(int(rng() % std::uint64_t(v)), v);
    add("tree-" + pad3(i), median_graph_from_edges(nodes, edges));
  }

  // Products of random pairs drawn from what we have so far.
  {
    const std::size_t pool = corpus.size();
    int made = 0;
    std::mt19937_64 rng(splitmix(spec.seed ^ 0x9a0du));
    int guard = 0;
    while (made < spec.product_count && guard++ < spec.product_count * 50) {
      const auto& a = corpus[rng() % pool];
      const auto& b = corpus[rng() % pool];
      long long total = (long long)a.algebra.size() * b.algebra.size();
      if (a.algebra.size() < 2 || b.algebra.size() < 2 || total > spec.instance_cap) continue;
      CorpusInstance inst;
      inst.id = "prod-" + pad3(made);
      inst.algebra = make_product(a.algebra, b.algebra);
      inst.product_factors = {{a.algebra, b.algebra}};
      corpus.push_back(std::move(inst));
      ++made;
    }
  }
  return corpus;
}

bool all_pass(const std::vector<TheoremReport>& reports) {
  for (const auto& r : reports)
    if (!r.skipped && !r.pass) return false;
  return true;
}

}  // namespace medalg
