#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <thread>

#include "medalg/harness.hpp"
#include "medalg/io.hpp"
#include "medalg/roller.hpp"
#include "medalg/topology.hpp"
#include "medalg/uniformity.hpp"

namespace medalg {

namespace {

using Clock = std::chrono::steady_clock;

bool check_axioms(const CorpusInstance& inst, std::string& witness) {
  AxiomReport rep = verify_axioms(inst.algebra);
  if (!rep.ok && rep.violation) {
    const auto& v = *rep.violation;
    witness = v.axiom + " fails at (" + std::to_string(v.witness[0]) + "," +
              std::to_string(v.witness[1]) + "," + std::to_string(v.witness[2]) + "," +
              std::to_string(v.witness[3]) + ")";
  }
  return rep.ok;
}

bool check_branch_convexity(const CorpusInstance& inst, std::string& witness) {
  const auto& a = inst.algebra;
  for (auto [u, v] : chain_structure(a).chain_pairs) {
    SubsetMask b = branch(a, u, v);
    if (!is_convex(a, b) || !is_convex(a, b.complement())) {
      witness = "branch of chain pair (" + a.label_string(u) + "," + a.label_string(v) +
                ") is not a halfspace";
      return false;
    }
  }
  return true;
}

bool check_branch_equivalence(const CorpusInstance& inst, std::string& witness) {
  if (!branch_equivalence_check(inst.algebra)) {
    witness = "branch equality along a chain interval failed";
    return false;
  }
  return true;
}

bool check_subbasic_stars(const CorpusInstance& inst, std::string& witness) {
  if (!subbasic_star_check(inst.algebra)) {
    witness = "star of a point escaped the branch/whole-carrier trichotomy";
    return false;
  }
  return true;
}

bool check_gate_composition(const CorpusInstance& inst, std::string& witness) {
  if (!gate_composition_check(inst.algebra)) {
    witness = "gate composition laws failed";
    return false;
  }
  return true;
}

bool check_ray_preimages(const CorpusInstance& inst, std::string& witness) {
  if (!preimage_ray_check(inst.algebra)) {
    witness = "ray preimage identity failed";
    return false;
  }
  return true;
}

bool check_chain_image(const CorpusInstance& inst, std::string& witness) {
  if (!hom_image_chain_check(inst.algebra)) {
    witness = "gate image of a chain interval is not a chain";
    return false;
  }
  return true;
}

bool check_uniform_continuity(const CorpusInstance& inst, std::string& witness) {
  auto res = median_uniform_continuity_check(inst.algebra);
  if (!res.pass) {
    witness = "cover " + res.cover + " breaks at triple (" + std::to_string(res.witness[0]) + "," +
              std::to_string(res.witness[1]) + "," + std::to_string(res.witness[2]) + ")";
  }
  return res.pass;
}

bool check_initial_uniformity(const CorpusInstance& inst, std::string& witness) {
  if (!initial_uniformity_check(inst.algebra)) {
    witness = "gate-pullback filter differs from the intrinsic filter";
    return false;
  }
  return true;
}

bool check_chain_solvable(const CorpusInstance& inst, std::string& witness) {
  const auto& a = inst.algebra;
  bool haus = is_hausdorff_um(a);
  SeparationCheck t2 = t2m_check(a);
  SeparationCheck cs = chain_solvable_check(a);
  if (haus != t2.pass || t2.pass != cs.pass) {
    witness = "three-way agreement broken (hausdorff=" + std::to_string(haus) +
              " t2m=" + std::to_string(t2.pass) + " chain-solvable=" + std::to_string(cs.pass) + ")";
    return false;
  }
  if (!t2.pass) {
    witness = "finite algebra not separated";
    return false;
  }
  // The t2m witness must transform into a valid chain-solvability witness.
  std::mt19937_64 rng(0x7e57 ^ std::uint64_t(a.size()));
  const std::size_t budget = std::min<std::size_t>(t2.witnesses.size(), 200);
  for (std::size_t t = 0; t < budget; ++t) {
    const auto& w = t2.witnesses[t2.witnesses.size() <= 200 ? t : rng() % t2.witnesses.size()];
    if (!transform_t2m_witness(a, w)) {
      witness = "witness transformation failed for pair (" + a.label_string(w.x) + "," +
                a.label_string(w.y) + ")";
      return false;
    }
  }
  return true;
}

bool check_discrete_hausdorff(const CorpusInstance& inst, std::string& witness) {
  if (!is_hausdorff_um(inst.algebra)) {
    witness = "finite algebra with non-Hausdorff intrinsic uniformity";
    return false;
  }
  return true;
}

bool check_finite_rank_hausdorff(const CorpusInstance& inst, std::string& witness) {
  const auto& a = inst.algebra;
  int r = rank(a);
  if (r < 0) {
    witness = "rank computation failed";
    return false;
  }
  if (!is_hausdorff_um(a)) {
    witness = "finite-rank algebra not Hausdorff";
    return false;
  }
  if (a.size() <= 16 && rank_by_cube_embedding(a) != r) {
    witness = "clique rank " + std::to_string(r) + " != embedding rank " +
              std::to_string(rank_by_cube_embedding(a));
    return false;
  }
  return true;
}

bool check_roller_unique(const CorpusInstance& inst, std::string& witness) {
  const auto& a = inst.algebra;
  auto emb = roller_embedding(a);
  if (!emb.injective || !emb.median_preserving) {
    witness = "halfspace-indicator embedding not a median embedding";
    return false;
  }
  auto orients = consistent_orientations(a);
  if (int(orients.size()) != a.size()) {
    witness = "orientation count " + std::to_string(orients.size()) + " != carrier size " +
              std::to_string(a.size());
    return false;
  }
  for (const auto& o : orients) {
    if (o.principal < 0 || emb.coordinates[o.principal] != o.side_b_chosen) {
      witness = "non-principal consistent orientation found";
      return false;
    }
  }
  return true;
}

bool check_discreteness_criterion(const CorpusInstance& inst, std::string& witness) {
  const auto& a = inst.algebra;
  const int n = a.size();
  if (!tau_m(a).discrete() && n > 1) {
    witness = "intrinsic topology of a locally finite algebra is not discrete";
    return false;
  }
  if (n == 1) return true;
  std::mt19937_64 rng(0xd15c ^ std::uint64_t(n));
  std::vector<int> elems;
  if (n <= 32) {
    elems.resize(n);
    for (int i = 0; i < n; ++i) elems[i] = i;
  } else {
    for (int t = 0; t < 16; ++t) elems.push_back(int(rng() % std::uint64_t(n)));
  }
  for (int x : elems) {
    int deg = int(a.adjacency()[x].size());
    int got = min_isolating_branches(a, x);
    if (got != deg) {
      witness = "isolating " + a.label_string(x) + " took " + std::to_string(got) +
                " branches, degree is " + std::to_string(deg);
      return false;
    }
  }
  return true;
}

bool check_halfspace_topology(const CorpusInstance& inst, std::string& witness) {
  if (halfspace_topology(inst.algebra) != tau_m(inst.algebra)) {
    witness = "halfspace subbase generates a different topology";
    return false;
  }
  return true;
}

bool check_fingerprint(const CorpusInstance& inst, std::string& witness) {
  const auto& a = inst.algebra;
  auto fp = wall_fingerprint(a, 0);
  if (!fp.injective) {
    witness = "wall fingerprint not injective from basepoint 0";
    return false;
  }
  if (fp.separating[0].count() != 0) {
    witness = "fingerprint of the basepoint is nonempty";
    return false;
  }
  return true;
}

bool check_convex_restriction(const CorpusInstance& inst, std::string& witness) {
  const auto& a = inst.algebra;
  const int n = a.size();
  std::vector<SubsetMask> samples;
  samples.push_back(SubsetMask(n, true));
  std::mt19937_64 rng(0xc0 ^ std::uint64_t(n));
  if (n >= 2) {
    int x = int(rng() % std::uint64_t(n)), y = int(rng() % std::uint64_t(n));
    if (x != y) samples.push_back(a.interval_mask(x, y));
    const auto& ws = walls(a);
    if (ws.count() > 0) samples.push_back(ws.walls[rng() % std::uint64_t(ws.count())].side_a);
  }
  for (const auto& c : samples)
    if (!convex_restriction_check(a, c)) {
      witness = "trace filter differs on convex subset " + c.to_string();
      return false;
    }
  return true;
}

bool check_product_uniformity(const CorpusInstance& inst, std::string& witness) {
  const auto& [fa, fb] = *inst.product_factors;
  auto res = product_uniformity_check(fa, fb);
  if (!res.chain_clause) witness = "product chain-interval characterization failed";
  if (!res.filter_clause) witness += std::string(witness.empty() ? "" : "; ") + "product filter equality failed";
  return res.pass();
}

bool check_product_t2(const CorpusInstance& inst, std::string& witness) {
  const auto& [fa, fb] = *inst.product_factors;
  bool factors_t2 = t2m_check(fa).pass && t2m_check(fb).pass;
  bool product_t2 = t2m_check(inst.algebra).pass;
  if (!(factors_t2 && product_t2)) {
    witness = "separation not preserved by the product";
    return false;
  }
  return true;
}

bool check_equivariance(const CorpusInstance& inst, std::string& witness) {
  const auto& a = inst.algebra;
  for (const auto& g : automorphisms(a)) {
    if (!equivariance_check(a, g)) {
      witness = "automorphism fails to permute branches";
      return false;
    }
  }
  return true;
}

}  // namespace

const std::vector<RegistryCheck>& theorem_registry() {
  static const std::vector<RegistryCheck> registry = {
      {"axioms", "median axioms hold on every instance", 128, 0, false, check_axioms},
      {"branch-convexity", "branches of chain intervals are halfspaces", 128, 0, false,
       check_branch_convexity},
      {"branch-equivalence", "branches are stable along chain intervals; adjacent pairs generate",
       128, 0, false, check_branch_equivalence},
      {"subbasic-stars", "stars of subbasic covers follow the trichotomy", 128, 0, false,
       check_subbasic_stars},
      {"gate-composition", "gate retractions compose through gated images", 128, 0, false,
       check_gate_composition},
      {"ray-preimages", "gate preimages of open rays are branches", 128, 0, false,
       check_ray_preimages},
      {"chain-image", "gate images of chains are chains", 128, 0, false, check_chain_image},
      {"median-uniform-continuity", "the median is uniformly continuous for the intrinsic covers",
       128, 0, false, check_uniform_continuity},
      {"initial-uniformity", "intrinsic filter = gate-pullback filter", 128, 0, false,
       check_initial_uniformity},
      {"chain-solvable-t2", "hausdorff = t2m = chain-solvable, with verified witnesses", 128, 0,
       false, check_chain_solvable},
      {"discrete-hausdorff", "finite algebras are separated", 128, 0, false,
       check_discrete_hausdorff},
      {"finite-rank-hausdorff", "rank is finite and matches the embedding oracle; separation holds",
       128, 64, false, check_finite_rank_hausdorff},
      {"roller-unique", "consistent orientations are exactly the vertices", 128, 40, false,
       check_roller_unique},
      {"discreteness-criterion", "isolating a vertex takes exactly its degree in branches", 128, 0,
       false, check_discreteness_criterion},
      {"halfspace-topology-equivalence", "halfspace subbase generates the intrinsic topology", 128,
       0, false, check_halfspace_topology},
      {"fingerprint-injectivity", "separating-wall fingerprints are injective", 128, 0, false,
       check_fingerprint},
      {"convex-restriction", "intrinsic filter restricts along convex subsets", 128, 0, false,
       check_convex_restriction},
      {"product-uniformity", "product chain intervals and product filter laws", 128, 0, true,
       check_product_uniformity},
      {"product-t2", "separation is preserved by finite products", 128, 0, true, check_product_t2},
      {"automorphism-equivariance", "automorphisms permute branches and subbasic covers", 32, 0,
       false, check_equivariance},
  };
  return registry;
}

std::vector<TheoremReport> run_registry(const std::vector<CorpusInstance>& corpus,
                                        const std::vector<std::string>& filter, int threads) {
  const auto& registry = theorem_registry();
  std::vector<const RegistryCheck*> selected;
  for (const auto& c : registry) {
    if (filter.empty() ||
        std::find(filter.begin(), filter.end(), c.id) != filter.end())
      selected.push_back(&c);
  }
  if (!filter.empty() && selected.size() != filter.size())
    throw Error("unknown-check", "check filter names an unregistered check");

  struct Task {
    const RegistryCheck* check;
    const CorpusInstance* inst;
  };
  std::vector<Task> tasks;
  for (const auto* c : selected)
    for (const auto& inst : corpus) {
      if (c->products_only && !inst.product_factors) continue;
      tasks.push_back(Task{c, &inst});
    }

  std::vector<TheoremReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  int nthreads = threads > 0 ? threads : worker_threads();
  nthreads = std::max(1, std::min<int>(nthreads, int(tasks.size())));

  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      const Task& t = tasks[i];
      TheoremReport rep;
      rep.check_id = t.check->id;
      rep.instance_id = t.inst->id;
      auto start = Clock::now();
      if (t.inst->algebra.size() > t.check->max_elements ||
          (t.check->max_walls > 0 && walls(t.inst->algebra).count() > t.check->max_walls)) {
        rep.skipped = true;
        rep.pass = true;
      } else {
        try {
          rep.pass = t.check->run(*t.inst, rep.witness);
        } catch (const std::exception& e) {
          rep.pass = false;
          rep.witness = std::string("exception: ") + e.what();
        }
        if (!rep.pass) {
          rep.witness += "\nreproducer:\n" + save_algebra(t.inst->algebra);
        }
      }
      rep.millis = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      reports[i] = std::move(rep);
    }
  };

  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::stable_sort(reports.begin(), reports.end(), [](const TheoremReport& a, const TheoremReport& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    return a.instance_id < b.instance_id;
  });
  return reports;
}

std::vector<TheoremReport> worked_examples() {
  std::vector<TheoremReport> out;
  auto record = [&](std::string id, bool pass, std::string witness = "") {
    TheoremReport r;
    r.check_id = std::move(id);
    r.instance_id = "fixed";
    r.pass = pass;
    r.witness = std::move(witness);
    out.push_back(std::move(r));
  };

  FiniteMedianAlgebra cube3 = make_hypercube(3);
  auto at3 = [&](int a, int b, int c) { return cube3.index_of_label({a, b, c}); };
  const Element x = at3(0, 0, 0), y = at3(1, 1, 0), z = at3(1, 0, 0);

  auto mask3 = [&](std::vector<std::array<int, 3>> pts) {
    SubsetMask m(cube3.size());
    for (auto& p : pts) m.set(at3(p[0], p[1], p[2]));
    return m;
  };

  // Shadows and branches on the 3-cube.
  SubsetMask s_xy = mask3({{1, 1, 0}, {1, 1, 1}});
  SubsetMask s_zy = mask3({{0, 1, 0}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}});
  record("cube3-shadow-xy", shadow(cube3, y, x) == s_xy);
  record("cube3-branch-xy", branch(cube3, y, x) == s_xy.complement());
  record("cube3-shadow-zy", shadow(cube3, y, z) == s_zy);
  record("cube3-branch-zy",
         branch(cube3, y, z) == mask3({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, 1}}));

  // The square interval is not a chain, and branch equality fails across it.
  record("cube3-square-interval",
         cube3.interval_mask(x, y) == mask3({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}));
  record("cube3-square-not-chain", !is_chain_interval(cube3, x, y));
  record("cube3-branch-equality-fails", branch(cube3, y, x) != branch(cube3, y, z));

  // The 2-cube witness: med lands on the excluded corner, so the half-open
  // interval is not convex.
  FiniteMedianAlgebra cube2 = make_hypercube(2);
  auto at2 = [&](int a, int b) { return cube2.index_of_label({a, b}); };
  record("cube2-med", cube2.med(at2(1, 0), at2(1, 1), at2(0, 1)) == at2(1, 1));
  {
    SubsetMask half_open(cube2.size());
    half_open.set(at2(0, 0));
    half_open.set(at2(1, 0));
    half_open.set(at2(0, 1));
    record("cube2-halfopen-not-convex", !is_convex(cube2, half_open));
  }
  {
    SubsetMask lifted(cube3.size());
    lifted.set(at3(0, 0, 0));
    lifted.set(at3(1, 0, 0));
    lifted.set(at3(0, 1, 0));
    record("cube3-lifted-halfopen-not-convex", !is_convex(cube3, lifted));
  }

  // Starlet medians: three distinct points meet at the center.
  {
    FiniteMedianAlgebra st = make_starlet(4);
    bool ok = true;
    for (int i = 1; i <= 4 && ok; ++i)
      for (int j = 1; j <= 4 && ok; ++j)
        for (int k = 0; k <= 4 && ok; ++k) {
          if (i == j || j == k || i == k) continue;
          if (st.med(i, j, k) != 0) ok = false;
        }
    record("starlet-median-center", ok);
  }

  // Two-ray cover of the middle of a 3-chain, overlapping at the midpoint.
  {
    FiniteMedianAlgebra c3 = make_chain(3);
    Cover cov = subbasic_cover(c3, 0, 2);
    SubsetMask left(3), right(3);
    left.set(0);
    left.set(1);
    right.set(1);
    right.set(2);
    bool ok = cov.members().size() == 2 &&
              ((cov.members()[0] == left && cov.members()[1] == right) ||
               (cov.members()[0] == right && cov.members()[1] == left));
    record("chain3-two-ray-cover", ok);
  }
  return out;
}

}  // namespace medalg
