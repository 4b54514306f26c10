#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "medalg/algebra.hpp"
#include "medalg/walls.hpp"

namespace medalg {

/// Deterministic corpus recipe; the same seed reproduces the same corpus.
struct CorpusSpec {
  std::uint64_t seed = 42;
  int cube5_closures = 200;   // random closures in {0,1}^5
  int c333_closures = 200;    // random closures in C_3 x C_3 x C_3
  int tree_count = 40;        // random trees through the graph route
  int product_count = 30;     // products of random corpus pairs
  int starlet_min = 2;
  int starlet_max = 8;
  int instance_cap = 128;     // element cap per instance
  int closure_retries = 20;
};

struct CorpusInstance {
  std::string id;
  FiniteMedianAlgebra algebra;
  /// Set for product instances; used by the product-law checks.
  std::optional<std::pair<FiniteMedianAlgebra, FiniteMedianAlgebra>> product_factors;
};

std::vector<CorpusInstance> build_default_corpus(const CorpusSpec& spec);

/// Closure of `seed_count` random points in the ambient, deterministic per
/// (spec.seed, index). Resamples while the closure exceeds the cap; throws
/// Error("retry-exhaustion") past spec.closure_retries draws.
FiniteMedianAlgebra random_subalgebra(const CorpusSpec& spec, const FiniteMedianAlgebra& ambient,
                                      int seed_count, std::uint64_t index);

// ---- small-instance oracles --------------------------------------------------

/// All nonempty med-closed subsets of the ambient (|ambient| <= 10), as
/// standalone algebras. The exhaustive oracle for subalgebra counting.
std::vector<FiniteMedianAlgebra> enumerate_subalgebras(const FiniteMedianAlgebra& ambient);

/// Walls by brute force: every bipartition into two nonempty convex sets
/// (|a| <= 20 guard; meant for carriers <= 12).
std::vector<Wall> brute_force_walls(const FiniteMedianAlgebra& a);

/// Rank as the largest k with a median embedding of the Boolean k-cube,
/// by exhaustive backtracking (|a| <= 16). Independent of the wall route.
int rank_by_cube_embedding(const FiniteMedianAlgebra& a);

// ---- theorem registry ---------------------------------------------------------

struct TheoremReport {
  std::string check_id;
  std::string instance_id;
  bool pass = false;
  bool skipped = false;      // instance outside the check's size bounds
  std::string witness;       // failure details; embeds the algebra file
  double millis = 0.0;
};

struct RegistryCheck {
  std::string id;
  std::string summary;
  int max_elements;     // instances above this are reported as skipped
  int max_walls;        // 0 = unbounded
  bool products_only;
  /// Returns pass; may append witness details on failure.
  std::function<bool(const CorpusInstance&, std::string& witness)> run;
};

/// One executable predicate per in-scope statement.
const std::vector<RegistryCheck>& theorem_registry();

/// Runs (check x instance) over the corpus. Empty filter = all checks.
/// Concurrency from `threads` (0 = MEDALG_THREADS or hardware). Reports are
/// ordered by (check id, instance id).
std::vector<TheoremReport> run_registry(const std::vector<CorpusInstance>& corpus,
                                        const std::vector<std::string>& filter = {},
                                        int threads = 0);

/// Fixed regressions for the worked examples; ids are self-describing.
std::vector<TheoremReport> worked_examples();

bool all_pass(const std::vector<TheoremReport>& reports);

/// MEDALG_THREADS override or hardware concurrency.
int worker_threads();

}  // namespace medalg
