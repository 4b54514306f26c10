#include "medalg/algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_map>

namespace medalg {

namespace {

constexpr int kMaxTableCarrier = 128;   // explicit n^3 tables
constexpr int kMaxCarrier = 1 << 16;    // coords backend ceiling
constexpr int kExhaustiveAxiomCap = 64; // O(n^4) M3 loop bound

int med3_int(int a, int b, int c) {
  int lo = std::min(a, std::min(b, c));
  int hi = std::max(a, std::max(b, c));
  return a + b + c - lo - hi;
}

}  // namespace

namespace detail {

struct AlgebraImpl {
  int n = 0;
  Provenance provenance = Provenance::Table;
  bool sampled = false;

  // coords backend
  std::vector<int> factors;                 // chain lengths
  std::vector<std::vector<int>> labels;     // canonical (lex) order
  std::vector<std::uint64_t> strides;       // mixed-radix encoding of labels
  bool full_product = false;
  std::unordered_map<std::uint64_t, int> label_index;

  // table backend / cache (n <= kMaxTableCarrier)
  std::vector<std::uint8_t> table;

  std::vector<std::pair<int, int>> graph_edges;

  MemoSlot intervals_slot;
  MemoSlot adjacency_slot;
  MemoSlot walls_slot;
  MemoSlot subbase_slot;

  std::uint64_t encode(const std::vector<int>& label) const {
    std::uint64_t code = 0;
    for (std::size_t j = 0; j < label.size(); ++j) code += strides[j] * std::uint64_t(label[j]);
    return code;
  }

  int coord_med_index(int a, int b, int c) const {
    const auto& la = labels[a];
    const auto& lb = labels[b];
    const auto& lc = labels[c];
    std::uint64_t code = 0;
    for (std::size_t j = 0; j < factors.size(); ++j)
      code += strides[j] * std::uint64_t(med3_int(la[j], lb[j], lc[j]));
    if (full_product) return int(code);
    auto it = label_index.find(code);
    if (it == label_index.end())
      throw Error("not-a-subalgebra", "median of a triple escapes the point set");
    return it->second;
  }

  int med(int a, int b, int c) const {
    if (!table.empty()) return table[(std::size_t(a) * n + b) * n + c];
    return coord_med_index(a, b, c);
  }

  void finalize_coords() {
    strides.assign(factors.size(), 1);
    std::uint64_t total = 1;
    for (int j = int(factors.size()) - 1; j >= 0; --j) {
      strides[j] = total;
      total *= std::uint64_t(factors[j]);
      if (total > (std::uint64_t(1) << 62))
        throw Error("size-overflow", "ambient product of chains too large");
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    n = int(labels.size());
    full_product = (std::uint64_t(n) == total);
    if (!full_product) {
      label_index.reserve(labels.size() * 2);
      for (int i = 0; i < n; ++i) label_index.emplace(encode(labels[i]), i);
    }
    if (n > kMaxCarrier) throw Error("size-overflow", "carrier exceeds " + std::to_string(kMaxCarrier));
    if (n <= kMaxTableCarrier) build_table_cache();
  }

  void build_table_cache() {
    table.assign(std::size_t(n) * n * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          table[(std::size_t(a) * n + b) * n + c] = std::uint8_t(coord_med_index(a, b, c));
  }
};

}  // namespace detail

using detail::AlgebraImpl;

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Hypercube: return "hypercube";
    case Provenance::Chain: return "chain";
    case Provenance::Product: return "product";
    case Provenance::Closure: return "closure";
    case Provenance::Graph: return "graph";
    case Provenance::Table: return "table";
  }
  return "?";
}

const AlgebraImpl& FiniteMedianAlgebra::impl() const {
  if (!impl_) throw Error("empty-algebra", "default-constructed FiniteMedianAlgebra");
  return *impl_;
}

int FiniteMedianAlgebra::size() const { return impl().n; }

Element FiniteMedianAlgebra::med(Element a, Element b, Element c) const {
  const auto& im = impl();
  if (a < 0 || b < 0 || c < 0 || a >= im.n || b >= im.n || c >= im.n)
    throw Error("element-out-of-range", "median argument outside carrier");
  return im.med(a, b, c);
}

Provenance FiniteMedianAlgebra::provenance() const { return impl().provenance; }
bool FiniteMedianAlgebra::sampled_verified() const { return impl().sampled; }

const std::vector<std::vector<int>>& FiniteMedianAlgebra::labels() const { return impl().labels; }
const std::vector<int>& FiniteMedianAlgebra::factors() const { return impl().factors; }

const std::vector<std::pair<int, int>>& FiniteMedianAlgebra::graph_edges() const {
  return impl().graph_edges;
}

std::string FiniteMedianAlgebra::label_string(Element x) const {
  const auto& im = impl();
  if (im.labels.empty()) return std::to_string(x);
  std::string s = "(";
  const auto& l = im.labels[x];
  for (std::size_t j = 0; j < l.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(l[j]);
  }
  s += ")";
  return s;
}

Element FiniteMedianAlgebra::index_of_label(const std::vector<int>& label) const {
  const auto& ls = impl().labels;
  auto it = std::lower_bound(ls.begin(), ls.end(), label);
  if (it == ls.end() || *it != label) return -1;
  return Element(it - ls.begin());
}

SubsetMask FiniteMedianAlgebra::interval_mask(Element x, Element y) const {
  const auto& im = impl();
  const int n = im.n;
  if (x < 0 || y < 0 || x >= n || y >= n)
    throw Error("element-out-of-range", "interval endpoint outside carrier");
  if (n <= 160) {
    const auto& all = im.intervals_slot.get_or_compute<std::vector<SubsetMask>>([&] {
      std::vector<SubsetMask> cache(std::size_t(n) * n, SubsetMask(n));
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
          SubsetMask m(n);
          for (int z = 0; z < n; ++z)
            if (im.med(a, b, z) == z) m.set(z);
          cache[std::size_t(a) * n + b] = m;
          cache[std::size_t(b) * n + a] = std::move(m);
        }
      return cache;
    });
    return all[std::size_t(x) * n + y];
  }
  SubsetMask m(n);
  for (int z = 0; z < n; ++z)
    if (im.med(x, y, z) == z) m.set(z);
  return m;
}

namespace {

struct AdjacencyData {
  std::vector<std::pair<Element, Element>> pairs;
  std::vector<std::vector<Element>> nbrs;
};

const AdjacencyData& adjacency_data(const AlgebraImpl& im) {
  return im.adjacency_slot.get_or_compute<AdjacencyData>([&] {
    AdjacencyData a;
    const int n = im.n;
    a.nbrs.resize(n);
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        // [x,y] = {x,y} iff no third point lies between.
        bool adjacent = true;
        for (int z = 0; z < n && adjacent; ++z) {
          if (z == x || z == y) continue;
          if (im.med(x, y, z) == z) adjacent = false;
        }
        if (adjacent) {
          a.pairs.emplace_back(x, y);
          a.nbrs[x].push_back(y);
          a.nbrs[y].push_back(x);
        }
      }
    return a;
  });
}

}  // namespace

const std::vector<std::pair<Element, Element>>& FiniteMedianAlgebra::adjacent_pairs() const {
  return adjacency_data(impl()).pairs;
}

const std::vector<std::vector<Element>>& FiniteMedianAlgebra::adjacency() const {
  return adjacency_data(impl()).nbrs;
}

const detail::MemoSlot& FiniteMedianAlgebra::walls_memo() const { return impl().walls_slot; }
const detail::MemoSlot& FiniteMedianAlgebra::subbase_memo() const { return impl().subbase_slot; }

bool operator==(const FiniteMedianAlgebra& a, const FiniteMedianAlgebra& b) {
  const auto& ia = a.impl();
  const auto& ib = b.impl();
  if (ia.n != ib.n || ia.labels != ib.labels || ia.factors != ib.factors) return false;
  if (!ia.table.empty() && !ib.table.empty()) return ia.table == ib.table;
  const int n = ia.n;
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      for (int z = y; z < n; ++z)
        if (ia.med(x, y, z) != ib.med(x, y, z)) return false;
  return true;
}

// ---- constructors -----------------------------------------------------------

FiniteMedianAlgebra make_hypercube(int k) {
  if (k < 0 || k > 16) throw Error("dimension-out-of-range", "hypercube dimension must be in [0,16]");
  auto im = std::make_shared<AlgebraImpl>();
  im->provenance = Provenance::Hypercube;
  im->factors.assign(k, 2);
  const int n = 1 << k;
  im->labels.resize(n);
  for (int i = 0; i < n; ++i) {
    im->labels[i].resize(k);
    for (int j = 0; j < k; ++j) im->labels[i][j] = (i >> (k - 1 - j)) & 1;
  }
  im->finalize_coords();
  return FiniteMedianAlgebra(std::move(im));
}

FiniteMedianAlgebra make_chain(int k) {
  if (k < 1) throw Error("size-out-of-range", "chain length must be >= 1");
  if (k > kMaxCarrier) throw Error("size-overflow", "chain too long");
  auto im = std::make_shared<AlgebraImpl>();
  im->provenance = Provenance::Chain;
  im->factors = {k};
  im->labels.resize(k);
  for (int i = 0; i < k; ++i) im->labels[i] = {i};
  im->finalize_coords();
  return FiniteMedianAlgebra(std::move(im));
}

FiniteMedianAlgebra make_product(const FiniteMedianAlgebra& a, const FiniteMedianAlgebra& b) {
  const auto& ia = a.impl();
  const auto& ib = b.impl();
  const long long n = (long long)ia.n * ib.n;
  if (n > kMaxCarrier) throw Error("size-overflow", "product carrier too large");

  if (!ia.factors.empty() && !ib.factors.empty()) {
    auto im = std::make_shared<AlgebraImpl>();
    im->provenance = Provenance::Product;
    im->factors = ia.factors;
    im->factors.insert(im->factors.end(), ib.factors.begin(), ib.factors.end());
    im->labels.reserve(std::size_t(n));
    for (const auto& la : ia.labels)
      for (const auto& lb : ib.labels) {
        std::vector<int> l = la;
        l.insert(l.end(), lb.begin(), lb.end());
        im->labels.push_back(std::move(l));
      }
    im->finalize_coords();
    return FiniteMedianAlgebra(std::move(im));
  }

  // Table route for factors without chain coordinates.
  if (n > kMaxTableCarrier)
    throw Error("size-overflow", "table-backed product limited to " + std::to_string(kMaxTableCarrier));
  auto im = std::make_shared<AlgebraImpl>();
  im->provenance = Provenance::Product;
  im->n = int(n);
  im->table.assign(std::size_t(n) * n * n, 0);
  auto idx = [&](int x, int y) { return x * ib.n + y; };
  for (int a1 = 0; a1 < ia.n; ++a1)
    for (int b1 = 0; b1 < ib.n; ++b1)
      for (int a2 = 0; a2 < ia.n; ++a2)
        for (int b2 = 0; b2 < ib.n; ++b2)
          for (int a3 = 0; a3 < ia.n; ++a3)
            for (int b3 = 0; b3 < ib.n; ++b3) {
              int p = idx(a1, b1), q = idx(a2, b2), r = idx(a3, b3);
              im->table[(std::size_t(p) * n + q) * n + r] =
                  std::uint8_t(idx(ia.med(a1, a2, a3), ib.med(b1, b2, b3)));
            }
  return FiniteMedianAlgebra(std::move(im));
}

FiniteMedianAlgebra make_starlet(int leaves) {
  if (leaves < 1) throw Error("size-out-of-range", "starlet needs at least one leaf");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(leaves);
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return median_graph_from_edges(leaves + 1, edges);
}

FiniteMedianAlgebra median_closure(const FiniteMedianAlgebra& ambient,
                                   const std::vector<Element>& seeds, int size_cap) {
  const auto& im = ambient.impl();
  if (seeds.empty()) throw Error("size-out-of-range", "median_closure needs at least one seed");
  for (Element s : seeds)
    if (s < 0 || s >= im.n) throw Error("element-out-of-range", "closure seed outside ambient");

  std::vector<int> elems;
  SubsetMask in(im.n);
  for (Element s : seeds)
    if (!in.test(s)) {
      in.set(s);
      elems.push_back(s);
    }
  if (int(elems.size()) > size_cap)
    throw Error("size-overflow", "median closure exceeds cap " + std::to_string(size_cap));

  // Worklist closure: each freshly added element is combined with all pairs.
  for (std::size_t t = 0; t < elems.size(); ++t) {
    int z = elems[t];
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i; j <= t; ++j) {
        int m = im.med(elems[i], elems[j], z);
        if (!in.test(m)) {
          in.set(m);
          elems.push_back(m);
          if (int(elems.size()) > size_cap)
            throw Error("size-overflow", "median closure exceeds cap " + std::to_string(size_cap));
        }
      }
  }

  FiniteMedianAlgebra out = induced_unchecked(ambient, in);
  auto copy = std::make_shared<AlgebraImpl>(out.impl());
  copy->provenance = Provenance::Closure;
  return FiniteMedianAlgebra(std::move(copy));
}

FiniteMedianAlgebra induced_subalgebra(const FiniteMedianAlgebra& a, const SubsetMask& s) {
  const auto& im = a.impl();
  if (s.universe_size() != im.n) throw Error("carrier-mismatch", "mask universe differs from carrier");
  if (s.empty()) throw Error("size-out-of-range", "empty subset has no induced algebra");
  auto elems = s.to_vector();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j)
      for (std::size_t k = j; k < elems.size(); ++k)
        if (!s.test(im.med(elems[i], elems[j], elems[k])))
          throw Error("not-a-subalgebra", "subset not closed under the median");
  return induced_unchecked(a, s);
}

FiniteMedianAlgebra induced_unchecked(const FiniteMedianAlgebra& a, const SubsetMask& s) {
  const auto& im = a.impl();
  auto elems = s.to_vector();

  if (!im.factors.empty()) {
    auto sub = std::make_shared<AlgebraImpl>();
    sub->provenance = im.provenance;
    sub->factors = im.factors;
    sub->labels.reserve(elems.size());
    for (int e : elems) sub->labels.push_back(im.labels[e]);
    sub->finalize_coords();
    return FiniteMedianAlgebra(std::move(sub));
  }

  const int m = int(elems.size());
  if (m > kMaxTableCarrier) throw Error("size-overflow", "induced table too large");
  std::vector<int> back(im.n, -1);
  for (int i = 0; i < m; ++i) back[elems[i]] = i;
  auto sub = std::make_shared<AlgebraImpl>();
  sub->provenance = im.provenance;
  sub->n = m;
  sub->table.assign(std::size_t(m) * m * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        sub->table[(std::size_t(i) * m + j) * m + k] =
            std::uint8_t(back[im.med(elems[i], elems[j], elems[k])]);
  return FiniteMedianAlgebra(std::move(sub));
}

FiniteMedianAlgebra from_median_table(int n, const std::vector<int>& table) {
  if (n < 1) throw Error("size-out-of-range", "table carrier must be nonempty");
  if (n > kMaxTableCarrier)
    throw Error("size-overflow", "explicit tables limited to " + std::to_string(kMaxTableCarrier));
  if (table.size() != std::size_t(n) * n * n)
    throw Error("malformed-table", "expected " + std::to_string((long long)n * n * n) + " entries");
  auto im = std::make_shared<AlgebraImpl>();
  im->provenance = Provenance::Table;
  im->n = n;
  im->table.resize(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] < 0 || table[i] >= n) {
      std::size_t r = i;
      int c = int(r % n);
      r /= n;
      int b = int(r % n);
      int a = int(r / n);
      throw Error("malformed-table", "entry (" + std::to_string(a) + "," + std::to_string(b) +
                                         "," + std::to_string(c) + ") outside carrier");
    }
    im->table[i] = std::uint8_t(table[i]);
  }
  FiniteMedianAlgebra alg(std::move(im));
  AxiomReport rep = verify_axioms(alg);
  if (!rep.ok) {
    const auto& v = *rep.violation;
    throw Error("axiom-violation",
                v.axiom + " fails at (" + std::to_string(v.witness[0]) + "," +
                    std::to_string(v.witness[1]) + "," + std::to_string(v.witness[2]) +
                    (v.witness[3] >= 0 ? "," + std::to_string(v.witness[3]) : "") + ")");
  }
  if (!rep.exhaustive) {
    auto copy = std::make_shared<AlgebraImpl>(alg.impl());
    copy->sampled = true;
    return FiniteMedianAlgebra(std::move(copy));
  }
  return alg;
}

FiniteMedianAlgebra median_graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw Error("size-out-of-range", "graph must be nonempty");
  if (n > kMaxTableCarrier)
    throw Error("size-overflow", "graph route limited to " + std::to_string(kMaxTableCarrier));
  std::vector<std::vector<int>> nbr(n);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw Error("malformed-table", "bad edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }

  // All-pairs BFS distances.
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    dist[s][s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : nbr[u])
        if (dist[s][v] < 0) {
          dist[s][v] = dist[s][u] + 1;
          q.push(v);
        }
    }
    for (int v = 0; v < n; ++v)
      if (dist[s][v] < 0) throw Error("disconnected-input", "graph is not connected");
  }

  // Metric intervals I(u,v) = { z : d(u,z)+d(z,v) = d(u,v) }.
  std::vector<SubsetMask> ival(std::size_t(n) * n, SubsetMask(n));
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      SubsetMask m(n);
      for (int z = 0; z < n; ++z)
        if (dist[u][z] + dist[z][v] == dist[u][v]) m.set(z);
      ival[std::size_t(u) * n + v] = m;
      ival[std::size_t(v) * n + u] = std::move(m);
    }

  auto im = std::make_shared<AlgebraImpl>();
  im->provenance = Provenance::Graph;
  im->n = n;
  im->graph_edges = edges;
  std::sort(im->graph_edges.begin(), im->graph_edges.end());
  im->table.assign(std::size_t(n) * n * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v)
      for (int w = v; w < n; ++w) {
        SubsetMask t = ival[std::size_t(u) * n + v];
        t &= ival[std::size_t(v) * n + w];
        t &= ival[std::size_t(u) * n + w];
        if (t.count() != 1)
          throw Error("not-median-graph", "triple (" + std::to_string(u) + "," + std::to_string(v) +
                                              "," + std::to_string(w) + ") has " +
                                              std::to_string(t.count()) + " metric medians");
        std::uint8_t m = std::uint8_t(t.first());
        const int idx[3] = {u, v, w};
        int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : perm)
          im->table[(std::size_t(idx[p[0]]) * n + idx[p[1]]) * n + idx[p[2]]] = m;
      }

  FiniteMedianAlgebra alg(std::move(im));
  AxiomReport rep = verify_axioms(alg);
  if (!rep.ok) throw Error("not-median-graph", "metric medians violate the axioms");
  return alg;
}

// ---- elementary calculus ----------------------------------------------------

Interval interval(const FiniteMedianAlgebra& a, Element x, Element y) {
  return Interval{x, y, a.interval_mask(x, y)};
}

bool is_convex(const FiniteMedianAlgebra& a, const SubsetMask& s) {
  if (s.universe_size() != a.size()) throw Error("carrier-mismatch", "mask universe differs");
  auto elems = s.to_vector();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (!a.interval_mask(elems[i], elems[j]).is_subset_of(s)) return false;
  return true;
}

SubsetMask convex_hull(const FiniteMedianAlgebra& a, const SubsetMask& s) {
  if (s.universe_size() != a.size()) throw Error("carrier-mismatch", "mask universe differs");
  SubsetMask h = s;
  bool grew = true;
  while (grew) {
    grew = false;
    SubsetMask next = h;
    auto elems = h.to_vector();
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j)
        next |= a.interval_mask(elems[i], elems[j]);
    if (next != h) {
      h = next;
      grew = true;
    }
  }
  return h;
}

bool is_chain_interval(const FiniteMedianAlgebra& a, Element x, Element y) {
  SubsetMask m = a.interval_mask(x, y);
  auto elems = m.to_vector();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      int t = a.med(x, elems[i], elems[j]);
      if (t != elems[i] && t != elems[j]) return false;
    }
  return true;
}

bool is_chain_subset(const FiniteMedianAlgebra& a, const SubsetMask& s) {
  auto elems = s.to_vector();
  const int k = int(elems.size());
  if (k <= 2) return true;
  for (int e : elems) {
    bool total = true;
    for (int i = 0; i < k && total; ++i)
      for (int j = i + 1; j < k && total; ++j) {
        int t = a.med(e, elems[i], elems[j]);
        if (t != elems[i] && t != elems[j]) total = false;
      }
    if (!total) continue;
    // Sort by <=_e and confirm the inherited median is the order median.
    std::vector<int> sorted = elems;
    std::sort(sorted.begin(), sorted.end(),
              [&](int p, int q) { return p != q && a.med(e, p, q) == p; });
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j)
        for (int l = j + 1; l < k && ok; ++l)
          if (a.med(sorted[i], sorted[j], sorted[l]) != sorted[j]) ok = false;
    if (ok) return true;
  }
  return false;
}

bool is_conservative(const FiniteMedianAlgebra& a) {
  const int n = a.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z) {
        int m = a.med(x, y, z);
        if (m != x && m != y && m != z) return false;
      }
  return true;
}

bool is_linear(const FiniteMedianAlgebra& a) {
  const int n = a.size();
  if (n <= 2) return true;
  SubsetMask full(n, true);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (a.interval_mask(x, y) == full) return is_chain_interval(a, x, y);
  return false;
}

// ---- axioms -----------------------------------------------------------------

AxiomReport verify_axioms(const FiniteMedianAlgebra& alg) {
  const auto& im = alg.impl();
  const int n = im.n;
  AxiomReport rep;
  rep.ok = true;

  auto fail = [&](const char* ax, int a, int b, int c, int d = -1) {
    rep.ok = false;
    rep.violation = AxiomViolation{ax, {a, b, c, d}};
  };

  if (n <= kExhaustiveAxiomCap || (!im.table.empty() && n <= kMaxTableCarrier)) {
    // M2 and M1 exhaustively.
    for (int a = 0; a < n && rep.ok; ++a)
      for (int b = 0; b < n && rep.ok; ++b)
        if (im.med(a, b, b) != b) fail("M2", a, b, b);
    for (int a = 0; a < n && rep.ok; ++a)
      for (int b = a; b < n && rep.ok; ++b)
        for (int c = b; c < n && rep.ok; ++c) {
          int m = im.med(a, b, c);
          if (im.med(a, c, b) != m || im.med(b, a, c) != m || im.med(b, c, a) != m ||
              im.med(c, a, b) != m || im.med(c, b, a) != m)
            fail("M1", a, b, c);
        }
  } else {
    rep.exhaustive = false;
    if (n <= 2048) {
      for (int a = 0; a < n && rep.ok; ++a)
        for (int b = 0; b < n && rep.ok; ++b)
          if (im.med(a, b, b) != b) fail("M2", a, b, b);
    }
  }

  if (rep.ok && n <= kExhaustiveAxiomCap) {
    for (int a = 0; a < n && rep.ok; ++a)
      for (int b = 0; b < n && rep.ok; ++b)
        for (int c = b; c < n && rep.ok; ++c)
          for (int d = 0; d < n && rep.ok; ++d)
            if (im.med(im.med(a, b, d), c, d) != im.med(im.med(a, c, d), b, d))
              fail("M3", a, b, c, d);
  } else if (rep.ok) {
    rep.exhaustive = false;
    std::mt19937_64 rng(0x6d65644cu ^ std::uint64_t(n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    const std::uint64_t samples = 1'000'000;
    rep.samples = samples;
    for (std::uint64_t t = 0; t < samples && rep.ok; ++t) {
      int a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
      int m = im.med(a, b, c);
      if (im.med(b, a, c) != m || im.med(c, b, a) != m) {
        fail("M1", a, b, c);
        break;
      }
      if (im.med(a, b, b) != b) {
        fail("M2", a, b, b);
        break;
      }
      if (im.med(im.med(a, b, d), c, d) != im.med(im.med(a, c, d), b, d)) fail("M3", a, b, c, d);
    }
  }

  // Label sanity: distinct tuples whose coordinatewise majority matches med.
  if (rep.ok && !im.labels.empty()) {
    for (int i = 1; i < n && rep.ok; ++i)
      if (im.labels[i - 1] == im.labels[i]) fail("labels", i - 1, i, -1);
  }
  return rep;
}

// ---- automorphisms ----------------------------------------------------------

namespace {

// Per-element invariant used to prune the permutation search: degree in the
// median graph plus the sorted interval-size profile.
std::vector<std::vector<int>> element_signatures(const FiniteMedianAlgebra& a) {
  const int n = a.size();
  std::vector<std::vector<int>> sig(n);
  for (int x = 0; x < n; ++x) {
    std::vector<int> prof(n);
    for (int y = 0; y < n; ++y) prof[y] = a.interval_mask(x, y).count();
    std::sort(prof.begin(), prof.end());
    sig[x] = std::move(prof);
  }
  return sig;
}

bool full_hom_check(const FiniteMedianAlgebra& a, const FiniteMedianAlgebra& b,
                    const std::vector<int>& f) {
  const int n = a.size();
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      for (int z = y; z < n; ++z)
        if (f[a.med(x, y, z)] != b.med(f[x], f[y], f[z])) return false;
  return true;
}

template <class Emit>
void map_search(const FiniteMedianAlgebra& a, const FiniteMedianAlgebra& b, Emit&& emit,
                bool stop_at_first) {
  const int n = a.size();
  auto siga = element_signatures(a);
  auto sigb = element_signatures(b);
  std::vector<int> f(n, -1);
  std::vector<bool> used(n, false);
  bool done = false;

  auto consistent = [&](int k, int w) {
    for (int i = 0; i < k; ++i)
      for (int j = i; j <= k; ++j) {
        int m = a.med(i, j, k);
        if (m <= k) {
          int img = b.med(f[i], (j == k) ? w : f[j], w);
          int fm = (m == k) ? w : f[m];
          if (img != fm) return false;
        }
      }
    return true;
  };

  std::function<void(int)> rec = [&](int k) {
    if (done) return;
    if (k == n) {
      if (full_hom_check(a, b, f)) {
        emit(f);
        if (stop_at_first) done = true;
      }
      return;
    }
    for (int w = 0; w < n && !done; ++w) {
      if (used[w] || siga[k] != sigb[w]) continue;
      f[k] = w;
      if (consistent(k, w)) {
        used[w] = true;
        rec(k + 1);
        used[w] = false;
      }
      f[k] = -1;
    }
  };
  rec(0);
}

}  // namespace

bool is_automorphism(const FiniteMedianAlgebra& a, const std::vector<Element>& perm) {
  const int n = a.size();
  if (int(perm.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return full_hom_check(a, a, perm);
}

std::vector<Automorphism> automorphisms(const FiniteMedianAlgebra& a) {
  if (a.size() > 64) throw Error("size-overflow", "automorphism search limited to 64 elements");
  std::vector<Automorphism> out;
  map_search(a, a, [&](const std::vector<int>& f) { out.push_back(Automorphism{f}); }, false);
  return out;
}

bool is_isomorphic(const FiniteMedianAlgebra& a, const FiniteMedianAlgebra& b) {
  if (a.size() != b.size()) return false;
  if (a.size() > 64) throw Error("size-overflow", "isomorphism search limited to 64 elements");
  bool found = false;
  map_search(a, b, [&](const std::vector<int>&) { found = true; }, true);
  return found;
}

}  // namespace medalg
