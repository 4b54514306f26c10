#include "medalg/io.hpp"

#include <fstream>

namespace medalg {

using nlohmann::json;

FiniteMedianAlgebra from_chain_coords(const std::vector<int>& factors,
                                      const std::vector<std::vector<int>>& points) {
  if (factors.empty() && points.size() > 1)
    throw Error("malformed-table", "coords algebra needs at least one factor");
  for (int f : factors)
    if (f < 1) throw Error("malformed-table", "factor lengths must be >= 1");
  if (points.empty()) throw Error("malformed-table", "coords algebra needs at least one point");

  for (const auto& p : points) {
    if (p.size() != factors.size())
      throw Error("malformed-table", "point arity does not match factors");
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j] < 0 || p[j] >= factors[j])
        throw Error("malformed-table", "coordinate outside its chain");
  }
  {
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("malformed-table", "duplicate point");
  }

  // Assemble through the closure constructor on the full ambient product,
  // then confirm nothing was added (median-closedness of the input).
  FiniteMedianAlgebra ambient;
  {
    bool first = true;
    for (int f : factors) {
      FiniteMedianAlgebra c = make_chain(f);
      ambient = first ? c : make_product(ambient, c);
      first = false;
    }
    if (factors.empty()) ambient = make_chain(1);
  }

  std::vector<Element> seeds;
  seeds.reserve(points.size());
  for (const auto& p : points) {
    Element e = ambient.index_of_label(factors.empty() ? std::vector<int>{0} : p);
    if (e < 0) throw Error("malformed-table", "point not found in ambient product");
    seeds.push_back(e);
  }

  FiniteMedianAlgebra out = median_closure(ambient, seeds, ambient.size());
  if (out.size() != int(points.size()) && !factors.empty()) {
    // Find and report a violating triple.
    const int k = int(points.size());
    auto med3 = [](int a, int b, int c) {
      int lo = std::min({a, b, c}), hi = std::max({a, b, c});
      return a + b + c - lo - hi;
    };
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j)
        for (int l = j; l < k; ++l) {
          std::vector<int> m(factors.size());
          for (std::size_t t = 0; t < factors.size(); ++t)
            m[t] = med3(points[i][t], points[j][t], points[l][t]);
          if (std::find(points.begin(), points.end(), m) == points.end())
            throw Error("not-a-subalgebra",
                        "points not median-closed: triple (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(l) + ")");
        }
    throw Error("not-a-subalgebra", "points not median-closed");
  }
  return out;
}

json algebra_to_json(const FiniteMedianAlgebra& a) {
  json j;
  if (a.provenance() == Provenance::Graph && !a.graph_edges().empty()) {
    j["kind"] = "graph";
    j["n"] = a.size();
    json edges = json::array();
    for (auto [x, y] : a.graph_edges()) edges.push_back({x, y});
    j["edges"] = std::move(edges);
    return j;
  }
  if (!a.factors().empty()) {
    j["kind"] = "coords";
    j["factors"] = a.factors();
    j["points"] = a.labels();
    return j;
  }
  j["kind"] = "table";
  const int n = a.size();
  j["n"] = n;
  std::vector<int> flat;
  flat.reserve(std::size_t(n) * n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) flat.push_back(a.med(x, y, z));
  j["median"] = std::move(flat);
  return j;
}

FiniteMedianAlgebra algebra_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error("malformed-table", "algebra file must be an object with a string 'kind'");
  const std::string kind = j["kind"];
  if (kind == "table") {
    if (!j.contains("n") || !j.contains("median"))
      throw Error("malformed-table", "kind=table needs 'n' and 'median'");
    return from_median_table(j["n"].get<int>(), j["median"].get<std::vector<int>>());
  }
  if (kind == "coords") {
    if (!j.contains("factors") || !j.contains("points"))
      throw Error("malformed-table", "kind=coords needs 'factors' and 'points'");
    return from_chain_coords(j["factors"].get<std::vector<int>>(),
                             j["points"].get<std::vector<std::vector<int>>>());
  }
  if (kind == "graph") {
    if (!j.contains("n") || !j.contains("edges"))
      throw Error("malformed-table", "kind=graph needs 'n' and 'edges'");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw Error("malformed-table", "edges must be pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return median_graph_from_edges(j["n"].get<int>(), edges);
  }
  throw Error("malformed-table", "unknown kind '" + kind + "'");
}

std::string save_algebra(const FiniteMedianAlgebra& a) { return algebra_to_json(a).dump(2) + "\n"; }

FiniteMedianAlgebra load_algebra(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error("malformed-table", std::string("json parse error: ") + e.what());
  }
  return algebra_from_json(j);
}

FiniteMedianAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_algebra(text);
}

void save_algebra_file(const FiniteMedianAlgebra& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot open " + path + " for writing");
  out << save_algebra(a);
}

}  // namespace medalg
