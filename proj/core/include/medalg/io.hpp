#pragma once

#include <string>

#include <json.hpp>

#include "medalg/algebra.hpp"

namespace medalg {

/// Coords backend built from an explicit point list; the loader verifies the
/// points are median-closed and reports the exact offending triple.
FiniteMedianAlgebra from_chain_coords(const std::vector<int>& factors,
                                      const std::vector<std::vector<int>>& points);

/// Algebra file format. kind=table: {"n", "median" (flat n^3, index
/// i*n^2+j*n+k)}; kind=coords: {"factors", "points"}; kind=graph: {"n",
/// "edges"}.
nlohmann::json algebra_to_json(const FiniteMedianAlgebra& a);
FiniteMedianAlgebra algebra_from_json(const nlohmann::json& j);

/// Canonical text form (stable key order and element order), newline-terminated.
std::string save_algebra(const FiniteMedianAlgebra& a);
FiniteMedianAlgebra load_algebra(const std::string& text);
FiniteMedianAlgebra load_algebra_file(const std::string& path);
void save_algebra_file(const FiniteMedianAlgebra& a, const std::string& path);

}  // namespace medalg
