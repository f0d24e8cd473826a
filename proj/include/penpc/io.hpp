#pragma once

#include <optional>
#include <string>

#include "penpc/graph.hpp"
#include "penpc/simulate.hpp"
#include "penpc/skeleton.hpp"

namespace penpc {

// CSV formats, all 0-based. Directed edges: header `from,to`. Undirected
// edges: header `a,b`, canonical (min,max) pairs. Data: header
// `v0,...,v{p-1}`, one sample per row. Separation sets: header `i,j,sep`
// with semicolon-joined indices (empty for the empty set). CPDAG: header
// `from,to,type` with type in {directed, undirected}.
//
// Readers take an optional vertex count; when absent, p is inferred as
// 1 + the largest index present (minimum 1). All failures throw io_error.

void write_directed_graph(const std::string& path, const DirectedGraph& g);
DirectedGraph read_directed_graph(const std::string& path,
                                  std::optional<int> p = std::nullopt);

void write_undirected_graph(const std::string& path, const UndirectedGraph& g);
UndirectedGraph read_undirected_graph(const std::string& path,
                                      std::optional<int> p = std::nullopt);

void write_data_csv(const std::string& path, const DataMatrix& d);
DataMatrix read_data_csv(const std::string& path);

void write_sepsets_csv(const std::string& path, const SepSetMap& seps);
SepSetMap read_sepsets_csv(const std::string& path,
                           std::optional<int> p = std::nullopt);

void write_cpdag_csv(const std::string& path, const Cpdag& g);
Cpdag read_cpdag_csv(const std::string& path,
                     std::optional<int> p = std::nullopt);

// Shortest round-trip decimal form (used for all reals we write, so equal
// runs produce byte-identical files).
std::string format_double(double value);

}  // namespace penpc
