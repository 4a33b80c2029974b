#ifndef GCX_NESTING_HPP
#define GCX_NESTING_HPP

#include <cstdint>
#include <vector>

#include "gcx/graph.hpp"

namespace gcx {

// Nests are bitsets over the reference edge order of the host graph.
using Nest = EdgeSet;
// Nests sorted ascending as integers.
using Nesting = std::vector<Nest>;

EdgeSet all_edges(const Graph& gr);
bool is_nest(const Graph& gr, Nest n);
std::vector<Nest> enumerate_nests(const Graph& gr);
bool is_compatible(const Graph& gr, Nest a, Nest b);
bool is_nesting(const Graph& gr, const Nesting& ns);
bool is_full(const Graph& gr, const Nesting& ns);
// All nestings, each sorted; the empty nesting comes first.
std::vector<Nesting> enumerate_nestings(const Graph& gr);

// For each edge index: position in ns of the smallest nest containing it, or -1 for *.
std::vector<int> min_map(const Graph& gr, const Nesting& ns);

// Layer graphs: one per nest (in the order of ns) followed by the outermost layer.
std::vector<Graph> layers(const Graph& gr, const Nesting& ns);

// Contracts a union of pairwise closure-disjoint nests.
Graph contract_nests(const Graph& gr, const std::vector<Nest>& parts);

// Connected components of the closure of an edge set, as edge sets.
std::vector<EdgeSet> edge_components(const Graph& gr, EdgeSet s);

// Simple graph on the edges of gr; bit j of row i marks adjacency.
struct SimpleGraph {
    int n = 0;
    std::vector<std::uint64_t> adj;
};
SimpleGraph line_graph(const Graph& gr);

}  // namespace gcx

#endif
