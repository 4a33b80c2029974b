#ifndef GCX_ENUMERATE_HPP
#define GCX_ENUMERATE_HPP

#include <vector>

#include "gcx/graph.hpp"

namespace gcx {

// One-edge expansions of vertex v: every split into two vertices joined by a new
// edge and, if genus(v) >= 1, the loop move. Results are not canonicalized.
std::vector<Graph> vertex_expansions(const Graph& gr, int v);

// Canonical representatives of all (g,n)-graphs, corolla first, then by edge
// count and canonical key. max_edges < 0 means no bound.
std::vector<Graph> enumerate_graphs(int g, int n, int max_edges = -1);

// Largest possible edge count of a (g,n)-graph.
int max_edge_count(int g, int n);

}  // namespace gcx

#endif
