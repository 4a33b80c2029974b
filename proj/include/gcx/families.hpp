#ifndef GCX_FAMILIES_HPP
#define GCX_FAMILIES_HPP

#include <string>
#include <vector>

#include "gcx/graph.hpp"

namespace gcx {

// Genus 0 graph from an edge list; each vertex gets legs[v] legs, labelled in vertex order.
Graph graph_from_edges(int vertices, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& legs);

// Named families: path:k (k edges), cycle:k, bouquet:k (k loops), K4, theta.
// Legs are added only where a vertex would otherwise be unstable.
// Also accepts a graph JSON literal or a path to a JSON file. Throws GraphError.
Graph named_graph(const std::string& spec);

}  // namespace gcx

#endif
