#ifndef GCX_CANONICAL_HPP
#define GCX_CANONICAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gcx/graph.hpp"

namespace gcx {

// Canonical numbering: leg l is flag l-1; edges follow in lexicographic order of
// (canonical vertex p, canonical vertex q), p <= q, each edge occupying two
// consecutive flags with the flag at p first.
struct CanonResult {
    Graph graph;
    std::vector<int> flag_map;    // input flag -> canonical flag
    std::vector<int> vertex_map;  // input vertex -> canonical vertex
};

CanonResult canonicalize(const Graph& gr);
std::string canonical_key(const Graph& gr);
bool is_canonical(const Graph& gr);

struct Automorphisms {
    std::vector<std::vector<int>> generators;    // flag permutations
    std::vector<std::vector<int>> vertex_perms;  // every vertex automorphism
    std::uint64_t order = 1;
};

// Input must be canonical.
Automorphisms automorphisms(const Graph& canon);
// Lift of a vertex automorphism of a canonical graph to flags.
std::vector<int> lift_vertex_perm(const Graph& canon, const std::vector<int>& sigma);
bool is_flag_automorphism(const Graph& gr, const std::vector<int>& perm);

struct CanonicalGraph {
    Graph graph;
    std::string key;
    int total_genus = 0;
    std::vector<std::pair<int, int>> edges;
    Automorphisms aut;
};

CanonicalGraph make_canonical(const Graph& gr);

}  // namespace gcx

#endif
