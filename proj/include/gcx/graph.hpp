#ifndef GCX_GRAPH_HPP
#define GCX_GRAPH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcx {

enum class GraphErrorKind {
    NonInvolutive,
    Unstable,
    Disconnected,
    NoEdges,
    BadLegLabels,
    BadLegIndex,
    NotANest,
    TypeMismatch,
    BadType,
    Malformed,
};

const char* error_name(GraphErrorKind k);

struct GraphError : std::runtime_error {
    GraphErrorKind kind;
    int where;
    GraphError(GraphErrorKind k, const std::string& msg, int w = -1)
        : std::runtime_error(std::string(error_name(k)) + ": " + msg), kind(k), where(w) {}
};

// Modular graph in the flag model. Flags 0..F-1, vertices 0..V-1.
// leg[f] is the label (1..n) of a leg flag and 0 for flags inside edges.
struct Graph {
    std::vector<int> inv;
    std::vector<int> adj;
    std::vector<int> genus;
    std::vector<int> leg;

    int num_flags() const { return static_cast<int>(inv.size()); }
    int num_vertices() const { return static_cast<int>(genus.size()); }
    int num_legs() const;
    int num_edges() const { return (num_flags() - num_legs()) / 2; }
    int betti1() const { return num_edges() - num_vertices() + 1; }
    int genus_label_sum() const;
    int total_genus() const { return betti1() + genus_label_sum(); }
    bool is_corolla() const { return num_edges() == 0 && num_vertices() == 1; }

    // Edges as (f, inv f) with f < inv f, sorted by f. This is the reference edge order.
    std::vector<std::pair<int, int>> edges() const;
    // Flags at each vertex, ascending.
    std::vector<std::vector<int>> flags_at() const;
    std::vector<int> valence() const;
    // Flag carrying leg label l, or -1.
    int leg_flag(int label) const;

    bool operator==(const Graph& o) const {
        return inv == o.inv && adj == o.adj && genus == o.genus && leg == o.leg;
    }
};

Graph corolla(int g, int n);

// Structural checks. allow_corolla admits the edgeless one-vertex sentinel.
void check_graph(const Graph& gr, bool allow_corolla = false);
Graph validate(const std::vector<int>& involution, const std::vector<int>& adjacency,
               const std::vector<int>& genus, const std::vector<std::pair<int, int>>& legs);
bool is_connected(const Graph& gr);

// JSON in the fixed field order flags, involution, adjacency, genus, legs.
std::string to_json(const Graph& gr);
Graph graph_from_json(const std::string& text, bool allow_corolla = true);

// Leg relabelling: new label of leg l is perm[l-1].
Graph relabel_legs(const Graph& gr, const std::vector<int>& perm);

Graph glue_self(const Graph& gr, int i, int j);
Graph glue_pair(const Graph& left, int i, const Graph& right, int j);
// Label order after glue_pair: position k (0-based) of the result lists (side, old label).
std::vector<std::pair<int, int>> glue_pair_order(int n, int i, int m, int j);

using EdgeSet = std::uint64_t;

// Vertices touched by the edges in N (bit per vertex).
std::uint64_t closure_vertices(const Graph& gr, EdgeSet n);
bool closure_connected(const Graph& gr, EdgeSet n);

Graph contract_nest(const Graph& gr, EdgeSet n);
// Flag closure: vertices of the closure, the edges of N, every other flag at those vertices as a leg.
// Legs are labelled in increasing order of the original flag index.
Graph flag_closure(const Graph& gr, EdgeSet n);
// Vertex that the nest collapses to in contract_nest.
int contracted_vertex(const Graph& gr, EdgeSet n);
// Replace vertex v by sub; leg l of sub is attached where the l-th flag of v (ascending) was.
Graph substitute(const Graph& gr, int v, const Graph& sub);

}  // namespace gcx

#endif
