#ifndef GCX_FIBER_HPP
#define GCX_FIBER_HPP

#include <map>
#include <string>
#include <vector>

#include "gcx/graph.hpp"
#include "gcx/linalg.hpp"
#include "gcx/nesting.hpp"
#include "gcx/rational.hpp"

namespace gcx {

// Chains of mod-2-ordered nestings: keys are nestings sorted ascending, the
// coefficient absorbs the sign of the order.
using FChain = std::map<Nesting, Q>;

// Sorts an ordered list of nests in place; returns the sign of the sorting
// permutation, or 0 if a nest repeats.
int sort_sign(std::vector<Nest>& v);
void add_ordered(FChain& c, std::vector<Nest> ordered, const Q& coeff);
FChain chain_sum(const FChain& a, const FChain& b, const Q& sb = 1);

// Nests are taken inside `universe` (all edges for the graph itself, all edges but e for the
// graph with e removed).
bool is_nest_in(const Graph& gr, EdgeSet universe, Nest n);
bool is_nesting_in(const Graph& gr, EdgeSet universe, const Nesting& ns);
std::vector<Nesting> nestings_in(const Graph& gr, EdgeSet universe);

// Differential: adds each admissible nest in the last position.
FChain fiber_d(const Graph& gr, EdgeSet universe, const FChain& x);

// Edge e is admissible if removing it keeps the graph connected or only isolates one vertex.
bool admissible_edge(const Graph& gr, int e);
int choose_edge(const Graph& gr);

enum class PiCase { C1, C2a, C2b, C3a, C3b, C4a, C4b, C5 };
const char* pi_case_name(PiCase c);
PiCase classify(const Graph& gr, int e, const Nesting& ns);

// Chains on the graph with e removed use the host's edge indices.
FChain fiber_iota(const Graph& gr, int e, const FChain& x);
FChain fiber_pi(const Graph& gr, int e, const FChain& x);
FChain fiber_H(const Graph& gr, int e, const FChain& x);

struct FiberComplex {
    // basis[k] holds the nestings with k nests (degree -1-k).
    std::vector<std::vector<Nesting>> basis;
    // d[k] maps k nests to k+1 nests: rows index basis[k+1], columns basis[k].
    std::vector<SparseMatrix> d;
};
FiberComplex build_fiber_complex(const Graph& gr, EdgeSet universe);
// Betti numbers indexed by nest count.
std::vector<int> fiber_homology(const FiberComplex& c);

struct RetractReport {
    bool d_squared = true;
    bool pi_d = true;
    bool iota_d = true;
    bool pi_iota = true;
    bool homotopy = true;
    std::string first_failure;
    bool ok() const { return d_squared && pi_d && iota_d && pi_iota && homotopy; }
};

// Test hook: flips the sign of pi on the given case when set.
void corrupt_pi_sign(bool on);

RetractReport verify_retract(const Graph& gr, int e);

// Retract identities on every admissible edge of one graph, and whether H(C(γ))
// is one-dimensional at |E|-1 nests (degree -|E|).
struct FiberCheck {
    long edges = 0;
    bool identities = true;
    bool concentrated = true;
    std::vector<int> betti;  // by nest count
    std::string first_failure;
};
FiberCheck fiber_check(const Graph& gr);

struct FiberSweep {
    long graphs = 0;
    long edges = 0;
    bool identities = true;
    long concentrated = 0;  // graphs with the expected homology
    std::string first_failure;
    bool ok() const { return identities && concentrated == graphs; }
    std::string to_json() const;
};
// All graphs with 1..max_edges edges, genus <= max_genus and legs <= max_legs.
FiberSweep fiber_sweep(int max_edges, int max_genus, int max_legs);
FiberSweep fiber_sweep(const std::vector<Graph>& graphs);

// Sign of the shuffle moving the edges of N (in the order psi) behind the others.
int kappa_sign(const Graph& gr, const std::vector<int>& psi, Nest n);

std::string nesting_name(const Nesting& ns, const std::vector<char>& letters);

}  // namespace gcx

#endif
