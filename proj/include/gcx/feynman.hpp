#ifndef GCX_FEYNMAN_HPP
#define GCX_FEYNMAN_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gcx/canonical.hpp"
#include "gcx/coeff.hpp"
#include "gcx/linalg.hpp"
#include "gcx/presentation.hpp"

namespace gcx {

// One canonical graph with its coinvariant space (A(γ) ⊗ Det(edges))_{Aut γ}.
struct FTGraph {
    CanonicalGraph cg;
    int tensor_dim = 0;
    std::vector<int> free;       // tensor coordinates spanning the coinvariants
    QMat reduce;                 // coinvariants x tensor
    std::vector<int> degree;     // per coinvariant basis element
    std::vector<int> position;   // index inside its degree block
};

// The Feynman transform at (g,n). Chains are stored on the contraction side:
// boundary[k] contracts one edge, mapping degree k to degree k+1. The Feynman
// transform differential is its transpose, d_FT: degree k+1 -> degree k.
// Degree of a basis element: minus the label degrees, minus |E| for even systems.
struct FTComplex {
    std::shared_ptr<const CoeffSystem> sys;
    int g = 0;
    int n = 0;
    std::vector<FTGraph> graphs;
    std::map<std::string, int> index;  // canonical key -> graph
    std::map<int, std::vector<std::pair<int, int>>> basis;  // degree -> (graph, local)
    std::map<int, SparseMatrix> boundary;

    int dim(int k) const;
    // d_FT leaving degree k (into degree k-1).
    SparseMatrix differential(int k) const;
    // Coinvariant coordinates of a decorated graph of this type, as (degree, sparse vector).
    std::map<int, SparseVector> reduce(const Decorated& d) const;
    // Lift of a basis element to a decorated canonical graph.
    Decorated lift(int graph, int local) const;
};

struct FTOptions {
    int max_edges = -1;
    bool check_d_squared = true;
};

FTComplex build_ft(std::shared_ptr<const CoeffSystem> sys, int g, int n, const FTOptions& opt = {});

// Cached enumeration shared by all builds.
const std::vector<Graph>& graphs_of_type(int g, int n);

// Contraction-side action of a leg permutation on degree k (square, basis[k] order).
SparseMatrix leg_action(const FTComplex& c, int k, const std::vector<int>& perm);
// Action of the adjacent transposition s_i on the Feynman transform chains (transpose of the above).
SparseMatrix sn_action(const FTComplex& c, int k, int i);

struct EulerReport {
    std::map<int, int> dims;
    long chi = 0;
};
EulerReport euler_characteristic(const FTComplex& c);

// JSON basis plus triplets of each differential.
std::string dump_complex(const FTComplex& c);

}  // namespace gcx

#endif
