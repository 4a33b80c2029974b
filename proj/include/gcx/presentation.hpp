#ifndef GCX_PRESENTATION_HPP
#define GCX_PRESENTATION_HPP

#include <vector>

#include "gcx/coeff.hpp"
#include "gcx/graph.hpp"

namespace gcx {

// A graph with a coefficient tensor on its vertices.
// vflags[v] lists the flags of v in the order used as legs 1..k of A(g_v, k).
// tensor is dense over A(v_0) ⊗ ... ⊗ A(v_{V-1}), the last factor varying fastest.
// atoms orders the edges (by lower flag) for even systems; empty for odd ones.
struct Decorated {
    Graph graph;
    std::vector<std::vector<int>> vflags;
    std::vector<Q> tensor;
    std::vector<int> atoms;
};

std::vector<int> factor_dims(const CoeffSystem& sys, const Graph& gr, const std::vector<std::vector<int>>& vflags);
int tensor_size(const std::vector<int>& dims);

// Standard presentation: ascending flags per vertex, atoms in the reference edge order.
Decorated standard(const CoeffSystem& sys, const Graph& gr, std::vector<Q> tensor);

// Contracts the edge with lower flag f. When the edge joins two vertices, `flip`
// composes with the vertex of the upper flag on the left.
Decorated contract_edge(const CoeffSystem& sys, const Decorated& d, int f, bool flip = false);

// Moves the decoration along a flag bijection onto `target`, returning the
// standard presentation there.
Decorated transport(const CoeffSystem& sys, const Decorated& d, const Graph& target, const std::vector<int>& flag_map);

// Matrix of a flag automorphism on the standard tensor of gr.
QMat automorphism_matrix(const CoeffSystem& sys, const Graph& gr, const std::vector<int>& flag_perm);

}  // namespace gcx

#endif
