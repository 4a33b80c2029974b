#ifndef GCX_HOMOLOGY_HPP
#define GCX_HOMOLOGY_HPP

#include <map>
#include <vector>

#include "gcx/feynman.hpp"
#include "gcx/linalg.hpp"

namespace gcx {

struct HomologyResult {
    std::map<int, int> betti;  // nonzero entries only
    // Representatives, per degree with non-zero Betti number: contraction-side cycles c_b
    // and Feynman-transform cycles z_a with <z_a, c_b> = delta_ab.
    std::map<int, std::vector<SparseVector>> c_cycles;
    std::map<int, std::vector<SparseVector>> z_cycles;
};

HomologyResult homology(const FTComplex& c, bool with_representatives = false);

Q pair(const SparseVector& a, const SparseVector& b);
SparseVector apply_sparse(const SparseMatrix& m, const SparseVector& v);

// Action of a leg permutation on the homology of the Feynman transform, in the z basis of degree k.
QMat homology_action(const FTComplex& c, const HomologyResult& h, int k, const std::vector<int>& perm);

}  // namespace gcx

#endif
