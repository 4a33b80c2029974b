#ifndef GCX_TESTS_ORACLES_HPP
#define GCX_TESTS_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "gcx/graph.hpp"
#include "gcx/rational.hpp"

// Slow reference implementations, independent of the library code paths they check.
namespace oracle {

// Isomorphism classes of (g,n)-graphs (corolla included), enumerated as vertex-labelled
// multigraphs and deduplicated by trying every vertex permutation.
long count_graphs(int g, int n, int max_edges = -1);

// Order of the flag automorphism group, from vertex permutations and edge multiplicities.
std::uint64_t aut_order(const gcx::Graph& gr);

// Dense fraction-field elimination.
int dense_rank(std::vector<std::vector<gcx::Q>> m);

// Caterpillar trees with leaves 1 and 2 at the spine ends, counted by listing the spine orders.
long caterpillar_count(int n);
// Rank of the left-normed brackets of k distinct letters expanded as words.
int free_lie_multilinear_rank(int k);

long factorial(int n);
long catalan(int n);
long binomial(int n, int k);
// Dimension of the irreducible S_n representation by the hook length formula.
long hook_dimension(const std::vector<int>& lambda);

}  // namespace oracle

#endif
