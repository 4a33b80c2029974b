#ifndef GCX_TUBING_HPP
#define GCX_TUBING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gcx/graph.hpp"
#include "gcx/nesting.hpp"

namespace gcx {

// Tubes of a simple graph: proper non-empty vertex sets inducing a connected subgraph.
std::vector<std::uint64_t> enumerate_tubes(const SimpleGraph& l);
bool tubes_compatible(const SimpleGraph& l, std::uint64_t a, std::uint64_t b);
std::vector<std::vector<std::uint64_t>> enumerate_tubings(const SimpleGraph& l);

// Graded poset by Hasse diagram; covers (a, b) mean a < b with rank(b) = rank(a) + 1.
struct RankedPoset {
    std::vector<int> rank;
    std::vector<std::pair<int, int>> covers;
};

// Poset of a family of sets closed under taking subsets, ordered by inclusion.
RankedPoset inclusion_poset(const std::vector<std::vector<std::uint64_t>>& family);
// Isomorphism-invariant code: equal codes iff the posets are isomorphic.
std::vector<int> poset_canonical_code(const RankedPoset& p);

struct PolytopeReport {
    std::vector<long> nesting_f_vector;  // index d counts faces of dimension d
    std::vector<long> tubing_f_vector;
    long full_nestings = 0;
    long full_tubings = 0;
    long alternating_sum = 0;
    bool isomorphic = false;
    std::string to_json() const;
};

PolytopeReport verify_polytope(const Graph& gr);

}  // namespace gcx

#endif
