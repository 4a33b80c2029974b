#ifndef GCX_CHARACTERS_HPP
#define GCX_CHARACTERS_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

using Partition = std::vector<int>;  // weakly decreasing, positive parts

std::vector<Partition> partitions(int n);
// Irreducible character value chi^lambda on the class of cycle type mu (rim-hook recursion).
long long character_value(const Partition& lambda, const Partition& mu);
// Size of the conjugacy class of cycle type mu in S_n.
long long class_size(const Partition& mu);

// Matrix of a permutation from the adjacent-transposition matrices s[0..n-2].
QMat permutation_matrix(const std::vector<QMat>& s, const std::vector<int>& perm, int dim);
// Representative permutation of a cycle type (consecutive cycles).
std::vector<int> cycle_type_representative(const Partition& mu);

// Traces on one representative per cycle type.
std::map<Partition, Q> character(const std::vector<QMat>& s, int n, int dim);
// Multiplicities of the irreducibles; throws NonIntegralMultiplicity.
std::map<Partition, long long> decompose_character(int n, const std::map<Partition, Q>& chi);

std::string partition_name(const Partition& p);

}  // namespace gcx

#endif
