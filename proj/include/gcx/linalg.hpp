#ifndef GCX_LINALG_HPP
#define GCX_LINALG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

// Sparse rational matrix stored by rows; entries sorted by column, no stored zeros.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Q>>> row;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), row(r) {}

    // Accumulates v into (r, c); call finalize() before use.
    void add(int r, int c, const Q& v);
    void finalize();
    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }
    Q at(int r, int c) const;

    static SparseMatrix from_dense(const QMat& m);
    QMat to_dense() const;
    SparseMatrix transpose() const;
    std::vector<Q> apply(const std::vector<Q>& v) const;
    bool operator==(const SparseMatrix& o) const { return rows == o.rows && cols == o.cols && row == o.row; }
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);

using SparseVector = std::vector<std::pair<int, Q>>;

// Exact rank by sparse elimination with Markowitz pivot choice.
int rank_exact(const SparseMatrix& m);
// Rank modulo p; nullopt if some denominator vanishes mod p.
std::optional<int> rank_mod(const SparseMatrix& m, std::uint32_t p);
// Three fixed primes above 2^30.
const std::vector<std::uint32_t>& rank_primes();

// Bookkeeping of every modular-vs-exact comparison made by rank().
struct RankStats {
    long compared = 0;
    long agreed = 0;
};
RankStats rank_stats();
void reset_rank_stats();
// When set, rank() also runs the modular path and records agreement.
void set_rank_crosscheck(bool on);

// Rank used by the homology code: exact, optionally cross-checked.
int rank(const SparseMatrix& m);

// Reduced row echelon form (dense); returns pivot columns.
std::vector<int> rref(QMat& m);
// Basis of the kernel as columns of the returned matrix (cols x k), one free column per vector.
QMat kernel_basis(const QMat& m);
QMat kernel_basis(const SparseMatrix& m);
// Kernel basis by sparse elimination, one vector per non-pivot column in increasing order.
std::vector<SparseVector> sparse_kernel(const SparseMatrix& m);
// Solves x * a = b for row vector x if possible.
std::optional<std::vector<Q>> solve_left(const QMat& a, const std::vector<Q>& b);

std::string triplets(const SparseMatrix& m);

}  // namespace gcx

#endif
