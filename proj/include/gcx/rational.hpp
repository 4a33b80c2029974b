#ifndef GCX_RATIONAL_HPP
#define GCX_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gcx {

using Q = mpq_class;

// "p/q" or "p"; throws std::invalid_argument on malformed input.
Q parse_rational(const std::string& s);
std::string to_string(const Q& q);

// Dense rational matrix, row-major.
struct QMat {
    int rows = 0;
    int cols = 0;
    std::vector<Q> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    static QMat identity(int n);

    Q& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Q& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_zero() const;
};

QMat operator*(const QMat& x, const QMat& y);
QMat operator+(const QMat& x, const QMat& y);
QMat operator-(const QMat& x, const QMat& y);
QMat scaled(const QMat& x, const Q& s);
QMat transpose(const QMat& x);
QMat kron(const QMat& x, const QMat& y);
std::vector<Q> apply(const QMat& m, const std::vector<Q>& v);

// Exact dense helpers used on small matrices.
int dense_rank(QMat m);
Q determinant(QMat m);
// Returns false if singular.
bool inverse(const QMat& m, QMat& out);

}  // namespace gcx

#endif
