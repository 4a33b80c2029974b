#include "gcx/rational.hpp"

#include <stdexcept>

namespace gcx {

Q parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Q q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool QMat::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

QMat operator*(const QMat& x, const QMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product: shape mismatch");
    QMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Q& v = x(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                if (y(k, j) != 0) r(i, j) += v * y(k, j);
        }
    return r;
}

QMat operator+(const QMat& x, const QMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum: shape mismatch");
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

QMat operator-(const QMat& x, const QMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix difference: shape mismatch");
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

QMat scaled(const QMat& x, const Q& s) {
    QMat r = x;
    for (auto& v : r.a) v *= s;
    return r;
}

QMat transpose(const QMat& x) {
    QMat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
    return r;
}

QMat kron(const QMat& x, const QMat& y) {
    QMat r(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            if (x(i, j) == 0) continue;
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l) r(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
        }
    return r;
}

std::vector<Q> apply(const QMat& m, const std::vector<Q>& v) {
    if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("apply: shape mismatch");
    std::vector<Q> r(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m(i, j) != 0 && v[j] != 0) r[i] += m(i, j) * v[j];
    return r;
}

int dense_rank(QMat m) {
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int p = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m(r, c) != 0) { p = r; break; }
        if (p < 0) continue;
        if (p != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(rank, j));
        for (int r = rank + 1; r < m.rows; ++r) {
            if (m(r, c) == 0) continue;
            Q f = m(r, c) / m(rank, c);
            for (int j = c; j < m.cols; ++j) m(r, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

Q determinant(QMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    Q det = 1;
    int n = m.rows;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (m(r, c) != 0) { p = r; break; }
        if (p < 0) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Q f = m(r, c) / m(c, c);
            for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

bool inverse(const QMat& m, QMat& out) {
    if (m.rows != m.cols) return false;
    int n = m.rows;
    QMat a = m;
    out = QMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (a(r, c) != 0) { p = r; break; }
        if (p < 0) return false;
        if (p != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(out(p, j), out(c, j));
            }
        Q inv = 1 / a(c, c);
        for (int j = 0; j < n; ++j) {
            a(c, j) *= inv;
            out(c, j) *= inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Q f = a(r, c);
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                out(r, j) -= f * out(c, j);
            }
        }
    }
    return true;
}

}  // namespace gcx
