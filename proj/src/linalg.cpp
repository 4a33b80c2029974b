#include "gcx/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace gcx {

void SparseMatrix::add(int r, int c, const Q& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("SparseMatrix::add");
    if (v != 0) row[r].emplace_back(c, v);
}

void SparseMatrix::finalize() {
    for (auto& rw : row) {
        std::sort(rw.begin(), rw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Q>> merged;
        for (auto& [c, v] : rw) {
            if (!merged.empty() && merged.back().first == c)
                merged.back().second += v;
            else
                merged.emplace_back(c, v);
        }
        rw.clear();
        for (auto& p : merged)
            if (p.second != 0) rw.push_back(std::move(p));
    }
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& rw : row) n += rw.size();
    return n;
}

Q SparseMatrix::at(int r, int c) const {
    for (const auto& [j, v] : row[r])
        if (j == c) return v;
    return 0;
}

SparseMatrix SparseMatrix::from_dense(const QMat& m) {
    SparseMatrix s(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m(i, j) != 0) s.row[i].emplace_back(j, m(i, j));
    return s;
}

QMat SparseMatrix::to_dense() const {
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : row[i]) m(i, j) = v;
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : row[i]) t.row[j].emplace_back(i, v);
    return t;
}

std::vector<Q> SparseMatrix::apply(const std::vector<Q>& v) const {
    if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("SparseMatrix::apply: shape mismatch");
    std::vector<Q> r(rows);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, x] : row[i])
            if (v[j] != 0) r[i] += x * v[j];
    return r;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("sparse product: shape mismatch");
    SparseMatrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (const auto& [k, x] : a.row[i])
            for (const auto& [j, y] : b.row[k]) r.row[i].emplace_back(j, x * y);
    }
    r.finalize();
    return r;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("sparse sum: shape mismatch");
    SparseMatrix r = a;
    for (int i = 0; i < b.rows; ++i)
        for (const auto& e : b.row[i]) r.row[i].push_back(e);
    r.finalize();
    return r;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("sparse difference: shape mismatch");
    SparseMatrix r = a;
    for (int i = 0; i < b.rows; ++i)
        for (const auto& [j, v] : b.row[i]) r.row[i].emplace_back(j, -v);
    r.finalize();
    return r;
}

namespace {

struct QField {
    using T = Q;
    static bool zero(const T& x) { return x == 0; }
    T mul(const T& a, const T& b) const { return a * b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T div(const T& a, const T& b) const { return a / b; }
};

struct ModField {
    using T = std::uint64_t;
    std::uint64_t p;
    static bool zero(T x) { return x == 0; }
    T mul(T a, T b) const { return a * b % p; }
    T sub(T a, T b) const { return (a + p - b) % p; }
    T inv(T a) const {
        T r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    }
    T div(T a, T b) const { return a * inv(b) % p; }
};

template <class F>
using PivotLog = std::vector<std::pair<int, std::vector<std::pair<int, typename F::T>>>>;

template <class F>
int eliminate(int cols, std::vector<std::vector<std::pair<int, typename F::T>>> rows, const F& f, PivotLog<F>* log = nullptr) {
    using T = typename F::T;
    int nrows = static_cast<int>(rows.size());
    std::vector<std::vector<int>> col_rows(cols);
    std::vector<int> count(cols, 0);
    for (int r = 0; r < nrows; ++r)
        for (const auto& [c, v] : rows[r]) {
            col_rows[c].push_back(r);
            ++count[c];
        }
    std::vector<char> row_done(nrows, 0), col_done(cols, 0);
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (int c = 0; c < cols; ++c)
        if (count[c] > 0) pq.emplace(count[c], c);
    auto has = [&](int r, int c) -> const T* {
        const auto& rw = rows[r];
        auto it = std::lower_bound(rw.begin(), rw.end(), c, [](const auto& e, int x) { return e.first < x; });
        if (it != rw.end() && it->first == c) return &it->second;
        return nullptr;
    };
    int rank = 0;
    std::vector<std::pair<int, T>> merged;
    while (!pq.empty()) {
        auto [cnt, c] = pq.top();
        pq.pop();
        if (col_done[c] || cnt != count[c]) continue;
        if (count[c] == 0) {
            col_done[c] = 1;
            continue;
        }
        std::vector<int> live;
        for (int r : col_rows[c])
            if (!row_done[r] && has(r, c)) live.push_back(r);
        std::sort(live.begin(), live.end());
        live.erase(std::unique(live.begin(), live.end()), live.end());
        col_rows[c] = live;
        int piv = live.front();
        for (int r : live)
            if (rows[r].size() < rows[piv].size()) piv = r;
        T pv = *has(piv, c);
        if (log) log->emplace_back(c, rows[piv]);
        ++rank;
        row_done[piv] = 1;
        col_done[c] = 1;
        for (const auto& [j, v] : rows[piv]) {
            --count[j];
            if (!col_done[j]) pq.emplace(count[j], j);
        }
        for (int r : live) {
            if (r == piv) continue;
            T factor = f.div(*has(r, c), pv);
            merged.clear();
            const auto& a = rows[r];
            const auto& b = rows[piv];
            size_t i = 0, k = 0;
            while (i < a.size() || k < b.size()) {
                if (k == b.size() || (i < a.size() && a[i].first < b[k].first)) {
                    merged.push_back(a[i++]);
                } else if (i == a.size() || b[k].first < a[i].first) {
                    T v = f.sub(T(0), f.mul(factor, b[k].second));
                    int j = b[k].first;
                    if (!F::zero(v)) {
                        merged.emplace_back(j, v);
                        ++count[j];
                        col_rows[j].push_back(r);
                        if (!col_done[j]) pq.emplace(count[j], j);
                    }
                    ++k;
                } else {
                    int j = a[i].first;
                    T v = f.sub(a[i].second, f.mul(factor, b[k].second));
                    if (!F::zero(v)) {
                        merged.emplace_back(j, v);
                    } else {
                        --count[j];
                        if (!col_done[j]) pq.emplace(count[j], j);
                    }
                    ++i;
                    ++k;
                }
            }
            rows[r].swap(merged);
        }
    }
    return rank;
}

std::atomic<bool> g_crosscheck{false};
std::mutex g_stats_lock;
RankStats g_stats;

}  // namespace

int rank_exact(const SparseMatrix& m) { return eliminate(m.cols, m.row, QField{}); }

std::vector<SparseVector> sparse_kernel(const SparseMatrix& m) {
    PivotLog<QField> log;
    eliminate(m.cols, m.row, QField{}, &log);
    std::vector<char> pivot(m.cols, 0);
    for (const auto& [c, r] : log) pivot[c] = 1;
    std::vector<SparseVector> out;
    std::vector<Q> x(m.cols);
    std::vector<int> touched;
    for (int fcol = 0; fcol < m.cols; ++fcol) {
        if (pivot[fcol]) continue;
        x[fcol] = 1;
        touched.assign(1, fcol);
        for (auto it = log.rbegin(); it != log.rend(); ++it) {
            const auto& [p, r] = *it;
            Q s = 0, pv = 0;
            for (const auto& [c, v] : r) {
                if (c == p)
                    pv = v;
                else if (x[c] != 0)
                    s += v * x[c];
            }
            if (s != 0) {
                x[p] = -s / pv;
                touched.push_back(p);
            }
        }
        std::sort(touched.begin(), touched.end());
        SparseVector v;
        for (int c : touched) {
            v.emplace_back(c, x[c]);
            x[c] = 0;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<int> rank_mod(const SparseMatrix& m, std::uint32_t p) {
    ModField f{p};
    std::vector<std::vector<std::pair<int, std::uint64_t>>> rows(m.rows);
    mpz_class P = p;
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.row[i]) {
            mpz_class num = v.get_num() % P, den = v.get_den() % P;
            if (num < 0) num += P;
            if (den == 0) return std::nullopt;
            std::uint64_t x = f.div(num.get_ui(), den.get_ui());
            if (x) rows[i].emplace_back(j, x);
        }
    return eliminate(m.cols, std::move(rows), f);
}

const std::vector<std::uint32_t>& rank_primes() {
    static const std::vector<std::uint32_t> primes{1073741827u, 1073741831u, 1073741833u};
    return primes;
}

RankStats rank_stats() {
    std::lock_guard<std::mutex> lock(g_stats_lock);
    return g_stats;
}

void reset_rank_stats() {
    std::lock_guard<std::mutex> lock(g_stats_lock);
    g_stats = {};
}

void set_rank_crosscheck(bool on) { g_crosscheck = on; }

int rank(const SparseMatrix& m) {
    int r = rank_exact(m);
    if (g_crosscheck) {
        bool agree = true;
        for (auto p : rank_primes()) {
            auto rm = rank_mod(m, p);
            if (rm && *rm != r) agree = false;
        }
        std::lock_guard<std::mutex> lock(g_stats_lock);
        ++g_stats.compared;
        if (agree) ++g_stats.agreed;
    }
    return r;
}

std::vector<int> rref(QMat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (m(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        Q inv = 1 / m(r, c);
        for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Q f = m(i, c);
            for (int j = c; j < m.cols; ++j)
                if (m(r, j) != 0) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

QMat kernel_basis(const QMat& m) {
    QMat a = m;
    auto piv = rref(a);
    std::vector<char> is_piv(m.cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    QMat k(m.cols, static_cast<int>(free_cols.size()));
    for (size_t t = 0; t < free_cols.size(); ++t) {
        int fc = free_cols[t];
        k(fc, static_cast<int>(t)) = 1;
        for (size_t i = 0; i < piv.size(); ++i) k(piv[i], static_cast<int>(t)) = -a(static_cast<int>(i), fc);
    }
    return k;
}

QMat kernel_basis(const SparseMatrix& m) { return kernel_basis(m.to_dense()); }

std::optional<std::vector<Q>> solve_left(const QMat& a, const std::vector<Q>& b) {
    // x a = b  <=>  a^T x^T = b^T
    int n = a.rows, k = a.cols;
    QMat aug(k, n + 1);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(j, i);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    std::vector<Q> x(n);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(static_cast<int>(i), n);
    return x;
}

std::string triplets(const SparseMatrix& m) {
    std::string s;
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.row[i]) s += std::to_string(i) + "," + std::to_string(j) + "," + to_string(v) + "\n";
    return s;
}

}  // namespace gcx
