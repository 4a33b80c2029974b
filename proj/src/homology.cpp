#include "gcx/homology.hpp"

#include <algorithm>

namespace gcx {

Q pair(const SparseVector& a, const SparseVector& b) {
    Q s = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            ++i;
        else if (b[j].first < a[i].first)
            ++j;
        else
            s += a[i++].second * b[j++].second;
    }
    return s;
}

SparseVector apply_sparse(const SparseMatrix& m, const SparseVector& v) {
    std::vector<Q> dense(m.cols);
    for (const auto& [c, x] : v) dense[c] = x;
    SparseVector out;
    for (int r = 0; r < m.rows; ++r) {
        Q s = 0;
        for (const auto& [c, x] : m.row[r])
            if (dense[c] != 0) s += x * dense[c];
        if (s != 0) out.emplace_back(r, s);
    }
    return out;
}

namespace {

std::vector<SparseVector> units(int n) {
    std::vector<SparseVector> r(n);
    for (int i = 0; i < n; ++i) r[i].emplace_back(i, Q(1));
    return r;
}

}  // namespace

HomologyResult homology(const FTComplex& c, bool with_representatives) {
    HomologyResult h;
    std::map<int, int> rk;
    for (const auto& [deg, m] : c.boundary) rk[deg] = rank(m);
    for (const auto& [deg, blk] : c.basis) {
        int b = static_cast<int>(blk.size());
        if (rk.count(deg)) b -= rk[deg];
        if (rk.count(deg - 1)) b -= rk[deg - 1];
        if (b != 0) h.betti[deg] = b;
    }
    if (!with_representatives) return h;
    for (const auto& [deg, betti] : h.betti) {
        int dim = c.dim(deg);
        auto out = c.boundary.find(deg);
        auto in = c.boundary.find(deg - 1);
        std::vector<SparseVector> zc = out == c.boundary.end() ? units(dim) : sparse_kernel(out->second);
        std::vector<SparseVector> zf = in == c.boundary.end() ? units(dim) : sparse_kernel(in->second.transpose());
        // pairing matrix: rows FT cycles, columns contraction cycles
        QMat p(static_cast<int>(zf.size()), static_cast<int>(zc.size()));
        for (size_t a = 0; a < zf.size(); ++a)
            for (size_t b = 0; b < zc.size(); ++b) p(static_cast<int>(a), static_cast<int>(b)) = pair(zf[a], zc[b]);
        QMat red = p;
        auto cols = rref(red);
        if (static_cast<int>(cols.size()) != betti) throw CoeffError("ProjectionFailure", "pairing rank differs from the Betti number");
        QMat sub(p.rows, betti);
        for (int b = 0; b < betti; ++b)
            for (int a = 0; a < p.rows; ++a) sub(a, b) = p(a, cols[b]);
        QMat subt = transpose(sub);
        auto rows = rref(subt);
        QMat m(betti, betti);
        for (int a = 0; a < betti; ++a)
            for (int b = 0; b < betti; ++b) m(a, b) = sub(rows[a], b);
        QMat inv;
        if (!inverse(m, inv)) throw CoeffError("ProjectionFailure", "singular pairing block");
        std::vector<SparseVector> cs, zs;
        for (int b = 0; b < betti; ++b) cs.push_back(zc[cols[b]]);
        for (int a = 0; a < betti; ++a) {
            std::map<int, Q> acc;
            for (int t = 0; t < betti; ++t) {
                if (inv(a, t) == 0) continue;
                for (const auto& [i, x] : zf[rows[t]]) acc[i] += inv(a, t) * x;
            }
            SparseVector z;
            for (auto& [i, x] : acc)
                if (x != 0) z.emplace_back(i, x);
            zs.push_back(std::move(z));
        }
        h.c_cycles[deg] = std::move(cs);
        h.z_cycles[deg] = std::move(zs);
    }
    return h;
}

QMat homology_action(const FTComplex& c, const HomologyResult& h, int k, const std::vector<int>& perm) {
    const auto& cs = h.c_cycles.at(k);
    const auto& zs = h.z_cycles.at(k);
    int b = static_cast<int>(cs.size());
    SparseMatrix act = leg_action(c, k, inverse_perm(perm));
    QMat m(b, b);
    for (int j = 0; j < b; ++j) {
        SparseVector moved = apply_sparse(act, cs[j]);
        for (int a = 0; a < b; ++a) m(j, a) = pair(zs[a], moved);
    }
    return m;
}

}  // namespace gcx
