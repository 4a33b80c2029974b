#include "gcx/spectral.hpp"

#include <algorithm>
#include <sstream>

#include "gcx/feynman.hpp"
#include "gcx/homology.hpp"
#include "gcx/linalg.hpp"

namespace gcx {

long BigradedTable::total() const {
    long s = 0;
    for (const auto& [k, d] : dims) s += d;
    return s;
}

long BigradedTable::row_total(int r) const {
    long s = 0;
    for (const auto& [k, d] : dims)
        if (k.second == r) s += d;
    return s;
}

std::map<int, long> BigradedTable::row(int r) const {
    std::map<int, long> out;
    for (const auto& [k, d] : dims)
        if (k.second == r) out[k.first] = d;
    return out;
}

std::string BigradedTable::to_csv(bool raw, bool header) const {
    std::ostringstream o;
    if (header) o << "page,row,col,dim\n";
    for (const auto& [k, d] : dims) o << page << ',' << (raw && filtration == "internal" ? -k.second : k.second) << ',' << k.first << ',' << d << '\n';
    return o.str();
}

std::string BigradedTable::to_grid() const {
    std::ostringstream o;
    o << filtration << " filtration, page " << page << ", (g,n)=(" << g << ',' << n << ")\n";
    if (dims.empty()) return o.str() + "(empty)\n";
    int c0 = dims.begin()->first.first, c1 = c0, r0 = dims.begin()->first.second, r1 = r0;
    for (const auto& [k, d] : dims) {
        c0 = std::min(c0, k.first);
        c1 = std::max(c1, k.first);
        r0 = std::min(r0, k.second);
        r1 = std::max(r1, k.second);
    }
    r0 = std::min(r0, 0);
    for (int r = r1; r >= r0; --r) {
        o.width(4);
        o << r << " |";
        for (int c = c0; c <= c1; ++c) {
            auto it = dims.find({c, r});
            o.width(6);
            o << (it == dims.end() ? std::string(".") : std::to_string(it->second));
        }
        o << '\n';
    }
    o << "     +" << std::string(6 * (c1 - c0 + 1), '-') << "\n      ";
    for (int c = c0; c <= c1; ++c) {
        o.width(6);
        o << c;
    }
    o << '\n';
    return o.str();
}

namespace {

// Rows of one complex; boundary blocks restricted to each row.
SpectralPages pages_by(const FTComplex& c, const std::string& filtration, const std::vector<std::vector<int>>& row_of) {
    SpectralPages p;
    p.e0.filtration = p.e1.filtration = filtration;
    p.e0.page = 0;
    p.e1.page = 1;
    p.e0.g = p.e1.g = c.g;
    p.e0.n = p.e1.n = c.n;
    // row of each basis element, per degree
    std::map<int, std::vector<int>> rows;
    for (const auto& [deg, blk] : c.basis)
        for (const auto& [gi, local] : blk) {
            int r = row_of[gi][local];
            rows[deg].push_back(r);
            ++p.e0.dims[{deg, r}];
        }
    std::map<std::pair<int, int>, int> rk;  // (source degree, row) -> rank
    for (const auto& [deg, m] : c.boundary) {
        const auto& src = rows.at(deg);
        const auto& dst = rows.at(deg + 1);
        std::map<int, std::vector<int>> scol, drow;
        for (size_t i = 0; i < src.size(); ++i) scol[src[i]].push_back(static_cast<int>(i));
        for (size_t i = 0; i < dst.size(); ++i) drow[dst[i]].push_back(static_cast<int>(i));
        std::vector<int> rpos(dst.size());
        for (const auto& [r, idx] : drow)
            for (size_t k = 0; k < idx.size(); ++k) rpos[idx[k]] = static_cast<int>(k);
        for (int i = 0; i < m.rows; ++i)
            for (const auto& [col, v] : m.row[i])
                if (dst[i] != src[col]) throw CoeffError("NotStrong", "the differential changes the filtration row");
        for (const auto& [r, cols] : scol) {
            auto it = drow.find(r);
            if (it == drow.end()) continue;
            std::vector<int> cpos(src.size(), -1);
            for (size_t k = 0; k < cols.size(); ++k) cpos[cols[k]] = static_cast<int>(k);
            SparseMatrix sub(static_cast<int>(it->second.size()), static_cast<int>(cols.size()));
            for (int i : it->second)
                for (const auto& [col, v] : m.row[i])
                    if (cpos[col] >= 0) sub.add(rpos[i], cpos[col], v);
            sub.finalize();
            rk[{deg, r}] = rank(sub);
        }
    }
    for (const auto& [k, d] : p.e0.dims) {
        auto [deg, r] = k;
        long b = d;
        if (rk.count({deg, r})) b -= rk[{deg, r}];
        if (rk.count({deg - 1, r})) b -= rk[{deg - 1, r}];
        if (b) p.e1.dims[k] = b;
    }
    return p;
}

class CyclicPart : public CoeffSystem {
public:
    explicit CyclicPart(std::shared_ptr<const CoeffSystem> b) : base_(std::move(b)) {}
    std::string name() const override { return "cyclic(" + base_->name() + ")"; }
    bool odd() const override { return base_->odd(); }
    int max_genus() const override { return 0; }
    bool covers(int g, int n) const override { return g > 0 || base_->covers(g, n); }
    int dim(int g, int n) const override { return g == 0 ? base_->dim(g, n) : 0; }
    std::vector<int> degrees(int g, int n) const override { return g == 0 ? base_->degrees(g, n) : std::vector<int>{}; }

protected:
    QMat act_impl(int g, int n, const std::vector<int>& perm) const override {
        return g == 0 ? base_->act(g, n, perm) : QMat(0, 0);
    }
    QMat compose_impl(int g1, int n1, int i, int g2, int n2, int j) const override {
        if (g1 || g2) return QMat(dim(g1 + g2, n1 + n2 - 2), dim(g1, n1) * dim(g2, n2));
        return base_->compose(g1, n1, i, g2, n2, j);
    }
    QMat contract_impl(int g, int n, int, int) const override { return QMat(dim(g + 1, n - 2), dim(g, n)); }

private:
    std::shared_ptr<const CoeffSystem> base_;
};

}  // namespace

SpectralPages internal_pages(std::shared_ptr<const CoeffSystem> a, int g, int n) {
    auto c = build_ft(a, g, n);
    std::vector<std::vector<int>> row_of(c.graphs.size());
    for (size_t i = 0; i < c.graphs.size(); ++i) {
        const auto& fg = c.graphs[i];
        int e = a->odd() ? 0 : fg.cg.graph.num_edges();
        for (int m : fg.degree) row_of[i].push_back(-m - e);
    }
    return pages_by(c, "internal", row_of);
}

std::shared_ptr<CoeffSystem> cyclic_part(std::shared_ptr<const CoeffSystem> sys) { return std::make_shared<CyclicPart>(std::move(sys)); }

SpectralPages genus_bottom_row(std::shared_ptr<const CoeffSystem> sys, int g, int n) {
    auto c = build_ft(cyclic_part(std::move(sys)), g, n);
    std::vector<std::vector<int>> row_of(c.graphs.size());
    for (size_t i = 0; i < c.graphs.size(); ++i) row_of[i].assign(c.graphs[i].degree.size(), c.graphs[i].cg.graph.genus_label_sum());
    return pages_by(c, "genus", row_of);
}

std::string ConvergenceReport::to_text() const {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s + (ok ? "convergence check: ok\n" : "convergence check: FAILED\n");
}

ConvergenceReport convergence_check(const BigradedTable& e0, const BigradedTable& e1, long abutment_chi) {
    ConvergenceReport rep;
    auto chi_rows = [](const BigradedTable& t) {
        std::map<int, long> r;
        for (const auto& [k, d] : t.dims) r[k.second] += (k.first % 2 == 0 ? 1 : -1) * d;
        return r;
    };
    auto a = chi_rows(e0), b = chi_rows(e1);
    for (const auto& [r, v] : b) a.emplace(r, 0);
    long total = 0;
    for (const auto& [r, v] : a) {
        long w = b.count(r) ? b.at(r) : 0;
        total += v;
        std::ostringstream o;
        o << "filtration degree " << r << ": chi(page 0)=" << v << " chi(page 1)=" << w;
        if (v != w) {
            rep.ok = false;
            o << "  MISMATCH";
        }
        rep.lines.push_back(o.str());
    }
    std::ostringstream o;
    o << "total chi=" << total << " abutment chi=" << abutment_chi;
    if (total != abutment_chi) {
        rep.ok = false;
        o << "  MISMATCH";
    }
    rep.lines.push_back(o.str());
    rep.lines.push_back(higher_pages_note());
    return rep;
}

}  // namespace gcx
