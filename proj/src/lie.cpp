#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "gcx/coeff.hpp"
#include "gcx/graph.hpp"

namespace gcx {

namespace {

// Trivalent tree with labelled leaves. Leaf nodes carry a label >= 1, internal
// nodes have label 0 and a cyclically ordered triple of neighbours.
struct Tree {
    std::vector<int> label;
    std::vector<std::array<int, 3>> nbr;  // leaves use nbr[0] only

    int add(int lab) {
        label.push_back(lab);
        nbr.push_back({-1, -1, -1});
        return static_cast<int>(label.size()) - 1;
    }
};

using Word = std::vector<int>;
using Poly = std::map<Word, long long>;

Poly bracket(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word ab = wa, ba = wb;
            ab.insert(ab.end(), wb.begin(), wb.end());
            ba.insert(ba.end(), wa.begin(), wa.end());
            r[ab] += ca * cb;
            r[ba] -= ca * cb;
        }
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

Poly expand(const Tree& t, int node, int from) {
    if (t.label[node] > 0) return Poly{{Word{t.label[node]}, 1}};
    const auto& nb = t.nbr[node];
    int l, r;
    if (nb[0] == from) {
        l = nb[1];
        r = nb[2];
    } else if (nb[1] == from) {
        l = nb[2];
        r = nb[0];
    } else {
        l = nb[0];
        r = nb[1];
    }
    return bracket(expand(t, l, node), expand(t, r, node));
}

// Lie word of the tree seen from the leaf labelled 2.
Poly tree_poly(const Tree& t) {
    int root = static_cast<int>(std::find(t.label.begin(), t.label.end(), 2) - t.label.begin());
    return expand(t, t.nbr[root][0], root);
}

// Caterpillar [[..[1,x1],x2]..] rooted at 2.
Tree caterpillar(const std::vector<int>& xs) {
    Tree t;
    int cur = t.add(1);
    for (int x : xs) {
        int v = t.add(0);
        int leaf = t.add(x);
        t.nbr[leaf][0] = v;
        t.nbr[v] = {-1, cur, leaf};
        t.nbr[cur][0] = v;
        cur = v;
    }
    int root = t.add(2);
    t.nbr[root][0] = cur;
    t.nbr[cur][0] = root;
    return t;
}

class LieSystem : public CoeffSystem {
public:
    std::string name() const override { return "lie"; }
    bool odd() const override { return false; }
    int max_genus() const override { return 0; }
    int dim(int g, int n) const override {
        if (g != 0 || n < 3) return 0;
        int d = 1;
        for (int k = 2; k <= n - 2; ++k) d *= k;
        return d;
    }
    std::vector<int> degrees(int g, int n) const override { return std::vector<int>(dim(g, n), 0); }

protected:
    QMat act_impl(int g, int n, const std::vector<int>& perm) const override {
        int d = dim(g, n);
        QMat m(d, d);
        if (!d) return m;
        const auto& b = basis(n);
        for (int c = 0; c < d; ++c) {
            Tree t = caterpillar(b[c]);
            for (int& l : t.label)
                if (l > 0) l = perm[l - 1] + 1;
            set_column(m, c, coords(n, tree_poly(t)));
        }
        return m;
    }

    QMat compose_impl(int g1, int n1, int i, int g2, int n2, int j) const override {
        int n = n1 + n2 - 2;
        int d = dim(g1 + g2, n), d1 = dim(g1, n1), d2 = dim(g2, n2);
        QMat m(d, d1 * d2);
        if (!d || !d1 || !d2) return m;
        auto order = glue_pair_order(n1, i, n2, j);
        std::map<std::pair<int, int>, int> newlabel;
        for (size_t k = 0; k < order.size(); ++k) newlabel[order[k]] = static_cast<int>(k) + 1;
        const auto& b1 = basis(n1);
        const auto& b2 = basis(n2);
        for (int a = 0; a < d1; ++a)
            for (int b = 0; b < d2; ++b) {
                Tree x = caterpillar(b1[a]);
                Tree y = caterpillar(b2[b]);
                int off = static_cast<int>(x.label.size());
                Tree t = x;
                for (size_t k = 0; k < y.label.size(); ++k) {
                    t.label.push_back(y.label[k]);
                    auto nb = y.nbr[k];
                    for (int& z : nb)
                        if (z >= 0) z += off;
                    t.nbr.push_back(nb);
                }
                int li = -1, lj = -1;
                for (int k = 0; k < off; ++k)
                    if (t.label[k] == i) li = k;
                for (size_t k = off; k < t.label.size(); ++k)
                    if (t.label[k] == j) lj = static_cast<int>(k);
                int p = t.nbr[li][0], q = t.nbr[lj][0];
                for (int& z : t.nbr[p])
                    if (z == li) z = q;
                for (int& z : t.nbr[q])
                    if (z == lj) z = p;
                t.label[li] = t.label[lj] = -1;
                for (int k = 0; k < static_cast<int>(t.label.size()); ++k)
                    if (t.label[k] > 0) t.label[k] = newlabel.at({k < off ? 0 : 1, t.label[k]});
                set_column(m, a * d2 + b, coords(n, tree_poly(t)));
            }
        return m;
    }

    QMat contract_impl(int g, int n, int, int) const override { return QMat(dim(g + 1, n - 2), dim(g, n)); }

private:
    mutable std::mutex blk_;
    mutable std::map<int, std::vector<std::vector<int>>> basis_;

    // Tails (x1..x_{n-2}) of the basis words 1 x1 .. x_{n-2}, lexicographic.
    const std::vector<std::vector<int>>& basis(int n) const {
        std::lock_guard<std::mutex> l(blk_);
        auto it = basis_.find(n);
        if (it != basis_.end()) return it->second;
        std::vector<int> xs(n - 2);
        std::iota(xs.begin(), xs.end(), 3);
        std::vector<std::vector<int>> out;
        do out.push_back(xs);
        while (std::next_permutation(xs.begin(), xs.end()));
        return basis_.emplace(n, std::move(out)).first->second;
    }

    std::vector<Q> coords(int n, const Poly& p) const {
        const auto& b = basis(n);
        std::vector<Q> v(b.size());
        for (const auto& [w, c] : p) {
            if (w.front() != 1) continue;
            std::vector<int> tail(w.begin() + 1, w.end());
            auto it = std::lower_bound(b.begin(), b.end(), tail);
            v[it - b.begin()] = Q(static_cast<long>(c));
        }
        return v;
    }

    static void set_column(QMat& m, int c, const std::vector<Q>& v) {
        for (int r = 0; r < m.rows; ++r) m(r, c) = v[r];
    }
};

}  // namespace

std::shared_ptr<CoeffSystem> lie_system() { return std::make_shared<LieSystem>(); }

}  // namespace gcx
