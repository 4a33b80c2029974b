#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "gcx/canonical.hpp"
#include "gcx/coeff.hpp"
#include "gcx/enumerate.hpp"
#include "gcx/graph.hpp"
#include "gcx/presentation.hpp"

namespace gcx {

namespace {

struct Spec {
    std::vector<int> genus;
    std::vector<int> legs;                    // legs per vertex
    std::vector<std::pair<int, int>> edges;  // vertex pairs
};

// Legs first (labels in vertex order), then each edge as two consecutive flags.
Graph build(const Spec& s) {
    Graph g;
    g.genus = s.genus;
    int label = 0;
    for (size_t v = 0; v < s.legs.size(); ++v)
        for (int k = 0; k < s.legs[v]; ++k) {
            int f = g.num_flags();
            g.inv.push_back(f);
            g.adj.push_back(static_cast<int>(v));
            g.leg.push_back(++label);
        }
    for (auto [a, b] : s.edges) {
        int f = g.num_flags();
        g.inv.push_back(f + 1);
        g.inv.push_back(f);
        g.adj.push_back(a);
        g.adj.push_back(b);
        g.leg.push_back(0);
        g.leg.push_back(0);
    }
    return g;
}

std::vector<int> pos_map(const std::vector<std::pair<int, int>>& from, const std::vector<std::pair<int, int>>& to) {
    std::vector<int> r;
    for (const auto& x : from) r.push_back(static_cast<int>(std::find(to.begin(), to.end(), x) - to.begin()));
    return r;
}

struct Checker {
    const CoeffSystem& sys;
    RelationReport& rep;
    void expect(bool ok, const std::string& what) {
        ++rep.checks;
        if (!ok) {
            rep.ok = false;
            if (rep.failures.size() < 20) rep.failures.push_back(what);
        }
    }
};

std::string color(int g, int n) { return "(" + std::to_string(g) + "," + std::to_string(n) + ")"; }

void coxeter(Checker& c, int g, int n) {
    int d = c.sys.dim(g, n);
    QMat id = QMat::identity(d);
    std::vector<QMat> s;
    for (int i = 1; i < n; ++i) s.push_back(c.sys.act(g, n, transposition(n, i)));
    for (int i = 0; i + 1 < n; ++i) {
        c.expect(s[i] * s[i] == id, "coxeter s^2 " + color(g, n) + " i=" + std::to_string(i + 1));
        for (int j = i + 1; j + 1 < n; ++j) {
            QMat p = s[i] * s[j];
            QMat q = j == i + 1 ? p * p * p : p * p;
            c.expect(q == id, "coxeter braid " + color(g, n) + " i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1));
        }
    }
    if (n >= 3) {
        std::vector<int> p(n), q(n);
        std::iota(p.begin(), p.end(), 0);
        std::iota(q.begin(), q.end(), 0);
        std::rotate(p.begin(), p.begin() + 1, p.end());
        std::reverse(q.begin(), q.end());
        c.expect(c.sys.act(g, n, p) * c.sys.act(g, n, q) == c.sys.act(g, n, compose_perm(p, q)), "action product " + color(g, n));
    }
}

std::vector<std::vector<int>> small_perms(int n) {
    std::vector<std::vector<int>> r;
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    r.push_back(id);
    for (int i = 1; i < n; ++i) r.push_back(transposition(n, i));
    if (n >= 3) {
        auto rot = id;
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        r.push_back(rot);
    }
    return r;
}

void compose_equivariance(Checker& c, int g1, int n1, int g2, int n2) {
    int n = n1 + n2 - 2;
    for (int i = 1; i <= n1; ++i)
        for (int j = 1; j <= n2; ++j) {
            QMat base = c.sys.compose(g1, n1, i, g2, n2, j);
            auto ord = glue_pair_order(n1, i, n2, j);
            for (const auto& s1 : small_perms(n1))
                for (const auto& s2 : small_perms(n2)) {
                    if (s1 != small_perms(n1)[0] && s2 != small_perms(n2)[0]) continue;
                    int i2 = s1[i - 1] + 1, j2 = s2[j - 1] + 1;
                    auto ord2 = glue_pair_order(n1, i2, n2, j2);
                    std::vector<std::pair<int, int>> mapped;
                    for (auto [side, l] : ord) mapped.emplace_back(side, side == 0 ? s1[l - 1] + 1 : s2[l - 1] + 1);
                    auto rho = pos_map(mapped, ord2);
                    QMat lhs = c.sys.compose(g1, n1, i2, g2, n2, j2) * kron(c.sys.act(g1, n1, s1), c.sys.act(g2, n2, s2));
                    QMat rhs = c.sys.act(g1 + g2, n, rho) * base;
                    c.expect(lhs == rhs, "compose equivariance " + color(g1, n1) + " o " + color(g2, n2) + " i=" + std::to_string(i) +
                                             " j=" + std::to_string(j));
                }
        }
}

void contract_equivariance(Checker& c, int g, int n) {
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            QMat base = c.sys.contract(g, n, i, j);
            for (const auto& s : small_perms(n)) {
                int a = s[i - 1] + 1, b = s[j - 1] + 1;
                int p = std::min(a, b), q = std::max(a, b);
                std::vector<int> before, after;
                for (int l = 1; l <= n; ++l)
                    if (l != i && l != j) before.push_back(s[l - 1] + 1);
                for (int l = 1; l <= n; ++l)
                    if (l != p && l != q) after.push_back(l);
                std::vector<int> rho;
                for (int x : before) rho.push_back(static_cast<int>(std::find(after.begin(), after.end(), x) - after.begin()));
                QMat lhs = c.sys.contract(g, n, p, q) * c.sys.act(g, n, s);
                QMat rhs = c.sys.act(g + 1, n - 2, rho) * base;
                if (c.sys.odd() && a > b) rhs = scaled(rhs, -1);
                c.expect(lhs == rhs, "contract equivariance " + color(g, n) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
            }
        }
}

// Deterministic sample of vertex flag orders (always including the ascending one).
std::vector<std::vector<std::vector<int>>> flag_orders(const Graph& gr, int count, std::mt19937& rng) {
    auto base = gr.flags_at();
    std::vector<std::vector<std::vector<int>>> r{base};
    for (int k = 1; k < count; ++k) {
        auto fl = base;
        for (auto& v : fl) std::shuffle(v.begin(), v.end(), rng);
        r.push_back(fl);
    }
    return r;
}

std::vector<long> basis_sample(long size, long cap, std::mt19937& rng) {
    std::vector<long> r;
    if (size <= cap) {
        for (long b = 0; b < size; ++b) r.push_back(b);
        return r;
    }
    std::uniform_int_distribution<long> dist(0, size - 1);
    for (long k = 0; k < cap; ++k) r.push_back(dist(rng));
    return r;
}

std::vector<Q> normalized(const CoeffSystem& sys, const Decorated& d) {
    std::vector<int> id(d.graph.num_flags());
    std::iota(id.begin(), id.end(), 0);
    return transport(sys, d, d.graph, id).tensor;
}

// Lower flag of edge e2 after the edge with lower flag e1 has been removed.
int after_drop(const Graph& gr, int e1, int e2) {
    int a = e1, b = gr.inv[e1];
    return e2 - (a < e2) - (b < e2);
}

void two_edge(Checker& c, const std::string& family, const Spec& s, std::mt19937& rng) {
    Graph gr = build(s);
    if (!type_covered(c.sys, gr.total_genus(), gr.num_legs())) return;
    if (c.sys.dim(gr.total_genus(), gr.num_legs()) == 0) return;
    auto edges = gr.edges();
    int e1 = edges[0].first, e2 = edges[1].first;
    for (const auto& vf : flag_orders(gr, 3, rng)) {
        auto dims = factor_dims(c.sys, gr, vf);
        long size = tensor_size(dims);
        if (size == 0) return;
        for (long b : basis_sample(size, 12, rng)) {
            Decorated d;
            d.graph = gr;
            d.vflags = vf;
            d.tensor.assign(size, 0);
            d.tensor[b] = 1;
            std::vector<Q> tx, ty;
            try {
                tx = normalized(c.sys, contract_edge(c.sys, contract_edge(c.sys, d, e1), after_drop(gr, e1, e2)));
                ty = normalized(c.sys, contract_edge(c.sys, contract_edge(c.sys, d, e2), after_drop(gr, e2, e1)));
            } catch (const CoeffError& err) {
                c.expect(false, family + ": " + err.what());
                return;
            }
            if (c.sys.odd())
                for (auto& v : ty) v = -v;
            std::ostringstream w;
            w << family << " genus";
            for (int g : s.genus) w << ' ' << g;
            w << " legs";
            for (int l : s.legs) w << ' ' << l;
            w << " basis " << b;
            c.expect(tx == ty, w.str());
        }
    }
}

void swap_symmetry(Checker& c, const Spec& s, std::mt19937& rng) {
    Graph gr = build(s);
    if (!type_covered(c.sys, gr.total_genus(), gr.num_legs())) return;
    int e = gr.edges()[0].first;
    for (const auto& vf : flag_orders(gr, 4, rng)) {
        auto dims = factor_dims(c.sys, gr, vf);
        long size = tensor_size(dims);
        if (size == 0) return;
        for (long b : basis_sample(size, 12, rng)) {
            Decorated d;
            d.graph = gr;
            d.vflags = vf;
            d.tensor.assign(size, 0);
            d.tensor[b] = 1;
            auto x = normalized(c.sys, contract_edge(c.sys, d, e, false));
            auto y = normalized(c.sys, contract_edge(c.sys, d, e, true));
            c.expect(x == y, "swap symmetry " + color(s.genus[0], s.legs[0] + 1) + " o " + color(s.genus[1], s.legs[1] + 1) +
                                 " basis " + std::to_string(b));
        }
    }
}

bool ok_vertex(const CoeffSystem& sys, int g, int val) { return stable(g, val) && sys.dim(g, val) > 0; }

}  // namespace

RelationReport verify_relations(const CoeffSystem& sys, int max_g, int max_n) {
    RelationReport rep;
    Checker c{sys, rep};
    std::mt19937 rng(12345);
    std::vector<std::pair<int, int>> colors;
    for (int g = 0; g <= max_g; ++g)
        for (int n = 0; n <= max_n + 2; ++n)
            if (stable(g, n) && sys.dim(g, n) > 0) colors.emplace_back(g, n);
    for (auto [g, n] : colors) {
        if (n > max_n) continue;
        coxeter(c, g, n);
    }
    for (auto [g1, n1] : colors)
        for (auto [g2, n2] : colors) {
            if (n1 < 1 || n2 < 1 || g1 + g2 > max_g || n1 + n2 - 2 > max_n) continue;
            compose_equivariance(c, g1, n1, g2, n2);
            Spec s{{g1, g2}, {n1 - 1, n2 - 1}, {{0, 1}}};
            swap_symmetry(c, s, rng);
        }
    for (auto [g, n] : colors)
        if (n >= 2 && g + 1 <= max_g && n - 2 <= max_n && sys.dim(g + 1, n - 2) > 0) contract_equivariance(c, g, n);

    // two-edge families; vertex (genus, valence) pairs range over the colors
    for (auto [g, n] : colors) {
        // two loops at one vertex
        if (n >= 4 && g + 2 <= max_g && n - 4 <= max_n && !sys.odd())
            two_edge(c, "two loops", Spec{{g}, {n - 4}, {{0, 0}, {0, 0}}}, rng);
    }
    for (auto [g1, n1] : colors)
        for (auto [g2, n2] : colors) {
            // parallel edges
            if (n1 >= 2 && n2 >= 2 && g1 + g2 + 1 <= max_g && n1 + n2 - 4 <= max_n)
                two_edge(c, "parallel edges", Spec{{g1, g2}, {n1 - 2, n2 - 2}, {{0, 1}, {0, 1}}}, rng);
            // loop at the first vertex plus a bridge
            if (n1 >= 3 && n2 >= 1 && g1 + g2 + 1 <= max_g && n1 + n2 - 4 <= max_n)
                two_edge(c, "loop and bridge", Spec{{g1, g2}, {n1 - 3, n2 - 1}, {{0, 0}, {0, 1}}}, rng);
            // path of two bridges, middle vertex (g2, n2)
            if (n2 < 2) continue;
            for (auto [g3, n3] : colors) {
                if (n1 < 1 || n3 < 1 || g1 + g2 + g3 > max_g || n1 + n2 + n3 - 4 > max_n) continue;
                if (!ok_vertex(sys, g1, n1) || !ok_vertex(sys, g3, n3)) continue;
                two_edge(c, "bridge path", Spec{{g1, g2, g3}, {n1 - 1, n2 - 2, n3 - 1}, {{0, 1}, {1, 2}}}, rng);
            }
        }
    return rep;
}

namespace {

// A graph whose legs remember where they came from: origin[k] is (operand, original label) of leg k+1.
struct Tracked {
    Graph g;
    std::vector<std::pair<int, int>> origin;
};

Tracked operand(const Graph& g, int idx) {
    Tracked t{g, {}};
    for (int l = 1; l <= g.num_legs(); ++l) t.origin.emplace_back(idx, l);
    return t;
}

int label_of(const Tracked& t, std::pair<int, int> o) {
    return static_cast<int>(std::find(t.origin.begin(), t.origin.end(), o) - t.origin.begin()) + 1;
}

Tracked self(const Tracked& t, std::pair<int, int> a, std::pair<int, int> b) {
    int i = label_of(t, a), j = label_of(t, b);
    Tracked r{glue_self(t.g, i, j), {}};
    for (int k = 0; k < static_cast<int>(t.origin.size()); ++k)
        if (k + 1 != i && k + 1 != j) r.origin.push_back(t.origin[k]);
    return r;
}

Tracked pair(const Tracked& l, std::pair<int, int> a, const Tracked& rt, std::pair<int, int> b) {
    int i = label_of(l, a), j = label_of(rt, b);
    Tracked r{glue_pair(l.g, i, rt.g, j), {}};
    for (auto [side, x] : glue_pair_order(l.g.num_legs(), i, rt.g.num_legs(), j))
        r.origin.push_back(side == 0 ? l.origin[x - 1] : rt.origin[x - 1]);
    return r;
}

// Key of the graph with legs relabelled by the sorted order of their origins.
std::string normal_key(const Tracked& t) {
    auto sorted = t.origin;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> perm;
    for (const auto& o : t.origin)
        perm.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), o) - sorted.begin()) + 1);
    return canonical_key(relabel_legs(t.g, perm));
}

std::vector<int> pick_legs(int n, int k, std::mt19937& rng) {
    std::vector<int> l(n);
    std::iota(l.begin(), l.end(), 1);
    std::shuffle(l.begin(), l.end(), rng);
    l.resize(k);
    return l;
}

}  // namespace

RelationReport verify_graph_relations(unsigned seed, int instances) {
    RelationReport rep;
    std::mt19937 rng(seed);
    std::vector<Graph> pool;
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {0, 5}, {1, 1}, {1, 2}, {1, 3}, {2, 1}}) {
        pool.push_back(corolla(g, n));
        for (auto& x : enumerate_graphs(g, n, 2)) pool.push_back(x);
    }
    auto draw = [&](int min_legs) {
        std::vector<const Graph*> ok;
        for (const auto& x : pool)
            if (x.num_legs() >= min_legs) ok.push_back(&x);
        return *ok[std::uniform_int_distribution<size_t>(0, ok.size() - 1)(rng)];
    };
    const char* names[] = {"two self-gluings", "pair then self-gluing", "self-gluing then pair", "two pair gluings"};
    for (int k = 0; k < instances; ++k) {
        int fam = k % 4;
        std::string lhs, rhs, witness;
        if (fam == 0) {
            Tracked a = operand(draw(4), 0);
            auto l = pick_legs(a.g.num_legs(), 4, rng);
            lhs = normal_key(self(self(a, {0, l[0]}, {0, l[1]}), {0, l[2]}, {0, l[3]}));
            rhs = normal_key(self(self(a, {0, l[2]}, {0, l[3]}), {0, l[0]}, {0, l[1]}));
            witness = to_json(a.g);
        } else if (fam == 1) {
            Tracked a = operand(draw(2), 0), b = operand(draw(2), 1);
            auto la = pick_legs(a.g.num_legs(), 2, rng), lb = pick_legs(b.g.num_legs(), 2, rng);
            lhs = normal_key(self(pair(a, {0, la[0]}, b, {1, lb[0]}), {0, la[1]}, {1, lb[1]}));
            rhs = normal_key(self(pair(a, {0, la[1]}, b, {1, lb[1]}), {0, la[0]}, {1, lb[0]}));
            witness = to_json(a.g) + " " + to_json(b.g);
        } else if (fam == 2) {
            Tracked a = operand(draw(3), 0), b = operand(draw(1), 1);
            auto la = pick_legs(a.g.num_legs(), 3, rng), lb = pick_legs(b.g.num_legs(), 1, rng);
            lhs = normal_key(pair(self(a, {0, la[0]}, {0, la[1]}), {0, la[2]}, b, {1, lb[0]}));
            rhs = normal_key(self(pair(a, {0, la[2]}, b, {1, lb[0]}), {0, la[0]}, {0, la[1]}));
            witness = to_json(a.g) + " " + to_json(b.g);
        } else {
            Tracked a = operand(draw(1), 0), b = operand(draw(2), 1), c = operand(draw(1), 2);
            auto la = pick_legs(a.g.num_legs(), 1, rng), lb = pick_legs(b.g.num_legs(), 2, rng), lc = pick_legs(c.g.num_legs(), 1, rng);
            lhs = normal_key(pair(pair(a, {0, la[0]}, b, {1, lb[0]}), {1, lb[1]}, c, {2, lc[0]}));
            rhs = normal_key(pair(a, {0, la[0]}, pair(b, {1, lb[1]}, c, {2, lc[0]}), {1, lb[0]}));
            witness = to_json(a.g) + " " + to_json(b.g) + " " + to_json(c.g);
        }
        ++rep.checks;
        if (lhs != rhs) {
            rep.ok = false;
            if (rep.failures.size() < 20) rep.failures.push_back(std::string(names[fam]) + ": " + witness);
        }
    }
    return rep;
}

}  // namespace gcx
