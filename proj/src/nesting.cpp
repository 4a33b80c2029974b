#include "gcx/nesting.hpp"

#include <algorithm>

namespace gcx {

EdgeSet all_edges(const Graph& gr) {
    int e = gr.num_edges();
    return e >= 64 ? ~0ULL : ((1ULL << e) - 1);
}

bool is_nest(const Graph& gr, Nest n) {
    EdgeSet all = all_edges(gr);
    return n != 0 && !(n & ~all) && n != all && closure_connected(gr, n);
}

std::vector<Nest> enumerate_nests(const Graph& gr) {
    std::vector<Nest> r;
    EdgeSet all = all_edges(gr);
    for (EdgeSet s = 1; s < all; ++s)
        if (closure_connected(gr, s)) r.push_back(s);
    return r;
}

bool is_compatible(const Graph& gr, Nest a, Nest b) {
    if ((a & b) == a || (a & b) == b) return true;
    return (closure_vertices(gr, a) & closure_vertices(gr, b)) == 0;
}

bool is_nesting(const Graph& gr, const Nesting& ns) {
    for (size_t i = 0; i < ns.size(); ++i) {
        if (!is_nest(gr, ns[i])) return false;
        for (size_t j = 0; j < i; ++j)
            if (ns[i] == ns[j] || !is_compatible(gr, ns[i], ns[j])) return false;
    }
    return true;
}

bool is_full(const Graph& gr, const Nesting& ns) {
    for (Nest n : enumerate_nests(gr)) {
        if (std::find(ns.begin(), ns.end(), n) != ns.end()) continue;
        bool ok = true;
        for (Nest m : ns)
            if (!is_compatible(gr, n, m)) {
                ok = false;
                break;
            }
        if (ok) return false;
    }
    return true;
}

std::vector<Nesting> enumerate_nestings(const Graph& gr) {
    auto nests = enumerate_nests(gr);
    std::vector<std::uint64_t> vs(nests.size());
    for (size_t i = 0; i < nests.size(); ++i) vs[i] = closure_vertices(gr, nests[i]);
    std::vector<Nesting> out;
    Nesting cur;
    std::vector<size_t> idx;
    auto rec = [&](auto&& self, size_t start) -> void {
        out.push_back(cur);
        for (size_t i = start; i < nests.size(); ++i) {
            bool ok = true;
            for (size_t j : idx) {
                Nest a = nests[i], b = nests[j];
                if ((a & b) != a && (a & b) != b && (vs[i] & vs[j])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            cur.push_back(nests[i]);
            idx.push_back(i);
            self(self, i + 1);
            cur.pop_back();
            idx.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<int> min_map(const Graph& gr, const Nesting& ns) {
    int E = gr.num_edges();
    std::vector<int> r(E, -1);
    for (int k = 0; k < E; ++k) {
        int best = 64;
        for (size_t i = 0; i < ns.size(); ++i)
            if ((ns[i] >> k & 1) && __builtin_popcountll(ns[i]) < best) {
                best = __builtin_popcountll(ns[i]);
                r[k] = static_cast<int>(i);
            }
    }
    return r;
}

std::vector<EdgeSet> edge_components(const Graph& gr, EdgeSet s) {
    std::vector<EdgeSet> comps;
    EdgeSet left = s;
    while (left) {
        EdgeSet comp = left & (~left + 1);
        bool grown = true;
        while (grown) {
            grown = false;
            std::uint64_t vs = closure_vertices(gr, comp);
            EdgeSet rest = left & ~comp;
            while (rest) {
                EdgeSet bit = rest & (~rest + 1);
                rest &= rest - 1;
                if (closure_vertices(gr, bit) & vs) {
                    comp |= bit;
                    grown = true;
                }
            }
        }
        comps.push_back(comp);
        left &= ~comp;
    }
    return comps;
}

namespace {
// Re-indexes an edge set after removing the edges in `removed` (relative order kept).
EdgeSet squeeze(EdgeSet s, EdgeSet removed, int E) {
    EdgeSet r = 0;
    int j = 0;
    for (int k = 0; k < E; ++k) {
        if (removed >> k & 1) continue;
        if (s >> k & 1) r |= 1ULL << j;
        ++j;
    }
    return r;
}
}  // namespace

Graph contract_nests(const Graph& gr, const std::vector<Nest>& parts) {
    Graph cur = gr;
    std::vector<Nest> rest = parts;
    for (size_t i = 0; i < rest.size(); ++i) {
        int E = cur.num_edges();
        Nest n = rest[i];
        cur = contract_nest(cur, n);
        for (size_t j = i + 1; j < rest.size(); ++j) rest[j] = squeeze(rest[j], n, E);
    }
    return cur;
}

std::vector<Graph> layers(const Graph& gr, const Nesting& ns) {
    std::vector<Graph> out;
    int E = gr.num_edges();
    auto children = [&](EdgeSet parent) {
        std::vector<Nest> kids;
        for (Nest m : ns) {
            if (m == parent || (m & parent) != m) continue;
            bool maximal = true;
            for (Nest o : ns)
                if (o != m && o != parent && (o & parent) == o && (o & m) == m) maximal = false;
            if (maximal) kids.push_back(m);
        }
        return kids;
    };
    for (Nest n : ns) {
        Graph closure = flag_closure(gr, n);
        std::vector<Nest> kids;
        for (Nest m : children(n)) kids.push_back(squeeze(m, ~n & all_edges(gr), E));
        out.push_back(contract_nests(closure, kids));
    }
    out.push_back(contract_nests(gr, children(all_edges(gr))));
    return out;
}

SimpleGraph line_graph(const Graph& gr) {
    auto e = gr.edges();
    SimpleGraph l;
    l.n = static_cast<int>(e.size());
    l.adj.assign(l.n, 0);
    for (int i = 0; i < l.n; ++i)
        for (int j = 0; j < l.n; ++j) {
            if (i == j) continue;
            int a1 = gr.adj[e[i].first], a2 = gr.adj[e[i].second];
            int b1 = gr.adj[e[j].first], b2 = gr.adj[e[j].second];
            if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) l.adj[i] |= 1ULL << j;
        }
    return l;
}

}  // namespace gcx
