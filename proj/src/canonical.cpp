#include "gcx/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gcx {

namespace {

struct Search {
    int V = 0;
    std::vector<std::vector<int>> mult;
    std::vector<int> genus;
    std::vector<std::vector<int>> legs;
    std::vector<int> best;
    std::vector<std::vector<int>> best_orders;

    template <class T>
    static std::vector<int> rank_keys(const std::vector<T>& keys) {
        std::vector<T> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> r(keys.size());
        for (size_t i = 0; i < keys.size(); ++i)
            r[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
        return r;
    }

    static int num_cells(const std::vector<int>& c) {
        return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    }

    std::vector<int> refine(std::vector<int> color) const {
        int cells = num_cells(color);
        while (true) {
            std::vector<std::vector<int>> keys(V);
            for (int u = 0; u < V; ++u) {
                std::vector<std::pair<int, int>> nb;
                for (int w = 0; w < V; ++w)
                    if (w != u && mult[u][w] > 0) nb.emplace_back(color[w], mult[u][w]);
                std::sort(nb.begin(), nb.end());
                keys[u].push_back(color[u]);
                for (auto [c, m] : nb) {
                    keys[u].push_back(c);
                    keys[u].push_back(m);
                }
            }
            auto next = rank_keys(keys);
            int nc = num_cells(next);
            color = std::move(next);
            if (nc == cells) return color;
            cells = nc;
        }
    }

    std::vector<int> encode(const std::vector<int>& order) const {
        std::vector<int> e;
        e.push_back(V);
        for (int p = 0; p < V; ++p) e.push_back(genus[order[p]]);
        for (int p = 0; p < V; ++p) {
            const auto& l = legs[order[p]];
            e.push_back(static_cast<int>(l.size()));
            e.insert(e.end(), l.begin(), l.end());
        }
        for (int p = 0; p < V; ++p)
            for (int q = p; q < V; ++q) e.push_back(mult[order[p]][order[q]]);
        return e;
    }

    void run(const std::vector<int>& color0) {
        auto color = refine(color0);
        int cells = num_cells(color);
        if (cells == V) {
            std::vector<int> order(V);
            for (int v = 0; v < V; ++v) order[color[v]] = v;
            auto code = encode(order);
            if (best.empty() || code < best) {
                best = std::move(code);
                best_orders.clear();
                best_orders.push_back(order);
            } else if (code == best) {
                best_orders.push_back(order);
            }
            return;
        }
        std::vector<int> size(cells, 0);
        for (int c : color) ++size[c];
        int target = 0;
        while (size[target] == 1) ++target;
        for (int v = 0; v < V; ++v) {
            if (color[v] != target) continue;
            std::vector<int> next(V);
            for (int u = 0; u < V; ++u) next[u] = 2 * color[u] + ((color[u] == target && u != v) ? 1 : 0);
            run(rank_keys(next));
        }
    }
};

Search make_search(const Graph& gr) {
    Search s;
    s.V = gr.num_vertices();
    s.mult.assign(s.V, std::vector<int>(s.V, 0));
    s.genus = gr.genus;
    s.legs.assign(s.V, {});
    for (auto [a, b] : gr.edges()) {
        int u = gr.adj[a], w = gr.adj[b];
        if (u == w) {
            ++s.mult[u][u];
        } else {
            ++s.mult[u][w];
            ++s.mult[w][u];
        }
    }
    for (int f = 0; f < gr.num_flags(); ++f)
        if (gr.inv[f] == f) s.legs[gr.adj[f]].push_back(gr.leg[f]);
    for (auto& l : s.legs) std::sort(l.begin(), l.end());
    std::vector<std::vector<int>> keys(s.V);
    auto val = gr.valence();
    for (int v = 0; v < s.V; ++v) {
        keys[v] = {s.genus[v], static_cast<int>(s.legs[v].size())};
        keys[v].insert(keys[v].end(), s.legs[v].begin(), s.legs[v].end());
        keys[v].push_back(s.mult[v][v]);
        keys[v].push_back(val[v]);
    }
    s.run(Search::rank_keys(keys));
    return s;
}

// Builds the canonical graph for a vertex order and the flag bijection.
CanonResult build(const Graph& gr, const std::vector<int>& order) {
    int V = gr.num_vertices(), F = gr.num_flags(), n = gr.num_legs();
    CanonResult r;
    r.vertex_map.assign(V, 0);
    for (int p = 0; p < V; ++p) r.vertex_map[order[p]] = p;
    r.flag_map.assign(F, -1);
    Graph& c = r.graph;
    c.inv.assign(F, 0);
    c.adj.assign(F, 0);
    c.leg.assign(F, 0);
    c.genus.assign(V, 0);
    for (int p = 0; p < V; ++p) c.genus[p] = gr.genus[order[p]];
    for (int f = 0; f < F; ++f)
        if (gr.inv[f] == f) {
            int t = gr.leg[f] - 1;
            r.flag_map[f] = t;
            c.inv[t] = t;
            c.adj[t] = r.vertex_map[gr.adj[f]];
            c.leg[t] = gr.leg[f];
        }
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> bucket;
    for (auto [a, b] : gr.edges()) {
        int p = r.vertex_map[gr.adj[a]], q = r.vertex_map[gr.adj[b]];
        if (p <= q)
            bucket[{p, q}].emplace_back(a, b);
        else
            bucket[{q, p}].emplace_back(b, a);
    }
    int k = 0;
    for (auto& [pq, list] : bucket)
        for (auto [a, b] : list) {
            int fa = n + 2 * k, fb = n + 2 * k + 1;
            r.flag_map[a] = fa;
            r.flag_map[b] = fb;
            c.inv[fa] = fb;
            c.inv[fb] = fa;
            c.adj[fa] = pq.first;
            c.adj[fb] = pq.second;
            ++k;
        }
    return r;
}

}  // namespace

CanonResult canonicalize(const Graph& gr) {
    Search s = make_search(gr);
    return build(gr, s.best_orders.front());
}

std::string canonical_key(const Graph& gr) { return to_json(canonicalize(gr).graph); }

bool is_canonical(const Graph& gr) { return canonicalize(gr).graph == gr; }

std::vector<int> lift_vertex_perm(const Graph& canon, const std::vector<int>& sigma) {
    int F = canon.num_flags();
    std::vector<int> perm(F, -1);
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> bucket;
    for (auto [a, b] : canon.edges()) bucket[{canon.adj[a], canon.adj[b]}].emplace_back(a, b);
    for (int f = 0; f < F; ++f)
        if (canon.inv[f] == f) perm[f] = f;
    for (auto& [pq, list] : bucket) {
        int sp = sigma[pq.first], sq = sigma[pq.second];
        bool swapped = sp > sq;
        auto& target = bucket.at(swapped ? std::make_pair(sq, sp) : std::make_pair(sp, sq));
        for (size_t k = 0; k < list.size(); ++k) {
            auto [a, b] = list[k];
            auto [ta, tb] = target[k];
            if (swapped) std::swap(ta, tb);
            perm[a] = ta;
            perm[b] = tb;
        }
    }
    return perm;
}

Automorphisms automorphisms(const Graph& canon) {
    Automorphisms aut;
    Search s = make_search(canon);
    aut.vertex_perms = s.best_orders;
    std::sort(aut.vertex_perms.begin(), aut.vertex_perms.end());
    aut.order = aut.vertex_perms.size();
    std::vector<int> id(canon.num_vertices());
    std::iota(id.begin(), id.end(), 0);
    for (const auto& sigma : aut.vertex_perms)
        if (sigma != id) aut.generators.push_back(lift_vertex_perm(canon, sigma));
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> bucket;
    for (auto [a, b] : canon.edges()) bucket[{canon.adj[a], canon.adj[b]}].emplace_back(a, b);
    int F = canon.num_flags();
    std::vector<int> base(F);
    std::iota(base.begin(), base.end(), 0);
    for (auto& [pq, list] : bucket) {
        std::uint64_t m = list.size();
        for (std::uint64_t k = 2; k <= m; ++k) aut.order *= k;
        for (size_t k = 0; k + 1 < list.size(); ++k) {
            auto g = base;
            std::swap(g[list[k].first], g[list[k + 1].first]);
            std::swap(g[list[k].second], g[list[k + 1].second]);
            aut.generators.push_back(g);
        }
        if (pq.first == pq.second) {
            for (std::uint64_t k = 0; k < m; ++k) aut.order *= 2;
            auto g = base;
            std::swap(g[list[0].first], g[list[0].second]);
            aut.generators.push_back(g);
        }
    }
    return aut;
}

bool is_flag_automorphism(const Graph& gr, const std::vector<int>& perm) {
    int F = gr.num_flags();
    if (static_cast<int>(perm.size()) != F) return false;
    std::vector<int> seen(F, 0);
    for (int f = 0; f < F; ++f) {
        if (perm[f] < 0 || perm[f] >= F || seen[perm[f]]) return false;
        seen[perm[f]] = 1;
    }
    std::vector<int> sigma(gr.num_vertices(), -1);
    for (int f = 0; f < F; ++f) {
        if (perm[gr.inv[f]] != gr.inv[perm[f]]) return false;
        if (gr.leg[perm[f]] != gr.leg[f]) return false;
        int u = gr.adj[f], w = gr.adj[perm[f]];
        if (sigma[u] == -1)
            sigma[u] = w;
        else if (sigma[u] != w)
            return false;
    }
    std::vector<int> hit(gr.num_vertices(), 0);
    for (int v = 0; v < gr.num_vertices(); ++v) {
        if (sigma[v] == -1) sigma[v] = v;
        if (hit[sigma[v]]++) return false;
        if (gr.genus[sigma[v]] != gr.genus[v]) return false;
    }
    return true;
}

CanonicalGraph make_canonical(const Graph& gr) {
    CanonicalGraph c;
    c.graph = canonicalize(gr).graph;
    c.key = to_json(c.graph);
    c.total_genus = c.graph.total_genus();
    c.edges = c.graph.edges();
    c.aut = automorphisms(c.graph);
    return c;
}

}  // namespace gcx
