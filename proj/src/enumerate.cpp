#include "gcx/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gcx/canonical.hpp"
#include "gcx/parallel.hpp"

namespace gcx {

std::vector<Graph> vertex_expansions(const Graph& gr, int v) {
    std::vector<Graph> out;
    auto fl = gr.flags_at()[v];
    int k = static_cast<int>(fl.size());
    int gv = gr.genus[v];
    int F = gr.num_flags();
    int nv = gr.num_vertices();
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (k > 0 && !(mask & 1u)) continue;
        int a = __builtin_popcount(mask), b = k - a;
        for (int g1 = 0; g1 <= gv; ++g1) {
            int g2 = gv - g1;
            if (a + 1 + 2 * g1 - 3 < 0 || b + 1 + 2 * g2 - 3 < 0) continue;
            Graph r = gr;
            r.genus[v] = g1;
            r.genus.push_back(g2);
            for (int i = 0; i < k; ++i)
                if (!(mask >> i & 1u)) r.adj[fl[i]] = nv;
            r.inv.push_back(F + 1);
            r.inv.push_back(F);
            r.adj.push_back(v);
            r.adj.push_back(nv);
            r.leg.push_back(0);
            r.leg.push_back(0);
            out.push_back(std::move(r));
        }
    }
    if (gv >= 1) {
        Graph r = gr;
        r.genus[v] = gv - 1;
        r.inv.push_back(F + 1);
        r.inv.push_back(F);
        r.adj.push_back(v);
        r.adj.push_back(v);
        r.leg.push_back(0);
        r.leg.push_back(0);
        out.push_back(std::move(r));
    }
    return out;
}

int max_edge_count(int g, int n) { return 3 * g - 3 + n; }

std::vector<Graph> enumerate_graphs(int g, int n, int max_edges) {
    if (g < 0 || n < 0 || n + 2 * g - 3 < 0)
        throw GraphError(GraphErrorKind::BadType, "unstable type (" + std::to_string(g) + "," + std::to_string(n) + ")");
    int limit = max_edge_count(g, n);
    if (max_edges >= 0) limit = std::min(limit, max_edges);
    std::vector<Graph> result;
    std::vector<Graph> level{corolla(g, n)};
    result.push_back(level.front());
    for (int e = 1; e <= limit && !level.empty(); ++e) {
        std::vector<std::map<std::string, Graph>> found(level.size());
        parallel_for(level.size(), [&](std::size_t i) {
            for (int v = 0; v < level[i].num_vertices(); ++v)
                for (auto& x : vertex_expansions(level[i], v)) {
                    auto c = canonicalize(x).graph;
                    found[i].emplace(to_json(c), std::move(c));
                }
        });
        std::map<std::string, Graph> merged;
        for (auto& m : found)
            for (auto& [key, gr] : m) merged.emplace(key, gr);
        level.clear();
        for (auto& [key, gr] : merged) level.push_back(gr);
        result.insert(result.end(), level.begin(), level.end());
    }
    return result;
}

}  // namespace gcx
