#include "gcx/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "json.hpp"

namespace gcx {

const char* error_name(GraphErrorKind k) {
    switch (k) {
        case GraphErrorKind::NonInvolutive: return "NonInvolutive";
        case GraphErrorKind::Unstable: return "Unstable";
        case GraphErrorKind::Disconnected: return "Disconnected";
        case GraphErrorKind::NoEdges: return "NoEdges";
        case GraphErrorKind::BadLegLabels: return "BadLegLabels";
        case GraphErrorKind::BadLegIndex: return "BadLegIndex";
        case GraphErrorKind::NotANest: return "NotANest";
        case GraphErrorKind::TypeMismatch: return "TypeMismatch";
        case GraphErrorKind::BadType: return "BadType";
        case GraphErrorKind::Malformed: return "Malformed";
    }
    return "Unknown";
}

int Graph::num_legs() const {
    int n = 0;
    for (int f = 0; f < num_flags(); ++f)
        if (inv[f] == f) ++n;
    return n;
}

int Graph::genus_label_sum() const { return std::accumulate(genus.begin(), genus.end(), 0); }

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int f = 0; f < num_flags(); ++f)
        if (inv[f] > f) e.emplace_back(f, inv[f]);
    return e;
}

std::vector<std::vector<int>> Graph::flags_at() const {
    std::vector<std::vector<int>> r(num_vertices());
    for (int f = 0; f < num_flags(); ++f) r[adj[f]].push_back(f);
    return r;
}

std::vector<int> Graph::valence() const {
    std::vector<int> r(num_vertices(), 0);
    for (int f = 0; f < num_flags(); ++f) ++r[adj[f]];
    return r;
}

int Graph::leg_flag(int label) const {
    for (int f = 0; f < num_flags(); ++f)
        if (inv[f] == f && leg[f] == label) return f;
    return -1;
}

Graph corolla(int g, int n) {
    if (g < 0 || n < 0 || n + 2 * g - 3 < 0)
        throw GraphError(GraphErrorKind::BadType, "unstable type (" + std::to_string(g) + "," + std::to_string(n) + ")");
    Graph c;
    c.genus = {g};
    for (int f = 0; f < n; ++f) {
        c.inv.push_back(f);
        c.adj.push_back(0);
        c.leg.push_back(f + 1);
    }
    return c;
}

bool is_connected(const Graph& gr) {
    int v = gr.num_vertices();
    if (v == 0) return false;
    std::vector<int> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : gr.edges()) parent[find(gr.adj[a])] = find(gr.adj[b]);
    int root = find(0);
    for (int i = 1; i < v; ++i)
        if (find(i) != root) return false;
    return true;
}

void check_graph(const Graph& gr, bool allow_corolla) {
    int F = gr.num_flags();
    int V = gr.num_vertices();
    if (static_cast<int>(gr.adj.size()) != F || static_cast<int>(gr.leg.size()) != F)
        throw GraphError(GraphErrorKind::Malformed, "field lengths disagree");
    if (V == 0) throw GraphError(GraphErrorKind::Malformed, "no vertices");
    for (int f = 0; f < F; ++f) {
        if (gr.inv[f] < 0 || gr.inv[f] >= F) throw GraphError(GraphErrorKind::NonInvolutive, "involution out of range", f);
        if (gr.inv[gr.inv[f]] != f) throw GraphError(GraphErrorKind::NonInvolutive, "involution is not self-inverse at flag " + std::to_string(f), f);
        if (gr.adj[f] < 0 || gr.adj[f] >= V) throw GraphError(GraphErrorKind::Malformed, "adjacency out of range", f);
    }
    for (int v = 0; v < V; ++v)
        if (gr.genus[v] < 0) throw GraphError(GraphErrorKind::Malformed, "negative genus label", v);
    int n = gr.num_legs();
    std::vector<int> seen(n + 1, 0);
    for (int f = 0; f < F; ++f) {
        if (gr.inv[f] == f) {
            int l = gr.leg[f];
            if (l < 1 || l > n || seen[l]) throw GraphError(GraphErrorKind::BadLegLabels, "leg labels must be a bijection onto 1..n", f);
            seen[l] = 1;
        } else if (gr.leg[f] != 0) {
            throw GraphError(GraphErrorKind::BadLegLabels, "edge flag carries a leg label", f);
        }
    }
    auto val = gr.valence();
    for (int v = 0; v < V; ++v)
        if (val[v] + 2 * gr.genus[v] - 3 < 0)
            throw GraphError(GraphErrorKind::Unstable, "vertex " + std::to_string(v) + " violates ||v||+2g(v)-3>=0", v);
    if (!is_connected(gr)) throw GraphError(GraphErrorKind::Disconnected, "graph is not connected");
    if (gr.num_edges() == 0 && !(allow_corolla && V == 1)) throw GraphError(GraphErrorKind::NoEdges, "modular graphs need at least one edge");
}

Graph validate(const std::vector<int>& involution, const std::vector<int>& adjacency, const std::vector<int>& genus,
               const std::vector<std::pair<int, int>>& legs) {
    Graph gr;
    gr.inv = involution;
    gr.adj = adjacency;
    gr.genus = genus;
    gr.leg.assign(involution.size(), 0);
    if (adjacency.size() != involution.size()) throw GraphError(GraphErrorKind::Malformed, "adjacency length differs from flag count");
    for (auto [f, l] : legs) {
        if (f < 0 || f >= static_cast<int>(involution.size())) throw GraphError(GraphErrorKind::BadLegLabels, "leg flag out of range", f);
        if (involution[f] != f) throw GraphError(GraphErrorKind::BadLegLabels, "labelled flag is not fixed by the involution", f);
        gr.leg[f] = l;
    }
    for (size_t f = 0; f < involution.size(); ++f)
        if (involution[f] == static_cast<int>(f) && gr.leg[f] == 0 && f < involution.size() && involution[involution[f]] == involution[f])
            throw GraphError(GraphErrorKind::BadLegLabels, "unlabelled leg", static_cast<int>(f));
    check_graph(gr, false);
    return gr;
}

std::string to_json(const Graph& gr) {
    std::string s = "{\"flags\":" + std::to_string(gr.num_flags()) + ",\"involution\":[";
    for (int f = 0; f < gr.num_flags(); ++f) s += (f ? "," : "") + std::to_string(gr.inv[f]);
    s += "],\"adjacency\":[";
    for (int f = 0; f < gr.num_flags(); ++f) s += (f ? "," : "") + std::to_string(gr.adj[f]);
    s += "],\"genus\":[";
    for (int v = 0; v < gr.num_vertices(); ++v) s += (v ? "," : "") + std::to_string(gr.genus[v]);
    s += "],\"legs\":{";
    bool first = true;
    for (int f = 0; f < gr.num_flags(); ++f)
        if (gr.inv[f] == f) {
            s += (first ? "\"" : ",\"") + std::to_string(f) + "\":" + std::to_string(gr.leg[f]);
            first = false;
        }
    s += "}}";
    return s;
}

Graph graph_from_json(const std::string& text, bool allow_corolla) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw GraphError(GraphErrorKind::Malformed, std::string("invalid JSON: ") + e.what());
    }
    try {
        Graph gr;
        int F = j.at("flags").get<int>();
        gr.inv = j.at("involution").get<std::vector<int>>();
        gr.adj = j.at("adjacency").get<std::vector<int>>();
        gr.genus = j.at("genus").get<std::vector<int>>();
        if (static_cast<int>(gr.inv.size()) != F) throw GraphError(GraphErrorKind::Malformed, "flags disagrees with involution length");
        gr.leg.assign(F, 0);
        for (auto& [k, v] : j.at("legs").items()) {
            int f = std::stoi(k);
            if (f < 0 || f >= F) throw GraphError(GraphErrorKind::BadLegLabels, "leg flag out of range", f);
            gr.leg[f] = v.get<int>();
        }
        for (int f = 0; f < F; ++f)
            if (gr.inv[f] == f && gr.leg[f] == 0) throw GraphError(GraphErrorKind::BadLegLabels, "unlabelled leg", f);
        check_graph(gr, allow_corolla);
        return gr;
    } catch (const GraphError&) {
        throw;
    } catch (const std::exception& e) {
        throw GraphError(GraphErrorKind::Malformed, e.what());
    }
}

Graph relabel_legs(const Graph& gr, const std::vector<int>& perm) {
    Graph r = gr;
    for (int f = 0; f < gr.num_flags(); ++f)
        if (gr.inv[f] == f) r.leg[f] = perm.at(gr.leg[f] - 1);
    return r;
}

Graph glue_self(const Graph& gr, int i, int j) {
    int n = gr.num_legs();
    if (i == j || i < 1 || j < 1 || i > n || j > n) throw GraphError(GraphErrorKind::BadLegIndex, "glue_self needs distinct legs in 1..n");
    Graph r = gr;
    int fi = gr.leg_flag(i), fj = gr.leg_flag(j);
    r.inv[fi] = fj;
    r.inv[fj] = fi;
    r.leg[fi] = r.leg[fj] = 0;
    for (int f = 0; f < r.num_flags(); ++f) {
        if (r.leg[f] == 0) continue;
        int l = r.leg[f];
        r.leg[f] = l - (l > i) - (l > j);
    }
    return r;
}

std::vector<std::pair<int, int>> glue_pair_order(int n, int i, int m, int j) {
    std::vector<std::pair<int, int>> order;
    for (int l = 1; l < i; ++l) order.emplace_back(0, l);
    for (int l = j + 1; l <= m; ++l) order.emplace_back(1, l);
    for (int l = 1; l < j; ++l) order.emplace_back(1, l);
    for (int l = i + 1; l <= n; ++l) order.emplace_back(0, l);
    return order;
}

Graph glue_pair(const Graph& left, int i, const Graph& right, int j) {
    int n = left.num_legs(), m = right.num_legs();
    if (i < 1 || i > n || j < 1 || j > m) throw GraphError(GraphErrorKind::BadLegIndex, "glue_pair leg index out of range");
    Graph r;
    int F0 = left.num_flags(), V0 = left.num_vertices();
    r.inv = left.inv;
    r.adj = left.adj;
    r.genus = left.genus;
    r.leg = left.leg;
    for (int f = 0; f < right.num_flags(); ++f) {
        r.inv.push_back(right.inv[f] + F0);
        r.adj.push_back(right.adj[f] + V0);
        r.leg.push_back(right.leg[f]);
    }
    for (int g : right.genus) r.genus.push_back(g);
    int fi = left.leg_flag(i), fj = right.leg_flag(j) + F0;
    r.inv[fi] = fj;
    r.inv[fj] = fi;
    r.leg[fi] = r.leg[fj] = 0;
    auto order = glue_pair_order(n, i, m, j);
    std::map<std::pair<int, int>, int> newlabel;
    for (size_t k = 0; k < order.size(); ++k) newlabel[order[k]] = static_cast<int>(k) + 1;
    for (int f = 0; f < r.num_flags(); ++f) {
        if (r.inv[f] != f) continue;
        int side = f >= F0 ? 1 : 0;
        r.leg[f] = newlabel.at({side, r.leg[f]});
    }
    return r;
}

std::uint64_t closure_vertices(const Graph& gr, EdgeSet n) {
    auto e = gr.edges();
    std::uint64_t vs = 0;
    for (size_t k = 0; k < e.size(); ++k)
        if (n >> k & 1) vs |= (1ULL << gr.adj[e[k].first]) | (1ULL << gr.adj[e[k].second]);
    return vs;
}

bool closure_connected(const Graph& gr, EdgeSet n) {
    if (n == 0) return false;
    auto e = gr.edges();
    std::uint64_t vs = closure_vertices(gr, n);
    int start = __builtin_ctzll(vs);
    std::uint64_t reach = 1ULL << start;
    bool grown = true;
    while (grown) {
        grown = false;
        for (size_t k = 0; k < e.size(); ++k) {
            if (!(n >> k & 1)) continue;
            std::uint64_t a = 1ULL << gr.adj[e[k].first], b = 1ULL << gr.adj[e[k].second];
            if ((reach & (a | b)) && (reach & (a | b)) != (a | b)) {
                reach |= a | b;
                grown = true;
            }
        }
    }
    return reach == vs;
}

namespace {
void require_nest(const Graph& gr, EdgeSet n) {
    int E = gr.num_edges();
    EdgeSet all = E >= 64 ? ~0ULL : ((1ULL << E) - 1);
    if (n == 0 || (n & ~all) || n == all || !closure_connected(gr, n))
        throw GraphError(GraphErrorKind::NotANest, "edge set is not a nest");
}
}  // namespace

int contracted_vertex(const Graph& gr, EdgeSet n) {
    std::uint64_t vs = closure_vertices(gr, n);
    int lowest = __builtin_ctzll(vs);
    int idx = 0;
    for (int v = 0; v < lowest; ++v)
        if (!(vs >> v & 1)) ++idx;
    return idx;
}

Graph contract_nest(const Graph& gr, EdgeSet n) {
    require_nest(gr, n);
    auto e = gr.edges();
    std::uint64_t vs = closure_vertices(gr, n);
    int lowest = __builtin_ctzll(vs);
    std::vector<int> vmap(gr.num_vertices(), -1);
    int nv = 0;
    int collapsed = -1;
    for (int v = 0; v < gr.num_vertices(); ++v) {
        if (vs >> v & 1) {
            if (v == lowest) collapsed = vmap[v] = nv++;
            else vmap[v] = -2;
        } else {
            vmap[v] = nv++;
        }
    }
    for (int v = 0; v < gr.num_vertices(); ++v)
        if (vmap[v] == -2) vmap[v] = collapsed;
    std::vector<char> drop(gr.num_flags(), 0);
    int nedges = 0;
    for (size_t k = 0; k < e.size(); ++k)
        if (n >> k & 1) {
            drop[e[k].first] = drop[e[k].second] = 1;
            ++nedges;
        }
    std::vector<int> fmap(gr.num_flags(), -1);
    int nf = 0;
    for (int f = 0; f < gr.num_flags(); ++f)
        if (!drop[f]) fmap[f] = nf++;
    Graph r;
    r.genus.assign(nv, 0);
    int gsum = 0, cnt = 0;
    for (int v = 0; v < gr.num_vertices(); ++v) {
        if (vs >> v & 1) {
            gsum += gr.genus[v];
            ++cnt;
        } else {
            r.genus[vmap[v]] = gr.genus[v];
        }
    }
    r.genus[collapsed] = gsum + nedges - cnt + 1;
    for (int f = 0; f < gr.num_flags(); ++f) {
        if (drop[f]) continue;
        r.inv.push_back(fmap[gr.inv[f]]);
        r.adj.push_back(vmap[gr.adj[f]]);
        r.leg.push_back(gr.leg[f]);
    }
    return r;
}

Graph flag_closure(const Graph& gr, EdgeSet n) {
    require_nest(gr, n);
    auto e = gr.edges();
    std::uint64_t vs = closure_vertices(gr, n);
    std::vector<int> vmap(gr.num_vertices(), -1);
    Graph r;
    for (int v = 0; v < gr.num_vertices(); ++v)
        if (vs >> v & 1) {
            vmap[v] = r.num_vertices();
            r.genus.push_back(gr.genus[v]);
        }
    std::vector<char> inside(gr.num_flags(), 0);
    for (size_t k = 0; k < e.size(); ++k)
        if (n >> k & 1) inside[e[k].first] = inside[e[k].second] = 1;
    std::vector<int> fmap(gr.num_flags(), -1);
    int nf = 0;
    for (int f = 0; f < gr.num_flags(); ++f)
        if (vs >> gr.adj[f] & 1) fmap[f] = nf++;
    r.inv.resize(nf);
    r.adj.resize(nf);
    r.leg.assign(nf, 0);
    int label = 0;
    for (int f = 0; f < gr.num_flags(); ++f) {
        if (fmap[f] < 0) continue;
        r.adj[fmap[f]] = vmap[gr.adj[f]];
        if (inside[f]) {
            r.inv[fmap[f]] = fmap[gr.inv[f]];
        } else {
            r.inv[fmap[f]] = fmap[f];
            r.leg[fmap[f]] = ++label;
        }
    }
    return r;
}

Graph substitute(const Graph& gr, int v, const Graph& sub) {
    auto fl = gr.flags_at();
    if (v < 0 || v >= gr.num_vertices()) throw GraphError(GraphErrorKind::TypeMismatch, "vertex out of range");
    if (sub.total_genus() != gr.genus[v] || sub.num_legs() != static_cast<int>(fl[v].size()))
        throw GraphError(GraphErrorKind::TypeMismatch, "substituted graph has type (" + std::to_string(sub.total_genus()) + "," +
                                                          std::to_string(sub.num_legs()) + ") but the vertex has type (" +
                                                          std::to_string(gr.genus[v]) + "," + std::to_string(fl[v].size()) + ")");
    int Vs = sub.num_vertices();
    std::vector<int> vmap(gr.num_vertices());
    for (int u = 0; u < gr.num_vertices(); ++u) vmap[u] = u < v ? u : (u > v ? u + Vs - 1 : -1);
    Graph r;
    for (int u = 0; u < gr.num_vertices(); ++u) {
        if (u == v)
            for (int w = 0; w < Vs; ++w) r.genus.push_back(sub.genus[w]);
        else
            r.genus.push_back(gr.genus[u]);
    }
    int F0 = gr.num_flags();
    std::vector<int> subf(sub.num_flags(), -1);
    int nf = F0;
    for (int f = 0; f < sub.num_flags(); ++f)
        if (sub.inv[f] != f) subf[f] = nf++;
    r.inv.resize(nf);
    r.adj.resize(nf);
    r.leg.assign(nf, 0);
    for (int f = 0; f < F0; ++f) {
        r.inv[f] = gr.inv[f];
        r.leg[f] = gr.leg[f];
        if (gr.adj[f] == v) {
            auto pos = std::find(fl[v].begin(), fl[v].end(), f) - fl[v].begin();
            int sf = sub.leg_flag(static_cast<int>(pos) + 1);
            r.adj[f] = v + sub.adj[sf];
        } else {
            r.adj[f] = vmap[gr.adj[f]];
        }
    }
    for (int f = 0; f < sub.num_flags(); ++f) {
        if (subf[f] < 0) continue;
        r.inv[subf[f]] = subf[sub.inv[f]];
        r.adj[subf[f]] = v + sub.adj[f];
    }
    return r;
}

}  // namespace gcx
