#include "gcx/fiber.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <optional>

#include "gcx/coeff.hpp"
#include "gcx/enumerate.hpp"
#include "gcx/parallel.hpp"
#include "json.hpp"

namespace gcx {

int sort_sign(std::vector<Nest>& v) {
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j]) return 0;
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

void add_ordered(FChain& c, std::vector<Nest> ordered, const Q& coeff) {
    int s = sort_sign(ordered);
    if (s == 0 || coeff == 0) return;
    Q& slot = c[ordered];
    slot += s > 0 ? coeff : Q(-coeff);
    if (slot == 0) c.erase(ordered);
}

FChain chain_sum(const FChain& a, const FChain& b, const Q& sb) {
    FChain r = a;
    for (const auto& [k, v] : b) {
        Q& slot = r[k];
        slot += sb * v;
        if (slot == 0) r.erase(k);
    }
    return r;
}

bool is_nest_in(const Graph& gr, EdgeSet universe, Nest n) {
    return n != 0 && (n & ~universe) == 0 && n != universe && closure_connected(gr, n);
}

bool is_nesting_in(const Graph& gr, EdgeSet universe, const Nesting& ns) {
    for (size_t i = 0; i < ns.size(); ++i) {
        if (!is_nest_in(gr, universe, ns[i])) return false;
        for (size_t j = 0; j < i; ++j)
            if (ns[i] == ns[j] || !is_compatible(gr, ns[i], ns[j])) return false;
    }
    return true;
}

namespace {

std::vector<Nest> nests_in(const Graph& gr, EdgeSet universe) {
    std::vector<Nest> r;
    for (EdgeSet s = universe; s; s = (s - 1) & universe)
        if (s != universe && closure_connected(gr, s)) r.push_back(s);
    std::sort(r.begin(), r.end());
    return r;
}

EdgeSet everything(const Graph& gr) { return all_edges(gr); }

std::atomic<bool> g_corrupt{false};

bool contains(const std::vector<Nest>& v, Nest n) { return std::find(v.begin(), v.end(), n) != v.end(); }

struct Signed {
    std::vector<Nest> list;
    int sign;
};

int smallest_with(const std::vector<Nest>& ns, EdgeSet ebit) {
    int best = -1;
    for (size_t i = 0; i < ns.size(); ++i)
        if ((ns[i] & ebit) && (best < 0 || __builtin_popcountll(ns[i]) < __builtin_popcountll(ns[best]))) best = static_cast<int>(i);
    return best;
}

// 1..5 ignoring the a/b refinement.
int coarse_case(const Graph& gr, int e, const Nesting& ns) {
    EdgeSet ebit = 1ULL << e;
    EdgeSet nmax = everything(gr) & ~ebit;
    if (contains(ns, nmax)) return 1;
    int s = smallest_with(ns, ebit);
    if (s < 0) return 5;
    EdgeSet rest = ns[s] & ~ebit;
    if (rest == 0) return 2;
    if (contains(ns, rest)) return 3;
    auto comps = edge_components(gr, rest);
    if (comps.size() == 2 && contains(ns, comps[0]) && contains(ns, comps[1])) return 4;
    return 5;
}

// Replaces a nest containing e by its image after removing e; nullopt means the
// nest count changes.
std::optional<Nest> strip(const Graph& gr, EdgeSet ebit, Nest m, const std::vector<Nest>& present) {
    EdgeSet rest = m & ~ebit;
    auto comps = edge_components(gr, rest);
    if (comps.size() == 1) return comps[0];
    if (comps.size() != 2) return std::nullopt;
    bool a = contains(present, comps[0]), b = contains(present, comps[1]);
    if (a == b) return std::nullopt;
    return a ? comps[1] : comps[0];
}

std::optional<Signed> pi_single(const Graph& gr, int e, const Nesting& ns) {
    EdgeSet ebit = 1ULL << e;
    EdgeSet nmax = everything(gr) & ~ebit;
    int c = coarse_case(gr, e, ns);
    int r = static_cast<int>(ns.size());
    std::vector<Nest> list = ns;
    int sign = 1;
    if (c == 1) {
        int i = static_cast<int>(std::find(list.begin(), list.end(), nmax) - list.begin());
        if ((r - 1 - i) % 2) sign = -sign;
        list.erase(list.begin() + i);
        if (!is_nesting_in(gr, nmax, list)) return std::nullopt;
        return Signed{list, sign};
    }
    if (c == 5) return std::nullopt;
    if (r == 1) return Signed{{}, g_corrupt ? 1 : -1};
    int i = smallest_with(list, ebit);
    if (i == r - 1)
        sign = -sign;
    else if ((r - 2 - i) % 2)
        sign = -sign;
    list.erase(list.begin() + i);
    std::vector<int> order(list.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return __builtin_popcountll(list[a]) < __builtin_popcountll(list[b]); });
    for (int k : order) {
        if (!(list[k] & ebit)) continue;
        auto img = strip(gr, ebit, list[k], list);
        if (!img) return std::nullopt;
        list[k] = *img;
    }
    auto sorted = list;
    if (sort_sign(sorted) == 0) return std::nullopt;
    if (!is_nesting_in(gr, nmax, list)) return std::nullopt;
    if (g_corrupt && c == 2) sign = -sign;
    return Signed{list, sign};
}

}  // namespace

std::vector<Nesting> nestings_in(const Graph& gr, EdgeSet universe) {
    auto nests = nests_in(gr, universe);
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

FChain fiber_d(const Graph& gr, EdgeSet universe, const FChain& x) {
    auto nests = nests_in(gr, universe);
    FChain out;
    for (const auto& [ns, c] : x)
        for (Nest n : nests) {
            if (contains(ns, n)) continue;
            bool ok = true;
            for (Nest m : ns)
                if (!is_compatible(gr, n, m)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            auto ordered = ns;
            ordered.push_back(n);
            add_ordered(out, ordered, c);
        }
    return out;
}

bool admissible_edge(const Graph& gr, int e) {
    auto edges = gr.edges();
    if (edges.size() < 2 || e < 0 || e >= static_cast<int>(edges.size())) return false;
    int V = gr.num_vertices();
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> deg(V, 0);
    for (size_t k = 0; k < edges.size(); ++k) {
        if (static_cast<int>(k) == e) continue;
        int a = gr.adj[edges[k].first], b = gr.adj[edges[k].second];
        ++deg[a];
        ++deg[b];
        parent[find(a)] = find(b);
    }
    std::vector<int> roots;
    for (int v = 0; v < V; ++v)
        if (find(v) == v) roots.push_back(v);
    if (roots.size() == 1) return true;
    if (roots.size() != 2) return false;
    int a = gr.adj[edges[e].first], b = gr.adj[edges[e].second];
    return deg[a] == 0 || deg[b] == 0;
}

int choose_edge(const Graph& gr) {
    int E = gr.num_edges();
    for (int k = 0; k < E; ++k) {
        if (!admissible_edge(gr, k)) continue;
        EdgeSet rest = all_edges(gr) & ~(1ULL << k);
        if (closure_vertices(gr, rest) == closure_vertices(gr, all_edges(gr))) return k;
    }
    for (int k = 0; k < E; ++k)
        if (admissible_edge(gr, k)) return k;
    return -1;
}

const char* pi_case_name(PiCase c) {
    switch (c) {
        case PiCase::C1: return "1";
        case PiCase::C2a: return "2a";
        case PiCase::C2b: return "2b";
        case PiCase::C3a: return "3a";
        case PiCase::C3b: return "3b";
        case PiCase::C4a: return "4a";
        case PiCase::C4b: return "4b";
        case PiCase::C5: return "5";
    }
    return "?";
}

PiCase classify(const Graph& gr, int e, const Nesting& ns) {
    int c = coarse_case(gr, e, ns);
    if (c == 1) return PiCase::C1;
    if (c == 5) return PiCase::C5;
    bool a = pi_single(gr, e, ns).has_value();
    if (c == 2) return a ? PiCase::C2a : PiCase::C2b;
    if (c == 3) return a ? PiCase::C3a : PiCase::C3b;
    return a ? PiCase::C4a : PiCase::C4b;
}

FChain fiber_iota(const Graph& gr, int e, const FChain& x) {
    EdgeSet nmax = everything(gr) & ~(1ULL << e);
    FChain out;
    for (const auto& [ns, c] : x) {
        auto ordered = ns;
        ordered.push_back(nmax);
        add_ordered(out, ordered, c);
    }
    return out;
}

FChain fiber_pi(const Graph& gr, int e, const FChain& x) {
    FChain out;
    for (const auto& [ns, c] : x) {
        auto r = pi_single(gr, e, ns);
        if (r) add_ordered(out, r->list, r->sign > 0 ? c : Q(-c));
    }
    return out;
}

FChain fiber_H(const Graph& gr, int e, const FChain& x) {
    EdgeSet ebit = 1ULL << e;
    EdgeSet all = everything(gr);
    FChain out;
    for (const auto& [ns, c] : x) {
        int cc = coarse_case(gr, e, ns);
        if (cc < 2 || cc > 4) continue;
        int r = static_cast<int>(ns.size());
        int i = smallest_with(ns, ebit);
        Nest smallest = ns[i];
        Q coeff = (r - 1 - i) % 2 ? Q(-c) : c;
        std::vector<Nest> list = ns;
        list.erase(list.begin() + i);
        add_ordered(out, list, coeff);
        std::vector<Nest> rest;
        for (Nest m : ns)
            if ((m & ebit) && m != smallest) rest.push_back(m);
        std::sort(rest.begin(), rest.end(), [](Nest a, Nest b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
        for (Nest m : rest) {
            auto img = strip(gr, ebit, m, list);
            if (!img) break;
            auto next = list;
            *std::find(next.begin(), next.end(), m) = *img;
            auto sorted = next;
            if (sort_sign(sorted) == 0 || !is_nesting_in(gr, all, next)) break;
            list = next;
            add_ordered(out, list, coeff);
        }
    }
    return out;
}

FiberComplex build_fiber_complex(const Graph& gr, EdgeSet universe) {
    FiberComplex fc;
    auto all = nestings_in(gr, universe);
    size_t maxk = 0;
    for (const auto& ns : all) maxk = std::max(maxk, ns.size());
    fc.basis.assign(maxk + 1, {});
    for (auto& ns : all) fc.basis[ns.size()].push_back(ns);
    for (auto& b : fc.basis) std::sort(b.begin(), b.end());
    for (size_t k = 0; k + 1 < fc.basis.size(); ++k) {
        SparseMatrix d(static_cast<int>(fc.basis[k + 1].size()), static_cast<int>(fc.basis[k].size()));
        std::map<Nesting, int> index;
        for (size_t j = 0; j < fc.basis[k + 1].size(); ++j) index[fc.basis[k + 1][j]] = static_cast<int>(j);
        for (size_t j = 0; j < fc.basis[k].size(); ++j) {
            FChain x{{fc.basis[k][j], Q(1)}};
            for (const auto& [ns, v] : fiber_d(gr, universe, x)) d.add(index.at(ns), static_cast<int>(j), v);
        }
        d.finalize();
        fc.d.push_back(std::move(d));
    }
    return fc;
}

std::vector<int> fiber_homology(const FiberComplex& c) {
    std::vector<int> ranks(c.d.size());
    for (size_t k = 0; k < c.d.size(); ++k) ranks[k] = rank(c.d[k]);
    std::vector<int> betti(c.basis.size());
    for (size_t k = 0; k < c.basis.size(); ++k) {
        int b = static_cast<int>(c.basis[k].size());
        if (k < ranks.size()) b -= ranks[k];
        if (k > 0) b -= ranks[k - 1];
        betti[k] = b;
    }
    return betti;
}

void corrupt_pi_sign(bool on) { g_corrupt = on; }

std::string nesting_name(const Nesting& ns, const std::vector<char>& letters) {
    std::string s = "{";
    for (size_t i = 0; i < ns.size(); ++i) {
        if (i) s += ",";
        for (size_t k = 0; k < letters.size(); ++k)
            if (ns[i] >> k & 1) s += letters[k];
    }
    return s + "}";
}

namespace {
std::string describe(const FChain& c) {
    std::string s;
    for (const auto& [ns, v] : c) {
        s += (s.empty() ? "" : " + ") + to_string(v) + "*{";
        for (size_t i = 0; i < ns.size(); ++i) s += (i ? "," : "") + std::to_string(ns[i]);
        s += "}";
    }
    return s.empty() ? "0" : s;
}
}  // namespace

RetractReport verify_retract(const Graph& gr, int e) {
    RetractReport rep;
    EdgeSet all = everything(gr);
    EdgeSet sub = all & ~(1ULL << e);
    auto fail = [&](bool& flag, const std::string& what, const Nesting& b, const FChain& lhs, const FChain& rhs) {
        flag = false;
        if (rep.first_failure.empty()) {
            std::string name;
            for (size_t i = 0; i < b.size(); ++i) name += (i ? "," : "") + std::to_string(b[i]);
            rep.first_failure = what + " fails on nesting {" + name + "}: " + describe(lhs) + " vs " + describe(rhs);
        }
    };
    // The source carries the desuspended differential -d.
    auto dsub = [&](const FChain& x) {
        FChain r = fiber_d(gr, sub, x);
        for (auto& [k, v] : r) v = -v;
        return r;
    };
    for (const auto& b : nestings_in(gr, all)) {
        FChain x{{b, Q(1)}};
        FChain dx = fiber_d(gr, all, x);
        FChain ddx = fiber_d(gr, all, dx);
        if (!ddx.empty()) fail(rep.d_squared, "d^2 = 0", b, ddx, {});
        FChain l = fiber_pi(gr, e, dx), r = dsub(fiber_pi(gr, e, x));
        if (l != r) fail(rep.pi_d, "pi d = d pi", b, l, r);
        FChain hx = fiber_H(gr, e, x);
        FChain lhs = chain_sum(fiber_d(gr, all, hx), fiber_H(gr, e, dx));
        FChain rhs = chain_sum(x, fiber_iota(gr, e, fiber_pi(gr, e, x)), -1);
        if (lhs != rhs) fail(rep.homotopy, "dH + Hd = id - iota pi", b, lhs, rhs);
    }
    for (const auto& b : nestings_in(gr, sub)) {
        FChain x{{b, Q(1)}};
        FChain l = fiber_iota(gr, e, dsub(x)), r = fiber_d(gr, all, fiber_iota(gr, e, x));
        if (l != r) fail(rep.iota_d, "iota d = d iota", b, l, r);
        FChain pi = fiber_pi(gr, e, fiber_iota(gr, e, x));
        if (pi != x) fail(rep.pi_iota, "pi iota = id", b, pi, x);
    }
    return rep;
}

int kappa_sign(const Graph& gr, const std::vector<int>& psi, Nest n) {
    if (!is_nest(gr, n)) throw GraphError(GraphErrorKind::NotANest, "kappa_sign needs a nest");
    int inv = 0;
    for (size_t i = 0; i < psi.size(); ++i)
        for (size_t j = i + 1; j < psi.size(); ++j)
            if ((n >> psi[i] & 1) && !(n >> psi[j] & 1)) ++inv;
    return inv % 2 ? -1 : 1;
}

FiberCheck fiber_check(const Graph& gr) {
    FiberCheck r;
    r.betti = fiber_homology(build_fiber_complex(gr, all_edges(gr)));
    int top = gr.num_edges() - 1;
    for (int k = 0; k < static_cast<int>(r.betti.size()); ++k)
        if (r.betti[k] != (k == top ? 1 : 0)) r.concentrated = false;
    if (top >= static_cast<int>(r.betti.size())) r.concentrated = false;
    if (!r.concentrated) r.first_failure = "homology of " + to_json(gr) + " is not concentrated in degree -|E|";
    for (int e = 0; e < gr.num_edges(); ++e) {
        if (!admissible_edge(gr, e)) continue;
        ++r.edges;
        auto rep = verify_retract(gr, e);
        if (!rep.ok() && r.identities) {
            r.identities = false;
            r.first_failure = to_json(gr) + " edge " + std::to_string(e) + ": " + rep.first_failure;
        }
    }
    return r;
}

std::string FiberSweep::to_json() const {
    nlohmann::ordered_json j;
    j["graphs_checked"] = graphs;
    j["edges_checked"] = edges;
    j["identities"] = identities ? "pass" : "fail";
    j["homology_profile"] = {{"concentrated_in_degree_minus_E", concentrated}, {"other", graphs - concentrated}};
    if (!first_failure.empty()) j["first_failure"] = first_failure;
    return j.dump();
}

FiberSweep fiber_sweep(const std::vector<Graph>& pool) {
    std::vector<FiberCheck> res(pool.size());
    parallel_for(pool.size(), [&](std::size_t i) { res[i] = fiber_check(pool[i]); });
    FiberSweep s;
    s.graphs = static_cast<long>(pool.size());
    for (const auto& r : res) {
        s.edges += r.edges;
        s.identities = s.identities && r.identities;
        s.concentrated += r.concentrated;
        if (s.first_failure.empty()) s.first_failure = r.first_failure;
    }
    return s;
}

FiberSweep fiber_sweep(int max_edges, int max_genus, int max_legs) {
    std::vector<Graph> pool;
    for (int g = 0; g <= max_genus; ++g)
        for (int n = 0; n <= max_legs; ++n) {
            if (!stable(g, n)) continue;
            for (auto& gr : enumerate_graphs(g, n, max_edges))
                if (gr.num_edges() > 0) pool.push_back(std::move(gr));
        }
    return fiber_sweep(pool);
}

}  // namespace gcx
