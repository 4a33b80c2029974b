#include "gcx/tubing.hpp"

#include <algorithm>
#include <map>

namespace gcx {

namespace {

bool connected_subset(const SimpleGraph& l, std::uint64_t s) {
    if (s == 0) return false;
    std::uint64_t seen = s & (~s + 1);
    std::uint64_t frontier = seen;
    while (frontier) {
        int v = __builtin_ctzll(frontier);
        frontier &= frontier - 1;
        std::uint64_t nb = l.adj[v] & s & ~seen;
        seen |= nb;
        frontier |= nb;
    }
    return seen == s;
}

std::uint64_t full_set(const SimpleGraph& l) { return l.n >= 64 ? ~0ULL : ((1ULL << l.n) - 1); }

}  // namespace

std::vector<std::uint64_t> enumerate_tubes(const SimpleGraph& l) {
    std::vector<std::uint64_t> r;
    std::uint64_t all = full_set(l);
    for (std::uint64_t s = 1; s < all; ++s)
        if (connected_subset(l, s)) r.push_back(s);
    return r;
}

bool tubes_compatible(const SimpleGraph& l, std::uint64_t a, std::uint64_t b) {
    if ((a | b) == a || (a | b) == b) return true;
    if (a & b) return false;
    std::uint64_t u = a | b;
    return u != full_set(l) && !connected_subset(l, u);
}

std::vector<std::vector<std::uint64_t>> enumerate_tubings(const SimpleGraph& l) {
    auto tubes = enumerate_tubes(l);
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        out.push_back(cur);
        for (size_t i = start; i < tubes.size(); ++i) {
            bool ok = std::all_of(cur.begin(), cur.end(), [&](std::uint64_t t) { return tubes_compatible(l, t, tubes[i]); });
            if (!ok) continue;
            cur.push_back(tubes[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

RankedPoset inclusion_poset(const std::vector<std::vector<std::uint64_t>>& family) {
    RankedPoset p;
    std::map<std::vector<std::uint64_t>, int> index;
    for (size_t i = 0; i < family.size(); ++i) {
        auto s = family[i];
        std::sort(s.begin(), s.end());
        index[s] = static_cast<int>(i);
        p.rank.push_back(static_cast<int>(s.size()));
    }
    for (const auto& [s, b] : index)
        for (size_t k = 0; k < s.size(); ++k) {
            auto t = s;
            t.erase(t.begin() + static_cast<long>(k));
            auto it = index.find(t);
            if (it != index.end()) p.covers.emplace_back(it->second, b);
        }
    std::sort(p.covers.begin(), p.covers.end());
    return p;
}

namespace {

struct PosetSearch {
    int n = 0;
    std::vector<std::vector<int>> up, down;
    std::vector<int> rank;
    std::vector<int> best;
    bool have = false;

    static std::vector<int> rank_keys(const std::vector<std::vector<int>>& keys) {
        auto sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> r(keys.size());
        for (size_t i = 0; i < keys.size(); ++i)
            r[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
        return r;
    }

    std::vector<int> refine(std::vector<int> color) const {
        int cells = *std::max_element(color.begin(), color.end()) + 1;
        while (true) {
            std::vector<std::vector<int>> keys(n);
            for (int v = 0; v < n; ++v) {
                std::vector<int> u, d;
                for (int w : up[v]) u.push_back(color[w]);
                for (int w : down[v]) d.push_back(color[w]);
                std::sort(u.begin(), u.end());
                std::sort(d.begin(), d.end());
                keys[v].push_back(color[v]);
                keys[v].push_back(static_cast<int>(u.size()));
                keys[v].insert(keys[v].end(), u.begin(), u.end());
                keys[v].insert(keys[v].end(), d.begin(), d.end());
            }
            auto next = rank_keys(keys);
            int nc = *std::max_element(next.begin(), next.end()) + 1;
            color = std::move(next);
            if (nc == cells) return color;
            cells = nc;
        }
    }

    std::vector<int> encode(const std::vector<int>& pos) const {
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[pos[v]] = v;
        std::vector<int> code;
        code.push_back(n);
        for (int p = 0; p < n; ++p) code.push_back(rank[order[p]]);
        std::vector<std::pair<int, int>> arcs;
        for (int v = 0; v < n; ++v)
            for (int w : up[v]) arcs.emplace_back(pos[v], pos[w]);
        std::sort(arcs.begin(), arcs.end());
        for (auto [a, b] : arcs) {
            code.push_back(a);
            code.push_back(b);
        }
        return code;
    }

    void run(const std::vector<int>& c0) {
        auto color = refine(c0);
        int cells = *std::max_element(color.begin(), color.end()) + 1;
        if (cells == n) {
            auto code = encode(color);
            if (!have || code < best) {
                best = std::move(code);
                have = true;
            }
            return;
        }
        std::vector<int> size(cells, 0);
        for (int c : color) ++size[c];
        int target = 0;
        while (size[target] == 1) ++target;
        for (int v = 0; v < n; ++v) {
            if (color[v] != target) continue;
            std::vector<std::vector<int>> keys(n);
            for (int u = 0; u < n; ++u) keys[u] = {color[u], (color[u] == target && u != v) ? 1 : 0};
            run(rank_keys(keys));
        }
    }
};

}  // namespace

std::vector<int> poset_canonical_code(const RankedPoset& p) {
    PosetSearch s;
    s.n = static_cast<int>(p.rank.size());
    if (s.n == 0) return {0};
    s.rank = p.rank;
    s.up.assign(s.n, {});
    s.down.assign(s.n, {});
    for (auto [a, b] : p.covers) {
        s.up[a].push_back(b);
        s.down[b].push_back(a);
    }
    std::vector<std::vector<int>> keys(s.n);
    for (int v = 0; v < s.n; ++v) keys[v] = {p.rank[v]};
    s.run(PosetSearch::rank_keys(keys));
    return s.best;
}

std::string PolytopeReport::to_json() const {
    auto vec = [](const std::vector<long>& v) {
        std::string s = "[";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "]";
    };
    return "{\"nesting_f_vector\":" + vec(nesting_f_vector) + ",\"tubing_f_vector\":" + vec(tubing_f_vector) +
           ",\"full_nestings\":" + std::to_string(full_nestings) + ",\"full_tubings\":" + std::to_string(full_tubings) +
           ",\"alternating_sum\":" + std::to_string(alternating_sum) + ",\"isomorphic\":" + (isomorphic ? "true" : "false") + "}";
}

PolytopeReport verify_polytope(const Graph& gr) {
    PolytopeReport rep;
    int m = gr.num_edges();
    auto nestings = enumerate_nestings(gr);
    auto tubings = enumerate_tubings(line_graph(gr));
    auto fvec = [m](const auto& family) {
        std::vector<long> f(m, 0);
        for (const auto& s : family) {
            int d = m - 1 - static_cast<int>(s.size());
            if (d >= 0) ++f[d];
        }
        return f;
    };
    rep.nesting_f_vector = fvec(nestings);
    rep.tubing_f_vector = fvec(tubings);
    rep.full_nestings = m > 0 ? rep.nesting_f_vector[0] : 0;
    rep.full_tubings = m > 0 ? rep.tubing_f_vector[0] : 0;
    for (int d = 0; d < m; ++d) rep.alternating_sum += (d % 2 ? -1 : 1) * rep.nesting_f_vector[d];
    std::vector<std::vector<std::uint64_t>> nf(nestings.begin(), nestings.end());
    rep.isomorphic = rep.nesting_f_vector == rep.tubing_f_vector &&
                     poset_canonical_code(inclusion_poset(nf)) == poset_canonical_code(inclusion_poset(tubings));
    return rep;
}

}  // namespace gcx
