#include "gcx/induced.hpp"

#include <algorithm>

#include "gcx/parallel.hpp"

namespace gcx {

std::set<Color> colors_for_type(int g, int n) {
    std::set<Color> r;
    for (int h = 0; h <= g; ++h)
        for (int k = 0; k <= n + 2 * (g - h); ++k)
            if (stable(h, k)) r.insert({h, k});
    return r;
}

HomologyFamily homology_family(std::shared_ptr<const CoeffSystem> sys, const std::set<Color>& colors) {
    HomologyFamily fam;
    fam.sys = sys;
    for (auto [g, n] : colors) {
        auto c = build_ft(sys, g, n);
        fam.homology[{g, n}] = homology(c, true);
        fam.complexes.emplace(Color{g, n}, std::move(c));
    }
    return fam;
}

HomologyBasis homology_basis(const HomologyResult& h) {
    HomologyBasis b;
    for (const auto& [deg, betti] : h.betti) {
        b.offset[deg] = static_cast<int>(b.degrees.size());
        for (int k = 0; k < betti; ++k) b.degrees.push_back(deg);
    }
    return b;
}

namespace {

// Subgraph on the vertex set `in` (flagged per vertex); flags in `cut` become legs
// with the given labels, surviving legs are relabelled by `relabel`.
Decorated piece(const CoeffSystem& sys, const Graph& gr, const std::vector<char>& in, const std::vector<int>& unit,
                const std::map<int, int>& cut, const std::vector<int>& relabel) {
    std::vector<int> fmap(gr.num_flags(), -1), vmap(gr.num_vertices(), -1);
    int nf = 0, nv = 0;
    for (int v = 0; v < gr.num_vertices(); ++v)
        if (in[v]) vmap[v] = nv++;
    for (int f = 0; f < gr.num_flags(); ++f)
        if (in[gr.adj[f]]) fmap[f] = nf++;
    Graph p;
    p.genus.assign(nv, 0);
    for (int v = 0; v < gr.num_vertices(); ++v)
        if (in[v]) p.genus[vmap[v]] = gr.genus[v];
    for (int f = 0; f < gr.num_flags(); ++f) {
        if (fmap[f] < 0) continue;
        auto it = cut.find(f);
        if (it != cut.end()) {
            p.inv.push_back(fmap[f]);
            p.leg.push_back(it->second);
        } else if (gr.inv[f] == f) {
            p.inv.push_back(fmap[f]);
            p.leg.push_back(relabel[gr.leg[f]]);
        } else {
            p.inv.push_back(fmap[gr.inv[f]]);
            p.leg.push_back(0);
        }
        p.adj.push_back(vmap[gr.adj[f]]);
    }
    auto vflags = p.flags_at();
    auto dims = factor_dims(sys, p, vflags);
    std::vector<int> sub;
    for (int v = 0; v < gr.num_vertices(); ++v)
        if (in[v]) sub.push_back(unit[v]);
    long idx = 0;
    for (size_t k = 0; k < sub.size(); ++k) idx = idx * dims[k] + sub[k];
    std::vector<Q> t(tensor_size(dims));
    t[idx] = 1;
    return standard(sys, p, std::move(t));
}

// Component of the graph without edge (f, inv f) containing vertex v.
std::vector<char> side(const Graph& gr, int f, int v) {
    std::vector<char> seen(gr.num_vertices(), 0);
    std::vector<int> stack{v};
    seen[v] = 1;
    auto fl = gr.flags_at();
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int a : fl[x]) {
            if (a == f || a == gr.inv[f] || gr.inv[a] == a) continue;
            int y = gr.adj[gr.inv[a]];
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return seen;
}

Color type_of(const Graph& gr, const std::vector<char>& in, int extra_legs) {
    int verts = 0, genus = 0, flags = 0, legs = extra_legs;
    for (int v = 0; v < gr.num_vertices(); ++v)
        if (in[v]) ++verts, genus += gr.genus[v];
    for (int f = 0; f < gr.num_flags(); ++f) {
        if (!in[gr.adj[f]]) continue;
        ++flags;
        if (gr.inv[f] == f) ++legs;
    }
    // internal edges of the piece, excluding the cut flag counted among `flags`
    int edges = (flags - extra_legs - (legs - extra_legs)) / 2;
    return {genus + edges - verts + 1, legs};
}

// Coefficients <z_a, reduce(d)> for all homology classes a of the color, indexed by the homology basis.
std::vector<Q> evaluate(const HomologyFamily& fam, const Color& col, const Decorated& d) {
    const auto& h = fam.homology.at(col);
    auto hb = homology_basis(h);
    std::vector<Q> out(hb.degrees.size());
    for (auto& [deg, v] : fam.complexes.at(col).reduce(d)) {
        auto it = h.z_cycles.find(deg);
        if (it == h.z_cycles.end()) continue;
        int off = hb.offset.at(deg);
        for (size_t a = 0; a < it->second.size(); ++a) out[off + a] = pair(it->second[a], v);
    }
    return out;
}

int atom_position(const std::vector<std::pair<int, int>>& edges, int f) {
    for (size_t k = 0; k < edges.size(); ++k)
        if (edges[k].first == f) return static_cast<int>(k);
    return -1;
}

struct Contributions {
    std::map<std::tuple<int, int, int, int>, std::map<std::pair<int, long>, Q>> compose;  // (row, column)
    std::map<Color, std::map<std::pair<int, long>, Q>> contract;
};

}  // namespace

std::shared_ptr<TableSystem> induced_modular_structure(const HomologyFamily& fam) {
    const CoeffSystem& sys = *fam.sys;
    if (!sys.odd())
        for (const auto& [col, h] : fam.homology)
            if (col.first > 0)
                throw CoeffError("ParityMismatch", "self-gluings on the homology of an odd Feynman transform are not tabulated; use genus 0 colors");
    auto t = std::make_shared<TableSystem>();
    t->label = "H(FT(" + sys.name() + "))";
    t->is_odd = !sys.odd();
    std::map<Color, HomologyBasis> bases;
    for (const auto& [col, h] : fam.homology) {
        auto hb = homology_basis(h);
        bases[col] = hb;
        t->domain.insert(col);
        t->support_g = std::max(t->support_g, col.first);
        t->support_n = std::max(t->support_n, col.second);
        int dim = static_cast<int>(hb.degrees.size());
        if (dim == 0) continue;
        TableSystem::Color c;
        c.dim = dim;
        c.degrees = hb.degrees;
        const auto& cx = fam.complexes.at(col);
        for (int i = 1; i < col.second; ++i) {
            QMat s(dim, dim);
            for (const auto& [deg, betti] : h.betti) {
                QMat blk = homology_action(cx, h, deg, transposition(col.second, i));
                int off = hb.offset.at(deg);
                for (int r = 0; r < betti; ++r)
                    for (int q = 0; q < betti; ++q) s(off + r, off + q) = blk(r, q);
            }
            c.s.push_back(s);
        }
        t->colors[col] = c;
    }

    std::vector<Color> targets;
    for (const auto& [col, c] : t->colors) targets.push_back(col);
    std::vector<Contributions> parts(targets.size());
    parallel_for(targets.size(), [&](std::size_t ti) {
        Color col = targets[ti];
        auto [g, n] = col;
        const auto& cx = fam.complexes.at(col);
        const auto& h = fam.homology.at(col);
        const auto& hb = bases.at(col);
        auto& out = parts[ti];
        for (const auto& [deg, cs] : h.c_cycles) {
            const auto& blk = cx.basis.at(deg);
            for (size_t k = 0; k < cs.size(); ++k) {
                int row = hb.offset.at(deg) + static_cast<int>(k);
                for (const auto& [pos, coef] : cs[k]) {
                    auto [gi, local] = blk[pos];
                    const auto& fg = cx.graphs[gi];
                    const Graph& gr = fg.cg.graph;
                    auto vflags = gr.flags_at();
                    auto dims = factor_dims(sys, gr, vflags);
                    std::vector<int> unit(gr.num_vertices());
                    long idx = fg.free[local];
                    for (int v = gr.num_vertices() - 1; v >= 0; --v) {
                        unit[v] = static_cast<int>(idx % dims[v]);
                        idx /= dims[v];
                    }
                    std::vector<int> vdeg(gr.num_vertices());
                    for (int v = 0; v < gr.num_vertices(); ++v)
                        vdeg[v] = sys.degrees(gr.genus[v], static_cast<int>(vflags[v].size()))[unit[v]];
                    auto edges = gr.edges();
                    int E = static_cast<int>(edges.size());
                    std::vector<int> id(n + 1);
                    for (int l = 0; l <= n; ++l) id[l] = l;
                    for (auto [f, f2] : edges) {
                        int u = gr.adj[f], w = gr.adj[f2];
                        auto A = side(gr, f, u);
                        if (!A[w]) {
                            // bridge: try both sides as the left operand
                            for (int orient = 0; orient < 2; ++orient) {
                                int fl = orient ? f2 : f, fr = orient ? f : f2;
                                std::vector<char> L = orient ? side(gr, f, w) : A;
                                std::vector<char> R(L.size());
                                for (size_t v = 0; v < L.size(); ++v) R[v] = !L[v];
                                int nl = 0;
                                bool prefix = true;
                                for (int x = 0; x < gr.num_flags(); ++x)
                                    if (gr.inv[x] == x && L[gr.adj[x]]) ++nl;
                                for (int x = 0; x < gr.num_flags(); ++x)
                                    if (gr.inv[x] == x && L[gr.adj[x]] && gr.leg[x] > nl) prefix = false;
                                if (!prefix) continue;
                                Color cl = type_of(gr, L, 1), cr = type_of(gr, R, 1);
                                if (!t->colors.count(cl) || !t->colors.count(cr)) continue;
                                int n1 = cl.second;
                                std::vector<int> rl(n + 1, 0);
                                for (int l = n1; l <= n; ++l) rl[l] = l - n1 + 2;
                                Decorated dl = piece(sys, gr, L, unit, {{fl, n1}}, id);
                                Decorated dr = piece(sys, gr, R, unit, {{fr, 1}}, rl);
                                auto zl = evaluate(fam, cl, dl);
                                auto zr = evaluate(fam, cr, dr);
                                int parity = 0;
                                for (int a = 0; a < gr.num_vertices(); ++a)
                                    for (int b = a + 1; b < gr.num_vertices(); ++b)
                                        if (R[a] && L[b]) parity += vdeg[a] * vdeg[b];
                                int sign = parity % 2 ? -1 : 1;
                                if (!sys.odd()) {
                                    std::vector<int> order;
                                    for (int pass = 0; pass < 2; ++pass)
                                        for (int k2 = 0; k2 < E; ++k2) {
                                            if (edges[k2].first == f) continue;
                                            if ((pass == 0) == static_cast<bool>(L[gr.adj[edges[k2].first]])) order.push_back(k2);
                                        }
                                    order.push_back(atom_position(edges, f));
                                    std::vector<int> pos(E);
                                    for (int k2 = 0; k2 < E; ++k2) pos[order[k2]] = k2;
                                    sign *= perm_sign(pos);
                                }
                                int d2 = static_cast<int>(zr.size());
                                auto& acc = out.compose[{cl.first, cl.second, cr.first, cr.second}];
                                for (size_t a = 0; a < zl.size(); ++a) {
                                    if (zl[a] == 0) continue;
                                    for (int b = 0; b < d2; ++b)
                                        if (zr[b] != 0) {
                                            int da = bases.at(cl).degrees[a], db = bases.at(cr).degrees[b];
                                            // Koszul sign of pairing z_a ⊗ z_b against the left ⊗ right pieces
                                            int ks = (da * db) % 2 ? -sign : sign;
                                            acc[{row, static_cast<long>(a) * d2 + b}] += coef * ks * zl[a] * zr[b];
                                        }
                                }
                            }
                        } else {
                            Color src{g - 1, n + 2};
                            if (!t->colors.count(src)) continue;
                            std::vector<char> all(gr.num_vertices(), 1);
                            int sign = 1;
                            if (!sys.odd() && (E - 1 - atom_position(edges, f)) % 2) sign = -1;
                            for (int orient = 0; orient < 2; ++orient) {
                                int a1 = orient ? f2 : f, a2 = orient ? f : f2;
                                Decorated dp = piece(sys, gr, all, unit, {{a1, n + 1}, {a2, n + 2}}, id);
                                auto z = evaluate(fam, src, dp);
                                auto& acc = out.contract[src];
                                for (size_t a = 0; a < z.size(); ++a)
                                    if (z[a] != 0) acc[{row, static_cast<long>(a)}] += coef * sign * z[a];
                            }
                        }
                    }
                }
            }
        }
    });
    for (const auto& [k1, c1] : t->colors)
        for (const auto& [k2, c2] : t->colors) {
            Color o{k1.first + k2.first, k1.second + k2.second - 2};
            if (k1.second < 1 || k2.second < 1 || !t->domain.count(o)) continue;
            t->gen_compose[{k1.first, k1.second, k2.first, k2.second}] = QMat(t->dim(o.first, o.second), c1.dim * c2.dim);
        }
    for (const auto& [k, c] : t->colors)
        if (k.second >= 2 && t->domain.count({k.first + 1, k.second - 2}))
            t->gen_contract[k] = QMat(t->dim(k.first + 1, k.second - 2), c.dim);
    for (const auto& part : parts) {
        for (const auto& [key, entries] : part.compose) {
            auto it = t->gen_compose.find(key);
            if (it == t->gen_compose.end()) continue;
            for (const auto& [rc, v] : entries) it->second(rc.first, static_cast<int>(rc.second)) += v;
        }
        for (const auto& [key, entries] : part.contract) {
            auto it = t->gen_contract.find(key);
            if (it == t->gen_contract.end()) continue;
            for (const auto& [rc, v] : entries) it->second(rc.first, static_cast<int>(rc.second)) += v;
        }
    }
    return t;
}

}  // namespace gcx
