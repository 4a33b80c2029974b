#include "gcx/presentation.hpp"

#include <algorithm>
#include <numeric>

namespace gcx {

std::vector<int> factor_dims(const CoeffSystem& sys, const Graph& gr, const std::vector<std::vector<int>>& vflags) {
    std::vector<int> d(gr.num_vertices());
    for (int v = 0; v < gr.num_vertices(); ++v) d[v] = sys.dim(gr.genus[v], static_cast<int>(vflags[v].size()));
    return d;
}

int tensor_size(const std::vector<int>& dims) {
    int s = 1;
    for (int d : dims) s *= d;
    return s;
}

namespace {

using Degs = std::vector<std::vector<int>>;

Degs factor_degrees(const CoeffSystem& sys, const Graph& gr, const std::vector<std::vector<int>>& vflags) {
    Degs r(gr.num_vertices());
    for (int v = 0; v < gr.num_vertices(); ++v) r[v] = sys.degrees(gr.genus[v], static_cast<int>(vflags[v].size()));
    return r;
}

std::vector<int> unflatten(long idx, const std::vector<int>& dims) {
    std::vector<int> b(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        b[k] = static_cast<int>(idx % dims[k]);
        idx /= dims[k];
    }
    return b;
}

long flatten(const std::vector<int>& b, const std::vector<int>& dims) {
    long idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + b[k];
    return idx;
}

// Moves factor x to position newpos[x], with the Koszul sign of the induced reordering.
std::vector<Q> reorder(const std::vector<Q>& t, const std::vector<int>& dims, const Degs& degs, const std::vector<int>& newpos) {
    int m = static_cast<int>(dims.size());
    std::vector<int> ndims(m);
    for (int x = 0; x < m; ++x) ndims[newpos[x]] = dims[x];
    std::vector<Q> out(t.size());
    std::vector<int> nb(m);
    for (long idx = 0; idx < static_cast<long>(t.size()); ++idx) {
        if (t[idx] == 0) continue;
        auto b = unflatten(idx, dims);
        int parity = 0;
        for (int x = 0; x < m; ++x)
            for (int y = x + 1; y < m; ++y)
                if (newpos[x] > newpos[y]) parity += degs[x][b[x]] * degs[y][b[y]];
        for (int x = 0; x < m; ++x) nb[newpos[x]] = b[x];
        out[flatten(nb, ndims)] = parity % 2 ? Q(-t[idx]) : t[idx];
    }
    return out;
}

// Applies m to factor k; entries pick up the sign of passing the factors before k.
std::vector<Q> apply_factor(const std::vector<Q>& t, const std::vector<int>& dims, const Degs& degs, int k, const QMat& m,
                            const std::vector<int>& new_degs) {
    std::vector<int> ndims = dims;
    ndims[k] = m.rows;
    std::vector<Q> out(tensor_size(ndims));
    for (long idx = 0; idx < static_cast<long>(t.size()); ++idx) {
        if (t[idx] == 0) continue;
        auto b = unflatten(idx, dims);
        int before = 0;
        for (int x = 0; x < k; ++x) before += degs[x][b[x]];
        int a = b[k];
        for (int c = 0; c < m.rows; ++c) {
            const Q& e = m(c, a);
            if (e == 0) continue;
            b[k] = c;
            int shift = ((new_degs[c] - degs[k][a]) % 2 + 2) % 2;
            Q v = e * t[idx];
            if (shift && before % 2) v = -v;
            out[flatten(b, ndims)] += v;
        }
    }
    return out;
}

int lower_flag(const Graph& gr, int f) { return std::min(f, gr.inv[f]); }

int index_of(const std::vector<int>& v, int x) { return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin()); }

// Graph with the two flags of an edge removed; vertex `gone` (if >= 0) merged into `keep`.
Graph drop_edge(const Graph& gr, int f, int keep, int gone, std::vector<int>& fmap, std::vector<int>& vmap) {
    int f2 = gr.inv[f];
    fmap.assign(gr.num_flags(), -1);
    int nf = 0;
    for (int x = 0; x < gr.num_flags(); ++x)
        if (x != f && x != f2) fmap[x] = nf++;
    vmap.assign(gr.num_vertices(), -1);
    int nv = 0;
    for (int v = 0; v < gr.num_vertices(); ++v)
        if (v != gone) vmap[v] = nv++;
    if (gone >= 0) vmap[gone] = vmap[keep];
    Graph r;
    r.genus.assign(nv, 0);
    for (int v = 0; v < gr.num_vertices(); ++v)
        if (v != gone) r.genus[vmap[v]] = gr.genus[v];
    if (gone >= 0)
        r.genus[vmap[keep]] += gr.genus[gone];
    else
        r.genus[vmap[keep]] += 1;
    for (int x = 0; x < gr.num_flags(); ++x) {
        if (fmap[x] < 0) continue;
        r.inv.push_back(fmap[gr.inv[x]]);
        r.adj.push_back(vmap[gr.adj[x]]);
        r.leg.push_back(gr.leg[x]);
    }
    return r;
}

std::vector<int> remap(const std::vector<int>& v, const std::vector<int>& fmap) {
    std::vector<int> r;
    for (int x : v) r.push_back(fmap[x]);
    return r;
}

}  // namespace

Decorated standard(const CoeffSystem& sys, const Graph& gr, std::vector<Q> tensor) {
    Decorated d;
    d.graph = gr;
    d.vflags = gr.flags_at();
    if (static_cast<int>(tensor.size()) != tensor_size(factor_dims(sys, gr, d.vflags)))
        throw CoeffError("ShapeMismatch", "tensor size does not match the vertex dimensions");
    d.tensor = std::move(tensor);
    if (!sys.odd())
        for (auto [a, b] : gr.edges()) d.atoms.push_back(a);
    return d;
}

Decorated contract_edge(const CoeffSystem& sys, const Decorated& d, int f, bool flip) {
    const Graph& gr = d.graph;
    int f2 = gr.inv[f];
    if (f2 == f) throw CoeffError("BadLegIndex", "flag is a leg");
    int lo = std::min(f, f2);
    auto dims = factor_dims(sys, gr, d.vflags);
    auto degs = factor_degrees(sys, gr, d.vflags);
    Decorated r;
    std::vector<int> fmap, vmap;
    int sign = 1;
    if (!d.atoms.empty()) {
        int p = index_of(d.atoms, lo);
        if ((static_cast<int>(d.atoms.size()) - 1 - p) % 2) sign = -1;
        for (int a : d.atoms)
            if (a != lo) r.atoms.push_back(a);
    }
    int u = gr.adj[f], w = gr.adj[f2];
    if (u != w) {
        int fu = f, fw = f2;
        if (flip) {
            std::swap(u, w);
            std::swap(fu, fw);
        }
        int V = gr.num_vertices();
        std::vector<int> front(V);
        int next = 2;
        for (int v = 0; v < V; ++v) front[v] = v == u ? 0 : v == w ? 1 : next++;
        auto t = reorder(d.tensor, dims, degs, front);
        int nu = static_cast<int>(d.vflags[u].size()), nw = static_cast<int>(d.vflags[w].size());
        int i = index_of(d.vflags[u], fu) + 1, j = index_of(d.vflags[w], fw) + 1;
        QMat c = sys.compose(gr.genus[u], nu, i, gr.genus[w], nw, j);
        long rest = 1;
        for (int v = 0; v < V; ++v)
            if (v != u && v != w) rest *= dims[v];
        std::vector<Q> merged(static_cast<size_t>(c.rows) * rest);
        for (int row = 0; row < c.rows; ++row)
            for (int col = 0; col < c.cols; ++col) {
                const Q& e = c(row, col);
                if (e == 0) continue;
                for (long s = 0; s < rest; ++s) {
                    const Q& x = t[col * rest + s];
                    if (x != 0) merged[row * rest + s] += e * x;
                }
            }
        r.graph = drop_edge(gr, f, u, w, fmap, vmap);
        std::vector<int> mflags;
        const auto& U = d.vflags[u];
        const auto& W = d.vflags[w];
        for (int k = 0; k < i - 1; ++k) mflags.push_back(U[k]);
        for (int k = j; k < nw; ++k) mflags.push_back(W[k]);
        for (int k = 0; k < j - 1; ++k) mflags.push_back(W[k]);
        for (int k = i; k < nu; ++k) mflags.push_back(U[k]);
        r.vflags.assign(V - 1, {});
        for (int v = 0; v < V; ++v)
            if (v != w) r.vflags[vmap[v]] = remap(v == u ? mflags : d.vflags[v], fmap);
        // factors are now (merged, others in order); move them into graph order
        std::vector<int> mdims{c.rows};
        Degs mdegs{sys.degrees(r.graph.genus[vmap[u]], static_cast<int>(mflags.size()))};
        std::vector<int> back{vmap[u]};
        for (int v = 0; v < V; ++v)
            if (v != u && v != w) {
                mdims.push_back(dims[v]);
                mdegs.push_back(degs[v]);
                back.push_back(vmap[v]);
            }
        r.tensor = reorder(merged, mdims, mdegs, back);
    } else {
        int p = index_of(d.vflags[u], f) + 1, q = index_of(d.vflags[u], f2) + 1;
        int n = static_cast<int>(d.vflags[u].size());
        int i = std::min(p, q), j = std::max(p, q);
        QMat x = sys.contract(gr.genus[u], n, i, j);
        if (sys.odd() && !x.is_zero()) throw CoeffError("ParityMismatch", "self-gluing of an odd system with non-zero contraction");
        if (p > q && sys.odd()) sign = -sign;
        auto ndeg = sys.degrees(gr.genus[u] + 1, n - 2);
        auto t = apply_factor(d.tensor, dims, degs, u, x, ndeg);
        r.graph = drop_edge(gr, f, u, -1, fmap, vmap);
        r.vflags.resize(gr.num_vertices());
        for (int v = 0; v < gr.num_vertices(); ++v) {
            std::vector<int> fl;
            for (int y : d.vflags[v])
                if (y != f && y != f2) fl.push_back(y);
            r.vflags[v] = remap(fl, fmap);
        }
        r.tensor = std::move(t);
    }
    for (int& a : r.atoms) a = fmap[a];
    if (sign < 0)
        for (auto& x : r.tensor) x = -x;
    return r;
}

Decorated transport(const CoeffSystem& sys, const Decorated& d, const Graph& target, const std::vector<int>& flag_map) {
    const Graph& gr = d.graph;
    int V = gr.num_vertices();
    auto tflags = target.flags_at();
    std::vector<int> vm(V, 0);
    for (int v = 0; v < V; ++v)
        if (!d.vflags[v].empty()) vm[v] = target.adj[flag_map[d.vflags[v][0]]];
    auto dims = factor_dims(sys, gr, d.vflags);
    auto degs = factor_degrees(sys, gr, d.vflags);
    std::vector<Q> t = d.tensor;
    for (int v = 0; v < V; ++v) {
        int k = static_cast<int>(d.vflags[v].size());
        std::vector<int> tau(k);
        bool ident = true;
        for (int l = 0; l < k; ++l) {
            tau[l] = index_of(tflags[vm[v]], flag_map[d.vflags[v][l]]);
            if (tau[l] != l) ident = false;
        }
        if (ident || dims[v] == 0) continue;
        t = apply_factor(t, dims, degs, v, sys.act(gr.genus[v], k, tau), degs[v]);
    }
    Decorated r;
    r.graph = target;
    r.vflags = tflags;
    r.tensor = reorder(t, dims, degs, vm);
    if (!sys.odd()) {
        auto edges = target.edges();
        std::vector<int> ref;
        for (auto [a, b] : edges) ref.push_back(a);
        std::vector<int> pos;
        for (int a : d.atoms) pos.push_back(index_of(ref, lower_flag(target, flag_map[a])));
        if (perm_sign(pos) < 0)
            for (auto& x : r.tensor) x = -x;
        r.atoms = ref;
    }
    return r;
}

QMat automorphism_matrix(const CoeffSystem& sys, const Graph& gr, const std::vector<int>& flag_perm) {
    auto vflags = gr.flags_at();
    int n = tensor_size(factor_dims(sys, gr, vflags));
    QMat m(n, n);
    for (int b = 0; b < n; ++b) {
        std::vector<Q> e(n);
        e[b] = 1;
        auto r = transport(sys, standard(sys, gr, e), gr, flag_perm);
        for (int a = 0; a < n; ++a) m(a, b) = r.tensor[a];
    }
    return m;
}

}  // namespace gcx
