#include "gcx/feynman.hpp"

#include <algorithm>
#include <mutex>

#include "gcx/enumerate.hpp"
#include "gcx/parallel.hpp"
#include "json.hpp"

namespace gcx {

const std::vector<Graph>& graphs_of_type(int g, int n) {
    static std::mutex lock;
    static std::map<std::pair<int, int>, std::vector<Graph>> cache;
    {
        std::lock_guard<std::mutex> l(lock);
        auto it = cache.find({g, n});
        if (it != cache.end()) return it->second;
    }
    auto gs = enumerate_graphs(g, n);
    std::lock_guard<std::mutex> l(lock);
    return cache.emplace(std::make_pair(g, n), std::move(gs)).first->second;
}

int FTComplex::dim(int k) const {
    auto it = basis.find(k);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

SparseMatrix FTComplex::differential(int k) const {
    auto it = boundary.find(k - 1);
    if (it == boundary.end()) return SparseMatrix(dim(k - 1), dim(k));
    return it->second.transpose();
}

Decorated FTComplex::lift(int graph, int local) const {
    const auto& fg = graphs[graph];
    std::vector<Q> t(fg.tensor_dim);
    t[fg.free[local]] = 1;
    return standard(*sys, fg.cg.graph, std::move(t));
}

std::map<int, SparseVector> FTComplex::reduce(const Decorated& d) const {
    auto cr = canonicalize(d.graph);
    auto it = index.find(to_json(cr.graph));
    if (it == index.end()) throw CoeffError("UnknownGraph", "graph is not of type (" + std::to_string(g) + "," + std::to_string(n) + ")");
    const auto& fg = graphs[it->second];
    std::map<int, SparseVector> out;
    if (fg.free.empty()) return out;
    auto t = transport(*sys, d, cr.graph, cr.flag_map).tensor;
    for (int k = 0; k < fg.reduce.rows; ++k) {
        Q s = 0;
        for (int b = 0; b < fg.reduce.cols; ++b)
            if (t[b] != 0 && fg.reduce(k, b) != 0) s += fg.reduce(k, b) * t[b];
        if (s != 0) out[fg.degree[k]].emplace_back(fg.position[k], s);
    }
    for (auto& [deg, v] : out) std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

namespace {

FTGraph coinvariants(const CoeffSystem& sys, const Graph& gr) {
    FTGraph fg;
    fg.cg = make_canonical(gr);
    const Graph& c = fg.cg.graph;
    auto vflags = c.flags_at();
    auto dims = factor_dims(sys, c, vflags);
    fg.tensor_dim = tensor_size(dims);
    int D = fg.tensor_dim;
    if (D == 0) return fg;
    std::vector<QMat> gens;
    for (const auto& p : fg.cg.aut.generators) gens.push_back(automorphism_matrix(sys, c, p));
    QMat w(static_cast<int>(gens.size()) * D, D);
    int r = 0;
    for (const auto& m : gens)
        for (int b = 0; b < D; ++b, ++r)
            for (int a = 0; a < D; ++a) w(r, a) = m(a, b) - (a == b ? 1 : 0);
    auto piv = rref(w);
    std::vector<char> is_piv(D, 0);
    for (int p : piv) is_piv[p] = 1;
    for (int b = 0; b < D; ++b)
        if (!is_piv[b]) fg.free.push_back(b);
    int q = static_cast<int>(fg.free.size());
    fg.reduce = QMat(q, D);
    for (int k = 0; k < q; ++k) fg.reduce(k, fg.free[k]) = 1;
    for (size_t i = 0; i < piv.size(); ++i)
        for (int k = 0; k < q; ++k) fg.reduce(k, piv[i]) = -w(static_cast<int>(i), fg.free[k]);
    // degrees of the surviving coordinates
    std::vector<std::vector<int>> degs(c.num_vertices());
    for (int v = 0; v < c.num_vertices(); ++v) degs[v] = sys.degrees(c.genus[v], static_cast<int>(vflags[v].size()));
    for (int b : fg.free) {
        long idx = b;
        int s = 0;
        for (int v = c.num_vertices() - 1; v >= 0; --v) {
            s += degs[v][idx % dims[v]];
            idx /= dims[v];
        }
        fg.degree.push_back(-s - (sys.odd() ? 0 : c.num_edges()));
    }
    fg.position.assign(q, -1);
    return fg;
}

}  // namespace

FTComplex build_ft(std::shared_ptr<const CoeffSystem> sys, int g, int n, const FTOptions& opt) {
    if (!stable(g, n)) throw CoeffError("BadType", "(" + std::to_string(g) + "," + std::to_string(n) + ") is not stable");
    if (!type_covered(*sys, g, n))
        throw CoeffError("SupportTooSmall", "coefficients do not cover the vertex colors of (" + std::to_string(g) + "," + std::to_string(n) + ")");
    FTComplex c;
    c.sys = sys;
    c.g = g;
    c.n = n;
    std::vector<const Graph*> gs;
    for (const auto& gr : graphs_of_type(g, n))
        if (opt.max_edges < 0 || gr.num_edges() <= opt.max_edges) gs.push_back(&gr);
    c.graphs.resize(gs.size());
    parallel_for(gs.size(), [&](std::size_t i) { c.graphs[i] = coinvariants(*sys, *gs[i]); });
    for (size_t i = 0; i < c.graphs.size(); ++i) {
        auto& fg = c.graphs[i];
        c.index[fg.cg.key] = static_cast<int>(i);
        for (size_t k = 0; k < fg.free.size(); ++k) {
            auto& blk = c.basis[fg.degree[k]];
            fg.position[k] = static_cast<int>(blk.size());
            blk.emplace_back(static_cast<int>(i), static_cast<int>(k));
        }
    }
    // contraction boundary, one column per basis element
    struct Entry {
        int deg, row, col;
        Q val;
    };
    std::vector<std::vector<Entry>> parts(c.graphs.size());
    parallel_for(c.graphs.size(), [&](std::size_t i) {
        const auto& fg = c.graphs[i];
        auto edges = fg.cg.graph.edges();
        for (size_t k = 0; k < fg.free.size(); ++k) {
            Decorated d = c.lift(static_cast<int>(i), static_cast<int>(k));
            std::map<std::pair<int, int>, Q> col;
            for (auto [f, f2] : edges) {
                Decorated x = contract_edge(*sys, d, f);
                for (auto& [deg, v] : c.reduce(x)) {
                    if (deg != fg.degree[k] + 1) throw CoeffError("DegreeMismatch", "contraction changed the degree by more than one");
                    for (auto& [row, val] : v) col[{deg, row}] += val;
                }
            }
            for (auto& [key, val] : col)
                if (val != 0) parts[i].push_back({fg.degree[k], key.second, fg.position[k], val});
        }
    });
    for (const auto& [deg, blk] : c.basis)
        if (c.basis.count(deg + 1)) c.boundary[deg] = SparseMatrix(c.dim(deg + 1), static_cast<int>(blk.size()));
    for (const auto& part : parts)
        for (const auto& e : part) c.boundary.at(e.deg).add(e.row, e.col, e.val);
    for (auto& [deg, m] : c.boundary) m.finalize();
    if (opt.check_d_squared)
        for (const auto& [deg, m] : c.boundary) {
            auto it = c.boundary.find(deg + 1);
            if (it == c.boundary.end()) continue;
            if (!(it->second * m).is_zero())
                throw CoeffError("NotAComplex", "d^2 != 0 between degrees " + std::to_string(deg) + " and " + std::to_string(deg + 2));
        }
    return c;
}

SparseMatrix leg_action(const FTComplex& c, int k, const std::vector<int>& perm) {
    int d = c.dim(k);
    SparseMatrix m(d, d);
    if (d == 0) return m;
    std::vector<int> label(perm.size());
    for (size_t l = 0; l < perm.size(); ++l) label[l] = perm[l] + 1;
    const auto& blk = c.basis.at(k);
    std::vector<std::vector<std::pair<int, Q>>> cols(d);
    parallel_for(blk.size(), [&](std::size_t col) {
        Decorated x = c.lift(blk[col].first, blk[col].second);
        x.graph = relabel_legs(x.graph, label);
        auto r = c.reduce(x);
        auto it = r.find(k);
        if (it != r.end()) cols[col] = it->second;
    });
    for (int col = 0; col < d; ++col)
        for (const auto& [row, v] : cols[col]) m.add(row, col, v);
    m.finalize();
    return m;
}

SparseMatrix sn_action(const FTComplex& c, int k, int i) { return leg_action(c, k, transposition(c.n, i)).transpose(); }

EulerReport euler_characteristic(const FTComplex& c) {
    EulerReport r;
    for (const auto& [deg, blk] : c.basis) {
        r.dims[deg] = static_cast<int>(blk.size());
        r.chi += (deg % 2 == 0 ? 1 : -1) * static_cast<long>(blk.size());
    }
    return r;
}

std::string dump_complex(const FTComplex& c) {
    nlohmann::ordered_json j;
    j["system"] = c.sys->name();
    j["g"] = c.g;
    j["n"] = c.n;
    j["basis"] = nlohmann::ordered_json::array();
    for (const auto& [deg, blk] : c.basis)
        for (size_t p = 0; p < blk.size(); ++p) {
            const auto& fg = c.graphs[blk[p].first];
            nlohmann::ordered_json e;
            e["degree"] = deg;
            e["index"] = p;
            e["graph"] = nlohmann::ordered_json::parse(fg.cg.key);
            auto vflags = fg.cg.graph.flags_at();
            auto dims = factor_dims(*c.sys, fg.cg.graph, vflags);
            long idx = fg.free[blk[p].second];
            std::vector<int> labels(dims.size());
            for (int v = static_cast<int>(dims.size()) - 1; v >= 0; --v) {
                labels[v] = static_cast<int>(idx % dims[v]);
                idx /= dims[v];
            }
            e["labels"] = labels;
            j["basis"].push_back(e);
        }
    j["differential"] = nlohmann::ordered_json::array();
    for (const auto& [deg, m] : c.boundary) {
        // d_FT from degree deg+1 to deg
        SparseMatrix d = m.transpose();
        nlohmann::ordered_json e;
        e["from"] = deg + 1;
        e["to"] = deg;
        e["rows"] = d.rows;
        e["cols"] = d.cols;
        e["entries"] = nlohmann::ordered_json::array();
        for (int r = 0; r < d.rows; ++r)
            for (const auto& [col, v] : d.row[r]) e["entries"].push_back({r, col, to_string(v)});
        j["differential"].push_back(e);
    }
    return j.dump();
}

}  // namespace gcx
