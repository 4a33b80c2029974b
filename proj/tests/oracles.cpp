#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

namespace {

struct Multigraph {
    std::vector<int> genus;
    std::map<std::pair<int, int>, int> mult;  // (u,w), u <= w
    std::vector<int> leg_vertex;              // leg l+1 sits at leg_vertex[l]
};

using Code = std::vector<int>;

Code encode(const Multigraph& m, const std::vector<int>& p) {
    int v = static_cast<int>(m.genus.size());
    Code c(v, 0);
    for (int i = 0; i < v; ++i) c[p[i]] = m.genus[i];
    std::vector<std::pair<std::pair<int, int>, int>> es;
    for (auto [e, k] : m.mult) {
        int a = p[e.first], b = p[e.second];
        es.push_back({{std::min(a, b), std::max(a, b)}, k});
    }
    std::sort(es.begin(), es.end());
    for (auto& [e, k] : es) {
        c.push_back(e.first);
        c.push_back(e.second);
        c.push_back(k);
    }
    c.push_back(-1);
    for (int x : m.leg_vertex) c.push_back(p[x]);
    return c;
}

Code canonical(const Multigraph& m) {
    std::vector<int> p(m.genus.size());
    std::iota(p.begin(), p.end(), 0);
    Code best;
    do {
        Code c = encode(m, p);
        if (best.empty() || c < best) best = std::move(c);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

bool connected(const Multigraph& m) {
    int v = static_cast<int>(m.genus.size());
    std::vector<int> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [e, k] : m.mult) parent[find(e.first)] = find(e.second);
    for (int i = 0; i < v; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

}  // namespace

long count_graphs(int g, int n, int max_edges) {
    std::set<Code> seen;
    int vmax = std::max(1, 2 * g - 2 + n);
    for (int v = 1; v <= vmax; ++v) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < v; ++a)
            for (int b = a; b < v; ++b) pairs.emplace_back(a, b);
        // genus labels
        std::vector<int> genus(v, 0);
        std::function<void(int, int)> labels = [&](int i, int left) {
            if (i == v) {
                int edges = left + v - 1;  // first Betti number = left
                if (max_edges >= 0 && edges > max_edges) return;
                Multigraph m;
                m.genus = genus;
                std::function<void(int, int)> place = [&](int pi, int rest) {
                    if (pi == static_cast<int>(pairs.size())) {
                        if (rest) return;
                        if (!connected(m)) return;
                        m.leg_vertex.assign(n, 0);
                        std::function<void(int)> legs = [&](int l) {
                            if (l == n) {
                                std::vector<int> val(v, 0);
                                for (auto [e, k] : m.mult) {
                                    val[e.first] += k;
                                    val[e.second] += k;
                                }
                                for (int x : m.leg_vertex) ++val[x];
                                for (int i2 = 0; i2 < v; ++i2)
                                    if (val[i2] + 2 * m.genus[i2] < 3) return;
                                seen.insert(canonical(m));
                                return;
                            }
                            for (int x = 0; x < v; ++x) {
                                m.leg_vertex[l] = x;
                                legs(l + 1);
                            }
                        };
                        legs(0);
                        return;
                    }
                    for (int k = 0; k <= rest; ++k) {
                        if (k) m.mult[pairs[pi]] = k;
                        place(pi + 1, rest - k);
                        m.mult.erase(pairs[pi]);
                    }
                };
                place(0, edges);
                return;
            }
            for (int h = 0; h <= left; ++h) {
                genus[i] = h;
                labels(i + 1, left - h);
            }
        };
        labels(0, g);
    }
    return static_cast<long>(seen.size());
}

std::uint64_t aut_order(const gcx::Graph& gr) {
    int v = gr.num_vertices();
    std::map<std::pair<int, int>, int> mult;
    for (auto [f, f2] : gr.edges()) {
        int a = gr.adj[f], b = gr.adj[f2];
        ++mult[{std::min(a, b), std::max(a, b)}];
    }
    std::vector<int> legv(gr.num_flags(), -1);
    for (int f = 0; f < gr.num_flags(); ++f)
        if (gr.leg[f] > 0) legv[f] = gr.adj[f];
    std::uint64_t weight = 1;
    for (auto [e, k] : mult)
        for (int i = 1; i <= k; ++i) weight *= e.first == e.second ? 2 * i : i;
    std::vector<int> p(v);
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (int i = 0; i < v && ok; ++i) ok = gr.genus[p[i]] == gr.genus[i];
        for (int f = 0; f < gr.num_flags() && ok; ++f)
            if (legv[f] >= 0) ok = p[legv[f]] == legv[f];
        for (auto [e, k] : mult) {
            if (!ok) break;
            int a = p[e.first], b = p[e.second];
            auto it = mult.find({std::min(a, b), std::max(a, b)});
            ok = it != mult.end() && it->second == k;
        }
        if (ok) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count * weight;
}

int dense_rank(std::vector<std::vector<gcx::Q>> m) {
    int rows = static_cast<int>(m.size());
    if (!rows) return 0;
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            gcx::Q f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

long caterpillar_count(int n) {
    if (n < 3) return 0;
    std::vector<int> spine(n - 2);
    std::iota(spine.begin(), spine.end(), 3);
    long c = 0;
    do ++c;
    while (std::next_permutation(spine.begin(), spine.end()));
    return c;
}

int free_lie_multilinear_rank(int k) {
    using Word = std::vector<int>;
    using Poly = std::map<Word, long>;
    auto bracket = [](const Poly& a, const Poly& b) {
        Poly out;
        for (const auto& [u, x] : a)
            for (const auto& [w, y] : b) {
                Word uw = u, wu = w;
                uw.insert(uw.end(), w.begin(), w.end());
                wu.insert(wu.end(), u.begin(), u.end());
                out[uw] += x * y;
                out[wu] -= x * y;
            }
        return out;
    };
    std::vector<int> sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<Poly> polys;
    std::map<Word, int> column;
    do {
        Poly p{{{sigma[k - 1]}, 1}};
        for (int i = k - 2; i >= 0; --i) p = bracket(Poly{{{sigma[i]}, 1}}, p);
        for (const auto& [w, x] : p)
            if (x) column.emplace(w, static_cast<int>(column.size()));
        polys.push_back(std::move(p));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    std::vector<std::vector<gcx::Q>> m(polys.size(), std::vector<gcx::Q>(column.size()));
    for (size_t i = 0; i < polys.size(); ++i)
        for (const auto& [w, x] : polys[i])
            if (x) m[i][column.at(w)] = gcx::Q(x);
    return dense_rank(std::move(m));
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long catalan(int n) { return binomial(2 * n, n) / (n + 1); }

long hook_dimension(const std::vector<int>& lambda) {
    int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    long num = factorial(n), den = 1;
    for (size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            int arm = lambda[i] - j - 1, leg = 0;
            for (size_t k = i + 1; k < lambda.size() && lambda[k] > j; ++k) ++leg;
            den *= arm + leg + 1;
        }
    return num / den;
}

}  // namespace oracle
