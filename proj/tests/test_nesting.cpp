#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "gcx/families.hpp"
#include "gcx/nesting.hpp"
#include "gcx/tubing.hpp"
#include "oracles.hpp"

using namespace gcx;

namespace {

// Nests straight from the definition: proper non-empty edge sets whose edges
// connect every vertex they touch.
std::vector<std::pair<EdgeSet, std::uint64_t>> naive_nests(const Graph& gr) {
    auto es = gr.edges();
    int m = static_cast<int>(es.size());
    std::vector<std::pair<EdgeSet, std::uint64_t>> out;
    for (EdgeSet s = 1; s + 1 < (EdgeSet(1) << m); ++s) {
        std::uint64_t verts = 0;
        for (int i = 0; i < m; ++i)
            if (s >> i & 1) verts |= (std::uint64_t(1) << gr.adj[es[i].first]) | (std::uint64_t(1) << gr.adj[es[i].second]);
        std::uint64_t reach = verts & -verts;
        for (bool grew = true; grew;) {
            grew = false;
            for (int i = 0; i < m; ++i) {
                if (!(s >> i & 1)) continue;
                std::uint64_t ends = (std::uint64_t(1) << gr.adj[es[i].first]) | (std::uint64_t(1) << gr.adj[es[i].second]);
                if ((reach & ends) && (ends & ~reach)) {
                    reach |= ends;
                    grew = true;
                }
            }
        }
        if (reach == verts) out.emplace_back(s, verts);
    }
    return out;
}

// Number of nestings with exactly k nests, k = 0..|E|-1.
std::vector<long> naive_nesting_counts(const Graph& gr) {
    auto nests = naive_nests(gr);
    std::vector<long> count(gr.num_edges(), 0);
    std::vector<int> chosen;
    std::function<void(size_t)> go = [&](size_t i) {
        if (i == nests.size()) {
            ++count[chosen.size()];
            return;
        }
        go(i + 1);
        for (int j : chosen) {
            auto [a, va] = nests[i];
            auto [b, vb] = nests[j];
            bool nested = (a & b) == a || (a & b) == b;
            if (!nested && (va & vb)) return;
        }
        chosen.push_back(static_cast<int>(i));
        go(i + 1);
        chosen.pop_back();
    };
    go(0);
    return count;
}

}  // namespace

TEST_CASE("nestings match the definition") {
    for (auto spec : {"path:3", "path:4", "cycle:4", "bouquet:3", "theta", "K4"}) {
        CAPTURE(spec);
        Graph gr = named_graph(spec);
        auto expect = naive_nesting_counts(gr);
        auto all = enumerate_nestings(gr);
        std::vector<long> got(gr.num_edges(), 0);
        for (const auto& ns : all) {
            CHECK(is_nesting(gr, ns));
            ++got[ns.size()];
        }
        CHECK(got == expect);
        CHECK(enumerate_nests(gr).size() == naive_nests(gr).size());
    }
}

TEST_CASE("full nestings") {
    Graph gr = named_graph("path:3");
    for (const auto& ns : enumerate_nestings(gr)) CHECK(is_full(gr, ns) == (static_cast<int>(ns.size()) == gr.num_edges() - 1));
}

TEST_CASE("line graphs are simple") {
    auto l = line_graph(named_graph("bouquet:3"));
    CHECK(l.n == 3);
    for (int i = 0; i < 3; ++i) CHECK(l.adj[i] == (7u & ~(1u << i)));
    auto p = line_graph(named_graph("path:3"));
    CHECK(p.adj[0] == 2u);
    CHECK(p.adj[1] == 5u);
    CHECK(p.adj[2] == 2u);
}

TEST_CASE("polytope correspondence for the classical families") {
    for (int k = 2; k <= 4; ++k) {
        auto r = verify_polytope(named_graph("bouquet:" + std::to_string(k)));
        CHECK(r.isomorphic);
        CHECK(r.full_nestings == oracle::factorial(k));
        CHECK(r.full_tubings == oracle::factorial(k));
        CHECK(r.alternating_sum == 1);
    }
    for (int m = 2; m <= 5; ++m) {
        auto r = verify_polytope(named_graph("path:" + std::to_string(m)));
        CHECK(r.isomorphic);
        CHECK(r.full_nestings == oracle::catalan(m));
        CHECK(r.alternating_sum == 1);
    }
    for (int m = 3; m <= 5; ++m) {
        auto r = verify_polytope(named_graph("cycle:" + std::to_string(m)));
        CHECK(r.isomorphic);
        CHECK(r.full_nestings == oracle::binomial(2 * m - 2, m - 1));
        CHECK(r.alternating_sum == 1);
    }
}

TEST_CASE("nesting f-vector agrees with the naive count") {
    for (auto spec : {"theta", "K4", "cycle:4"}) {
        Graph gr = named_graph(spec);
        auto r = verify_polytope(gr);
        auto c = naive_nesting_counts(gr);
        // faces of dimension d have |E|-1-d nests
        for (size_t d = 0; d < r.nesting_f_vector.size(); ++d) CHECK(r.nesting_f_vector[d] == c[gr.num_edges() - 1 - d]);
        CHECK(r.isomorphic);
    }
}

TEST_CASE("poset codes separate non-isomorphic posets") {
    auto a = verify_polytope(named_graph("path:4"));
    auto b = verify_polytope(named_graph("cycle:4"));
    CHECK(a.nesting_f_vector != b.nesting_f_vector);
    RankedPoset chain{{0, 1, 2}, {{0, 1}, {1, 2}}};
    RankedPoset vee{{0, 1, 1}, {{0, 1}, {0, 2}}};
    RankedPoset vee2{{1, 0, 1}, {{1, 0}, {1, 2}}};
    CHECK(poset_canonical_code(vee) == poset_canonical_code(vee2));
    CHECK(poset_canonical_code(chain) != poset_canonical_code(vee));
}
