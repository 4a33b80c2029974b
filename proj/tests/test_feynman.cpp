#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "gcx/characters.hpp"
#include "gcx/feynman.hpp"
#include "gcx/homology.hpp"
#include "gcx/parallel.hpp"
#include "oracles.hpp"

using namespace gcx;

namespace {

std::shared_ptr<const CoeffSystem> sys(const std::string& s) { return system_from_selector(s); }

bool equal(const SparseMatrix& a, const SparseMatrix& b) { return (a - b).is_zero() && a.rows == b.rows && a.cols == b.cols; }

long chi(const std::map<int, int>& betti) {
    long s = 0;
    for (auto [d, b] : betti) s += (d % 2 == 0 ? 1 : -1) * static_cast<long>(b);
    return s;
}

SparseVector apply_vec(const SparseMatrix& m, const SparseVector& v) { return apply_sparse(m, v); }

// The same decorated graph with its flags renamed.
Decorated rename_flags(const Decorated& d, std::mt19937& rng) {
    const Graph& g = d.graph;
    std::vector<int> fp(g.num_flags());
    std::iota(fp.begin(), fp.end(), 0);
    std::shuffle(fp.begin(), fp.end(), rng);
    Decorated out = d;
    for (int f = 0; f < g.num_flags(); ++f) {
        out.graph.inv[fp[f]] = fp[g.inv[f]];
        out.graph.adj[fp[f]] = g.adj[f];
        out.graph.leg[fp[f]] = g.leg[f];
    }
    for (auto& fl : out.vflags)
        for (int& f : fl) f = fp[f];
    for (int& a : out.atoms) a = std::min(fp[a], fp[g.inv[a]]);
    return out;
}

}  // namespace

TEST_CASE("commutative envelope homology") {
    CHECK(homology(build_ft(sys("com-envelope"), 1, 3)).betti == std::map<int, int>{{-3, 1}});
    CHECK(homology(build_ft(sys("com-envelope"), 1, 4)).betti == std::map<int, int>{{-4, 3}});
    CHECK(homology(build_ft(sys("com-envelope"), 2, 0)).betti.empty());
    CHECK(homology(build_ft(sys("com-envelope"), 2, 2)).betti == std::map<int, int>{{-5, 1}});
}

TEST_CASE("hairy commutative homology in genus 0") {
    for (int n = 4; n <= 6; ++n) {
        auto h = homology(build_ft(sys("com-extension"), 0, n));
        CHECK(h.betti == std::map<int, int>{{3 - n, static_cast<int>(oracle::caterpillar_count(n))}});
    }
}

TEST_CASE("odd Lie homology in genus 1") {
    CHECK(homology(build_ft(sys("lie-odd"), 1, 3)).betti == std::map<int, int>{{0, 1}, {2, 1}});
    CHECK(homology(build_ft(sys("lie-odd"), 1, 4)).betti == std::map<int, int>{{0, 1}, {2, 3}});
    auto h = homology(build_ft(sys("lie-odd"), 1, 5)).betti;
    std::multiset<int> got;
    for (auto [d, b] : h) got.insert(b);
    std::multiset<int> expect;
    for (int i = 0; i <= 4; i += 2) expect.insert(static_cast<int>(oracle::binomial(4, i)));
    CHECK(got == expect);
}

TEST_CASE("Euler characteristic of chains equals that of homology") {
    for (auto [s, g, n] : std::vector<std::tuple<std::string, int, int>>{
             {"com-envelope", 2, 1}, {"com-envelope", 1, 5}, {"com-extension", 0, 6}, {"lie-odd", 1, 4}, {"lie-odd", 0, 6}}) {
        auto c = build_ft(sys(s), g, n);
        CHECK(euler_characteristic(c).chi == chi(homology(c).betti));
    }
}

TEST_CASE("leg action: Coxeter relations and commuting with d") {
    for (auto [s, g, n] : std::vector<std::tuple<std::string, int, int>>{{"com-envelope", 1, 4}, {"lie-odd", 1, 4}, {"com-extension", 0, 5}}) {
        CAPTURE(s, g, n);
        auto c = build_ft(sys(s), g, n);
        for (const auto& [k, blk] : c.basis) {
            int d = c.dim(k);
            SparseMatrix id(d, d);
            for (int i = 0; i < d; ++i) id.add(i, i, Q(1));
            id.finalize();
            for (int i = 1; i < n; ++i) {
                SparseMatrix si = sn_action(c, k, i);
                CHECK(equal(si * si, id));
                if (i + 1 < n) {
                    SparseMatrix sj = sn_action(c, k, i + 1);
                    SparseMatrix x = si * sj;
                    CHECK(equal(x * x * x, id));
                }
                if (c.basis.count(k - 1)) CHECK(equal(c.differential(k) * si, sn_action(c, k - 1, i) * c.differential(k)));
            }
        }
    }
}

TEST_CASE("coordinates do not depend on how a graph is written down") {
    std::mt19937 rng(9);
    for (auto s : {"com-envelope", "lie-odd", "com-extension"}) {
        auto c = build_ft(sys(s), s == std::string("com-envelope") ? 1 : (s == std::string("lie-odd") ? 1 : 0), 4);
        for (size_t gi = 0; gi < c.graphs.size(); ++gi)
            for (size_t k = 0; k < c.graphs[gi].free.size(); ++k) {
                Decorated d = c.lift(static_cast<int>(gi), static_cast<int>(k));
                auto base = c.reduce(d);
                for (int t = 0; t < 2; ++t) CHECK(c.reduce(rename_flags(d, rng)) == base);
            }
    }
}

TEST_CASE("homology representatives are dual cycles") {
    auto c = build_ft(sys("lie-odd"), 1, 5);
    auto h = homology(c, true);
    for (const auto& [k, b] : h.betti) {
        const auto& cs = h.c_cycles.at(k);
        const auto& zs = h.z_cycles.at(k);
        REQUIRE(static_cast<int>(cs.size()) == b);
        for (int a = 0; a < b; ++a) {
            if (c.basis.count(k - 1)) CHECK(apply_vec(c.differential(k), zs[a]).empty());
            if (c.boundary.count(k)) CHECK(apply_vec(c.boundary.at(k), cs[a]).empty());
            for (int j = 0; j < b; ++j) CHECK(pair(zs[a], cs[j]) == Q(a == j ? 1 : 0));
        }
    }
}

TEST_CASE("the (1,4) odd Lie class in degree 2 is V(2,1,1)") {
    auto c = build_ft(sys("lie-odd"), 1, 4);
    auto h = homology(c, true);
    std::vector<QMat> s;
    for (int i = 1; i < 4; ++i) s.push_back(homology_action(c, h, 2, transposition(4, i)));
    auto m = decompose_character(4, character(s, 4, 3));
    std::map<Partition, long long> nonzero;
    for (auto [l, k] : m)
        if (k) nonzero[l] = k;
    CHECK(nonzero == std::map<Partition, long long>{{{2, 1, 1}, 1}});
}

TEST_CASE("output does not depend on the thread count") {
    set_num_threads(1);
    std::string one = dump_complex(build_ft(sys("lie-odd"), 1, 4));
    set_num_threads(4);
    std::string many = dump_complex(build_ft(sys("lie-odd"), 1, 4));
    set_num_threads(0);
    CHECK(one == many);
}

TEST_CASE("unsupported requests fail loudly") {
    CHECK_THROWS_AS(build_ft(sys("com-envelope"), 0, 2), CoeffError);
    auto small = tabulate(*sys("com-envelope"), 1, 3);
    CHECK_THROWS_AS(build_ft(small, 1, 5), CoeffError);
}
