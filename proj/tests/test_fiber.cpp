#include <catch2/catch_amalgamated.hpp>

#include "gcx/families.hpp"
#include "gcx/fiber.hpp"
#include "worked.hpp"
#include "oracles.hpp"

using namespace gcx;

using worked::Fixture;

namespace {

FChain clean(FChain c) {
    for (auto it = c.begin(); it != c.end();)
        it = it->second == 0 ? c.erase(it) : std::next(it);
    return c;
}

bool same(const FChain& a, const FChain& b) { return clean(a) == clean(b); }

}  // namespace

TEST_CASE("worked retract examples") {
    auto checks = worked::worked_checks();
    CHECK(checks.size() > 25);
    for (const auto& c : checks) {
        CAPTURE(c.example, c.what);
        CHECK(c.ok);
    }
}

TEST_CASE("a sign error in pi is detected") {
    Fixture x("pi5");
    corrupt_pi_sign(true);
    auto rep = verify_retract(x.gr, x.e);
    corrupt_pi_sign(false);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.first_failure.empty());
    CHECK(verify_retract(x.gr, x.e).ok());
}

TEST_CASE("fiber complexes are acyclic up to degree -|E|") {
    for (auto spec : {"path:3", "cycle:4", "bouquet:3", "theta", "K4"}) {
        CAPTURE(spec);
        Graph gr = named_graph(spec);
        auto c = build_fiber_complex(gr, all_edges(gr));
        for (size_t k = 0; k + 1 < c.d.size(); ++k) CHECK((c.d[k + 1] * c.d[k]).is_zero());
        auto betti = fiber_homology(c);
        for (int k = 0; k < static_cast<int>(betti.size()); ++k) CHECK(betti[k] == (k == gr.num_edges() - 1 ? 1 : 0));
    }
}

TEST_CASE("full nestings of a bouquet number k!") {
    for (int k = 1; k <= 4; ++k) {
        Graph gr = named_graph("bouquet:" + std::to_string(k));
        auto c = build_fiber_complex(gr, all_edges(gr));
        CHECK(static_cast<long>(c.basis.back().size()) == oracle::factorial(k));
    }
}

TEST_CASE("pi iota is the identity on the chains of the graph minus e") {
    Graph gr = named_graph("theta");
    for (int e = 0; e < gr.num_edges(); ++e) {
        if (!admissible_edge(gr, e)) continue;
        EdgeSet rest = all_edges(gr) & ~(EdgeSet(1) << e);
        for (const auto& ns : nestings_in(gr, rest)) {
            FChain x{{ns, Q(1)}};
            CHECK(same(fiber_pi(gr, e, fiber_iota(gr, e, x)), x));
        }
    }
}

TEST_CASE("small exhaustive sweep") {
    auto s = fiber_sweep(3, 1, 2);
    CHECK(s.graphs > 0);
    CHECK(s.ok());
}
