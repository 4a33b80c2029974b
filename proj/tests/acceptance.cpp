#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "worked.hpp"
#include "gcx/characters.hpp"
#include "gcx/families.hpp"
#include "gcx/feynman.hpp"
#include "gcx/fiber.hpp"
#include "gcx/homology.hpp"
#include "gcx/induced.hpp"
#include "gcx/parallel.hpp"
#include "gcx/spectral.hpp"
#include "gcx/tubing.hpp"
#include "oracles.hpp"

using namespace gcx;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Euler characteristic bookkeeping over every complex built below.
long complexes_built = 0;
std::vector<std::string> euler_failures;

std::string show(const std::map<int, int>& betti) {
    std::ostringstream o;
    o << "{";
    bool first = true;
    for (auto [d, b] : betti) {
        o << (first ? "" : ", ") << d << ":" << b;
        first = false;
    }
    return o.str() + "}";
}

std::map<int, int> betti(std::shared_ptr<const CoeffSystem> sys, int g, int n) {
    auto c = build_ft(sys, g, n);
    auto h = homology(c).betti;
    long chi = 0;
    for (auto [d, b] : h) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(b);
    ++complexes_built;
    if (chi != euler_characteristic(c).chi)
        euler_failures.push_back(sys->name() + " (" + std::to_string(g) + "," + std::to_string(n) + ")");
    return h;
}

std::shared_ptr<const CoeffSystem> sys(const std::string& s) { return system_from_selector(s); }

Outcome genus3() {
    auto b = betti(sys("com-envelope"), 3, 0);
    return {b == std::map<int, int>{{-6, 1}}, "com-envelope (3,0): " + show(b)};
}

Outcome genus1_commutative() {
    Outcome r;
    for (int n = 3; n <= 6; ++n) {
        auto b = betti(sys("com-envelope"), 1, n);
        int expect = static_cast<int>(oracle::factorial(n - 1) / 2);
        r.ok = r.ok && b == std::map<int, int>{{-n, expect}};
        r.detail += "(1," + std::to_string(n) + ") " + show(b) + " ";
    }
    return r;
}

Outcome genus0_hairy() {
    Outcome r;
    auto lie = lie_system();
    for (int n = 4; n <= 7; ++n) {
        long oracle_dim = oracle::caterpillar_count(n);
        bool consistent = oracle_dim == lie->dim(0, n) && (n > 6 || oracle::free_lie_multilinear_rank(n - 1) == oracle_dim);
        auto b = betti(sys("com-extension"), 0, n);
        r.ok = r.ok && consistent && b == std::map<int, int>{{3 - n, static_cast<int>(oracle_dim)}};
        r.detail += "(0," + std::to_string(n) + ") " + show(b) + " oracle " + std::to_string(oracle_dim) + " ";
    }
    return r;
}

Outcome genus1_lie() {
    Outcome r;
    for (int n = 3; n <= 5; ++n) {
        auto b = betti(sys("lie-odd"), 1, n);
        std::multiset<long> got, expect;
        for (auto [d, k] : b) got.insert(k);
        for (int i = 0; i <= n - 1; i += 2) expect.insert(oracle::binomial(n - 1, i));
        r.ok = r.ok && got == expect;
        r.detail += "(1," + std::to_string(n) + ") " + show(b) + " ";
    }
    auto c = build_ft(sys("lie-odd"), 1, 4);
    auto h = homology(c, true);
    std::string rep = "none";
    bool v211 = false;
    for (auto [deg, dim] : h.betti) {
        if (dim != 3) continue;
        std::vector<QMat> s;
        for (int i = 1; i < 4; ++i) s.push_back(homology_action(c, h, deg, transposition(4, i)));
        auto dec = decompose_character(4, character(s, 4, dim));
        std::map<Partition, long long> nonzero;
        for (auto [l, m] : dec)
            if (m) nonzero[l] = m;
        v211 = nonzero == std::map<Partition, long long>{{{2, 1, 1}, 1}};
        rep.clear();
        for (auto [l, m] : nonzero) rep += std::to_string(m) + "x" + partition_name(l) + " ";
    }
    r.ok = r.ok && v211;
    r.detail += "| (1,4) 3-dim class: " + rep;
    return r;
}

Outcome koszul_retract() {
    auto s = fiber_sweep(4, 2, 3);
    int passed = 0, total = 0;
    std::string failed;
    for (const auto& c : worked::worked_checks()) {
        ++total;
        if (c.ok)
            ++passed;
        else if (failed.empty())
            failed = " first failure: " + c.example + " " + c.what;
    }
    return {s.ok() && passed == total, "sweep " + s.to_json() + "; worked examples " + std::to_string(passed) + "/" + std::to_string(total) + failed};
}

Outcome polytopes() {
    Outcome r;
    auto one = [&](const std::string& spec, long expect_full) {
        auto p = verify_polytope(named_graph(spec));
        bool ok = p.isomorphic && p.alternating_sum == 1 && (expect_full < 0 || p.full_nestings == expect_full);
        r.ok = r.ok && ok;
        r.detail += spec + (ok ? " ok(" : " BAD(") + std::to_string(p.full_nestings) + ") ";
    };
    for (int k = 2; k <= 4; ++k) one("bouquet:" + std::to_string(k), oracle::factorial(k));
    for (int m = 2; m <= 5; ++m) one("path:" + std::to_string(m), oracle::catalan(m));
    for (int m = 3; m <= 5; ++m) one("cycle:" + std::to_string(m), oracle::binomial(2 * m - 2, m - 1));
    return r;
}

Outcome relations() {
    Outcome r;
    auto g = verify_graph_relations(1, 1000);
    r.ok = g.ok && g.checks == 1000;
    r.detail = "glued graphs " + std::to_string(g.checks) + (g.ok ? " ok" : " FAIL") + "; ";
    struct Bound {
        const char* sel;
        int g, n;
    };
    for (auto b : {Bound{"com-envelope", 3, 7}, Bound{"com-extension", 3, 7}, Bound{"lie", 1, 7}, Bound{"lie-odd", 1, 7}}) {
        auto rep = verify_relations(*sys(b.sel), b.g, b.n);
        r.ok = r.ok && rep.ok;
        r.detail += std::string(b.sel) + " " + std::to_string(rep.checks) + (rep.ok ? " ok; " : " FAIL; ");
    }
    return r;
}

Outcome spectral() {
    Outcome r;
    auto bottom = genus_bottom_row(sys("lie-odd"), 1, 5);
    auto row0 = bottom.e1.row(0);
    std::multiset<long> dims;
    for (auto [c, d] : row0)
        if (d) dims.insert(d);
    bool genus_ok = dims == std::multiset<long>{1, 6, 1};
    auto fam = homology_family(sys("lie-odd"), colors_for_type(1, 5));
    std::shared_ptr<const CoeffSystem> b = induced_modular_structure(fam);
    auto rel = verify_relations(*b, 1, 5);
    auto p = internal_pages(b, 1, 5);
    long chi = 0;
    for (auto [d, k] : betti(b, 1, 5)) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k);
    auto conv = convergence_check(p.e0, p.e1, chi);
    long e1_bottom = p.e1.row_total(0);
    r.ok = genus_ok && rel.ok && conv.ok && e1_bottom == 12;
    std::ostringstream o;
    o << "genus L1 row 0 {";
    for (auto [c, d] : row0) o << c << ":" << d << " ";
    o << "}; induced structure relations " << (rel.ok ? "ok" : "FAIL") << "; internal E1 bottom row total " << e1_bottom
      << "; convergence " << (conv.ok ? "ok" : "FAIL");
    r.detail = o.str();
    return r;
}

Outcome consistency() {
    Outcome r;
    auto stats = rank_stats();
    bool ranks = stats.compared > 0 && stats.agreed == stats.compared;
    // byte-identical output across thread counts
    int many = std::max(4u, std::thread::hardware_concurrency());
    auto render = [] {
        std::string s;
        s += dump_complex(build_ft(sys("com-envelope"), 3, 0));
        s += dump_complex(build_ft(sys("lie-odd"), 1, 5));
        s += dump_complex(build_ft(sys("com-extension"), 0, 6));
        s += save_system(*induced_modular_structure(homology_family(sys("lie-odd"), colors_for_type(1, 4))));
        auto p = internal_pages(induced_modular_structure(homology_family(sys("lie-odd"), colors_for_type(1, 4))), 1, 4);
        s += p.e0.to_csv() + p.e1.to_csv();
        s += fiber_sweep(3, 1, 2).to_json();
        return s;
    };
    set_num_threads(1);
    std::string a = render();
    set_num_threads(many);
    std::string b = render();
    set_num_threads(0);
    bool same = a == b;
    r.ok = euler_failures.empty() && ranks && same;
    std::ostringstream o;
    o << "euler " << complexes_built - static_cast<long>(euler_failures.size()) << "/" << complexes_built << " complexes; modular rank agreed "
      << stats.agreed << "/" << stats.compared << "; 1 vs " << many << " threads " << (same ? "identical" : "DIFFER") << " (" << a.size() << " bytes)";
    r.detail = o.str();
    return r;
}

}  // namespace

int main() {
    set_rank_crosscheck(true);
    reset_rank_stats();
    std::vector<std::function<Outcome()>> criteria = {genus3, genus1_commutative, genus0_hairy, genus1_lie, koszul_retract,
                                                      polytopes, relations, spectral, consistency};
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.ok;
        std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << o.detail << "  [" << std::fixed;
        std::cout.precision(1);
        std::cout << secs << "s]" << std::endl;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : std::string("acceptance: all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
