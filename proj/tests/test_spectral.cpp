#include <catch2/catch_amalgamated.hpp>

#include "gcx/homology.hpp"
#include "gcx/induced.hpp"
#include "gcx/spectral.hpp"

using namespace gcx;

namespace {

std::shared_ptr<const CoeffSystem> lie_odd() { return system_from_selector("lie-odd"); }

std::map<int, long> by_column(const BigradedTable& t) {
    std::map<int, long> out;
    for (const auto& [k, d] : t.dims)
        if (d) out[k.first] += d;
    return out;
}

// Induced structure for (1,4) on lie-odd, built once.
const HomologyFamily& family14() {
    static HomologyFamily fam = homology_family(lie_odd(), colors_for_type(1, 4));
    return fam;
}

const std::shared_ptr<TableSystem>& induced14() {
    static auto t = induced_modular_structure(family14());
    return t;
}

}  // namespace

TEST_CASE("induced structure satisfies the relations") {
    auto t = induced14();
    CHECK(t->odd() == !lie_odd()->odd());
    auto r = verify_relations(*t, 1, 4);
    CHECK(r.ok);
    CHECK(r.checks > 0);
    for (const auto& [col, h] : family14().homology) {
        int total = 0;
        for (auto [d, b] : h.betti) total += b;
        CHECK(t->dim(col.first, col.second) == total);
    }
}

TEST_CASE("induced structure of the commutative extension in genus 0") {
    auto fam = homology_family(system_from_selector("com-extension"), colors_for_type(0, 6));
    auto t = induced_modular_structure(fam);
    for (int n = 3; n <= 6; ++n) CHECK(t->dim(0, n) == (n == 3 ? 1 : n == 4 ? 2 : n == 5 ? 6 : 24));
    CHECK(verify_relations(*t, 0, 6).ok);
}

TEST_CASE("induced structure does not depend on the representatives") {
    HomologyFamily fam = family14();
    int changed = 0;
    for (auto& [col, h] : fam.homology) {
        const FTComplex& c = fam.complexes.at(col);
        for (auto& [k, zs] : h.z_cycles) {
            // shift z by an FT boundary and c by a contraction boundary
            if (c.basis.count(k + 1)) {
                SparseMatrix d = c.differential(k + 1);
                for (auto& z : zs) {
                    SparseVector x{{0, Q(3)}};
                    if (c.dim(k + 1) > 1) x.emplace_back(c.dim(k + 1) - 1, Q(-2));
                    std::map<int, Q> acc(z.begin(), z.end());
                    auto dx = apply_sparse(d, x);
                    changed += !dx.empty();
                    for (auto [i, v] : dx) acc[i] += v;
                    z.clear();
                    for (auto [i, v] : acc)
                        if (v != 0) z.emplace_back(i, v);
                }
            }
            auto& cs = h.c_cycles.at(k);
            if (c.boundary.count(k - 1)) {
                const SparseMatrix& b = c.boundary.at(k - 1);
                for (auto& cc : cs) {
                    std::map<int, Q> acc(cc.begin(), cc.end());
                    auto db = apply_sparse(b, SparseVector{{0, Q(1, 2)}});
                    changed += !db.empty();
                    for (auto [i, v] : db) acc[i] += v;
                    cc.clear();
                    for (auto [i, v] : acc)
                        if (v != 0) cc.emplace_back(i, v);
                }
            }
        }
    }
    CHECK(changed > 0);
    CHECK(save_system(*induced_modular_structure(fam)) == save_system(*induced14()));
}

TEST_CASE("internal pages rebin to the chains and the homology") {
    std::shared_ptr<const CoeffSystem> b = induced14();
    auto p = internal_pages(b, 1, 4);
    auto c = build_ft(b, 1, 4);
    std::map<int, long> dims;
    for (const auto& [k, blk] : c.basis) dims[k] = static_cast<long>(blk.size());
    CHECK(by_column(p.e0) == dims);
    long chi = 0;
    for (auto [k, d] : homology(c).betti) chi += (k % 2 == 0 ? 1 : -1) * d;
    auto rep = convergence_check(p.e0, p.e1, chi);
    CHECK(rep.ok);
    CHECK(rep.lines.back() == higher_pages_note());
}

TEST_CASE("genus filtration bottom row") {
    auto p = genus_bottom_row(lie_odd(), 1, 5);
    CHECK(p.e1.row(0) == std::map<int, long>{{0, 1}, {2, 6}, {4, 1}});
    auto h = homology(build_ft(cyclic_part(lie_odd()), 1, 5)).betti;
    std::map<int, long> expect;
    for (auto [d, b] : h) expect[d] = b;
    CHECK(p.e1.row(0) == expect);
    auto com = genus_bottom_row(system_from_selector("com-envelope"), 1, 3);
    auto hairy = build_ft(system_from_selector("com-extension"), 1, 3);
    std::map<int, long> dims;
    for (const auto& [k, blk] : hairy.basis) dims[k] = static_cast<long>(blk.size());
    CHECK(com.e0.row(0) == dims);
}

TEST_CASE("convergence check catches a corrupted table") {
    std::shared_ptr<const CoeffSystem> b = induced14();
    auto p = internal_pages(b, 1, 4);
    auto bad = p.e1;
    bad.dims.begin()->second += 1;
    CHECK_FALSE(convergence_check(p.e0, bad, 0).ok);
    CHECK_FALSE(convergence_check(p.e0, p.e1, 7).ok);
}

TEST_CASE("csv rows flip sign in raw mode") {
    BigradedTable t;
    t.filtration = "internal";
    t.page = 1;
    t.dims[{-4, 2}] = 3;
    CHECK(t.to_csv() == "page,row,col,dim\n1,2,-4,3\n");
    CHECK(t.to_csv(true) == "page,row,col,dim\n1,-2,-4,3\n");
    CHECK(t.to_csv(false, false) == "1,2,-4,3\n");
    CHECK(t.total() == 3);
    CHECK(t.row_total(2) == 3);
}
