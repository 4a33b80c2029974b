#include <catch2/catch_amalgamated.hpp>

#include "gcx/characters.hpp"
#include "gcx/coeff.hpp"
#include "oracles.hpp"

using namespace gcx;

namespace {

bool equal(const QMat& a, const QMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c)
            if (a(r, c) != b(r, c)) return false;
    return true;
}

std::string kinds(const std::function<void()>& f) {
    try {
        f();
    } catch (const CoeffError& e) {
        return e.kind;
    }
    return "";
}

}  // namespace

TEST_CASE("built-in systems satisfy the relations") {
    CHECK(verify_relations(*system_from_selector("com-envelope"), 2, 6).ok);
    CHECK(verify_relations(*system_from_selector("com-extension"), 2, 6).ok);
    CHECK(verify_relations(*system_from_selector("lie"), 1, 5).ok);
    auto r = verify_relations(*system_from_selector("lie-odd"), 1, 5);
    CHECK(r.ok);
    CHECK(r.checks > 0);
}

TEST_CASE("relations hold on glued graphs") {
    auto r = verify_graph_relations(2024, 200);
    CHECK(r.ok);
    CHECK(r.checks == 200);
}

TEST_CASE("cyclic Lie dimensions") {
    auto lie = lie_system();
    for (int n = 3; n <= 7; ++n) {
        CAPTURE(n);
        CHECK(lie->dim(0, n) == oracle::caterpillar_count(n));
        CHECK(oracle::caterpillar_count(n) == oracle::factorial(n - 2));
        if (n <= 6) CHECK(oracle::free_lie_multilinear_rank(n - 1) == oracle::factorial(n - 2));
        CHECK(lie->dim(1, n) == 0);
    }
}

TEST_CASE("the Lie leg action is a representation") {
    auto lie = lie_system();
    for (int n = 3; n <= 5; ++n) {
        int d = lie->dim(0, n);
        for (int i = 1; i < n; ++i) {
            QMat s = lie->act(0, n, transposition(n, i));
            QMat id(d, d);
            for (int k = 0; k < d; ++k) id(k, k) = 1;
            CHECK(equal(s * s, id));
        }
        // the cyclic rotation has order n
        std::vector<int> rot(n);
        for (int k = 0; k < n; ++k) rot[k] = (k + 1) % n;
        QMat p = lie->act(0, n, rot), acc = p;
        for (int k = 1; k < n; ++k) acc = acc * p;
        QMat id(d, d);
        for (int k = 0; k < d; ++k) id(k, k) = 1;
        CHECK(equal(acc, id));
    }
}

TEST_CASE("oddify is an involution on the data") {
    auto lie = lie_system();
    auto twice = oddify(oddify(lie));
    CHECK(twice->odd() == lie->odd());
    for (int n = 3; n <= 5; ++n) {
        CHECK(twice->degrees(0, n) == lie->degrees(0, n));
        for (int i = 1; i < n; ++i) CHECK(equal(twice->act(0, n, transposition(n, i)), lie->act(0, n, transposition(n, i))));
    }
    CHECK(equal(twice->compose(0, 3, 3, 0, 4, 1), lie->compose(0, 3, 3, 0, 4, 1)));
    auto odd = oddify(lie);
    CHECK(odd->odd());
    CHECK(odd->degrees(0, 4) != lie->degrees(0, 4));
}

TEST_CASE("commutative systems are one-dimensional where supported") {
    auto env = com_system(ComKind::Envelope), ext = com_system(ComKind::Extension);
    CHECK(env->dim(2, 3) == 1);
    CHECK(env->dim(0, 3) == 1);
    CHECK(ext->dim(0, 5) == 1);
    CHECK(ext->dim(1, 1) == 0);
}

TEST_CASE("tables round trip and keep the relations") {
    auto t = tabulate(*system_from_selector("lie-odd"), 0, 5);
    std::string text = save_system(*t);
    auto back = load_system_text(text);
    CHECK(save_system(*back) == text);
    CHECK(verify_relations(*back, 0, 5).ok);
    for (int n = 3; n <= 5; ++n) CHECK(back->dim(0, n) == oracle::factorial(n - 2));
}

TEST_CASE("corrupted tables are detected") {
    auto base = tabulate(*system_from_selector("com-envelope"), 1, 4);
    std::string text = save_system(*base);
    {
        auto t = load_system_text(text);
        t->colors.at({0, 4}).s[0](0, 0) = -1;
        CHECK_FALSE(verify_relations(*t, 1, 4).ok);
    }
    {
        auto t = load_system_text(text);
        auto& m = t->gen_compose.begin()->second;
        m(0, 0) *= 2;
        CHECK_FALSE(verify_relations(*t, 1, 4).ok);
    }
}

TEST_CASE("selector and file errors") {
    CHECK(kinds([] { system_from_selector("assoc"); }) == "BadSelector");
    CHECK(kinds([] { load_system_text("{\"label\": 3}"); }) == "MalformedFile");
    CHECK(kinds([] { load_system_text("not json"); }) == "MalformedFile");
}

TEST_CASE("coverage of graph colors") {
    auto t = tabulate(*system_from_selector("com-envelope"), 1, 4);
    CHECK(type_covered(*t, 1, 2));
    CHECK(type_covered(*system_from_selector("com-envelope"), 3, 0));
}

TEST_CASE("character table against hook lengths and orthogonality") {
    for (int n = 1; n <= 6; ++n) {
        auto ps = partitions(n);
        Partition id(n, 1);
        long total = 0;
        for (const auto& mu : ps) total += class_size(mu);
        CHECK(total == oracle::factorial(n));
        for (const auto& a : ps) {
            CHECK(character_value(a, id) == oracle::hook_dimension(a));
            for (const auto& b : ps) {
                long long s = 0;
                for (const auto& mu : ps) s += class_size(mu) * character_value(a, mu) * character_value(b, mu);
                CHECK(s == (a == b ? oracle::factorial(n) : 0));
            }
        }
    }
}

TEST_CASE("decomposition of the regular and sign characters") {
    int n = 4;
    std::map<Partition, Q> reg, sgn;
    for (const auto& mu : partitions(n)) {
        reg[mu] = mu == Partition(n, 1) ? Q(oracle::factorial(n)) : Q(0);
        sgn[mu] = Q(static_cast<long>(character_value(Partition(n, 1), mu)));
    }
    auto r = decompose_character(n, reg);
    for (const auto& [lambda, m] : r) CHECK(m == oracle::hook_dimension(lambda));
    auto s = decompose_character(n, sgn);
    CHECK(s.at(Partition(n, 1)) == 1);
    std::map<Partition, Q> half = reg;
    half[Partition(n, 1)] = Q(1);
    CHECK(kinds([&] { decompose_character(n, half); }) == "NonIntegralMultiplicity");
}
