#include "worked.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

using namespace gcx;

namespace worked {

Fixture::Fixture(const std::string& name) {
    std::ifstream in(std::string(GCX_FIXTURE_DIR) + "/" + name + ".json");
    if (!in) throw std::runtime_error("missing fixture " + name);
    auto j = nlohmann::json::parse(in);
    gr = graph_from_json(j["graph"].dump());
    auto es = gr.edges();
    for (auto& [letter, flag] : j["letters"].items())
        for (size_t k = 0; k < es.size(); ++k)
            if (es[k].first == flag.get<int>()) edge[letter[0]] = static_cast<int>(k);
    e = edge.at(j["edge"].get<std::string>()[0]);
}

Nest Fixture::nest(const std::string& letters) const {
    Nest n = 0;
    for (char c : letters) n |= Nest(1) << edge.at(c);
    return n;
}

FChain Fixture::ordered(const std::string& text, const Q& coeff) const {
    FChain c;
    add(c, text, coeff);
    return c;
}

void Fixture::add(FChain& c, const std::string& text, const Q& coeff) const {
    std::vector<Nest> ns;
    std::stringstream s(text);
    std::string part;
    while (std::getline(s, part, ','))
        if (!part.empty()) ns.push_back(nest(part));
    add_ordered(c, ns, coeff);
}

Nesting Fixture::sorted(const std::string& text) const {
    Nesting ns;
    std::stringstream s(text);
    std::string part;
    while (std::getline(s, part, ',')) ns.push_back(nest(part));
    std::sort(ns.begin(), ns.end());
    return ns;
}

namespace {

FChain clean(FChain c) {
    for (auto it = c.begin(); it != c.end();)
        it = it->second == 0 ? c.erase(it) : std::next(it);
    return c;
}

bool same(const FChain& a, const FChain& b) { return clean(a) == clean(b); }

// Basis terms of a chain that a map does not kill.
std::set<Nesting> surviving(const FChain& c, const std::function<FChain(const FChain&)>& f) {
    std::set<Nesting> out;
    for (const auto& [ns, q] : c)
        if (!clean(f(FChain{{ns, Q(1)}})).empty()) out.insert(ns);
    return out;
}

}  // namespace

std::vector<Check> worked_checks() {
    std::vector<Check> out;
    auto check = [&](const std::string& fig, const std::string& what, bool ok) { out.push_back({fig, what, ok}); };

    {
        Fixture x("pi1");
        auto pi = [&](const FChain& c) { return fiber_pi(x.gr, x.e, c); };
        FChain n = x.ordered("ace,e");
        auto dn = fiber_d(x.gr, all_edges(x.gr), n);
        check("pi1", "{ace,e} is case 2b", classify(x.gr, x.e, x.sorted("ace,e")) == PiCase::C2b);
        check("pi1", "pi{ace,e} = 0", clean(pi(n)).empty());
        check("pi1", "terms of d surviving pi are {ace,e,ae}, {ace,e,ce}", surviving(dn, pi) == std::set<Nesting>{x.sorted("ace,e,ae"), x.sorted("ace,e,ce")});
        check("pi1", "pi{ace,e,ae} = {c,a}", same(pi(x.ordered("ace,e,ae")), x.ordered("c,a")));
        check("pi1", "pi{ace,e,ce} = {a,c}", same(pi(x.ordered("ace,e,ce")), x.ordered("a,c")));
        check("pi1", "pi d = 0", clean(pi(dn)).empty());
    }
    {
        Fixture x("pi2");
        auto pi = [&](const FChain& c) { return fiber_pi(x.gr, x.e, c); };
        FChain n = x.ordered("ace");
        auto dn = fiber_d(x.gr, all_edges(x.gr), n);
        check("pi2", "{ace} is case 5", classify(x.gr, x.e, x.sorted("ace")) == PiCase::C5);
        check("pi2", "pi{ace} = 0", clean(pi(n)).empty());
        check("pi2", "terms of d surviving pi are {ace,e}, {ace,ac}", surviving(dn, pi) == std::set<Nesting>{x.sorted("ace,e"), x.sorted("ace,ac")});
        check("pi2", "pi{ace,e} = -{ac}", same(pi(x.ordered("ace,e")), x.ordered("ac", -1)));
        check("pi2", "pi{ace,ac} = {ac}", same(pi(x.ordered("ace,ac")), x.ordered("ac")));
        check("pi2", "pi d = 0", clean(pi(dn)).empty());
    }
    {
        Fixture x("pi5");
        EdgeSet all = all_edges(x.gr);
        FChain n = x.ordered("ace,e");
        FChain h = fiber_H(x.gr, x.e, n), hx, dh, hd;
        x.add(hx, "ace");
        x.add(hx, "ac");
        for (auto t : {"ace,a", "ace,c", "ace,e", "ace,ac", "ace,ce", "ac,a", "ac,c", "ac,abc", "ac,ace"}) x.add(dh, t);
        for (auto t : {"ace,a", "ac,a", "ace,ce", "ace,c", "ac,c"}) x.add(hd, t, -1);
        check("pi5", "H{ace,e} = {ace}+{ac}", same(h, hx));
        check("pi5", "dH as listed", same(fiber_d(x.gr, all, h), dh));
        check("pi5", "Hd as listed", same(fiber_H(x.gr, x.e, fiber_d(x.gr, all, n)), hd));
        check("pi5", "iota pi = -{ac,abc}", same(fiber_iota(x.gr, x.e, fiber_pi(x.gr, x.e, n)), x.ordered("ac,abc", -1)));
        check("pi5", "dH+Hd = id - iota pi", same(chain_sum(dh, hd), chain_sum(n, x.ordered("ac,abc", -1), -1)));
    }
    {
        Fixture x("pi4");
        EdgeSet all = all_edges(x.gr);
        FChain n = x.ordered("ac,ace");
        FChain h = fiber_H(x.gr, x.e, n), dh, hd;
        for (auto t : {"ac,a", "ac,c", "ac,abc", "ac,ace"}) x.add(dh, t);
        for (auto t : {"ac,a", "ac,c"}) x.add(hd, t, -1);
        check("pi4", "H{ac,ace} = {ac}", same(h, x.ordered("ac")));
        check("pi4", "dH as listed", same(fiber_d(x.gr, all, h), dh));
        check("pi4", "Hd as listed", same(fiber_H(x.gr, x.e, fiber_d(x.gr, all, n)), hd));
        check("pi4", "pi{ac,ace} = -{ac}", same(fiber_pi(x.gr, x.e, n), x.ordered("ac", -1)));
        check("pi4", "iota pi = -{ac,abc}", same(fiber_iota(x.gr, x.e, fiber_pi(x.gr, x.e, n)), x.ordered("ac,abc", -1)));
        check("pi4", "dH+Hd = id - iota pi", same(chain_sum(dh, hd), chain_sum(n, x.ordered("ac,abc", -1), -1)));
    }
    {
        Fixture x("pi3");
        EdgeSet all = all_edges(x.gr);
        auto H = [&](const FChain& c) { return fiber_H(x.gr, x.e, c); };
        FChain n = x.ordered("ae");
        auto dn = fiber_d(x.gr, all, n);
        FChain two;
        x.add(two, "ea");
        x.add(two, "a");
        check("pi3", "H{ae} = 0", clean(H(n)).empty());
        check("pi3", "pi{ae} = 0", clean(fiber_pi(x.gr, x.e, n)).empty());
        check("pi3", "terms of d surviving H are {ea,a}, {ea,e}", surviving(dn, H) == std::set<Nesting>{x.sorted("ea,a"), x.sorted("ea,e")});
        check("pi3", "H{ea,a} = -{a}", same(H(x.ordered("ea,a")), x.ordered("a", -1)));
        check("pi3", "H{ea,e} = {ea}+{a}", same(H(x.ordered("ea,e")), two));
        check("pi3", "Hd{ae} = {ae}", same(H(dn), n));
    }
    for (auto name : {"pi1", "pi2", "pi3", "pi4", "pi5"}) {
        Fixture x(name);
        check(name, "retract identities at e", verify_retract(x.gr, x.e).ok());
    }
    return out;
}

}  // namespace worked
