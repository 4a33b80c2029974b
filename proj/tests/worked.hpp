#ifndef GCX_TESTS_WORKED_HPP
#define GCX_TESTS_WORKED_HPP

#include <map>
#include <string>
#include <vector>

#include "gcx/fiber.hpp"

namespace worked {

// A worked example: a graph whose edges carry letters, and the edge e.
struct Fixture {
    gcx::Graph gr;
    std::map<char, int> edge;  // letter -> reference edge index
    int e = -1;

    explicit Fixture(const std::string& name);
    gcx::Nest nest(const std::string& letters) const;
    // Chain of one ordered nesting written compactly, e.g. "ace,e".
    gcx::FChain ordered(const std::string& text, const gcx::Q& coeff = 1) const;
    void add(gcx::FChain& c, const std::string& text, const gcx::Q& coeff = 1) const;
    gcx::Nesting sorted(const std::string& text) const;
};

struct Check {
    std::string example;
    std::string what;
    bool ok;
};

// Every stated computation of the five worked retract examples.
std::vector<Check> worked_checks();

}  // namespace worked

#endif
