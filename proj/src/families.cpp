#include "gcx/families.hpp"

#include <fstream>
#include <sstream>

namespace gcx {

Graph graph_from_edges(int vertices, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& legs) {
    std::vector<int> inv, adj;
    std::vector<std::pair<int, int>> labels;
    int label = 1;
    for (int v = 0; v < vertices; ++v)
        for (int k = 0; k < legs[v]; ++k) {
            int f = static_cast<int>(inv.size());
            inv.push_back(f);
            adj.push_back(v);
            labels.emplace_back(f, label++);
        }
    for (auto [u, w] : edges) {
        int f = static_cast<int>(inv.size());
        inv.push_back(f + 1);
        inv.push_back(f);
        adj.push_back(u);
        adj.push_back(w);
    }
    return validate(inv, adj, std::vector<int>(vertices, 0), labels);
}

namespace {

int parse_count(const std::string& spec, size_t colon, int min) {
    std::string tail = spec.substr(colon + 1);
    int k = 0;
    try {
        size_t used = 0;
        k = std::stoi(tail, &used);
        if (used != tail.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw GraphError(GraphErrorKind::Malformed, "bad size in '" + spec + "'");
    }
    if (k < min) throw GraphError(GraphErrorKind::Malformed, "'" + spec + "' needs size >= " + std::to_string(min));
    if (k > 20) throw GraphError(GraphErrorKind::Malformed, "'" + spec + "' is too large");
    return k;
}

}  // namespace

Graph named_graph(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    if (colon != std::string::npos && head == "path") {
        int k = parse_count(spec, colon, 1);
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < k; ++i) e.emplace_back(i, i + 1);
        std::vector<int> legs(k + 1, 1);
        legs.front() = legs.back() = 2;
        return graph_from_edges(k + 1, e, legs);
    }
    if (colon != std::string::npos && head == "cycle") {
        int k = parse_count(spec, colon, 1);
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
        return graph_from_edges(k, e, std::vector<int>(k, 1));
    }
    if (colon != std::string::npos && head == "bouquet") {
        int k = parse_count(spec, colon, 1);
        std::vector<std::pair<int, int>> e(k, {0, 0});
        return graph_from_edges(1, e, {k == 1 ? 1 : 0});
    }
    if (spec == "K4") return graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {0, 0, 0, 0});
    if (spec == "theta") return graph_from_edges(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 0});
    if (!spec.empty() && spec[0] == '{') return graph_from_json(spec, false);
    std::ifstream in(spec);
    if (!in) throw GraphError(GraphErrorKind::Malformed, "unknown graph '" + spec + "' (use path:k, cycle:k, bouquet:k, K4, theta, JSON or a file)");
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_json(ss.str(), false);
}

}  // namespace gcx
