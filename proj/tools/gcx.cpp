#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcx/characters.hpp"
#include "gcx/enumerate.hpp"
#include "gcx/families.hpp"
#include "gcx/feynman.hpp"
#include "gcx/fiber.hpp"
#include "gcx/homology.hpp"
#include "gcx/induced.hpp"
#include "gcx/parallel.hpp"
#include "gcx/spectral.hpp"
#include "gcx/tubing.hpp"
#include "json.hpp"

using namespace gcx;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kCacheVersion = "gcx-homology-1";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& s, const char* what) {
    Range r;
    try {
        auto dots = s.find("..");
        std::size_t used = 0;
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
        } else {
            r.lo = std::stoi(s.substr(0, dots), &used);
            if (used != dots) throw std::invalid_argument(s);
            std::string rest = s.substr(dots + 2);
            r.hi = std::stoi(rest, &used);
            if (used != rest.size()) throw std::invalid_argument(s);
        }
    } catch (const std::logic_error&) {
        throw UsageError(std::string("--") + what + " expects an integer or a range a..b, got '" + s + "'");
    }
    if (r.lo < 0 || r.hi < r.lo) throw UsageError(std::string("--") + what + " range '" + s + "' is empty or negative");
    return r;
}

void require_stable(int g, int n) {
    if (!stable(g, n))
        throw UsageError("(" + std::to_string(g) + "," + std::to_string(n) + ") is not stable: need n + 2g - 3 >= 0");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// FNV-1a, stable across platforms.
std::string fnv_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class HomologyCache {
public:
    HomologyCache(bool enabled, const std::string& selector) {
        const char* dir = std::getenv("GCX_CACHE_DIR");
        if (!enabled || !dir || !*dir) return;
        dir_ = dir;
        identity_ = selector;
        if (selector.rfind("file:", 0) == 0) identity_ = "file\n" + read_file(selector.substr(5));
    }
    bool lookup(int g, int n, std::map<int, int>& betti) const {
        if (dir_.empty()) return false;
        std::ifstream in(path(g, n));
        if (!in) return false;
        std::string header;
        if (!std::getline(in, header) || header != key(g, n)) return false;
        std::map<int, int> b;
        int d, v;
        while (in >> d >> v) b[d] = v;
        betti = std::move(b);
        return true;
    }
    void store(int g, int n, const std::map<int, int>& betti) const {
        if (dir_.empty()) return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        std::string tmp = path(g, n) + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) return;
            out << key(g, n) << "\n";
            for (auto [d, v] : betti) out << d << " " << v << "\n";
        }
        std::filesystem::rename(tmp, path(g, n), ec);
    }

private:
    std::string key(int g, int n) const { return std::string(kCacheVersion) + " " + fnv_hex(identity_) + " " + std::to_string(g) + " " + std::to_string(n); }
    std::string path(int g, int n) const { return (std::filesystem::path(dir_) / (fnv_hex(key(g, n)) + ".betti")).string(); }
    std::string dir_, identity_;
};

std::shared_ptr<CoeffSystem> load_coeff(const std::string& sel) {
    try {
        return system_from_selector(sel);
    } catch (const CoeffError& e) {
        throw UsageError(e.what());
    }
}

Graph load_graph(const std::string& spec) {
    try {
        return named_graph(spec);
    } catch (const GraphError& e) {
        throw UsageError(e.what());
    }
}

long euler(const std::map<int, int>& betti) {
    long chi = 0;
    for (auto [d, b] : betti) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(b);
    return chi;
}

int cmd_graphs(const std::string& gs, const std::string& ns, int max_edges) {
    Range gr = parse_range(gs, "g"), nr = parse_range(ns, "n");
    for (int g = gr.lo; g <= gr.hi; ++g)
        for (int n = nr.lo; n <= nr.hi; ++n) {
            if (!stable(g, n)) continue;
            for (const auto& x : enumerate_graphs(g, n, max_edges)) std::cout << to_json(x) << "\n";
        }
    return 0;
}

int cmd_homology(const std::string& sel, const std::string& gs, const std::string& ns, const std::string& format, bool use_cache) {
    auto sys = load_coeff(sel);
    Range gr = parse_range(gs, "g"), nr = parse_range(ns, "n");
    if (gr.lo == gr.hi && nr.lo == nr.hi) require_stable(gr.lo, nr.lo);
    HomologyCache cache(use_cache, sel);
    json rows = json::array();
    int status = 0;
    if (format == "csv") std::cout << "g,n,degree,betti\n";
    for (int g = gr.lo; g <= gr.hi; ++g)
        for (int n = nr.lo; n <= nr.hi; ++n) {
            if (!stable(g, n)) continue;
            std::map<int, int> betti;
            if (!cache.lookup(g, n, betti)) {
                auto c = build_ft(sys, g, n);
                betti = homology(c).betti;
                long chi = euler_characteristic(c).chi;
                if (chi != euler(betti)) {
                    std::cerr << "error: Euler characteristic mismatch at (" << g << "," << n << "): complex " << chi << ", homology " << euler(betti) << "\n";
                    status = 1;
                    continue;
                }
                cache.store(g, n, betti);
            }
            for (auto [d, b] : betti) {
                if (format == "csv")
                    std::cout << g << "," << n << "," << d << "," << b << "\n";
                else
                    rows.push_back({{"g", g}, {"n", n}, {"degree", d}, {"betti", b}});
            }
        }
    if (format == "json") std::cout << rows.dump() << "\n";
    return status;
}

int cmd_fiber_verify(int max_edges, int max_genus, int max_legs, const std::string& graph) {
    FiberSweep s;
    if (!graph.empty()) {
        Graph gr = load_graph(graph);
        if (gr.num_edges() == 0) throw UsageError("the graph has no edges");
        s = fiber_sweep(std::vector<Graph>{gr});
    } else {
        s = fiber_sweep(max_edges, max_genus, max_legs);
    }
    std::cout << s.to_json() << "\n";
    return s.ok() ? 0 : 1;
}

int cmd_polytope_verify(const std::string& graph) {
    auto rep = verify_polytope(load_graph(graph));
    std::cout << rep.to_json() << "\n";
    return rep.isomorphic && rep.alternating_sum == 1 ? 0 : 1;
}

int cmd_spectral(const std::string& sel, int g, int n, const std::string& filtration, bool raw) {
    auto sys = load_coeff(sel);
    require_stable(g, n);
    SpectralPages p;
    if (filtration == "internal") {
        auto fam = homology_family(sys, colors_for_type(g, n));
        std::shared_ptr<const CoeffSystem> b = induced_modular_structure(fam);
        p = internal_pages(b, g, n);
        long abutment = euler(homology(build_ft(b, g, n)).betti);
        std::cout << p.e0.to_csv(raw) << p.e1.to_csv(raw, false) << "\n";
        std::cout << p.e0.to_grid() << "\n" << p.e1.to_grid() << "\n";
        auto rep = convergence_check(p.e0, p.e1, abutment);
        std::cout << rep.to_text();
        return rep.ok ? 0 : 1;
    }
    p = genus_bottom_row(sys, g, n);
    std::cout << p.e0.to_csv(raw) << p.e1.to_csv(raw, false) << "\n";
    std::cout << p.e0.to_grid() << "\n" << p.e1.to_grid() << "\n";
    std::cout << "rows >= 1: not computed\n" << higher_pages_note() << "\n";
    return 0;
}

int cmd_action(const std::string& sel, int g, int n) {
    auto sys = load_coeff(sel);
    require_stable(g, n);
    auto c = build_ft(sys, g, n);
    auto h = homology(c, true);
    json out;
    out["g"] = g;
    out["n"] = n;
    out["degrees"] = json::array();
    for (auto [deg, b] : h.betti) {
        std::vector<QMat> s;
        for (int i = 1; i < n; ++i) s.push_back(homology_action(c, h, deg, transposition(n, i)));
        auto chi = character(s, n, b);
        json e;
        e["degree"] = deg;
        e["dim"] = b;
        json ch = json::object();
        for (const auto& [mu, v] : chi) ch[partition_name(mu)] = to_string(v);
        e["character"] = ch;
        json dec = json::object();
        for (const auto& [lambda, m] : decompose_character(n, chi))
            if (m != 0) dec[partition_name(lambda)] = m;
        e["decomposition"] = dec;
        out["degrees"].push_back(e);
    }
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_dump(const std::string& sel, int g, int n) {
    auto sys = load_coeff(sel);
    require_stable(g, n);
    std::cout << dump_complex(build_ft(sys, g, n)) << "\n";
    return 0;
}

int cmd_coeffs_verify(const std::string& sel, int max_g, int max_n, int instances, unsigned seed) {
    auto sys = load_coeff(sel);
    auto rep = verify_relations(*sys, max_g, max_n);
    json out;
    out["system"] = sys->name();
    out["matrix_relations"] = json::parse(rep.to_json());
    bool ok = rep.ok;
    if (instances > 0) {
        auto gr = verify_graph_relations(seed, instances);
        out["graph_relations"] = json::parse(gr.to_json());
        ok = ok && gr.ok;
    }
    std::cout << out.dump() << "\n";
    return ok ? 0 : 1;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text << "\n";
}

int cmd_coeffs_tabulate(const std::string& sel, int max_g, int max_n, const std::string& path) {
    auto sys = load_coeff(sel);
    write_output(save_system(*tabulate(*sys, max_g, max_n)), path);
    return 0;
}

int cmd_coeffs_induce(const std::string& sel, int g, int n, const std::string& path) {
    auto sys = load_coeff(sel);
    require_stable(g, n);
    auto t = induced_modular_structure(homology_family(sys, colors_for_type(g, n)));
    write_output(save_system(*t), path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gcx: exact graph complexes for modular operads"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    bool crosscheck = false;
    app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
    app.add_flag("--crosscheck", crosscheck, "run the modular rank path next to exact elimination");

    std::string coeff = "com-envelope", gs = "0", ns = "3", format = "csv", filtration = "internal", graph, out;
    int g = 0, n = 3, max_edges = -1, max_genus = 2, max_legs = 3, max_g = 1, max_n = 5, instances = 0;
    unsigned seed = 1;
    bool raw = false, no_cache = false;
    const std::string coeff_help = "com-envelope | com-extension | lie-odd | file:<path>";

    auto* graphs = app.add_subcommand("graphs", "list canonical (g,n)-graphs as JSON lines");
    graphs->add_option("--g", gs, "genus or range a..b")->required();
    graphs->add_option("--n", ns, "legs or range a..b")->required();
    graphs->add_option("--max-edges", max_edges, "edge bound");

    auto* hom = app.add_subcommand("homology", "Betti numbers of the Feynman transform");
    hom->add_option("--coeff", coeff, coeff_help)->required();
    hom->add_option("--g", gs, "genus or range a..b")->required();
    hom->add_option("--n", ns, "legs or range a..b")->required();
    hom->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    hom->add_flag("--no-cache", no_cache, "ignore GCX_CACHE_DIR");

    auto* fib = app.add_subcommand("fiber-verify", "retract identities and acyclicity of the fiber complexes");
    int fiber_edges = 4;
    fib->add_option("--max-edges", fiber_edges, "edge bound")->check(CLI::Range(1, 6));
    fib->add_option("--max-genus", max_genus, "genus bound")->check(CLI::Range(0, 3));
    fib->add_option("--max-legs", max_legs, "leg bound")->check(CLI::Range(0, 4));
    fib->add_option("--graph", graph, "single graph: JSON, file or named family");

    auto* poly = app.add_subcommand("polytope-verify", "nesting poset vs tubing poset of the line graph");
    poly->add_option("--graph", graph, "JSON, file or named family (path:k, cycle:k, bouquet:k, K4, theta)")->required();

    auto* spec = app.add_subcommand("spectral", "spectral sequence pages");
    spec->add_option("--coeff", coeff, coeff_help)->required();
    spec->add_option("--g", g, "genus")->required()->check(CLI::NonNegativeNumber);
    spec->add_option("--n", n, "legs")->required()->check(CLI::NonNegativeNumber);
    spec->add_option("--filtration", filtration, "internal | genus")->check(CLI::IsMember({"internal", "genus"}));
    spec->add_flag("--raw", raw, "report the internal degree r instead of the row index -r");

    auto* act = app.add_subcommand("action", "S_n characters of the homology");
    act->add_option("--coeff", coeff, coeff_help)->required();
    act->add_option("--g", g, "genus")->required()->check(CLI::NonNegativeNumber);
    act->add_option("--n", n, "legs")->required()->check(CLI::NonNegativeNumber);

    auto* dump = app.add_subcommand("dump-complex", "basis and differentials of the Feynman transform");
    dump->add_option("--coeff", coeff, coeff_help)->required();
    dump->add_option("--g", g, "genus")->required()->check(CLI::NonNegativeNumber);
    dump->add_option("--n", n, "legs")->required()->check(CLI::NonNegativeNumber);

    auto* coeffs = app.add_subcommand("coeffs", "coefficient systems");
    coeffs->require_subcommand(1);
    auto* verify = coeffs->add_subcommand("verify", "check the structure relations");
    verify->add_option("--coeff", coeff, coeff_help)->required();
    verify->add_option("--max-g", max_g, "genus bound")->check(CLI::NonNegativeNumber);
    verify->add_option("--max-n", max_n, "leg bound")->check(CLI::NonNegativeNumber);
    verify->add_option("--graph-instances", instances, "random glued-graph instances")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", seed, "seed for the random instances");
    auto* tab = coeffs->add_subcommand("tabulate", "write a system as explicit tables");
    tab->add_option("--coeff", coeff, coeff_help)->required();
    tab->add_option("--max-g", max_g, "genus bound")->check(CLI::NonNegativeNumber);
    tab->add_option("--max-n", max_n, "leg bound")->check(CLI::NonNegativeNumber);
    tab->add_option("-o,--output", out, "output file (default stdout)");
    auto* ind = coeffs->add_subcommand("induce", "write the induced structure on the homology as tables");
    ind->add_option("--coeff", coeff, coeff_help)->required();
    ind->add_option("--g", g, "genus")->required()->check(CLI::NonNegativeNumber);
    ind->add_option("--n", n, "legs")->required()->check(CLI::NonNegativeNumber);
    ind->add_option("-o,--output", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    set_num_threads(threads);
    if (crosscheck) set_rank_crosscheck(true);
    try {
        if (*graphs) return cmd_graphs(gs, ns, max_edges);
        if (*hom) return cmd_homology(coeff, gs, ns, format, !no_cache);
        if (*fib) return cmd_fiber_verify(fiber_edges, max_genus, max_legs, graph);
        if (*poly) return cmd_polytope_verify(graph);
        if (*spec) return cmd_spectral(coeff, g, n, filtration, raw);
        if (*act) return cmd_action(coeff, g, n);
        if (*dump) return cmd_dump(coeff, g, n);
        if (*verify) return cmd_coeffs_verify(coeff, max_g, max_n, instances, seed);
        if (*tab) return cmd_coeffs_tabulate(coeff, max_g, max_n, out);
        if (*ind) return cmd_coeffs_induce(coeff, g, n, out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CoeffError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind == "BadType" || e.kind == "SupportTooSmall" || e.kind == "MalformedFile" ? 2 : 1;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
