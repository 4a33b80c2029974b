#ifndef GCX_COEFF_HPP
#define GCX_COEFF_HPP

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <set>
#include <tuple>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

struct CoeffError : std::runtime_error {
    std::string kind;
    CoeffError(const std::string& k, const std::string& msg) : std::runtime_error(k + ": " + msg), kind(k) {}
};

// A coefficient system: for each stable (g,n) a graded vector space with an S_n
// action, gluings i∘j and self-gluings ξ_{i,j}.
//
// Conventions:
//  act(g,n,perm): perm[k] is the new position (0-based) of old leg k; act(σ)act(τ) = act(στ).
//  compose(g1,n1,i,g2,n2,j): legs 1-based, output legs in the order
//      left 1..i-1, right j+1..m, right 1..j-1, left i+1..n;
//      matrix is dim(g1+g2,n1+n2-2) x (dim1*dim2), column a*dim2+b.
//  contract(g,n,i,j), i<j: output legs keep their relative order; dim(g+1,n-2) x dim(g,n).
class CoeffSystem {
public:
    virtual ~CoeffSystem() = default;
    virtual std::string name() const = 0;
    virtual bool odd() const = 0;
    // Largest genus and leg count with non-zero data, or -1 for unbounded.
    virtual int max_genus() const { return -1; }
    virtual int dim(int g, int n) const = 0;
    virtual std::vector<int> degrees(int g, int n) const = 0;
    // Whether the data at (g,n) is known (explicit tables are finite).
    virtual bool covers(int, int) const { return true; }

    QMat act(int g, int n, const std::vector<int>& perm) const;
    QMat compose(int g1, int n1, int i, int g2, int n2, int j) const;
    QMat contract(int g, int n, int i, int j) const;

protected:
    virtual QMat act_impl(int g, int n, const std::vector<int>& perm) const = 0;
    virtual QMat compose_impl(int g1, int n1, int i, int g2, int n2, int j) const = 0;
    virtual QMat contract_impl(int g, int n, int i, int j) const = 0;

private:
    mutable std::mutex lock_;
    mutable std::map<std::tuple<int, int, std::vector<int>>, QMat> act_cache_;
    mutable long large_entries_ = 0;
    mutable std::map<std::tuple<int, int, int, int, int, int>, QMat> compose_cache_;
    mutable std::map<std::tuple<int, int, int, int>, QMat> contract_cache_;
};

bool stable(int g, int n);
// Every vertex color that a stable graph of type (g,n) can carry is covered:
// a vertex of genus h has valence at most n + 2(g-h).
bool type_covered(const CoeffSystem& sys, int g, int n);
int perm_sign(const std::vector<int>& perm);
std::vector<int> compose_perm(const std::vector<int>& outer, const std::vector<int>& inner);
std::vector<int> inverse_perm(const std::vector<int>& p);
// Adjacent transposition s_i (1-based i swaps legs i and i+1).
std::vector<int> transposition(int n, int i);

enum class ComKind { Envelope, Extension };
std::shared_ptr<CoeffSystem> com_system(ComKind kind);
// Cyclic Lie in genus 0, extension by zero; even, degree 0.
std::shared_ptr<CoeffSystem> lie_system();
// Shift-and-suspend; applying it twice returns the original data.
std::shared_ptr<CoeffSystem> oddify(std::shared_ptr<CoeffSystem> base);

// Explicit tables: s_i matrices, compositions at (i,j) = (n1,1) and ξ at (n-1,n).
class TableSystem : public CoeffSystem {
public:
    struct Color {
        int dim = 0;
        std::vector<int> degrees;
        std::vector<QMat> s;  // s[i-1] acts by the transposition of legs i, i+1
    };
    std::string label;
    bool is_odd = false;
    int genus_bound = -1;
    int support_g = -1;  // tabulated range
    int support_n = -1;
    std::set<std::pair<int, int>> domain;  // when non-empty, the exact set of known colors
    std::map<std::pair<int, int>, Color> colors;
    std::map<std::tuple<int, int, int, int>, QMat> gen_compose;  // (g1,n1,g2,n2)
    std::map<std::pair<int, int>, QMat> gen_contract;            // (g,n)

    std::string name() const override { return label; }
    bool odd() const override { return is_odd; }
    int max_genus() const override { return genus_bound; }
    int dim(int g, int n) const override;
    std::vector<int> degrees(int g, int n) const override;
    bool covers(int g, int n) const override;

protected:
    QMat act_impl(int g, int n, const std::vector<int>& perm) const override;
    QMat compose_impl(int g1, int n1, int i, int g2, int n2, int j) const override;
    QMat contract_impl(int g, int n, int i, int j) const override;
};

// Tabulates any system on the colors with g <= max_g and n <= max_n (plus what gluings need).
std::shared_ptr<TableSystem> tabulate(const CoeffSystem& sys, int max_g, int max_n);
std::string save_system(const TableSystem& t);
std::shared_ptr<TableSystem> load_system_text(const std::string& text);
std::shared_ptr<TableSystem> load_system_file(const std::string& path);

// Selector: com-envelope | com-extension | lie | lie-odd | file:<path>
std::shared_ptr<CoeffSystem> system_from_selector(const std::string& sel);

struct RelationReport {
    bool ok = true;
    long checks = 0;
    std::vector<std::string> failures;  // family name plus witness
    std::string to_json() const;
};

// Coxeter relations, equivariance, the swap symmetry of i∘j and the four two-edge
// relation families, on all colors with g <= max_g, n <= max_n.
RelationReport verify_relations(const CoeffSystem& sys, int max_g, int max_n);
// The same four families as equalities of glued graphs, on random small operands.
RelationReport verify_graph_relations(unsigned seed, int instances);

}  // namespace gcx

#endif
