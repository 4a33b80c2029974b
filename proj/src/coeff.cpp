#include "gcx/coeff.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gcx/graph.hpp"
#include "json.hpp"

namespace gcx {

bool stable(int g, int n) { return g >= 0 && n >= 0 && n + 2 * g - 3 >= 0; }

bool type_covered(const CoeffSystem& sys, int g, int n) {
    for (int h = 0; h <= g; ++h)
        for (int k = 0; k <= n + 2 * (g - h); ++k)
            if (stable(h, k) && !sys.covers(h, k)) return false;
    return true;
}

int perm_sign(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        size_t len = 0;
        for (size_t j = i; !seen[j]; j = static_cast<size_t>(perm[j])) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

std::vector<int> compose_perm(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> r(inner.size());
    for (size_t k = 0; k < inner.size(); ++k) r[k] = outer[inner[k]];
    return r;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> r(p.size());
    for (size_t k = 0; k < p.size(); ++k) r[p[k]] = static_cast<int>(k);
    return r;
}

std::vector<int> transposition(int n, int i) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[i - 1], p[i]);
    return p;
}

QMat CoeffSystem::act(int g, int n, const std::vector<int>& perm) const {
    auto key = std::make_tuple(g, n, perm);
    {
        std::lock_guard<std::mutex> l(lock_);
        auto it = act_cache_.find(key);
        if (it != act_cache_.end()) return it->second;
    }
    QMat m = act_impl(g, n, perm);
    std::lock_guard<std::mutex> l(lock_);
    // large colors see many distinct permutations; their entries share a fixed budget
    long entries = static_cast<long>(m.rows) * m.cols;
    if (entries > 4096) {
        if (large_entries_ + entries > (1L << 22)) return m;
        large_entries_ += entries;
    }
    act_cache_.emplace(key, m);
    return m;
}

QMat CoeffSystem::compose(int g1, int n1, int i, int g2, int n2, int j) const {
    if (i < 1 || i > n1 || j < 1 || j > n2) throw CoeffError("BadLegIndex", "composition leg out of range");
    auto key = std::make_tuple(g1, n1, i, g2, n2, j);
    {
        std::lock_guard<std::mutex> l(lock_);
        auto it = compose_cache_.find(key);
        if (it != compose_cache_.end()) return it->second;
    }
    QMat m = compose_impl(g1, n1, i, g2, n2, j);
    std::lock_guard<std::mutex> l(lock_);
    compose_cache_.emplace(key, m);
    return m;
}

QMat CoeffSystem::contract(int g, int n, int i, int j) const {
    if (i < 1 || j > n || i >= j) throw CoeffError("BadLegIndex", "contraction needs 1 <= i < j <= n");
    auto key = std::make_tuple(g, n, i, j);
    {
        std::lock_guard<std::mutex> l(lock_);
        auto it = contract_cache_.find(key);
        if (it != contract_cache_.end()) return it->second;
    }
    QMat m = contract_impl(g, n, i, j);
    std::lock_guard<std::mutex> l(lock_);
    contract_cache_.emplace(key, m);
    return m;
}

namespace {

class ComSystem : public CoeffSystem {
public:
    explicit ComSystem(ComKind k) : kind_(k) {}
    std::string name() const override { return kind_ == ComKind::Envelope ? "com-envelope" : "com-extension"; }
    bool odd() const override { return false; }
    int max_genus() const override { return kind_ == ComKind::Envelope ? -1 : 0; }
    int dim(int g, int n) const override {
        if (!stable(g, n)) return 0;
        return (kind_ == ComKind::Envelope || g == 0) ? 1 : 0;
    }
    std::vector<int> degrees(int g, int n) const override { return std::vector<int>(dim(g, n), 0); }

protected:
    QMat act_impl(int g, int n, const std::vector<int>&) const override {
        int d = dim(g, n);
        return QMat::identity(d);
    }
    QMat compose_impl(int g1, int n1, int, int g2, int n2, int) const override {
        int d = dim(g1 + g2, n1 + n2 - 2), d1 = dim(g1, n1), d2 = dim(g2, n2);
        QMat m(d, d1 * d2);
        if (d && d1 && d2) m(0, 0) = 1;
        return m;
    }
    QMat contract_impl(int g, int n, int, int) const override {
        int d = dim(g + 1, n - 2), d0 = dim(g, n);
        QMat m(d, d0);
        if (d && d0) m(0, 0) = 1;
        return m;
    }

private:
    ComKind kind_;
};

// Sign for the suspended composition: symbols (ν_u, u_1..u_n, ν_w, w_1..w_m) are
// rearranged to (ν_u, ν_w, u_i, w_j, remaining legs in gluing order).
int suspension_compose_sign(int n1, int i, int n2, int j) {
    std::vector<int> target;
    target.push_back(0);
    target.push_back(n1 + 1);
    target.push_back(i);
    target.push_back(n1 + 1 + j);
    for (auto [side, l] : glue_pair_order(n1, i, n2, j)) target.push_back(side == 0 ? l : n1 + 1 + l);
    return perm_sign(target);
}

int suspension_contract_sign(int i, int j) { return ((i - 1) + (j - 2)) % 2 ? -1 : 1; }

class OddSystem : public CoeffSystem {
public:
    explicit OddSystem(std::shared_ptr<CoeffSystem> b) : base_(std::move(b)) {}
    std::string name() const override {
        auto n = base_->name();
        if (n.size() > 4 && n.substr(n.size() - 4) == "-odd") return n.substr(0, n.size() - 4);
        return n + "-odd";
    }
    bool odd() const override { return !base_->odd(); }
    int max_genus() const override { return base_->max_genus(); }
    bool covers(int g, int n) const override { return base_->covers(g, n); }
    int dim(int g, int n) const override { return base_->dim(g, n); }
    std::vector<int> degrees(int g, int n) const override {
        auto d = base_->degrees(g, n);
        int shift = base_->odd() ? -(3 - n) : (3 - n);
        for (int& x : d) x += shift;
        return d;
    }
    std::shared_ptr<CoeffSystem> base() const { return base_; }

protected:
    QMat act_impl(int g, int n, const std::vector<int>& perm) const override {
        return scaled(base_->act(g, n, perm), perm_sign(perm));
    }
    QMat compose_impl(int g1, int n1, int i, int g2, int n2, int j) const override {
        return scaled(base_->compose(g1, n1, i, g2, n2, j), suspension_compose_sign(n1, i, n2, j));
    }
    QMat contract_impl(int g, int n, int i, int j) const override {
        return scaled(base_->contract(g, n, i, j), suspension_contract_sign(i, j));
    }

private:
    std::shared_ptr<CoeffSystem> base_;
};

}  // namespace

std::shared_ptr<CoeffSystem> com_system(ComKind kind) { return std::make_shared<ComSystem>(kind); }

std::shared_ptr<CoeffSystem> oddify(std::shared_ptr<CoeffSystem> base) {
    if (auto o = std::dynamic_pointer_cast<OddSystem>(base)) return o->base();
    return std::make_shared<OddSystem>(std::move(base));
}

// ---- table systems ----

int TableSystem::dim(int g, int n) const {
    auto it = colors.find({g, n});
    return it == colors.end() ? 0 : it->second.dim;
}

std::vector<int> TableSystem::degrees(int g, int n) const {
    auto it = colors.find({g, n});
    return it == colors.end() ? std::vector<int>{} : it->second.degrees;
}

bool TableSystem::covers(int g, int n) const {
    if (genus_bound >= 0 && g > genus_bound) return true;
    if (!domain.empty()) return domain.count({g, n}) > 0;
    return g <= support_g && n <= support_n;
}

QMat TableSystem::act_impl(int g, int n, const std::vector<int>& perm) const {
    int d = dim(g, n);
    QMat m = QMat::identity(d);
    if (d == 0) return m;
    const auto& col = colors.at({g, n});
    std::vector<int> p = perm;
    while (true) {
        auto pinv = inverse_perm(p);
        int q = -1;
        for (int k = 0; k + 1 < n; ++k)
            if (pinv[k + 1] < pinv[k]) {
                q = k;
                break;
            }
        if (q < 0) break;
        m = m * col.s.at(q);
        p = compose_perm(transposition(n, q + 1), p);
    }
    return m;
}

namespace {
std::vector<int> move_to_end(int n, int i) {
    std::vector<int> p(n);
    for (int k = 0; k < n; ++k) p[k] = k == i - 1 ? n - 1 : (k < i - 1 ? k : k - 1);
    return p;
}
std::vector<int> move_to_front(int n, int j) {
    std::vector<int> p(n);
    for (int k = 0; k < n; ++k) p[k] = k == j - 1 ? 0 : (k < j - 1 ? k + 1 : k);
    return p;
}
}  // namespace

QMat TableSystem::compose_impl(int g1, int n1, int i, int g2, int n2, int j) const {
    int d = dim(g1 + g2, n1 + n2 - 2), d1 = dim(g1, n1), d2 = dim(g2, n2);
    auto it = gen_compose.find({g1, n1, g2, n2});
    if (d == 0 || d1 == 0 || d2 == 0 || it == gen_compose.end()) return QMat(d, d1 * d2);
    QMat right = kron(act(g1, n1, move_to_end(n1, i)), act(g2, n2, move_to_front(n2, j)));
    auto order = glue_pair_order(n1, i, n2, j);
    std::vector<int> rho;
    for (int l = 1; l <= n1; ++l)
        if (l != i) rho.push_back(static_cast<int>(std::find(order.begin(), order.end(), std::make_pair(0, l)) - order.begin()));
    for (int l = 1; l <= n2; ++l)
        if (l != j) rho.push_back(static_cast<int>(std::find(order.begin(), order.end(), std::make_pair(1, l)) - order.begin()));
    return act(g1 + g2, n1 + n2 - 2, rho) * it->second * right;
}

QMat TableSystem::contract_impl(int g, int n, int i, int j) const {
    int d = dim(g + 1, n - 2), d0 = dim(g, n);
    auto it = gen_contract.find({g, n});
    if (d == 0 || d0 == 0 || it == gen_contract.end()) return QMat(d, d0);
    std::vector<int> sigma(n);
    int next = 0;
    for (int k = 0; k < n; ++k) {
        if (k == i - 1)
            sigma[k] = n - 2;
        else if (k == j - 1)
            sigma[k] = n - 1;
        else
            sigma[k] = next++;
    }
    return it->second * act(g, n, sigma);
}

std::shared_ptr<TableSystem> tabulate(const CoeffSystem& sys, int max_g, int max_n) {
    auto t = std::make_shared<TableSystem>();
    t->label = sys.name();
    t->is_odd = sys.odd();
    t->genus_bound = sys.max_genus();
    t->support_g = max_g;
    t->support_n = max_n;
    for (int g = 0; g <= max_g; ++g)
        for (int n = 0; n <= max_n; ++n) {
            if (!stable(g, n)) continue;
            int d = sys.dim(g, n);
            if (d == 0) continue;
            TableSystem::Color c;
            c.dim = d;
            c.degrees = sys.degrees(g, n);
            for (int i = 1; i < n; ++i) c.s.push_back(sys.act(g, n, transposition(n, i)));
            t->colors[{g, n}] = c;
        }
    for (const auto& [k1, c1] : t->colors)
        for (const auto& [k2, c2] : t->colors) {
            auto [g1, n1] = k1;
            auto [g2, n2] = k2;
            if (n1 < 1 || n2 < 1) continue;
            if (!t->colors.count({g1 + g2, n1 + n2 - 2})) continue;
            t->gen_compose[{g1, n1, g2, n2}] = sys.compose(g1, n1, n1, g2, n2, 1);
        }
    for (const auto& [k, c] : t->colors) {
        auto [g, n] = k;
        if (n < 2 || !t->colors.count({g + 1, n - 2})) continue;
        t->gen_contract[{g, n}] = sys.contract(g, n, n - 1, n);
    }
    return t;
}

namespace {
nlohmann::ordered_json mat_json(const QMat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.rows; ++i) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (int j = 0; j < m.cols; ++j) r.push_back(to_string(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

QMat json_mat(const nlohmann::json& j, int rows, int cols, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw CoeffError("MalformedFile", where + ": expected " + std::to_string(rows) + " rows");
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw CoeffError("MalformedFile", where + ": expected " + std::to_string(cols) + " columns");
        for (int k = 0; k < cols; ++k) {
            try {
                m(i, k) = parse_rational(j[i][k].get<std::string>());
            } catch (const std::exception& e) {
                throw CoeffError("MalformedFile", where + ": " + e.what());
            }
        }
    }
    return m;
}
}  // namespace

std::string save_system(const TableSystem& t) {
    nlohmann::ordered_json j;
    j["name"] = t.label;
    j["parity"] = t.is_odd ? "odd" : "even";
    j["max_genus"] = t.genus_bound;
    j["support_g"] = t.support_g;
    j["support_n"] = t.support_n;
    if (!t.domain.empty()) {
        j["domain"] = nlohmann::ordered_json::array();
        for (auto [g, n] : t.domain) j["domain"].push_back({g, n});
    }
    j["colors"] = nlohmann::ordered_json::array();
    for (const auto& [k, c] : t.colors) {
        nlohmann::ordered_json cj;
        cj["g"] = k.first;
        cj["n"] = k.second;
        cj["dim"] = c.dim;
        cj["degrees"] = c.degrees;
        cj["s"] = nlohmann::ordered_json::array();
        for (const auto& m : c.s) cj["s"].push_back(mat_json(m));
        j["colors"].push_back(cj);
    }
    j["compose"] = nlohmann::ordered_json::array();
    for (const auto& [k, m] : t.gen_compose) {
        auto [g1, n1, g2, n2] = k;
        nlohmann::ordered_json cj;
        cj["g1"] = g1;
        cj["n1"] = n1;
        cj["g2"] = g2;
        cj["n2"] = n2;
        cj["matrix"] = mat_json(m);
        j["compose"].push_back(cj);
    }
    j["contract"] = nlohmann::ordered_json::array();
    for (const auto& [k, m] : t.gen_contract) {
        nlohmann::ordered_json cj;
        cj["g"] = k.first;
        cj["n"] = k.second;
        cj["matrix"] = mat_json(m);
        j["contract"].push_back(cj);
    }
    return j.dump(1);
}

std::shared_ptr<TableSystem> load_system_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw CoeffError("MalformedFile", std::string("invalid JSON: ") + e.what());
    }
    auto t = std::make_shared<TableSystem>();
    try {
        t->label = j.value("name", std::string("file"));
        std::string parity = j.value("parity", std::string("even"));
        if (parity != "even" && parity != "odd") throw CoeffError("MalformedFile", "parity must be even or odd");
        t->is_odd = parity == "odd";
        t->genus_bound = j.value("max_genus", -1);
        for (const auto& cj : j.at("colors")) {
            int g = cj.at("g").get<int>(), n = cj.at("n").get<int>();
            if (!stable(g, n)) throw CoeffError("MalformedFile", "unstable color (" + std::to_string(g) + "," + std::to_string(n) + ")");
            TableSystem::Color c;
            c.dim = cj.at("dim").get<int>();
            c.degrees = cj.at("degrees").get<std::vector<int>>();
            if (static_cast<int>(c.degrees.size()) != c.dim) throw CoeffError("MalformedFile", "degree list length differs from dim");
            const auto& s = cj.at("s");
            if (static_cast<int>(s.size()) != std::max(n - 1, 0)) throw CoeffError("MalformedFile", "need n-1 transposition matrices");
            for (size_t i = 0; i < s.size(); ++i) c.s.push_back(json_mat(s[i], c.dim, c.dim, "s matrix"));
            t->colors[{g, n}] = c;
            t->support_g = std::max(t->support_g, g);
            t->support_n = std::max(t->support_n, n);
        }
        t->support_g = j.value("support_g", t->support_g);
        t->support_n = j.value("support_n", t->support_n);
        if (j.contains("domain"))
            for (const auto& dj : j.at("domain")) t->domain.insert({dj.at(0).get<int>(), dj.at(1).get<int>()});
        for (const auto& cj : j.at("compose")) {
            int g1 = cj.at("g1").get<int>(), n1 = cj.at("n1").get<int>(), g2 = cj.at("g2").get<int>(), n2 = cj.at("n2").get<int>();
            t->gen_compose[{g1, n1, g2, n2}] =
                json_mat(cj.at("matrix"), t->dim(g1 + g2, n1 + n2 - 2), t->dim(g1, n1) * t->dim(g2, n2), "compose matrix");
        }
        for (const auto& cj : j.at("contract")) {
            int g = cj.at("g").get<int>(), n = cj.at("n").get<int>();
            t->gen_contract[{g, n}] = json_mat(cj.at("matrix"), t->dim(g + 1, n - 2), t->dim(g, n), "contract matrix");
        }
    } catch (const CoeffError&) {
        throw;
    } catch (const std::exception& e) {
        throw CoeffError("MalformedFile", e.what());
    }
    return t;
}

std::shared_ptr<TableSystem> load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CoeffError("MalformedFile", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_system_text(ss.str());
}

std::shared_ptr<CoeffSystem> system_from_selector(const std::string& sel) {
    if (sel == "com-envelope") return com_system(ComKind::Envelope);
    if (sel == "com-extension") return com_system(ComKind::Extension);
    if (sel == "lie") return lie_system();
    if (sel == "lie-odd") return oddify(lie_system());
    if (sel.rfind("file:", 0) == 0) return load_system_file(sel.substr(5));
    throw CoeffError("BadSelector", "unknown coefficient system '" + sel + "' (use com-envelope, com-extension, lie-odd or file:<path>)");
}

std::string RelationReport::to_json() const {
    nlohmann::ordered_json j;
    j["ok"] = ok;
    j["checks"] = checks;
    j["failures"] = failures;
    return j.dump();
}

}  // namespace gcx
