#include "gcx/characters.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "gcx/coeff.hpp"

namespace gcx {

namespace {

void parts_rec(int n, int max, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max); k >= 1; --k) {
        cur.push_back(k);
        parts_rec(n - k, k, cur, out);
        cur.pop_back();
    }
}

long long mn(const std::vector<int>& beta, const Partition& mu, size_t from, std::map<std::pair<std::vector<int>, size_t>, long long>& memo) {
    if (from == mu.size()) return 1;
    auto key = std::make_pair(beta, from);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int r = mu[from];
    std::set<int> s(beta.begin(), beta.end());
    long long total = 0;
    for (int b : beta) {
        int nb = b - r;
        if (nb < 0 || s.count(nb)) continue;
        int between = 0;
        for (int x : beta)
            if (x > nb && x < b) ++between;
        std::vector<int> next;
        for (int x : beta) next.push_back(x == b ? nb : x);
        std::sort(next.begin(), next.end(), std::greater<int>());
        long long v = mn(next, mu, from + 1, memo);
        total += between % 2 ? -v : v;
    }
    memo.emplace(key, total);
    return total;
}

}  // namespace

std::vector<Partition> partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    parts_rec(n, n, cur, out);
    return out;
}

long long character_value(const Partition& lambda, const Partition& mu) {
    static std::mutex lock;
    int k = static_cast<int>(lambda.size());
    std::vector<int> beta;
    for (int i = 0; i < k; ++i) beta.push_back(lambda[i] + (k - 1 - i));
    Partition m = mu;
    std::sort(m.begin(), m.end(), std::greater<int>());
    std::lock_guard<std::mutex> l(lock);
    // memo entries depend on mu, so keep one table per cycle type
    static std::map<Partition, std::map<std::pair<std::vector<int>, size_t>, long long>> tables;
    return mn(beta, m, 0, tables[m]);
}

long long class_size(const Partition& mu) {
    int n = 0;
    for (int x : mu) n += x;
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    std::map<int, int> mult;
    for (int x : mu) ++mult[x];
    long long z = 1;
    for (auto [i, m] : mult) {
        for (int t = 0; t < m; ++t) z *= i;
        for (int t = 2; t <= m; ++t) z *= t;
    }
    return fact / z;
}

QMat permutation_matrix(const std::vector<QMat>& s, const std::vector<int>& perm, int dim) {
    QMat m = QMat::identity(dim);
    std::vector<int> p = perm;
    int n = static_cast<int>(perm.size());
    while (true) {
        auto pinv = inverse_perm(p);
        int q = -1;
        for (int k = 0; k + 1 < n; ++k)
            if (pinv[k + 1] < pinv[k]) {
                q = k;
                break;
            }
        if (q < 0) break;
        m = m * s.at(q);
        p = compose_perm(transposition(n, q + 1), p);
    }
    return m;
}

std::vector<int> cycle_type_representative(const Partition& mu) {
    std::vector<int> p;
    int a = 0;
    for (int len : mu) {
        for (int t = 0; t < len; ++t) p.push_back(t + 1 < len ? a + t + 1 : a);
        a += len;
    }
    return p;
}

std::map<Partition, Q> character(const std::vector<QMat>& s, int n, int dim) {
    std::map<Partition, Q> chi;
    for (const auto& mu : partitions(n)) {
        QMat m = permutation_matrix(s, cycle_type_representative(mu), dim);
        Q tr = 0;
        for (int i = 0; i < dim; ++i) tr += m(i, i);
        chi[mu] = tr;
    }
    return chi;
}

std::map<Partition, long long> decompose_character(int n, const std::map<Partition, Q>& chi) {
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    std::map<Partition, long long> out;
    for (const auto& lambda : partitions(n)) {
        Q s = 0;
        for (const auto& mu : partitions(n)) {
            auto it = chi.find(mu);
            if (it == chi.end()) throw CoeffError("NonIntegralMultiplicity", "character misses cycle type " + partition_name(mu));
            s += Q(static_cast<long>(class_size(mu))) * it->second * Q(static_cast<long>(character_value(lambda, mu)));
        }
        s /= Q(static_cast<long>(fact));
        if (s.get_den() != 1 || s < 0)
            throw CoeffError("NonIntegralMultiplicity", "multiplicity of " + partition_name(lambda) + " is " + to_string(s));
        if (s != 0) out[lambda] = s.get_num().get_si();
    }
    return out;
}

std::string partition_name(const Partition& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

}  // namespace gcx
