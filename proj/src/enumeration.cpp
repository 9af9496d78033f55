#include "hhw/enumeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hhw/character.hpp"

namespace hhw {

ProfileTuple::ProfileTuple(std::vector<Partition> ps) : profiles(std::move(ps)) {
    if (profiles.size() < 3)
        throw std::invalid_argument("ProfileTuple: need at least 3 branch points");
    int d = profiles[0].degree();
    for (const auto& p : profiles)
        if (p.degree() != d) throw std::invalid_argument("profile degree mismatch");
    if (d < 1) throw std::invalid_argument("ProfileTuple: degree must be >= 1");
}

long long enumeration_budget() {
    if (const char* env = std::getenv("HHW_MAX_OPS")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 2'000'000'000LL;
}

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {  // (a*b)(i) = a(b(i))
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Partition cycle_type(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<int> parts;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    return Partition(parts);
}

// All elements of S_d grouped by cycle type, indexed in partitions_of(d) order.
std::vector<std::vector<Perm>> elements_by_class(int d) {
    auto parts = partitions_of(d);
    std::map<Partition, int> idx;
    for (size_t i = 0; i < parts.size(); ++i) idx[parts[i]] = static_cast<int>(i);
    std::vector<std::vector<Perm>> out(parts.size());
    Perm p(d);
    std::iota(p.begin(), p.end(), 0);
    do {
        out[idx.at(cycle_type(p))].push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int i) {
        while (up[i] != i) i = up[i] = up[up[i]];
        return i;
    }
    void join(int a, int b) { up[find(a)] = find(b); }
};

bool transitive(const std::vector<const Perm*>& gens, int d) {
    UnionFind uf(d);
    for (const Perm* g : gens)
        for (int i = 0; i < d; ++i) uf.join(i, (*g)[i]);
    int root = uf.find(0);
    for (int i = 1; i < d; ++i)
        if (uf.find(i) != root) return false;
    return true;
}

}  // namespace

Int count_tuples_bruteforce(const ProfileTuple& pt, bool connected_only) {
    const int d = pt.degree();
    const int n = pt.n();
    // cost estimate before generating anything
    double est = 1.0;
    for (int i = 0; i + 1 < n; ++i) est *= class_size(pt.profiles[i]).get_d();
    if (est > static_cast<double>(enumeration_budget()))
        throw BudgetExceeded("brute-force enumeration exceeds operation budget");

    auto classes = elements_by_class(d);
    auto parts = partitions_of(d);
    std::map<Partition, int> idx;
    for (size_t i = 0; i < parts.size(); ++i) idx[parts[i]] = static_cast<int>(i);

    std::vector<const std::vector<Perm>*> pools;
    for (int i = 0; i + 1 < n; ++i) pools.push_back(&classes[idx.at(pt.profiles[i])]);
    const Partition& last = pt.profiles[n - 1];

    Int count = 0;
    std::vector<const Perm*> chosen(n - 1);
    // product accumulated left to right; the forced last factor is its inverse
    std::function<void(int, const Perm&)> rec = [&](int pos, const Perm& acc) {
        if (pos == n - 1) {
            if (cycle_type(acc) != last) return;  // type(acc^-1) == type(acc)
            if (connected_only && !transitive(chosen, d)) return;
            ++count;
            return;
        }
        for (const Perm& s : *pools[pos]) {
            chosen[pos] = &s;
            rec(pos + 1, compose(acc, s));
        }
    };
    Perm id(d);
    std::iota(id.begin(), id.end(), 0);
    rec(0, id);
    return count;
}

Int count_tuples_frobenius(const ProfileTuple& pt) {
    const int d = pt.degree();
    const int n = pt.n();
    Rat sum = 0;
    for (const auto& lambda : partitions_of(d)) {
        Int prod = 1;
        bool zero = false;
        for (const auto& mu : pt.profiles) {
            Int chi = character(lambda, mu);
            if (chi == 0) {
                zero = true;
                break;
            }
            prod *= chi;
        }
        if (zero) continue;
        Int dim = dimension(lambda);
        sum += Rat(prod) / Rat(int_pow(dim, n - 2));
    }
    Rat pref = 1;
    for (const auto& mu : pt.profiles) pref *= Rat(class_size(mu));
    Rat total = pref / Rat(factorial(d)) * sum;
    total.canonicalize();
    if (!is_integer(total))
        throw std::logic_error("count_tuples_frobenius: non-integer count (character bug?)");
    return total.get_num();
}

int euler_characteristic(const ProfileTuple& pt) {
    int lsum = 0;
    for (const auto& mu : pt.profiles) lsum += mu.length();
    return lsum - (pt.n() - 2) * pt.degree();
}

Monomial tuple_monomial(const ProfileTuple& pt) {
    const int n = pt.n();
    Monomial m;
    m.q = pt.degree();
    m.n_exp = euler_characteristic(pt);
    for (auto [part, mult] : [&] {
             std::vector<std::pair<int, int>> v;
             auto mu = pt.profiles[0].multiplicities();
             for (int r = 1; r < static_cast<int>(mu.size()); ++r)
                 if (mu[r]) v.emplace_back(r, mu[r]);
             return v;
         }())
        m.t.emplace_back(part, mult);
    {
        auto mu = pt.profiles[n - 1].multiplicities();
        for (int s = 1; s < static_cast<int>(mu.size()); ++s)
            if (mu[s]) m.tt.emplace_back(s, mu[s]);
    }
    m.g2 = pt.profiles[1].length();
    for (int i = 2; i + 1 < n; ++i) m.g3 += pt.profiles[i].length();
    return m;
}

namespace {

// Visits all profile tuples of degree d with n points, first profile fixed
// to parts[i0].
template <typename F>
void for_each_tuple_with_first(const std::vector<Partition>& parts, int n, int i0, F f) {
    std::vector<Partition> cur(n);
    cur[0] = parts[i0];
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            f(ProfileTuple(cur));
            return;
        }
        for (const auto& p : parts) {
            cur[pos] = p;
            rec(pos + 1);
        }
    };
    rec(1);
}

}  // namespace

FormalSeries disconnected_series(int n, int d_max, int threads) {
    if (n < 3) throw std::invalid_argument("disconnected_series: n must be >= 3");
    if (d_max < 1) throw std::invalid_argument("disconnected_series: d_max must be >= 1");
    if (threads <= 0) threads = 1;
    FormalSeries Z = FormalSeries::one(d_max);
    for (int d = 1; d <= d_max; ++d) {
        auto parts = partitions_of(d);
        Rat dfact(factorial(d));
        // profile tuples are independent work items; chunk on the first profile
        std::vector<std::future<FormalSeries>> futs;
        int nchunks = std::min<int>(threads, static_cast<int>(parts.size()));
        for (int c = 0; c < nchunks; ++c) {
            futs.push_back(std::async(
                c == 0 ? std::launch::deferred : std::launch::async, [&, c]() {
                    FormalSeries acc(d_max);
                    for (int i0 = c; i0 < static_cast<int>(parts.size()); i0 += nchunks)
                        for_each_tuple_with_first(parts, n, i0, [&](const ProfileTuple& pt) {
                            Int cnt = count_tuples_frobenius(pt);
                            if (cnt == 0) return;
                            acc.add_term(tuple_monomial(pt), Rat(cnt) / dfact);
                        });
                    return acc;
                }));
        }
        for (auto& f : futs) Z = Z + f.get();  // fixed reduction order
    }
    return Z;
}

FormalSeries generating_function(int n, int d_max, int threads) {
    return log(disconnected_series(n, d_max, threads));
}

bool braid_invariance_check(const ProfileTuple& pt) {
    Int ref = count_tuples_frobenius(pt);
    std::vector<Partition> ps = pt.profiles;
    std::sort(ps.begin(), ps.end());
    do {
        if (count_tuples_frobenius(ProfileTuple(ps)) != ref) return false;
    } while (std::next_permutation(ps.begin(), ps.end()));
    return true;
}

std::vector<TupleRecord> enumerate_tuples(int n, int d, bool connected) {
    std::vector<TupleRecord> out;
    auto parts = partitions_of(d);
    Rat dfact(factorial(d));
    for (size_t i0 = 0; i0 < parts.size(); ++i0)
        for_each_tuple_with_first(parts, n, static_cast<int>(i0), [&](const ProfileTuple& pt) {
            TupleRecord rec;
            rec.tuple = pt;
            rec.raw_count = count_tuples_frobenius(pt);
            rec.disconnected = Rat(rec.raw_count) / dfact;
            rec.monomial = tuple_monomial(pt);
            if (connected) {
                Int t = count_tuples_bruteforce(pt, true);
                rec.connected = Rat(t) / dfact;
                int chi = euler_characteristic(pt);
                if ((2 - chi) % 2 == 0 && (2 - chi) / 2 >= 0) rec.genus = (2 - chi) / 2;
            }
            out.push_back(std::move(rec));
        });
    return out;
}

}  // namespace hhw
