#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hhw/partition.hpp"
#include "hhw/rational.hpp"
#include "hhw/series.hpp"

namespace hhw {

// Ramification data of a cover: n >= 3 branch points, one profile each, all
// of the same degree d >= 1. Parity consistency is not required; inconsistent
// tuples simply count zero.
struct ProfileTuple {
    std::vector<Partition> profiles;

    ProfileTuple() = default;
    explicit ProfileTuple(std::vector<Partition> ps);

    int n() const { return static_cast<int>(profiles.size()); }
    int degree() const { return profiles.empty() ? 0 : profiles[0].degree(); }
};

struct CoverCount {
    Rat disconnected;              // tuple count / d!
    std::optional<Rat> connected;  // transitive tuple count / d!, when computed
    std::optional<int> genus;      // (2 - chi)/2 for connected covers; nullopt = mixed
};

// Thrown when an exhaustive enumeration would exceed the operation budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation budget for brute-force enumeration; overridable through the
// HHW_MAX_OPS environment variable.
long long enumeration_budget();

// Number of tuples (s_1,...,s_n) with s_i of cycle type mu_i and
// s_1...s_n = id; with connected_only, the generated group must act
// transitively on {1..d}. Cost is prod_i<n |class(mu_i)|.
Int count_tuples_bruteforce(const ProfileTuple& pt, bool connected_only);

// Same count through the character sum
// (prod_i |C_i|)/d! * sum_lambda dim^{2-n} prod_i chi^lambda(mu_i).
// A non-integer result signals a character bug and throws.
Int count_tuples_frobenius(const ProfileTuple& pt);

// chi = sum_i len(mu_i) - (n-2) d; for a connected cover g = (2-chi)/2.
int euler_characteristic(const ProfileTuple& pt);

// Weight monomial of a tuple at degree d: q^d N^chi t-monomial(mu_1)
// tt-monomial(mu_n) g2^len(mu_2) g3^{len(mu_3)+...+len(mu_{n-1})}.
Monomial tuple_monomial(const ProfileTuple& pt);

// Disconnected generating series Z truncated at q^d_max, n branch points.
FormalSeries disconnected_series(int n, int d_max, int threads = 0);

// Connected generating function F = log Z.
FormalSeries generating_function(int n, int d_max, int threads = 0);

// True iff the Frobenius count is invariant under every permutation of the
// profiles.
bool braid_invariance_check(const ProfileTuple& pt);

// Per-tuple record used by the CLI and the verification suites.
struct TupleRecord {
    ProfileTuple tuple;
    Int raw_count;                     // Frobenius tuple count
    Rat disconnected;                  // raw / d!
    std::optional<Rat> connected;      // transitive / d! (brute force), if requested
    std::optional<int> genus;          // only when connected requested and chi even
    Monomial monomial;
};

std::vector<TupleRecord> enumerate_tuples(int n, int d, bool connected);

}  // namespace hhw
