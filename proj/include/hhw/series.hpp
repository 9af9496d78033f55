#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hhw/rational.hpp"

namespace hhw {

// Monomial in the formal markers of the cover-counting ring: q (degree
// marker), an integer N-exponent grading, times t_r and tt_s (finitely many
// per truncation since a degree-d cover uses parts <= d), and weights
// gamma2, gamma3. Exponent lists are sorted by index with zeros dropped.
struct Monomial {
    int q = 0;
    int n_exp = 0;
    std::vector<std::pair<int, int>> t;   // (r, exponent), exponent > 0
    std::vector<std::pair<int, int>> tt;  // (s, exponent), exponent > 0
    int g2 = 0;
    int g3 = 0;

    static Monomial one() { return {}; }
    Monomial operator*(const Monomial& o) const;
    bool operator==(const Monomial& o) const = default;
    bool operator<(const Monomial& o) const;
    std::string to_string() const;
};

// Truncated multivariate formal power series over exact rationals: only
// monomials with q-degree <= trunc are stored, zero coefficients never.
class FormalSeries {
public:
    explicit FormalSeries(int trunc) : trunc_(trunc) {}
    static FormalSeries one(int trunc);
    static FormalSeries term(int trunc, const Monomial& m, const Rat& c);

    int truncation() const { return trunc_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Rat& c);
    Rat coefficient(const Monomial& m) const;  // throws past truncation

    FormalSeries operator+(const FormalSeries& o) const;
    FormalSeries operator-(const FormalSeries& o) const;
    FormalSeries operator*(const FormalSeries& o) const;
    FormalSeries scaled(const Rat& c) const;

    // q-degree-0 slice (as a series) and the rest.
    FormalSeries q0_part() const;

    bool operator==(const FormalSeries& o) const {
        return trunc_ == o.trunc_ && terms_ == o.terms_;
    }

private:
    int trunc_;
    std::map<Monomial, Rat> terms_;
};

// log(1 + a) = sum_{k>=1} (-1)^{k+1} a^k / k; requires the q^0 part of a to
// vanish so the argument has unit constant term.
FormalSeries log1p(const FormalSeries& a);

// exp(a) for a with vanishing q^0 part.
FormalSeries exp(const FormalSeries& a);

// log of z = 1 + a; checks that the q^0 slice of z is exactly 1.
FormalSeries log(const FormalSeries& z);

}  // namespace hhw
