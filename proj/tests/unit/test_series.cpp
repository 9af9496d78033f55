#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hhw/series.hpp"

using namespace hhw;

namespace {

Monomial q_mono(int d) {
    Monomial m;
    m.q = d;
    return m;
}

// small random series with controllable q^0 part
FormalSeries random_series(std::mt19937& rng, int trunc, bool unit_q0) {
    std::uniform_int_distribution<int> coef(-4, 4), den(1, 3), pick(0, 2);
    FormalSeries s(trunc);
    if (unit_q0) s.add_term(Monomial::one(), 1);
    for (int d = 1; d <= trunc; ++d) {
        for (int rep = 0; rep < 3; ++rep) {
            Monomial m;
            m.q = d;
            m.n_exp = pick(rng) - 1;
            m.g2 = pick(rng);
            m.g3 = pick(rng);
            if (pick(rng) == 0) m.t = {{1 + pick(rng), 1}};
            if (pick(rng) == 0) m.tt = {{1 + pick(rng), 1}};
            s.add_term(m, Rat(coef(rng), den(rng)));
        }
    }
    return s;
}

}  // namespace

TEST_CASE("multiplicative identity and telescoping product") {
    auto a = FormalSeries::term(4, q_mono(1), 1) + FormalSeries::one(4);
    CHECK(a * FormalSeries::one(4) == a);
    auto b = FormalSeries::one(4) - FormalSeries::term(4, q_mono(1), 1);
    auto prod = a * b;
    CHECK(prod.coefficient(q_mono(0)) == 1);
    CHECK(prod.coefficient(q_mono(1)) == 0);
    CHECK(prod.coefficient(q_mono(2)) == -1);
}

TEST_CASE("truncation mismatch throws") {
    CHECK_THROWS(FormalSeries::one(3) * FormalSeries::one(4));
}

TEST_CASE("coefficient queries") {
    auto a = FormalSeries::term(3, q_mono(2), Rat(7, 3));
    CHECK(a.coefficient(q_mono(2)) == Rat(7, 3));
    CHECK(a.coefficient(q_mono(1)) == 0);
    CHECK_THROWS(a.coefficient(q_mono(4)));
}

TEST_CASE("mercator series") {
    auto a = FormalSeries::term(3, q_mono(1), 1);
    auto l = log1p(a);
    CHECK(l.coefficient(q_mono(1)) == 1);
    CHECK(l.coefficient(q_mono(2)) == Rat(-1, 2));
    CHECK(l.coefficient(q_mono(3)) == Rat(1, 3));
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937 rng(20240901);
    for (int rep = 0; rep < 8; ++rep) {
        auto a = random_series(rng, 5, false);
        auto b = random_series(rng, 5, false);
        auto c = random_series(rng, 5, false);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("log/exp inverses and log of product") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 6; ++rep) {
        auto a = random_series(rng, 5, false);
        CHECK(log(exp(a)) == a);
        auto z = exp(a);
        CHECK(exp(log(z)) == z);
        auto b = random_series(rng, 5, false);
        auto za = exp(a), zb = exp(b);
        CHECK(log(za * zb) == log(za) + log(zb));
    }
}

TEST_CASE("log rejects non-unit constant term") {
    auto z = FormalSeries::one(3).scaled(2);
    CHECK_THROWS(log(z));
    FormalSeries bad(3);
    bad.add_term(Monomial::one(), 1);
    Monomial g;
    g.g2 = 1;  // q^0 monomial that is not the constant
    bad.add_term(g, 1);
    CHECK_THROWS(log(bad));
}

TEST_CASE("convolution against a hand computation") {
    // (1 + 2 q N^2) * (3 q N^-1) = 3 q N^-1 + 6 q^2 N
    Monomial m1;
    m1.q = 1;
    m1.n_exp = 2;
    Monomial m2;
    m2.q = 1;
    m2.n_exp = -1;
    auto a = FormalSeries::one(2) + FormalSeries::term(2, m1, 2);
    auto b = FormalSeries::term(2, m2, 3);
    auto p = a * b;
    Monomial m3;
    m3.q = 2;
    m3.n_exp = 1;
    CHECK(p.coefficient(m2) == 3);
    CHECK(p.coefficient(m3) == 6);
    CHECK(p.terms().size() == 2);
}
