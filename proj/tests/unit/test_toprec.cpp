#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hhw/toprec.hpp"

using namespace hhw::toprec;

namespace {

ParamCurve airy() {
    // x = w^2/2, y = w
    return {RationalFn::poly({0, 0, 0.5}), RationalFn::poly({0, 1})};
}

ParamCurve zhukovsky() {
    // x = w + 1/w, y = w
    RationalFn x;
    x.num = {1, 0, 1};  // (1 + w^2)
    x.den = {0, 1};     // / w
    return {x, RationalFn::poly({0, 1})};
}

double coef_of(const Correlator& c, std::vector<std::pair<int, int>> legs) {
    auto it = c.coef.find(legs);
    return it == c.coef.end() ? 0.0 : it->second;
}

}  // namespace

TEST_CASE("series arithmetic basics") {
    auto t = LSeries::t_power(1, 10);
    auto one = LSeries::constant(1, 10);
    auto geom = (one - t).inverse();
    for (int k = 0; k < 8; ++k) CHECK(geom.coeff(k) == doctest::Approx(1.0));
    CHECK_THROWS(geom.coeff(12));

    auto inv_t = t.pow(-1);
    CHECK(inv_t.coeff(-1) == 1.0);
    CHECK((t * inv_t).coeff(0) == 1.0);

    // composition: 1/(1-s) with s = t + t^2 gives coefficients 1,1,2,3,...
    auto s = LSeries::from(1, {1, 1, 0, 0, 0, 0, 0, 0});
    auto comp = geom.compose(s);
    CHECK(comp.coeff(0) == doctest::Approx(1));
    CHECK(comp.coeff(1) == doctest::Approx(1));
    CHECK(comp.coeff(2) == doctest::Approx(2));
    CHECK(comp.coeff(3) == doctest::Approx(3));

    CHECK_THROWS(inv_t.antiderivative());
    CHECK(t.antiderivative().coeff(2) == doctest::Approx(0.5));
}

TEST_CASE("branch points of basic curves") {
    auto bz = branch_points(zhukovsky());
    REQUIRE(bz.size() == 2);
    CHECK(bz[0] == doctest::Approx(-1.0));
    CHECK(bz[1] == doctest::Approx(1.0));

    auto ba = branch_points(airy());
    REQUIRE(ba.size() == 1);
    CHECK(ba[0] == doctest::Approx(0.0));

    // degenerate: x = w^4-ish has a non-simple critical point at 0
    ParamCurve bad{RationalFn::poly({0, 0, 0, 1}), RationalFn::poly({0, 1})};
    CHECK_THROWS(recurse(bad, 0, 3));
}

TEST_CASE("airy correlators match the exact residue values") {
    // With x = w^2/2, y = w the involution is exactly -w and every residue
    // can be taken by hand: omega_{1,1} = (1/8) dw/w^4, and omega_{1,2} has
    // coefficients 5/8 on the (2,6)/(6,2) poles and 3/8 on (4,4). The same
    // numbers follow from the tau-class intersection values 1/24, 1/24,
    // 1/1152 paired with the (2d+1)!! pole weights.
    auto table = recurse(airy(), 2, 2);
    const auto& w11 = table.at(1, 1);
    CHECK(coef_of(w11, {{0, 4}}) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(w11.coef.size() == 1);

    const auto& w12 = table.at(1, 2);
    CHECK(coef_of(w12, {{0, 2}, {0, 6}}) == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(coef_of(w12, {{0, 6}, {0, 2}}) == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(coef_of(w12, {{0, 4}, {0, 4}}) == doctest::Approx(0.375).epsilon(1e-12));

    const auto& w21 = table.at(2, 1);
    CHECK(coef_of(w21, {{0, 10}}) == doctest::Approx(945.0 / 1152).epsilon(1e-11));
    for (auto& [legs, v] : w21.coef)
        if (std::abs(v) > 1e-10) CHECK(legs == std::vector<std::pair<int, int>>{{0, 10}});

    // the Airy primitive is t^3/3, so the F_2 residue pairing vanishes
    CHECK(std::abs(free_energy(table, airy(), 2)) < 1e-12);
}

TEST_CASE("recursion omega03 equals the direct residue formula") {
    for (const ParamCurve& curve : {airy(), zhukovsky()}) {
        auto table = recurse(curve, 0, 3);
        auto direct = omega03_direct(curve);
        const auto& rec = table.at(0, 3);
        auto keys = rec.coef;
        for (auto& [k, v] : direct.coef) keys.emplace(k, 0.0);
        for (auto& [k, v] : keys) {
            double a = coef_of(rec, k), b = coef_of(direct, k);
            CHECK(a == doctest::Approx(b).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("correlators are symmetric in their arguments") {
    auto table = recurse(zhukovsky(), 2, 2);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(1.5, 4.0);
    for (auto [g, n] : {std::pair{0, 3}, {1, 2}, {1, 3}}) {
        if (!table.has(g, n)) continue;
        const auto& c = table.at(g, n);
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> ws;
            for (int i = 0; i < n; ++i) ws.push_back(dist(rng) * (i % 2 ? 1 : -1));
            std::vector<double> perm = ws;
            std::shuffle(perm.begin(), perm.end(), rng);
            double a = c.eval(table.bp, ws), b = c.eval(table.bp, perm);
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("correlators are residue-free at the branch points") {
    auto table = recurse(zhukovsky(), 2, 2);
    for (auto& [gn, c] : table.omega) {
        if (gn == std::pair{0, 2}) continue;
        CHECK(c.max_abs_residue_coeff() < 1e-10);
    }
}

TEST_CASE("free energy is invariant under primitive shifts and reparametrization") {
    auto curve = zhukovsky();
    auto table = recurse(curve, 2, 1);
    double f2 = free_energy(table, curve, 2);
    double f2_shift = free_energy(table, curve, 2, 17.5);
    CHECK(f2 == doctest::Approx(f2_shift).epsilon(1e-10));

    // w -> 2w: x = 2w + 1/(2w), y = 2w
    ParamCurve scaled;
    scaled.x.num = {1, 0, 4};
    scaled.x.den = {0, 2};
    scaled.y = RationalFn::poly({0, 2});
    auto table2 = recurse(scaled, 2, 1);
    double f2_reparam = free_energy(table2, scaled, 2);
    CHECK(f2 == doctest::Approx(f2_reparam).epsilon(1e-9));

    // w -> w + 3: x = (w+3) + 1/(w+3), y = w + 3
    ParamCurve shifted;
    shifted.x.num = {10, 6, 1};  // (w+3)^2 + 1
    shifted.x.den = {3, 1};
    shifted.y = RationalFn::poly({3, 1});
    auto table3 = recurse(shifted, 2, 1);
    double f2_affine = free_energy(table3, shifted, 2);
    CHECK(f2 == doctest::Approx(f2_affine).epsilon(1e-9));

    CHECK(std::abs(f2) > 1e-6);  // the pairing is not trivially zero here
}

TEST_CASE("insufficient series order is reported") {
    RecursionOptions opt;
    opt.series_order = 6;  // far too small for genus two
    CHECK_THROWS_AS(recurse(zhukovsky(), 2, 1, opt), std::runtime_error);
}
