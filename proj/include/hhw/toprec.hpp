#pragma once

#include <map>
#include <string>
#include <vector>

namespace hhw::toprec {

// Truncated numeric Laurent series around a local coordinate t. `c[i]` is
// the coefficient of t^(lead+i); `end` (= lead + size) marks the first
// unknown power. A default-constructed series is exactly zero with infinite
// precision. Operations track validity and throw when a required
// coefficient falls outside the known window.
struct LSeries {
    int lead = 0;
    std::vector<double> c;

    static LSeries zero() { return {}; }
    static LSeries from(int lead, std::vector<double> coeffs);
    static LSeries constant(double v, int order);
    static LSeries t_power(int k, int order);

    bool is_zero() const { return c.empty(); }
    int end() const;  // first unavailable power (INT_MAX for zero)
    double coeff(int k) const;

    LSeries operator+(const LSeries& o) const;
    LSeries operator-(const LSeries& o) const;
    LSeries operator*(const LSeries& o) const;
    LSeries scaled(double v) const;
    LSeries inverse() const;               // leading coefficient must be nonzero
    LSeries pow(int k) const;              // k may be negative
    LSeries compose(const LSeries& inner) const;  // inner.lead >= 1
    LSeries derivative() const;
    LSeries antiderivative() const;        // throws on a t^-1 term
    double residue() const { return coeff(-1); }
    void trim();
};

// Rational function of the curve parameter with real coefficients.
struct RationalFn {
    std::vector<double> num{0};  // ascending powers
    std::vector<double> den{1};

    static RationalFn poly(std::vector<double> coeffs);
    static RationalFn laurent(int low, std::vector<double> coeffs);

    double eval(double w) const;
    RationalFn derivative() const;
    LSeries expand_at(double a, int order) const;  // analytic point required
};

struct ParamCurve {
    RationalFn x, y;
};

// Simple real zeros of dx/dw; throws on (numerically) degenerate zeros.
std::vector<double> branch_points(const ParamCurve& curve);

// One correlator: coefficients over per-leg pole basis (branch index,
// pole order k >= 1), meaning prod_i (w_i - bp[a_i])^(-k_i). Leg order is
// as produced by the recursion; symmetry is a property to check, not an
// assumption of the container.
struct Correlator {
    int g = 0, n = 0;
    std::map<std::vector<std::pair<int, int>>, double> coef;

    double eval(const std::vector<double>& bp, const std::vector<double>& ws) const;
    double max_abs_residue_coeff() const;  // largest |coefficient| at pole order 1
};

struct CorrelatorTable {
    std::vector<double> bp;
    std::map<std::pair<int, int>, Correlator> omega;

    bool has(int g, int n) const { return omega.count({g, n}) > 0; }
    const Correlator& at(int g, int n) const { return omega.at({g, n}); }
};

struct RecursionOptions {
    int series_order = 24;  // local jets for the involution and residues
    int max_legs = 5;       // desk-scale ceiling on n
};

// All omega_{g,m} with 2g-2+m <= 2*g_max-2+n_max (and m <= max_legs,
// g <= g_max), by residue extraction at the branch points. Convention:
// omega_{0,1} = y dx, omega_{0,2} = dw1 dw2/(w1-w2)^2, and the recursion
// kernel is  K(w0,w) = [int_{sigma(w)}^{w} omega_{0,2}(w0,.)] /
// [2 (omega_{0,1}(sigma(w)) - omega_{0,1}(w))].
CorrelatorTable recurse(const ParamCurve& curve, int g_max, int n_max,
                        const RecursionOptions& opt = {});

// Direct one-residue formula for omega_{0,3}: sum over branch points of
// Res B(w,w1)B(w,w2)B(w,w3) / (dx(w) dy(w)); an independent code path used
// to cross-check the recursion.
Correlator omega03_direct(const ParamCurve& curve, const RecursionOptions& opt = {});

// F_g = 1/(2-2g) * sum_a Res_a[Phi omega_{g,1}] with Phi a primitive of
// y dx; phi_shift adds a constant to Phi (the result must not move).
double free_energy(const CorrelatorTable& table, const ParamCurve& curve, int g,
                   double phi_shift = 0, const RecursionOptions& opt = {});

}  // namespace hhw::toprec
