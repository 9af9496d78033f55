#include "hhw/toprec.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hhw::toprec {

namespace {
constexpr double kTiny = 1e-13;
}

LSeries LSeries::from(int lead, std::vector<double> coeffs) {
    LSeries s;
    s.lead = lead;
    s.c = std::move(coeffs);
    s.trim();
    return s;
}

LSeries LSeries::constant(double v, int order) {
    LSeries s;
    s.lead = 0;
    s.c.assign(static_cast<size_t>(order), 0.0);
    if (!s.c.empty()) s.c[0] = v;
    return s;
}

LSeries LSeries::t_power(int k, int order) {
    LSeries s;
    s.lead = k;
    s.c.assign(static_cast<size_t>(order), 0.0);
    if (!s.c.empty()) s.c[0] = 1.0;
    return s;
}

int LSeries::end() const { return is_zero() ? INT_MAX : lead + static_cast<int>(c.size()); }

double LSeries::coeff(int k) const {
    if (is_zero()) return 0.0;
    if (k >= end())
        throw std::runtime_error("series order insufficient: raise the local jet order");
    if (k < lead) return 0.0;
    return c[static_cast<size_t>(k - lead)];
}

void LSeries::trim() {
    size_t i = 0;
    while (i < c.size() && c[i] == 0.0) ++i;
    if (i == c.size()) {
        if (!c.empty()) {
            lead += static_cast<int>(c.size()) - 1;
            c.assign(1, 0.0);
        }
        return;
    }
    if (i > 0) {
        c.erase(c.begin(), c.begin() + static_cast<long>(i));
        lead += static_cast<int>(i);
    }
}

LSeries LSeries::operator+(const LSeries& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int l = std::min(lead, o.lead);
    int e = std::min(end(), o.end());
    if (e <= l) throw std::runtime_error("series windows do not overlap");
    LSeries s;
    s.lead = l;
    s.c.assign(static_cast<size_t>(e - l), 0.0);
    for (int k = l; k < e; ++k) s.c[static_cast<size_t>(k - l)] = coeff(k) + o.coeff(k);
    s.trim();
    return s;
}

LSeries LSeries::operator-(const LSeries& o) const { return *this + o.scaled(-1.0); }

LSeries LSeries::scaled(double v) const {
    if (v == 0.0) {
        // scaling by zero keeps the validity window
        LSeries s = *this;
        for (double& x : s.c) x = 0.0;
        return s;
    }
    LSeries s = *this;
    for (double& x : s.c) x *= v;
    return s;
}

LSeries LSeries::operator*(const LSeries& o) const {
    if (is_zero() || o.is_zero()) return zero();
    int l = lead + o.lead;
    int e = std::min(end() + o.lead, o.end() + lead);
    LSeries s;
    s.lead = l;
    s.c.assign(static_cast<size_t>(e - l), 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0.0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) {
            int k = lead + static_cast<int>(i) + o.lead + static_cast<int>(j);
            if (k >= e) break;
            s.c[static_cast<size_t>(k - l)] += c[i] * o.c[j];
        }
    }
    s.trim();
    return s;
}

LSeries LSeries::inverse() const {
    if (is_zero() || c[0] == 0.0)
        throw std::runtime_error("series inverse needs a nonzero leading coefficient");
    LSeries s;
    s.lead = -lead;
    s.c.assign(c.size(), 0.0);
    s.c[0] = 1.0 / c[0];
    for (size_t k = 1; k < c.size(); ++k) {
        double acc = 0;
        for (size_t j = 1; j <= k; ++j) acc += (j < c.size() ? c[j] : 0.0) * s.c[k - j];
        s.c[k] = -acc / c[0];
    }
    return s;
}

LSeries LSeries::pow(int k) const {
    if (k == 0) return constant(1.0, static_cast<int>(c.size()));
    LSeries base = k > 0 ? *this : inverse();
    LSeries r = base;
    for (int i = 1; i < std::abs(k); ++i) r = r * base;
    return r;
}

LSeries LSeries::compose(const LSeries& inner) const {
    if (is_zero()) return zero();
    if (inner.is_zero() || inner.lead < 1)
        throw std::runtime_error("series composition needs inner lead >= 1");
    if (lead < 0) {
        LSeries g = *this;
        g.lead -= lead;  // make the series analytic, restore with a power
        return g.compose(inner) * inner.pow(lead);
    }
    int order = static_cast<int>(std::min(c.size(), inner.c.size()));
    LSeries acc = constant(0.0, order);
    for (size_t i = c.size(); i-- > 0;) acc = acc * inner + constant(c[i], order);
    if (lead > 0) acc = acc * inner.pow(lead);
    return acc;
}

LSeries LSeries::derivative() const {
    if (is_zero()) return zero();
    LSeries s;
    s.lead = lead - 1;
    s.c.assign(c.size(), 0.0);
    for (size_t i = 0; i < c.size(); ++i)
        s.c[i] = c[i] * static_cast<double>(lead + static_cast<int>(i));
    s.trim();
    return s;
}

LSeries LSeries::antiderivative() const {
    if (is_zero()) return zero();
    LSeries s;
    s.lead = lead + 1;
    s.c.assign(c.size(), 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
        int k = lead + static_cast<int>(i);
        if (k == -1) {
            if (std::abs(c[i]) > kTiny)
                throw std::runtime_error("antiderivative hit a t^-1 term");
            continue;
        }
        s.c[i] = c[i] / static_cast<double>(k + 1);
    }
    return s;
}

RationalFn RationalFn::poly(std::vector<double> coeffs) {
    RationalFn f;
    f.num = std::move(coeffs);
    f.den = {1};
    return f;
}

RationalFn RationalFn::laurent(int low, std::vector<double> coeffs) {
    RationalFn f;
    if (low >= 0) {
        f.num.assign(static_cast<size_t>(low), 0.0);
        f.num.insert(f.num.end(), coeffs.begin(), coeffs.end());
        f.den = {1};
    } else {
        f.num = std::move(coeffs);
        f.den.assign(static_cast<size_t>(-low) + 1, 0.0);
        f.den.back() = 1.0;  // w^{-low}
    }
    return f;
}

double RationalFn::eval(double w) const {
    auto horner = [&](const std::vector<double>& p) {
        double acc = 0;
        for (size_t i = p.size(); i-- > 0;) acc = acc * w + p[i];
        return acc;
    };
    return horner(num) / horner(den);
}

RationalFn RationalFn::derivative() const {
    auto dpoly = [](const std::vector<double>& p) {
        std::vector<double> d;
        for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<double>(i));
        if (d.empty()) d.push_back(0.0);
        return d;
    };
    auto mul = [](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> r(a.size() + b.size() - 1, 0.0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    auto sub = [](std::vector<double> a, const std::vector<double>& b) {
        if (a.size() < b.size()) a.resize(b.size(), 0.0);
        for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        return a;
    };
    RationalFn d;
    d.num = sub(mul(dpoly(num), den), mul(num, dpoly(den)));
    d.den = mul(den, den);
    return d;
}

LSeries RationalFn::expand_at(double a, int order) const {
    // Taylor coefficients of p(a + t) by repeated synthetic division
    auto shift = [&](std::vector<double> p, int want) {
        std::vector<double> out;
        for (int k = 0; k < want && !p.empty(); ++k) {
            // remainder of division by (w - a) is p(a); quotient continues
            std::vector<double> q(p.size() > 1 ? p.size() - 1 : 0);
            double rem = p.back();
            for (size_t i = p.size() - 1; i-- > 0;) {
                if (!q.empty()) q[i] = rem;
                double nrem = p[i] + rem * a;
                rem = nrem;
            }
            out.push_back(rem);
            p = std::move(q);
        }
        if (out.empty()) out.push_back(0.0);
        return out;
    };
    std::vector<double> ns = shift(num, order), ds = shift(den, order);
    ns.resize(static_cast<size_t>(order), 0.0);
    ds.resize(static_cast<size_t>(order), 0.0);
    LSeries n = LSeries::from(0, ns);
    LSeries d = LSeries::from(0, ds);
    if (d.is_zero() || d.c[0] == 0.0)
        throw std::runtime_error("expansion point is a pole of the denominator");
    if (n.is_zero()) {
        LSeries z;
        z.lead = 0;
        z.c.assign(static_cast<size_t>(order), 0.0);
        return z;
    }
    return n * d.inverse();
}

std::vector<double> branch_points(const ParamCurve& curve) {
    RationalFn xp = curve.x.derivative();
    std::vector<double> p = xp.num;
    while (p.size() > 1 && std::abs(p.back()) < 1e-300) p.pop_back();
    int deg = static_cast<int>(p.size()) - 1;
    if (deg < 1) throw std::runtime_error("dx/dw has no zeros");
    std::vector<std::complex<double>> r(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) r[static_cast<size_t>(i)] = std::polar(1.0 + 0.1 * i, 0.7 * (i + 1));
    for (int it = 0; it < 500; ++it) {
        double moved = 0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> val = p[static_cast<size_t>(deg)];
            for (int k = deg - 1; k >= 0; --k) val = val * r[static_cast<size_t>(i)] + p[static_cast<size_t>(k)];
            std::complex<double> denom = p[static_cast<size_t>(deg)];
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= (r[static_cast<size_t>(i)] - r[static_cast<size_t>(j)]);
            std::complex<double> step = val / denom;
            r[static_cast<size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15) break;
    }
    auto horner_at = [](const std::vector<double>& q, double a) {
        double acc = 0;
        for (size_t i = q.size(); i-- > 0;) acc = acc * a + q[i];
        return acc;
    };
    auto dcoeffs = [](const std::vector<double>& q) {
        std::vector<double> d;
        for (size_t i = 1; i < q.size(); ++i) d.push_back(q[i] * static_cast<double>(i));
        if (d.empty()) d.push_back(0.0);
        return d;
    };
    std::vector<double> pd = dcoeffs(p);
    std::vector<double> out;
    for (auto& z : r) {
        if (std::abs(z.imag()) > 1e-8 * (1 + std::abs(z.real()))) continue;
        double a = z.real();
        // Newton polish against root-finder drift; the local jets downstream
        // assume x'(a) = 0 to machine accuracy
        for (int it = 0; it < 6; ++it) {
            double f = horner_at(p, a), df = horner_at(pd, a);
            if (df == 0.0) break;
            double step = f / df;
            a -= step;
            if (std::abs(step) < 1e-16 * (1 + std::abs(a))) break;
        }
        if (std::abs(horner_at(curve.x.den, a)) < 1e-10) continue;  // pole, not critical point
        out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (std::abs(out[i] - out[i + 1]) < 1e-7 * (1 + std::abs(out[i])))
            throw std::runtime_error("degenerate (non-simple) branch point");
    if (out.empty()) throw std::runtime_error("no real branch points found");
    return out;
}

double Correlator::eval(const std::vector<double>& bp, const std::vector<double>& ws) const {
    if (static_cast<int>(ws.size()) != n) throw std::invalid_argument("wrong number of arguments");
    double acc = 0;
    for (auto& [legs, v] : coef) {
        double term = v;
        for (int i = 0; i < n; ++i)
            term /= std::pow(ws[static_cast<size_t>(i)] - bp[static_cast<size_t>(legs[static_cast<size_t>(i)].first)],
                             legs[static_cast<size_t>(i)].second);
        acc += term;
    }
    return acc;
}

double Correlator::max_abs_residue_coeff() const {
    double m = 0;
    for (auto& [legs, v] : coef)
        for (auto& [a, k] : legs)
            if (k == 1) m = std::max(m, std::abs(v));
    return m;
}

namespace {

struct BPLocal {
    double a;
    LSeries X, Y, Xp;
    LSeries sigma, sigma_p;
    LSeries Dinv;  // 1 / [2 (y(sigma) - y) x']
};

// local involution jet: S(t) = -t + ... with X(S(t)) = X(t)
LSeries solve_involution(const LSeries& X, int order) {
    double x2 = X.coeff(2);
    if (std::abs(x2) < 1e-12) throw std::runtime_error("degenerate (non-simple) branch point");
    if (order < 4) throw std::invalid_argument("series order too small");
    std::vector<double> s(static_cast<size_t>(order), 0.0);
    s[1] = -1.0;
    for (int k = 2; k < order - 2; ++k) {
        // the zero-padded jet is safe: s_j with j > k only moves orders > k+1
        LSeries S = LSeries::from(1, std::vector<double>(s.begin() + 1, s.end()));
        LSeries diff = X.compose(S) - X;
        double resid = diff.coeff(k + 1);
        s[static_cast<size_t>(k)] = resid / (2.0 * x2);
    }
    // only the solved window is advertised
    return LSeries::from(1, std::vector<double>(s.begin() + 1, s.begin() + (order - 2)));
}

std::vector<BPLocal> prepare_locals(const ParamCurve& curve, const std::vector<double>& bp,
                                    int order) {
    std::vector<BPLocal> locals;
    for (double a : bp) {
        BPLocal L;
        L.a = a;
        L.X = curve.x.expand_at(a, order + 4);
        if (std::abs(L.X.coeff(1)) > 1e-8) throw std::runtime_error("branch point drifted");
        if (L.X.lead <= 1 && 1 - L.X.lead < static_cast<int>(L.X.c.size()))
            L.X.c[static_cast<size_t>(1 - L.X.lead)] = 0.0;  // exact critical point
        L.Y = curve.y.expand_at(a, order + 4);
        L.Xp = L.X.derivative();
        L.sigma = solve_involution(L.X, order + 4);
        L.sigma_p = L.sigma.derivative();
        LSeries D = (L.Y.compose(L.sigma) - L.Y) * L.Xp;
        L.Dinv = D.inverse().scaled(0.5);
        locals.push_back(std::move(L));
    }
    return locals;
}

// 1/(w - bp_b)^k as a local series at branch point index ai; when at_sigma,
// the leg sits at sigma(w) and carries the d(sigma)/dw factor
LSeries xi_local(const std::vector<BPLocal>& locals, const std::vector<double>& bp, int ai,
                 int b, int k, bool at_sigma, int order) {
    const BPLocal& L = locals[static_cast<size_t>(ai)];
    LSeries base;
    if (b == ai) {
        base = at_sigma ? L.sigma.pow(-k) : LSeries::t_power(-k, order);
    } else {
        double d = L.a - bp[static_cast<size_t>(b)];
        std::vector<double> inv(static_cast<size_t>(order), 0.0);
        for (int j = 0; j < order; ++j) inv[static_cast<size_t>(j)] = std::pow(-1.0 / d, j) / d;
        base = LSeries::from(0, inv).pow(k);
        if (at_sigma) base = base.compose(L.sigma);
    }
    if (at_sigma) base = base * L.sigma_p;
    return base;
}

using Legs = std::vector<std::pair<int, int>>;
using WMap = std::map<Legs, LSeries>;

void wmap_add(WMap& m, const Legs& legs, const LSeries& s) {
    if (s.is_zero()) return;
    auto [it, inserted] = m.emplace(legs, s);
    if (!inserted) it->second = it->second + s;
}

// expansion of omega_{0,2}(., w_free) on a local leg: the t^j coefficient is
// (j+1)/(w_free - a)^(j+2)
void b_leg_pieces(WMap& out, const BPLocal& L, int ai, bool at_sigma, int order) {
    for (int j = 0; j + 2 <= order; ++j) {
        LSeries piece = at_sigma ? L.sigma.pow(j).scaled(j + 1.0) * L.sigma_p
                                 : LSeries::t_power(j, order).scaled(j + 1.0);
        wmap_add(out, Legs{{ai, j + 2}}, piece);
    }
}

}  // namespace

CorrelatorTable recurse(const ParamCurve& curve, int g_max, int n_max,
                        const RecursionOptions& opt) {
    CorrelatorTable table;
    table.bp = branch_points(curve);
    const int order = opt.series_order;
    auto locals = prepare_locals(curve, table.bp, order);
    const int chi_cap = 2 * g_max - 2 + n_max;
    if (chi_cap < 1) throw std::invalid_argument("recursion target is unstable");

    std::vector<std::pair<int, int>> targets;
    for (int chi = 1; chi <= chi_cap; ++chi)
        for (int g = 0; 2 * g <= chi + 1; ++g) {
            int n = chi + 2 - 2 * g;
            if (n < 1 || n > opt.max_legs || g > g_max) continue;
            targets.push_back({g, n});
        }

    for (auto [g, n1] : targets) {
        const int n = n1 - 1;  // spectator legs
        Correlator corr;
        corr.g = g;
        corr.n = n1;
        for (int ai = 0; ai < static_cast<int>(locals.size()); ++ai) {
            const BPLocal& L = locals[static_cast<size_t>(ai)];
            WMap W;

            if (g >= 1) {
                if (g - 1 == 0 && n + 2 == 2) {
                    LSeries dd = (LSeries::t_power(1, order) - L.sigma).pow(-2) * L.sigma_p;
                    wmap_add(W, {}, dd);
                } else if (table.has(g - 1, n + 2)) {
                    for (auto& [legs, v] : table.at(g - 1, n + 2).coef) {
                        LSeries s = xi_local(locals, table.bp, ai, legs[0].first, legs[0].second,
                                             false, order) *
                                    xi_local(locals, table.bp, ai, legs[1].first, legs[1].second,
                                             true, order);
                        Legs spect(legs.begin() + 2, legs.end());
                        wmap_add(W, spect, s.scaled(v));
                    }
                }
            }

            for (int g1 = 0; g1 <= g; ++g1) {
                int g2 = g - g1;
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    int sz = __builtin_popcount(mask);
                    int na = 1 + sz, nb = 1 + (n - sz);
                    if (g1 == 0 && na == 1) continue;
                    if (g2 == 0 && nb == 1) continue;

                    WMap WA;
                    if (g1 == 0 && na == 2) b_leg_pieces(WA, L, ai, false, order);
                    else if (table.has(g1, na)) {
                        for (auto& [legs, v] : table.at(g1, na).coef) {
                            LSeries s = xi_local(locals, table.bp, ai, legs[0].first,
                                                 legs[0].second, false, order);
                            Legs spect(legs.begin() + 1, legs.end());
                            wmap_add(WA, spect, s.scaled(v));
                        }
                    } else {
                        continue;
                    }
                    WMap WB;
                    if (g2 == 0 && nb == 2) b_leg_pieces(WB, L, ai, true, order);
                    else if (table.has(g2, nb)) {
                        for (auto& [legs, v] : table.at(g2, nb).coef) {
                            LSeries s = xi_local(locals, table.bp, ai, legs[0].first,
                                                 legs[0].second, true, order);
                            Legs spect(legs.begin() + 1, legs.end());
                            wmap_add(WB, spect, s.scaled(v));
                        }
                    } else {
                        continue;
                    }

                    std::vector<int> apos, bpos;
                    for (int j = 0; j < n; ++j)
                        ((mask >> j) & 1u) ? apos.push_back(j) : bpos.push_back(j);
                    for (auto& [la, sa] : WA) {
                        if (la.size() != apos.size()) continue;
                        for (auto& [lb, sb] : WB) {
                            if (lb.size() != bpos.size()) continue;
                            Legs merged(static_cast<size_t>(n));
                            for (size_t i = 0; i < apos.size(); ++i)
                                merged[static_cast<size_t>(apos[i])] = la[i];
                            for (size_t i = 0; i < bpos.size(); ++i)
                                merged[static_cast<size_t>(bpos[i])] = lb[i];
                            wmap_add(W, merged, sa * sb);
                        }
                    }
                }
            }

            for (auto& [legs, s] : W) {
                LSeries core = s * L.Dinv;
                if (core.is_zero()) continue;
                int p_max = std::max(1, -core.lead);
                for (int p = 1; p <= p_max; ++p) {
                    LSeries Np = LSeries::t_power(p, order) - L.sigma.pow(p);
                    double res = (Np * core).residue();
                    if (res == 0.0) continue;
                    Legs full;
                    full.reserve(legs.size() + 1);
                    full.emplace_back(ai, p + 1);
                    full.insert(full.end(), legs.begin(), legs.end());
                    auto [it, inserted] = corr.coef.emplace(full, res);
                    if (!inserted) it->second += res;
                }
            }
        }
        for (auto it = corr.coef.begin(); it != corr.coef.end();) {
            if (std::abs(it->second) < 1e-12) it = corr.coef.erase(it);
            else ++it;
        }
        table.omega[{g, n1}] = std::move(corr);
    }
    return table;
}

Correlator omega03_direct(const ParamCurve& curve, const RecursionOptions& opt) {
    std::vector<double> bp = branch_points(curve);
    const int order = opt.series_order;
    auto locals = prepare_locals(curve, bp, order);
    Correlator corr;
    corr.g = 0;
    corr.n = 3;
    for (int ai = 0; ai < static_cast<int>(locals.size()); ++ai) {
        const BPLocal& L = locals[static_cast<size_t>(ai)];
        LSeries Yp = L.Y.derivative();
        LSeries denom_inv = (L.Xp * Yp).inverse();
        for (int j1 = 0; j1 + 2 <= order; ++j1)
            for (int j2 = 0; j2 + 2 <= order; ++j2)
                for (int j3 = 0; j3 + 2 <= order; ++j3) {
                    if (j1 + j2 + j3 > 4) continue;  // 1/(x'y') has a double pole at most
                    LSeries prod = LSeries::t_power(j1 + j2 + j3, order)
                                       .scaled((j1 + 1.0) * (j2 + 1.0) * (j3 + 1.0));
                    double res = (prod * denom_inv).residue();
                    if (res == 0.0) continue;
                    Legs legs{{ai, j1 + 2}, {ai, j2 + 2}, {ai, j3 + 2}};
                    auto [it, inserted] = corr.coef.emplace(legs, res);
                    if (!inserted) it->second += res;
                }
    }
    for (auto it = corr.coef.begin(); it != corr.coef.end();) {
        if (std::abs(it->second) < 1e-12) it = corr.coef.erase(it);
        else ++it;
    }
    return corr;
}

double free_energy(const CorrelatorTable& table, const ParamCurve& curve, int g,
                   double phi_shift, const RecursionOptions& opt) {
    if (g < 2) throw std::invalid_argument("free energies are implemented for g >= 2");
    if (!table.has(g, 1)) throw std::invalid_argument("omega_{g,1} missing from the table");
    const Correlator& w1 = table.at(g, 1);
    const int order = opt.series_order;
    auto locals = prepare_locals(curve, table.bp, order);
    double acc = 0;
    for (int ai = 0; ai < static_cast<int>(locals.size()); ++ai) {
        const BPLocal& L = locals[static_cast<size_t>(ai)];
        LSeries Phi = (L.Y * L.Xp).antiderivative() + LSeries::constant(phi_shift, order);
        LSeries w1_local = LSeries::zero();
        for (auto& [legs, v] : w1.coef) {
            LSeries s = xi_local(locals, table.bp, ai, legs[0].first, legs[0].second, false, order);
            w1_local = w1_local.is_zero() ? s.scaled(v) : w1_local + s.scaled(v);
        }
        if (w1_local.is_zero()) continue;
        acc += (Phi * w1_local).residue();
    }
    return acc / (2.0 - 2.0 * g);
}

}  // namespace hhw::toprec
