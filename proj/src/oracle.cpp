#include "hhw/oracle.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace hhw::oracle {

ProductObservable& ProductObservable::mul(int pos, std::function<double(double)> f,
                                          const std::string& name) {
    if (pos < 0 || pos >= static_cast<int>(factors.size()))
        throw std::out_of_range("ProductObservable: slot out of range");
    if (factors[pos]) {
        auto g = factors[pos];
        factors[pos] = [g, f](double m) { return g(m) * f(m); };
    } else {
        factors[pos] = std::move(f);
    }
    desc = (desc == "1") ? name : desc + "*" + name;
    return *this;
}

namespace {

struct Grid {
    std::vector<double> phi, m;
    double h;
};

Grid make_grid(double lo, double hi, int level) {
    Grid g;
    int npts = (1 << level) + 1;
    g.h = (hi - lo) / (npts - 1);
    g.phi.resize(npts);
    g.m.resize(npts);
    for (int i = 0; i < npts; ++i) {
        g.phi[i] = lo + g.h * i;
        g.m[i] = std::exp(g.phi[i]);
    }
    return g;
}

// link matrices exp(-N m_i/m_j) shared by every observable at one level
struct LinkCache {
    std::map<long, std::vector<std::vector<double>>> by_key;
};

thread_local LinkCache g_links;

}  // namespace

struct ChainIntegrator::GridEval {};

ChainIntegrator::ChainIntegrator(const ChainModel& model, const QuadratureConfig& cfg)
    : model_(model), cfg_(cfg) {
    if (cfg.size != 1 && cfg.size != 2)
        throw std::invalid_argument("QuadratureConfig: size must be 1 or 2");
    if (cfg.n_points != 5)
        throw std::invalid_argument("loop-equation chain is set up for five branch points");
    model_.validate_decay();
    bigN_ = cfg.size / model_.gamma3.get_d();
    // the chain kernel regularizes the origin only while gamma2*N < size+1;
    // at the boundary the integral is log-divergent
    if (model_.gamma2.get_d() * bigN_ >= cfg.size + 1)
        throw std::invalid_argument(
            "chain integral diverges at the origin: need gamma2*N < size + 1 "
            "(equivalently gamma2/gamma3 < (size+1)/size)");
}

double ChainIntegrator::contract(int level, const ProductObservable& obs, int row_a,
                                 int row_b) const {
    const int L = cfg_.chain_len();
    Grid grid = make_grid(cfg_.phi_min, cfg_.phi_max, level);
    const int n = static_cast<int>(grid.m.size());
    const double N = bigN_;
    const double g2N = model_.gamma2.get_d() * N;
    const int size = cfg_.size;

    long key = level;
    key = key * 1009 + static_cast<long>(N * 64);
    key = key * 1009 + static_cast<long>(cfg_.phi_min * 64);
    key = key * 1009 + static_cast<long>(cfg_.phi_max * 64);
    auto& links = g_links.by_key[key];
    if (links.empty()) {
        links.assign(L - 1, std::vector<double>(static_cast<size_t>(n) * n));
        for (int k = 0; k < L - 1; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    links[k][static_cast<size_t>(i) * n + j] =
                        std::exp(-N * grid.m[i] / grid.m[j]);
    }

    // per-slot weights in the log variables (measure factor m included)
    auto slot_weight = [&](int k, double m) {
        double lw;
        if (k == 0) lw = N * model_.V.eval(m) + std::log(m) * (1 + row_a);
        else if (k == L - 1) lw = N * model_.U.eval(m) + std::log(m) * (size + row_b);
        else if (k == 1) lw = (size - g2N) * std::log(m);
        else lw = size * std::log(m);
        return std::exp(lw);
    };

    std::vector<double> v(n);
    for (int k = L - 1; k >= 0; --k) {
        std::vector<double> w(n);
        for (int i = 0; i < n; ++i) {
            double ww = slot_weight(k, grid.m[i]) * grid.h;
            if (i == 0 || i == n - 1) ww *= 0.5;
            if (k < static_cast<int>(obs.factors.size()) && obs.factors[k])
                ww *= obs.factors[k](grid.m[i]);
            w[i] = ww;
        }
        if (k == L - 1) {
            v = std::move(w);
        } else {
            std::vector<double> u(n, 0.0);
            const auto& Lk = links[k];
            for (int i = 0; i < n; ++i) {
                double acc = 0;
                const double* row = &Lk[static_cast<size_t>(i) * n];
                for (int j = 0; j < n; ++j) acc += row[j] * v[j];
                u[i] = w[i] * acc;
            }
            v = std::move(u);
        }
    }
    double total = 0;
    for (double x : v) total += x;
    return total;
}

QuadResult ChainIntegrator::integrate(const ProductObservable& obs) const {
    if (cfg_.size != 1)
        throw std::invalid_argument("raw integrals are the scalar-case path; use trace_moment_m1");
    double prev = 0, cur = 0, err = 0;
    for (int level = cfg_.min_level; level <= cfg_.max_level; ++level) {
        cur = contract(level, obs, 0, 0);
        if (level > cfg_.min_level) {
            err = std::abs(cur - prev);
            if (err <= cfg_.abs_tol + 1e-13 * std::abs(cur)) return {cur, err};
        }
        prev = cur;
    }
    return {cur, err};
}

QuadResult ChainIntegrator::expectation(const ProductObservable& obs) const {
    bool empty = true;
    for (auto& f : obs.factors)
        if (f) empty = false;
    if (empty) return {1.0, 0.0};
    if (cfg_.size != 1)
        throw std::invalid_argument(
            "size-2 expectations support single-trace observables of the first matrix only");
    QuadResult num = integrate(obs);
    QuadResult den = integrate(ProductObservable::one(cfg_.chain_len()));
    if (den.value == 0) throw std::runtime_error("chain integral vanished; bad configuration");
    double val = num.value / den.value;
    double err = (num.err_est + std::abs(val) * den.err_est) / std::abs(den.value);
    return {val, err};
}

double ChainIntegrator::det_ratio(int level, const std::function<double(double)>& f) const {
    // 2x2 determinants of one-eigenvalue chain integrals; the observable row
    // replacement realizes the trace insertion
    auto phi = [&](int a, int b, bool with_f) {
        ProductObservable obs = ProductObservable::one(cfg_.chain_len());
        if (with_f) obs.mul(0, f, "f");
        return contract(level, obs, a, b);
    };
    double G[2][2], Gf[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            G[a][b] = phi(a, b, false);
            Gf[a][b] = phi(a, b, true);
        }
    double detG = G[0][0] * G[1][1] - G[0][1] * G[1][0];
    if (detG == 0) throw std::runtime_error("degenerate size-2 chain determinant");
    double sum = (Gf[0][0] * G[1][1] - Gf[0][1] * G[1][0]) +
                 (G[0][0] * Gf[1][1] - G[0][1] * Gf[1][0]);
    return sum / detG;
}

QuadResult ChainIntegrator::trace_moment_m1(const std::function<double(double)>& f) const {
    if (cfg_.size == 1) {
        ProductObservable obs = ProductObservable::one(cfg_.chain_len());
        obs.mul(0, f, "f(M1)");
        QuadResult e = expectation(obs);
        return {e.value / bigN_, e.err_est / bigN_};
    }
    double prev = 0, cur = 0, err = 0;
    for (int level = cfg_.min_level; level <= cfg_.max_level; ++level) {
        cur = det_ratio(level, f) / bigN_;
        if (level > cfg_.min_level) {
            err = std::abs(cur - prev);
            if (err <= cfg_.abs_tol + 1e-13 * std::abs(cur)) return {cur, err};
        }
        prev = cur;
    }
    return {cur, err};
}

double expectation_fixed_grid(const ChainModel& model, const QuadratureConfig& cfg,
                              const ProductObservable& obs) {
    if (cfg.size != 1) throw std::invalid_argument("fixed-grid route is scalar-case only");
    const int L = cfg.chain_len();
    const double N = 1.0 / model.gamma3.get_d();
    const double g2N = model.gamma2.get_d() * N;

    // composite Gauss-Legendre panels in the original variables
    static const double gl_x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                   0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                   0.9445750230732326, 0.9894009349916499};
    static const double gl_w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                   0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                   0.0622535239386479, 0.0271524594117541};
    std::vector<double> edges;
    for (double e = std::pow(2.0, -40); e < 1.0; e *= 2) edges.push_back(e);
    for (double e = 1.0; e <= 30.0; e += 1.0) edges.push_back(e);
    for (double e = 32.0; e <= 170.0; e += 2.0) edges.push_back(e);
    std::vector<double> nodes, weights;
    double prev_e = 0;
    for (double e : edges) {
        double c = 0.5 * (prev_e + e), half = 0.5 * (e - prev_e);
        for (int i = 0; i < 8; ++i) {
            nodes.push_back(c - half * gl_x[i]);
            weights.push_back(half * gl_w[i]);
            nodes.push_back(c + half * gl_x[i]);
            weights.push_back(half * gl_w[i]);
        }
        prev_e = e;
    }
    const int n = static_cast<int>(nodes.size());

    auto slot_weight = [&](int k, double m) {
        if (k == 0) return std::exp(N * model.V.eval(m));
        if (k == L - 1) return std::exp(N * model.U.eval(m));
        if (k == 1) return std::pow(m, -g2N);
        return 1.0;
    };
    auto run = [&](const ProductObservable& o) {
        std::vector<double> v(n);
        for (int k = L - 1; k >= 0; --k) {
            std::vector<double> w(n);
            for (int i = 0; i < n; ++i) {
                double ww = slot_weight(k, nodes[i]) * weights[i];
                if (k < static_cast<int>(o.factors.size()) && o.factors[k])
                    ww *= o.factors[k](nodes[i]);
                w[i] = ww;
            }
            if (k == L - 1) {
                v = std::move(w);
            } else {
                std::vector<double> u(n, 0.0);
                for (int i = 0; i < n; ++i) {
                    double acc = 0;
                    for (int j = 0; j < n; ++j) acc += std::exp(-N * nodes[i] / nodes[j]) * v[j];
                    u[i] = w[i] * acc;
                }
                v = std::move(u);
            }
        }
        double total = 0;
        for (double x : v) total += x;
        return total;
    };
    return run(obs) / run(ProductObservable::one(L));
}

QuadResult phi_quadrature(const std::function<double(double)>& integrand_of_m, double phi_min,
                          double phi_max, double abs_tol, int min_level, int max_level) {
    double prev = 0, cur = 0, err = 0;
    for (int level = min_level; level <= max_level; ++level) {
        Grid g = make_grid(phi_min, phi_max, level);
        double acc = 0;
        for (size_t i = 0; i < g.m.size(); ++i) {
            double w = (i == 0 || i + 1 == g.m.size()) ? 0.5 * g.h : g.h;
            acc += w * integrand_of_m(g.m[i]);
        }
        cur = acc;
        if (level > min_level) {
            err = std::abs(cur - prev);
            if (err <= abs_tol + 1e-14 * std::abs(cur)) return {cur, err};
        }
        prev = cur;
    }
    return {cur, err};
}

const char* insertion_name(Insertion ins) {
    switch (ins) {
        case Insertion::One: return "1";
        case Insertion::M2: return "M2";
        case Insertion::M3: return "M3";
        case Insertion::M4: return "M4";
        case Insertion::M3Sq: return "M3^2";
        case Insertion::Kernel: return "K(z)";
        case Insertion::KernelM3: return "K(z)*M3";
        case Insertion::KernelM2: return "K(z)*M2";
    }
    return "?";
}

std::vector<Insertion> insertions_for(int eqn) {
    switch (eqn) {
        case 1:
            return {Insertion::One, Insertion::Kernel, Insertion::KernelM3, Insertion::KernelM2};
        case 2: return {Insertion::One, Insertion::M3, Insertion::Kernel, Insertion::KernelM3};
        case 3: return {Insertion::One, Insertion::M2, Insertion::M4, Insertion::Kernel};
        case 4: return {Insertion::One, Insertion::M2, Insertion::M3, Insertion::M3Sq};
        default: throw std::invalid_argument("equation index must be 1..4");
    }
}

bool insertion_valid(int eqn, Insertion ins) {
    for (Insertion i : insertions_for(eqn))
        if (i == ins) return true;
    return false;
}

namespace {

// factors of the insertion on chain slots (0 = M1, ..., 3 = M4)
void apply_insertion(ProductObservable& obs, Insertion ins, const ChainModel& model, double z) {
    LaurentPoly up = model.U.derivative();
    auto kernel = [up, z](double m) { return (up.eval(m) - up.eval(z)) / (m - z); };
    switch (ins) {
        case Insertion::One: break;
        case Insertion::M2: obs.mul(1, [](double m) { return m; }, "M2"); break;
        case Insertion::M3: obs.mul(2, [](double m) { return m; }, "M3"); break;
        case Insertion::M4: obs.mul(3, [](double m) { return m; }, "M4"); break;
        case Insertion::M3Sq: obs.mul(2, [](double m) { return m * m; }, "M3^2"); break;
        case Insertion::Kernel: obs.mul(3, kernel, "K"); break;
        case Insertion::KernelM3:
            obs.mul(3, kernel, "K");
            obs.mul(2, [](double m) { return m; }, "M3");
            break;
        case Insertion::KernelM2:
            obs.mul(3, kernel, "K");
            obs.mul(1, [](double m) { return m; }, "M2");
            break;
    }
}

constexpr const char* kConvention =
    "decaying interaction signs (-tr Mk Mk+1^-1); brackets normalized by 1/N; the second loop "
    "identity is literal; the first is checked in its M1-weighted form (variation M1*G*xi, "
    "kernel built from t V'(t), M2^-1 entering as M1 M2^-1) so the positivity wall adds no "
    "boundary term; the third and fourth read the last matrix through its inverse and keep the "
    "finite-size measure terms";

}  // namespace

LoopResidual loop_residual(int eqn, Insertion ins, double x, const ChainIntegrator& chain,
                           double z) {
    if (!insertion_valid(eqn, ins))
        throw std::invalid_argument(std::string("insertion ") + insertion_name(ins) +
                                    " touches the matrix varied by equation " +
                                    std::to_string(eqn));
    if (chain.config().size != 1)
        throw std::invalid_argument(
            "loop residuals are implemented for the scalar case (gamma3*N = 1); size-2 mixed "
            "brackets would need angular-integral correlators");
    if (x > 0) throw std::invalid_argument("x must stay off the positive support");
    const ChainModel& model = chain.model();
    const int L = chain.config().chain_len();
    const double N = chain.bigN();
    const double g2 = model.gamma2.get_d(), g3 = model.gamma3.get_d();
    LaurentPoly vp = model.V.derivative();
    LaurentPoly up = model.U.derivative();

    auto base = [&](auto mulf) {
        ProductObservable obs = ProductObservable::one(L);
        apply_insertion(obs, ins, model, z);
        mulf(obs);
        return obs;
    };
    auto g = [x](double m) { return 1.0 / (x - m); };
    auto E = [&](const ProductObservable& o) { return chain.expectation(o); };

    double resid = 0, err = 0, scale = 0;
    auto add = [&](double v, double e) {
        resid += v;
        err += std::abs(e);
        scale = std::max(scale, std::abs(v));
    };

    switch (eqn) {
        case 1: {
            // the variation carries an extra M1 so the positivity wall at the
            // origin contributes no boundary term; the kernel then uses the
            // weighted potential tV'(t), and the mixed bracket M1 M2^-1 stays
            // integrable (a bare M2^-1 insertion diverges at this size)
            auto vtilde = [&vp](double t) { return t * vp.eval(t); };
            auto Eg = E(base([&](ProductObservable& o) { o.mul(0, g, "G"); }));
            auto Egg = E(base([&](ProductObservable& o) {
                o.mul(0, [g](double m) { return g(m) * g(m); }, "G^2");
            }));
            ProductObservable og = ProductObservable::one(L);
            og.mul(0, g, "G");
            auto Eg_plain = E(og);
            auto Ekern = E(base([&](ProductObservable& o) {
                o.mul(0, [vtilde, x](double m) { return (vtilde(m) - vtilde(x)) / (x - m); },
                      "KVt");
            }));
            auto Em2 = E(base([&](ProductObservable& o) {
                o.mul(0, [g](double m) { return m * g(m); }, "M1*G");
                o.mul(1, [](double m) { return 1.0 / m; }, "M2^-1");
            }));
            double W = Eg_plain.value / N;
            add(x * (Egg.value - Eg_plain.value * Eg.value) / (N * N),
                std::abs(x) *
                    (Egg.err_est + std::abs(Eg.value) * Eg_plain.err_est +
                     std::abs(Eg_plain.value) * Eg.err_est) /
                    (N * N));
            add((x * W + vtilde(x)) * Eg.value / N,
                (std::abs(x * W + vtilde(x)) * Eg.err_est +
                 std::abs(x * Eg.value) * Eg_plain.err_est / N) /
                    N);
            add(Ekern.value / N, Ekern.err_est / N);
            add(-Em2.value / N, Em2.err_est / N);
            break;
        }
        case 2: {
            auto E1 = E(base([&](ProductObservable& o) {
                o.mul(0, [g](double m) { return m * g(m); }, "M1*G");
                o.mul(1, [](double m) { return 1.0 / m; }, "M2^-1");
            }));
            auto E2 = E(base([&](ProductObservable& o) {
                o.mul(0, g, "G");
                o.mul(1, [](double m) { return m; }, "M2");
                o.mul(2, [](double m) { return 1.0 / m; }, "M3^-1");
            }));
            auto E3 = E(base([&](ProductObservable& o) { o.mul(0, g, "G"); }));
            add(-E1.value / N, E1.err_est / N);
            add(E2.value / N, E2.err_est / N);
            add((g2 - g3) * E3.value / N, std::abs(g2 - g3) * E3.err_est / N);
            break;
        }
        case 3: {
            auto E1 = E(base([&](ProductObservable& o) {
                o.mul(0, g, "G");
                o.mul(1, [](double m) { return m; }, "M2");
                o.mul(2, [](double m) { return 1.0 / m; }, "M3^-1");
            }));
            auto E2 = E(base([&](ProductObservable& o) { o.mul(0, g, "G"); }));
            auto E3 = E(base([&](ProductObservable& o) {
                o.mul(0, g, "G");
                o.mul(2, [](double m) { return m; }, "M3");
                o.mul(3, [](double m) { return 1.0 / m; }, "M4^-1");
            }));
            add(E1.value / N, E1.err_est / N);
            add(g3 * E2.value / N, g3 * E2.err_est / N);
            add(-E3.value / N, E3.err_est / N);
            break;
        }
        case 4: {
            auto E1 = E(base([&](ProductObservable& o) {
                o.mul(0, g, "G");
                o.mul(2, [](double m) { return m; }, "M3");
                o.mul(3, [](double m) { return 1.0 / (m * m); }, "M4^-2");
            }));
            auto E2 = E(base([&](ProductObservable& o) {
                o.mul(0, g, "G");
                o.mul(3, [&up](double m) { return up.eval(m); }, "U'(M4)");
            }));
            add(E1.value / N, E1.err_est / N);
            add(E2.value / N, E2.err_est / N);
            break;
        }
        default: throw std::invalid_argument("equation index must be 1..4");
    }

    LoopResidual out;
    out.eqn = eqn;
    out.insertion = ins;
    out.x = x;
    out.z = z;
    out.residual = resid;
    out.err_est = err;
    out.scale = scale;
    out.convention = kConvention;
    return out;
}

std::vector<LoopResidual> all_loop_residuals(const ChainIntegrator& chain,
                                             const std::vector<double>& xs, double z) {
    std::vector<LoopResidual> out;
    for (double x : xs)
        for (int eqn = 1; eqn <= 4; ++eqn)
            for (Insertion ins : insertions_for(eqn))
                out.push_back(loop_residual(eqn, ins, x, chain, z));
    return out;
}

// ---- integrand-level identity checks ---------------------------------------

double ExternalChain::log_density(const std::vector<double>& xs, bool scaled) const {
    const int nv = n - 2;
    if (static_cast<int>(xs.size()) != nv)
        throw std::invalid_argument("ExternalChain: expected n-2 variables");
    auto X = [&](int idx) { return xs[idx - 2]; };  // branch index 2..n-1
    double ld = 0;
    for (int k = 3; k <= n - 1; ++k) ld -= std::log(X(k));
    ld += (gamma2 - gamma3) * bigN * (std::log(X(weight_link)) - std::log(X(weight_link + 1)));
    double t_arg = scaled ? X(2) : X(2) * lambda_sq;
    double tpot = 0, p = 1;
    for (size_t r = 1; r <= t.size(); ++r) {
        p *= t_arg;
        tpot += t[r - 1] * p / static_cast<double>(r);
    }
    ld += bigN * tpot;
    for (int k = 2; k <= n - 2; ++k) ld -= bigN * X(k) / X(k + 1);
    ld -= bigN * (scaled ? X(n - 1) / lambda_sq : X(n - 1));
    return ld;
}

namespace {

std::vector<double> braid_image(const std::vector<double>& xs, int i) {
    std::vector<double> out = xs;
    out[i - 2] = xs[i - 3] * xs[i - 1] / xs[i - 2];
    return out;
}

std::vector<double> random_point(std::mt19937_64& rng, int nv) {
    std::uniform_real_distribution<double> dist(0.3, 2.5);
    std::vector<double> xs(nv);
    for (double& v : xs) v = dist(rng);
    return xs;
}

}  // namespace

IdentityCheck braid_identity_check(const ExternalChain& chain, int index, int npoints,
                                   unsigned seed, double tol) {
    if (index < 3 || index > chain.n - 2)
        throw std::invalid_argument("braid generator index must lie in [3, n-2]");
    ExternalChain relabelled = chain;
    if (chain.weight_link == index - 1) relabelled.weight_link = index;
    else if (chain.weight_link == index) relabelled.weight_link = index - 1;
    std::mt19937_64 rng(seed);
    IdentityCheck res;
    res.points = npoints;
    for (int p = 0; p < npoints; ++p) {
        auto xs = random_point(rng, chain.n - 2);
        auto ys = braid_image(xs, index);
        double logJ = std::log(xs[index - 3] * xs[index - 1]) - 2 * std::log(xs[index - 2]);
        double lhs = relabelled.log_density(ys, true) + logJ;
        double rhs = chain.log_density(xs, true);
        res.max_abs_log_err = std::max(res.max_abs_log_err, std::abs(lhs - rhs));
    }
    res.pass = res.max_abs_log_err <= tol;
    res.what = "braid generator " + std::to_string(index) +
               (relabelled.weight_link != chain.weight_link ? " (weight link relabelled)" : "");
    return res;
}

IdentityCheck braid_defect_check(const ExternalChain& chain, int npoints, unsigned seed,
                                 double tol) {
    const int i = chain.weight_link + 1;  // generator touching the weighted link
    if (i < 3 || i > chain.n - 2)
        throw std::invalid_argument("weighted link is not touched by an interior generator");
    std::mt19937_64 rng(seed);
    IdentityCheck res;
    res.points = npoints;
    double gN = (chain.gamma2 - chain.gamma3) * chain.bigN;
    for (int p = 0; p < npoints; ++p) {
        auto xs = random_point(rng, chain.n - 2);
        auto ys = braid_image(xs, i);
        double logJ = std::log(xs[i - 3] * xs[i - 1]) - 2 * std::log(xs[i - 2]);
        double defect = chain.log_density(ys, true) + logJ - chain.log_density(xs, true);
        double closed = gN * (2 * std::log(xs[i - 2]) - std::log(xs[i - 3]) - std::log(xs[i - 1]));
        res.max_abs_log_err = std::max(res.max_abs_log_err, std::abs(defect - closed));
    }
    res.pass = res.max_abs_log_err <= tol;
    res.what = "braid defect at the weighted link matches its closed form";
    return res;
}

IdentityCheck scaling_identity_check(const ExternalChain& chain, int npoints, unsigned seed,
                                     double tol) {
    std::mt19937_64 rng(seed);
    IdentityCheck res;
    res.points = npoints;
    const int nv = chain.n - 2;
    double ref = 0;
    bool have_ref = false;
    for (int p = 0; p < npoints; ++p) {
        auto ys = random_point(rng, nv);
        std::vector<double> xs(nv);
        for (int i = 0; i < nv; ++i) xs[i] = ys[i] / chain.lambda_sq;
        // substitution Jacobian: dx = dy / lambda_sq per variable
        double diff = chain.log_density(xs, false) - nv * std::log(chain.lambda_sq) -
                      chain.log_density(ys, true);
        if (!have_ref) {
            ref = diff;
            have_ref = true;
        }
        res.max_abs_log_err = std::max(res.max_abs_log_err, std::abs(diff - ref));
    }
    res.pass = res.max_abs_log_err <= tol;
    res.what = "rescaling by the external field maps the unscaled density to the scaled one "
               "up to a constant";
    return res;
}

}  // namespace hhw::oracle
