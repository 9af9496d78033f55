#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hhw/chain_model.hpp"

namespace hhw::oracle {

// Finite-N quadrature setup. The chain integral has n-1 matrices for n
// branch points (the last branch point's external field is promoted to a
// dynamical matrix with potential U); size is the matrix dimension gamma3*N.
struct QuadratureConfig {
    int size = 1;  // 1 (scalar) or 2 (determinantal eigenvalue form)
    int n_points = 5;
    double phi_min = -44.0;  // log-variable integration window
    double phi_max = 9.0;
    double abs_tol = 1e-10;
    int min_level = 7;   // grids have 2^level + 1 nodes
    int max_level = 11;

    int chain_len() const { return n_points - 1; }
};

struct QuadResult {
    double value = 0;
    double err_est = 0;
};

// Observable that factorizes over the chain positions (everything the loop
// identities need does, since scalars commute).
struct ProductObservable {
    std::vector<std::function<double(double)>> factors;  // empty slot = 1
    std::string desc = "1";

    static ProductObservable one(int len) { return {std::vector<std::function<double(double)>>(len), "1"}; }
    ProductObservable& mul(int pos, std::function<double(double)> f, const std::string& name);
};

// Tensor-grid evaluator for the convergent-sign chain weight
//   exp(N tr[V(M1) - M1 M2^-1 - gamma2 log M2 - M2 M3^-1 - ... + U(M_L)])
// integrated over (0,inf)^L in logarithmic variables, contracted link by
// link. Step halving provides the error estimate. Size 2 reduces to 2x2
// determinants of the same one-eigenvalue chain integrals.
class ChainIntegrator {
public:
    ChainIntegrator(const ChainModel& model, const QuadratureConfig& cfg);

    double bigN() const { return bigN_; }

    // raw integral of the weight times the observable
    QuadResult integrate(const ProductObservable& obs) const;
    // <obs> = integrate(obs)/integrate(1)
    QuadResult expectation(const ProductObservable& obs) const;
    // (1/N)<tr f(M1)>, sizes 1 and 2
    QuadResult trace_moment_m1(const std::function<double(double)>& f) const;

    const ChainModel& model() const { return model_; }
    const QuadratureConfig& config() const { return cfg_; }

private:
    struct GridEval;
    double contract(int level, const ProductObservable& obs, int row_sel_a, int row_sel_b) const;
    double det_ratio(int level, const std::function<double(double)>& f) const;

    ChainModel model_;
    QuadratureConfig cfg_;
    double bigN_;
};

// Independent fixed-grid route (composite Gauss-Legendre panels in the
// original variables); used to cross-check the primary evaluator.
double expectation_fixed_grid(const ChainModel& model, const QuadratureConfig& cfg,
                              const ProductObservable& obs);

// One-dimensional step-halved trapezoid quadrature in the log variable;
// integrand receives m = exp(phi).
QuadResult phi_quadrature(const std::function<double(double)>& integrand_of_m, double phi_min,
                          double phi_max, double abs_tol = 1e-12, int min_level = 6,
                          int max_level = 14);

enum class Insertion { One, M2, M3, M4, M3Sq, Kernel, KernelM3, KernelM2 };

const char* insertion_name(Insertion ins);
bool insertion_valid(int eqn, Insertion ins);
std::vector<Insertion> insertions_for(int eqn);

// Residual of one exact finite-N loop identity of the convergent chain, in
// the normalization where every bracket carries 1/N and the connected
// two-resolvent term carries 1/N^2. The identities match the four loop
// equations of the four-matrix chain up to the recorded observable mapping
// (decaying interaction signs; the last matrix enters through its inverse;
// finite-size measure terms kept).
struct LoopResidual {
    int eqn = 1;  // 1..4
    Insertion insertion = Insertion::One;
    double x = 0;
    double z = 0;                // kernel parameter (used by Kernel* insertions)
    double residual = 0;
    double err_est = 0;
    double scale = 0;            // largest |term|, for relative assessment
    std::string convention;
};

LoopResidual loop_residual(int eqn, Insertion ins, double x, const ChainIntegrator& chain,
                           double z = -2.0);

std::vector<LoopResidual> all_loop_residuals(const ChainIntegrator& chain,
                                             const std::vector<double>& xs, double z = -2.0);

// ---- integrand-level identity checks (external-field chain, scalar) -------

// Scalar density of the n-point external-field chain in the eigenvalue
// coordinates, with the unbalanced-weight factor (x_w/x_{w+1})^{(g2-g3)N}
// attached to link w. Variables xs[0..n-3] are x_2..x_{n-1}.
struct ExternalChain {
    int n = 5;
    int weight_link = 2;               // position w of the weight factor
    std::vector<double> t;             // t_1..t_m couplings of the first matrix
    double gamma2 = 2, gamma3 = 1, bigN = 1;
    double lambda_sq = 1;              // |Lambda|^2 (scalar external field)

    // log-density in model form "scaled" (the external field only multiplies
    // the last matrix) or "unscaled" (the external field sits inside the
    // first-matrix couplings and the last term is -x_{n-1})
    double log_density(const std::vector<double>& xs, bool scaled) const;
};

struct IdentityCheck {
    int points = 0;
    double max_abs_log_err = 0;  // |log ratio|, i.e. relative error of the ratio
    bool pass = false;
    std::string what;
};

// braid generator at index i (3 <= i <= n-2): x_i -> x_{i-1} x_i^-1 x_{i+1}
// with the weight position relabelled from link i to link i-1 when the
// generator touches the weighted link; strict invariance otherwise.
IdentityCheck braid_identity_check(const ExternalChain& chain, int index, int npoints,
                                   unsigned seed, double tol = 1e-12);

// the unweighted-form defect of the generator at the weighted link, checked
// against its closed form (x_i^2/(x_{i-1} x_{i+1}))^{(g2-g3)N}
IdentityCheck braid_defect_check(const ExternalChain& chain, int npoints, unsigned seed,
                                 double tol = 1e-12);

// the substitution x -> x |Lambda|^-2 maps the unscaled density to the
// scaled one up to an x-independent factor
IdentityCheck scaling_identity_check(const ExternalChain& chain, int npoints, unsigned seed,
                                     double tol = 1e-12);

}  // namespace hhw::oracle
