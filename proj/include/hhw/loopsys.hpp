#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hhw/chain_model.hpp"
#include "hhw/mpoly.hpp"

namespace hhw::loopsys {

// Named unknown moment polynomials entering the linear system. Coefficients
// are interned symbols carrying provenance (which planar bracket defines
// them). Degrees: the difference-kernel moments P, Phat, Phathat have
// bidegree (degV-2, degU-2) in (x, z); Qhat, Qhathat have degree degU-2 in z;
// the R(k,r) have degree degV-2 in x; the C_k are constants.
struct Moments {
    MPoly P, Phat, Phathat;
    MPoly Qhat, Qhathat;
    std::map<std::pair<int, int>, MPoly> R;
    std::map<int, MPoly> C;
    std::vector<int> symbol_ids;  // every unknown, in registration order
};

Moments make_moments(int degV, int degU);

struct RS {
    MPoly r, s;
};

// r(x) = x [omega + V'(x)] + (gamma2 - gamma3), s(x) = omega + V'(x).
RS build_rs(const MPoly& vprime, const MPoly& omega, const Rat& gamma_diff);
RS build_rs(const ChainModel& m, const MPoly& omega);

using Mat3 = std::array<std::array<MPoly, 3>, 3>;

// Linear system on the bracket unknowns in the order (a, d, c):
//   [ r  0  z ] (a)   ( -x P - Qhat + B )
//   [ 0  1  r ] (d) = ( -x Phat - Qhathat )
//   [ 1  s  0 ] (c)   ( -Phathat )
// where B is the leading-order bracket of the square-plus-derivative
// insertion of the third matrix, B = f2 + f1 U'(z).
struct LinearSystem {
    Mat3 M;
    std::array<MPoly, 3> rhs;
};

LinearSystem system_matrix(const RS& rs, const Moments& mom, const MPoly& bracket);

MPoly system_determinant(const Mat3& M);

// z value that degenerates the system: z = -r(x)^2 s(x).
MPoly degeneracy_locus(const RS& rs);

// left null covector (1, r s, -r) of the degenerate system
std::array<MPoly, 3> null_covector(const RS& rs);

// Re-derives the linear system from the recorded substitution table (the six
// kernel insertions into the loop identities) and compares with
// system_matrix; throws on mismatch. Returns a human-readable trace.
std::string derive_system_check(const RS& rs, const Moments& mom, const MPoly& uprime_z);

// f_{k,0} through the printed downward recursion
//   r s f_{k,0} = f_{k-1,0} + R_{k-1,1} + s (x R_{k,0} + C_k),  f_{0,0} = omega.
// Division by r s is kept as a rational expression; common factors of r and
// s are cancelled when exact.
RationalExpr f_k0(int k, const RS& rs, const Moments& mom, const MPoly& omega);

// The curve polynomial
//   -x P - Qhat + [f2 + f1 U'(z)] + r Phathat - s r [x Phat + Qhathat]
// with z -> -r^2 s everywhere. `cleared` is the numerator after multiplying
// through by the f-denominators; `clearing_factor` records that multiplier.
struct CurvePoly {
    RationalExpr raw;
    MPoly cleared;
    MPoly clearing_factor;
};

CurvePoly spectral_curve(const RS& rs, const Moments& mom, const MPoly& uprime_z,
                         const RationalExpr& f1, const RationalExpr& f2);

// convenience: builds rs/moments/f1/f2 from the model with symbolic omega
CurvePoly spectral_curve(const ChainModel& m);

// Term-by-term comparison of the printed downward recursion against the one
// re-derived by eliminating the mixed brackets from the two upward
// identities. Both sign conventions for the polynomial part (kernel written
// with V'(x)-V'(M) or V'(M)-V'(x)) are derived and reported.
struct RecCheckReport {
    bool lhs_is_rs_f_k0 = false;
    bool f_km1_coeff_is_plus_one = false;
    // signs of the s(x R_{k,0} + C_k) block and the R_{k-1,1} term:
    int printed_sxR_sign = 0, printed_sC_sign = 0, printed_R11_sign = 0;
    int derived_sxR_sign = 0, derived_sC_sign = 0, derived_R11_sign = 0;      // kernel V'(M)-V'(x)
    int derived_alt_sxR_sign = 0, derived_alt_sC_sign = 0, derived_alt_R11_sign = 0;  // V'(x)-V'(M)
    bool printed_matches_derived = false;
    std::string summary;
};

RecCheckReport rec_identities_check();

}  // namespace hhw::loopsys
