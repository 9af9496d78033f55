#pragma once

#include <map>
#include <string>

#include "hhw/mpoly.hpp"
#include "hhw/rational.hpp"

namespace hhw {

// Laurent polynomial in one variable with exact rational coefficients.
struct LaurentPoly {
    std::map<int, Rat> c;  // power -> coefficient, zeros not stored

    static LaurentPoly from_terms(std::initializer_list<std::pair<int, Rat>> ts);
    void set(int power, const Rat& v);
    Rat coeff(int power) const;
    int max_pow() const;  // 0 when empty
    int min_pow() const;
    bool empty() const { return c.empty(); }

    LaurentPoly derivative() const;
    MPoly to_mpoly(int var) const;
    double eval(double v) const;
    std::string to_string(const std::string& var) const;
};

// Matrix-chain data: potentials for the end matrices, the two weight
// parameters, and (optionally) a numeric N. gamma2 == gamma3 is the
// hard-wall regime and is rejected.
struct ChainModel {
    LaurentPoly V, U;
    Rat gamma2, gamma3;

    ChainModel(LaurentPoly V_, LaurentPoly U_, Rat g2, Rat g3);

    Rat gamma_diff() const { return gamma2 - gamma3; }
    int degV() const { return V.max_pow(); }
    int degU() const { return U.max_pow(); }

    // decay of exp(tr V) etc. on the positive axis: negative top couplings,
    // and negative coefficients on any negative powers
    void validate_decay() const;
};

}  // namespace hhw
