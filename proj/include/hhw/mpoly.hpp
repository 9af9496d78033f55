#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hhw/rational.hpp"

namespace hhw {

// Reserved variable ids for the loop-equation ring; named unknowns are
// interned starting at FIRST_SYMBOL_ID.
constexpr int VAR_X = 0;      // resolvent argument
constexpr int VAR_Z = 1;      // auxiliary spectral parameter
constexpr int VAR_OMEGA = 2;  // planar one-loop mean of the first matrix
constexpr int VAR_Y = 3;      // y = omega + V'(x)
constexpr int FIRST_SYMBOL_ID = 10;

// Registry of named unknowns. Each symbol records the bracket that defines
// it, so emitted curves can say where every free coefficient came from.
class SymbolTable {
public:
    static SymbolTable& global();
    int intern(const std::string& name, const std::string& provenance = "");
    const std::string& name(int id) const;
    const std::string& provenance(int id) const;
    bool known(const std::string& name) const;
    int id(const std::string& name) const;

private:
    std::vector<std::string> names_, provenance_;
    std::map<std::string, int> index_;
};

std::string var_name(int id);

// Sparse Laurent polynomial in the variables above over exact rationals.
class MPoly {
public:
    // exponent list sorted by variable id, exponents nonzero (may be negative)
    using Term = std::vector<std::pair<int, int>>;

    MPoly() = default;
    static MPoly constant(const Rat& c);
    static MPoly var(int id, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Term, Rat>& terms() const { return terms_; }

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o);
    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

    MPoly pow(int k) const;  // k >= 0

    void add_term(const Term& t, const Rat& c);

    int degree(int var) const;      // max exponent (0 for absent variable)
    int low_degree(int var) const;  // min exponent
    bool depends_on(int var) const;

    // coefficient of var^k, as a polynomial in the remaining variables
    MPoly coeff_of(int var, int k) const;

    // substitute var -> value; var must appear with nonnegative exponents
    MPoly subst(int var, const MPoly& value) const;

    // substitute a subset of variables by rational values
    MPoly eval_partial(const std::map<int, Rat>& vals) const;
    Rat eval(const std::map<int, Rat>& vals) const;  // throws if vars remain

    // exact division; returns false (quotient unspecified) when not divisible
    bool divide_exact(const MPoly& divisor, MPoly& quotient) const;

    std::vector<int> variables() const;
    std::string to_string() const;

private:
    std::map<Term, Rat> terms_;
};

inline MPoly operator*(const Rat& c, const MPoly& p) { return MPoly::constant(c) * p; }

// Quotient of two MPoly with explicit cancellation of caller-provided
// factors; denominators stay as products the caller can interpret.
struct RationalExpr {
    MPoly num;
    MPoly den = MPoly::constant(1);

    static RationalExpr of(const MPoly& p) { return {p, MPoly::constant(1)}; }
    RationalExpr operator+(const RationalExpr& o) const;
    RationalExpr operator-(const RationalExpr& o) const;
    RationalExpr operator*(const RationalExpr& o) const;
    RationalExpr subst(int var, const MPoly& value) const;
    bool is_zero() const { return num.is_zero(); }
    bool equals(const RationalExpr& o) const;  // cross-multiplied comparison

    // divide num and den by every factor that divides both, as often as possible
    void cancel(const std::vector<MPoly>& factors);
};

}  // namespace hhw
