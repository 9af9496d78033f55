#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hhw {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(int n) {
    Int f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline Int int_pow(const Int& b, int e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

inline Rat rat_pow(const Rat& b, int e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (b == 0) throw std::domain_error("rat_pow: zero to negative power");
        return Rat(1) / rat_pow(b, -e);
    }
    Rat r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// mpq_class(num, den) does not canonicalize; this does.
inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Canonical "p/q" string; integers render without the "/1".
inline std::string rat_to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Parses "p", "p/q" or a plain decimal like "-0.5" into an exact rational.
Rat rat_from_string(const std::string& s);

}  // namespace hhw
