#include "hhw/chain_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hhw {

LaurentPoly LaurentPoly::from_terms(std::initializer_list<std::pair<int, Rat>> ts) {
    LaurentPoly p;
    for (auto& [k, v] : ts) p.set(k, v);
    return p;
}

void LaurentPoly::set(int power, const Rat& v) {
    if (v == 0) c.erase(power);
    else {
        Rat vv = v;
        vv.canonicalize();
        c[power] = vv;
    }
}

Rat LaurentPoly::coeff(int power) const {
    auto it = c.find(power);
    return it == c.end() ? Rat(0) : it->second;
}

int LaurentPoly::max_pow() const { return c.empty() ? 0 : c.rbegin()->first; }
int LaurentPoly::min_pow() const { return c.empty() ? 0 : c.begin()->first; }

LaurentPoly LaurentPoly::derivative() const {
    LaurentPoly d;
    for (auto& [k, v] : c)
        if (k != 0) d.set(k - 1, Rat(k) * v);
    return d;
}

MPoly LaurentPoly::to_mpoly(int var) const {
    MPoly p;
    for (auto& [k, v] : c) {
        if (k == 0) p.add_term({}, v);
        else p.add_term({{var, k}}, v);
    }
    return p;
}

double LaurentPoly::eval(double v) const {
    double acc = 0;
    for (auto& [k, co] : c) acc += co.get_d() * std::pow(v, k);
    return acc;
}

std::string LaurentPoly::to_string(const std::string& var) const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(it->second);
        if (it->first != 0) os << "*" << var << "^" << it->first;
    }
    return os.str();
}

ChainModel::ChainModel(LaurentPoly V_, LaurentPoly U_, Rat g2, Rat g3)
    : V(std::move(V_)), U(std::move(U_)), gamma2(std::move(g2)), gamma3(std::move(g3)) {
    gamma2.canonicalize();
    gamma3.canonicalize();
    if (V.max_pow() < 1 || U.max_pow() < 1)
        throw std::invalid_argument("ChainModel: potentials need positive polynomial degree");
    if (gamma2 == gamma3)
        throw std::invalid_argument(
            "ChainModel: gamma2 == gamma3 is the hard-wall regime and is not supported");
    if (gamma2 < gamma3) throw std::invalid_argument("ChainModel: gamma2 must exceed gamma3");
    if (gamma3 <= 0) throw std::invalid_argument("ChainModel: gamma3 must be positive");
}

void ChainModel::validate_decay() const {
    auto check = [](const LaurentPoly& p, const char* which) {
        if (p.max_pow() < 2 || p.coeff(p.max_pow()) >= 0) {
            std::ostringstream os;
            os << which << ": leading coupling must be negative of degree >= 2 "
               << "so the weight decays on the positive axis";
            throw std::invalid_argument(os.str());
        }
        for (auto& [k, v] : p.c)
            if (k < 0 && v > 0)
                throw std::invalid_argument(
                    std::string(which) + ": positive coefficient on a negative power diverges at 0");
    };
    check(V, "V");
    check(U, "U");
}

}  // namespace hhw
