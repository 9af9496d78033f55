#include "hhw/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hhw {

SymbolTable& SymbolTable::global() {
    static SymbolTable t;
    return t;
}

int SymbolTable::intern(const std::string& name, const std::string& provenance) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    int id = FIRST_SYMBOL_ID + static_cast<int>(names_.size());
    names_.push_back(name);
    provenance_.push_back(provenance);
    index_[name] = id;
    return id;
}

const std::string& SymbolTable::name(int id) const { return names_.at(id - FIRST_SYMBOL_ID); }
const std::string& SymbolTable::provenance(int id) const {
    return provenance_.at(id - FIRST_SYMBOL_ID);
}
bool SymbolTable::known(const std::string& name) const { return index_.count(name) > 0; }
int SymbolTable::id(const std::string& name) const { return index_.at(name); }

std::string var_name(int id) {
    switch (id) {
        case VAR_X: return "x";
        case VAR_Z: return "z";
        case VAR_OMEGA: return "w1";
        case VAR_Y: return "y";
        default: return SymbolTable::global().name(id);
    }
}

MPoly MPoly::constant(const Rat& c) {
    MPoly p;
    p.add_term({}, c);
    return p;
}

MPoly MPoly::var(int id, int power) {
    MPoly p;
    if (power == 0) return constant(1);
    p.add_term({{id, power}}, 1);
    return p;
}

void MPoly::add_term(const Term& t, const Rat& c) {
    if (c == 0) return;
    Rat cc = c;
    cc.canonicalize();
    auto [it, inserted] = terms_.emplace(t, cc);
    if (!inserted) {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (auto& [t, c] : o.terms_) r.add_term(t, c);
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r = *this;
    for (auto& [t, c] : o.terms_) r.add_term(t, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r;
    for (auto& [t, c] : terms_) r.terms_.emplace(t, -c);
    return r;
}

namespace {

MPoly::Term merge_terms(const MPoly::Term& a, const MPoly::Term& b) {
    MPoly::Term out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
        else {
            int e = a[i].second + b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

int term_exp(const MPoly::Term& t, int var) {
    for (auto& [v, e] : t)
        if (v == var) return e;
    return 0;
}

}  // namespace

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r;
    for (auto& [ta, ca] : terms_)
        for (auto& [tb, cb] : o.terms_) r.add_term(merge_terms(ta, tb), ca * cb);
    return r;
}

MPoly MPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("MPoly::pow: negative exponent");
    MPoly r = constant(1);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
}

int MPoly::degree(int var) const {
    int d = 0;
    for (auto& [t, c] : terms_) d = std::max(d, term_exp(t, var));
    return d;
}

int MPoly::low_degree(int var) const {
    int d = 0;
    for (auto& [t, c] : terms_) d = std::min(d, term_exp(t, var));
    return d;
}

bool MPoly::depends_on(int var) const {
    for (auto& [t, c] : terms_)
        if (term_exp(t, var) != 0) return true;
    return false;
}

MPoly MPoly::coeff_of(int var, int k) const {
    MPoly r;
    for (auto& [t, c] : terms_) {
        if (term_exp(t, var) != k) continue;
        Term rest;
        for (auto& [v, e] : t)
            if (v != var) rest.emplace_back(v, e);
        r.add_term(rest, c);
    }
    return r;
}

MPoly MPoly::subst(int var, const MPoly& value) const {
    MPoly r;
    for (auto& [t, c] : terms_) {
        int e = term_exp(t, var);
        if (e < 0)
            throw std::invalid_argument("MPoly::subst: negative power of substituted variable");
        Term rest;
        for (auto& [v, ex] : t)
            if (v != var) rest.emplace_back(v, ex);
        MPoly base;
        base.add_term(rest, c);
        r += base * value.pow(e);
    }
    return r;
}

MPoly MPoly::eval_partial(const std::map<int, Rat>& vals) const {
    MPoly r;
    for (auto& [t, c] : terms_) {
        Rat coeff = c;
        Term rest;
        for (auto& [v, e] : t) {
            auto it = vals.find(v);
            if (it == vals.end()) rest.emplace_back(v, e);
            else coeff *= rat_pow(it->second, e);
        }
        r.add_term(rest, coeff);
    }
    return r;
}

Rat MPoly::eval(const std::map<int, Rat>& vals) const {
    MPoly r = eval_partial(vals);
    if (r.is_zero()) return 0;
    if (r.terms().size() == 1 && r.terms().begin()->first.empty())
        return r.terms().begin()->second;
    throw std::invalid_argument("MPoly::eval: unassigned variables remain");
}

std::vector<int> MPoly::variables() const {
    std::vector<int> vars;
    for (auto& [t, c] : terms_)
        for (auto& [v, e] : t)
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    return vars;
}

bool MPoly::divide_exact(const MPoly& divisor, MPoly& quotient) const {
    if (divisor.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (is_zero()) {
        quotient = MPoly();
        return true;
    }
    // Work on dense exponent vectors over the involved variables, shifted so
    // all exponents are nonnegative; the shift difference is restored at the
    // end. Lex order on the dense vectors is a proper monomial order, so the
    // leading-term reduction below terminates.
    std::vector<int> vars = variables();
    for (int v : divisor.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    const int k = static_cast<int>(vars.size());
    auto dense = [&](const Term& t) {
        std::vector<int> e(k, 0);
        for (auto& [v, ex] : t) {
            auto it = std::lower_bound(vars.begin(), vars.end(), v);
            e[it - vars.begin()] = ex;
        }
        return e;
    };
    using Dense = std::vector<int>;
    auto to_dense_map = [&](const MPoly& p, Dense& shift) {
        shift.assign(k, 0);
        std::map<Dense, Rat> m;
        for (auto& [t, c] : p.terms()) {
            Dense e = dense(t);
            for (int i = 0; i < k; ++i) shift[i] = std::min(shift[i], e[i]);
            m.emplace(std::move(e), c);
        }
        std::map<Dense, Rat> shifted;
        for (auto& [e, c] : m) {
            Dense s = e;
            for (int i = 0; i < k; ++i) s[i] -= shift[i];
            shifted.emplace(std::move(s), c);
        }
        return shifted;
    };
    Dense sn, sd;
    auto num = to_dense_map(*this, sn);
    auto den = to_dense_map(divisor, sd);

    auto lead_it = [](std::map<Dense, Rat>& m) { return std::prev(m.end()); };
    auto dlead = lead_it(den);
    std::map<Dense, Rat> q;
    auto rem = num;
    while (!rem.empty()) {
        auto rlead = lead_it(rem);
        Dense qe(k);
        for (int i = 0; i < k; ++i) {
            qe[i] = rlead->first[i] - dlead->first[i];
            if (qe[i] < 0) return false;
        }
        Rat qc = rlead->second / dlead->second;
        q[qe] += qc;
        for (auto& [e, c] : den) {
            Dense s(k);
            for (int i = 0; i < k; ++i) s[i] = e[i] + qe[i];
            auto [it, inserted] = rem.emplace(s, -qc * c);
            if (!inserted) {
                it->second -= qc * c;
                if (it->second == 0) rem.erase(it);
            }
        }
    }
    MPoly out;
    for (auto& [e, c] : q) {
        Term t;
        for (int i = 0; i < k; ++i) {
            int ex = e[i] + sn[i] - sd[i];
            if (ex != 0) t.emplace_back(vars[i], ex);
        }
        out.add_term(t, c);
    }
    quotient = out;
    return true;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [t, c] : terms_) {
        Rat a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        bool printed = false;
        if (a != 1 || t.empty()) {
            os << rat_to_string(a);
            printed = true;
        }
        for (auto& [v, e] : t) {
            if (printed) os << "*";
            os << var_name(v);
            if (e != 1) os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

RationalExpr RationalExpr::operator+(const RationalExpr& o) const {
    return {num * o.den + o.num * den, den * o.den};
}

RationalExpr RationalExpr::operator-(const RationalExpr& o) const {
    return {num * o.den - o.num * den, den * o.den};
}

RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
    return {num * o.num, den * o.den};
}

RationalExpr RationalExpr::subst(int var, const MPoly& value) const {
    return {num.subst(var, value), den.subst(var, value)};
}

bool RationalExpr::equals(const RationalExpr& o) const {
    return (num * o.den - o.num * den).is_zero();
}

void RationalExpr::cancel(const std::vector<MPoly>& factors) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& f : factors) {
            if (f.variables().empty()) continue;  // constants never cancel
            MPoly qn, qd;
            if (num.divide_exact(f, qn) && den.divide_exact(f, qd)) {
                num = qn;
                den = qd;
                progress = true;
            }
        }
    }
}

}  // namespace hhw
