#include "hhw/series.hpp"

#include <sstream>
#include <stdexcept>

namespace hhw {

namespace {

std::vector<std::pair<int, int>> merge_exponents(const std::vector<std::pair<int, int>>& a,
                                                 const std::vector<std::pair<int, int>>& b) {
    std::vector<std::pair<int, int>> out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            int e = a[i].second + b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

void append_factor(std::ostringstream& os, const std::string& base, int e) {
    if (e == 0) return;
    os << ' ' << base;
    if (e != 1) os << '^' << e;
}

}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.q = q + o.q;
    r.n_exp = n_exp + o.n_exp;
    r.t = merge_exponents(t, o.t);
    r.tt = merge_exponents(tt, o.tt);
    r.g2 = g2 + o.g2;
    r.g3 = g3 + o.g3;
    return r;
}

bool Monomial::operator<(const Monomial& o) const {
    if (q != o.q) return q < o.q;
    if (n_exp != o.n_exp) return n_exp > o.n_exp;  // higher N first within a q-degree
    if (g2 != o.g2) return g2 < o.g2;
    if (g3 != o.g3) return g3 < o.g3;
    if (t != o.t) return t < o.t;
    return tt < o.tt;
}

std::string Monomial::to_string() const {
    std::ostringstream os;
    os << "q^" << q;
    append_factor(os, "N", n_exp);
    append_factor(os, "g2", g2);
    append_factor(os, "g3", g3);
    for (auto& [r, e] : t) append_factor(os, "t" + std::to_string(r), e);
    for (auto& [s, e] : tt) append_factor(os, "tt" + std::to_string(s), e);
    return os.str();
}

FormalSeries FormalSeries::one(int trunc) {
    FormalSeries s(trunc);
    s.add_term(Monomial::one(), 1);
    return s;
}

FormalSeries FormalSeries::term(int trunc, const Monomial& m, const Rat& c) {
    FormalSeries s(trunc);
    s.add_term(m, c);
    return s;
}

void FormalSeries::add_term(const Monomial& m, const Rat& c) {
    if (m.q > trunc_) return;
    if (c == 0) return;
    Rat cc = c;
    cc.canonicalize();  // guards against non-canonical mpq_class(num, den) inputs
    auto [it, inserted] = terms_.emplace(m, cc);
    if (!inserted) {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat FormalSeries::coefficient(const Monomial& m) const {
    if (m.q > trunc_) throw std::out_of_range("coefficient query beyond truncation");
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
    if (trunc_ != o.trunc_) throw std::invalid_argument("truncation mismatch");
    FormalSeries r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const {
    if (trunc_ != o.trunc_) throw std::invalid_argument("truncation mismatch");
    FormalSeries r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

FormalSeries FormalSeries::operator*(const FormalSeries& o) const {
    if (trunc_ != o.trunc_) throw std::invalid_argument("truncation mismatch");
    FormalSeries r(trunc_);
    for (auto& [ma, ca] : terms_) {
        if (ma.q > trunc_) continue;
        for (auto& [mb, cb] : o.terms_) {
            if (ma.q + mb.q > trunc_) continue;
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

FormalSeries FormalSeries::scaled(const Rat& c) const {
    FormalSeries r(trunc_);
    if (c == 0) return r;
    for (auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

FormalSeries FormalSeries::q0_part() const {
    FormalSeries r(trunc_);
    for (auto& [m, v] : terms_)
        if (m.q == 0) r.terms_.emplace(m, v);
    return r;
}

FormalSeries log1p(const FormalSeries& a) {
    if (!a.q0_part().is_zero())
        throw std::invalid_argument("log1p: argument must have vanishing q^0 part");
    int D = a.truncation();
    FormalSeries acc(D);
    FormalSeries p = FormalSeries::one(D);
    for (int k = 1; k <= D; ++k) {
        p = p * a;
        if (p.is_zero()) break;
        Rat c(((k & 1) ? 1 : -1), k);
        acc = acc + p.scaled(c);
    }
    return acc;
}

FormalSeries exp(const FormalSeries& a) {
    if (!a.q0_part().is_zero())
        throw std::invalid_argument("exp: argument must have vanishing q^0 part");
    int D = a.truncation();
    FormalSeries acc = FormalSeries::one(D);
    FormalSeries p = FormalSeries::one(D);
    Rat kfac = 1;
    for (int k = 1; k <= D; ++k) {
        p = p * a;
        if (p.is_zero()) break;
        kfac *= k;
        acc = acc + p.scaled(Rat(1) / kfac);
    }
    return acc;
}

FormalSeries log(const FormalSeries& z) {
    if (!(z.q0_part() == FormalSeries::one(z.truncation())))
        throw std::invalid_argument("log: constant term must be exactly 1");
    return log1p(z - FormalSeries::one(z.truncation()));
}

}  // namespace hhw
