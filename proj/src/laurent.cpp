#include "xprod/laurent.hpp"

namespace xprod {

Exponent operator+(const Exponent& a, const Exponent& b) {
    if (a.size() != b.size()) throw PreconditionError("exponents of different rank");
    Exponent r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Exponent operator-(const Exponent& a) {
    Exponent r = a;
    for (auto& x : r) x = -x;
    return r;
}

GradeVector to_grade(const Exponent& e) {
    std::vector<Q> c;
    for (int x : e) c.emplace_back(x);
    return GradeVector(std::move(c));
}

namespace {
std::string exponent_str(const Exponent& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i + 1);
        if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}
}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
    return Monomial(coeff * o.coeff, exponent + o.exponent);
}

Monomial Monomial::inverse() const { return Monomial(coeff.inverse(), -exponent); }

std::string Monomial::str() const {
    auto x = exponent_str(exponent);
    if (x.empty()) return "(" + coeff.str() + ")";
    return "(" + coeff.str() + ")*" + x;
}

Monomial apply(const FieldAutomorphism& s, const Monomial& m) {
    return Monomial(s(m.coeff), m.exponent);
}

LaurentPoly::LaurentPoly(const Monomial& m) : tower_(m.coeff.tower()), rank_(m.exponent.size()) {
    add_term(m.exponent, m.coeff);
}

LaurentPoly LaurentPoly::constant(const FieldElement& c, std::size_t rank) {
    return LaurentPoly(Monomial::constant(c, rank));
}

Monomial LaurentPoly::as_monomial() const {
    if (!is_monomial()) throw PreconditionError("Laurent polynomial is not a monomial: " + str());
    return Monomial(terms_.begin()->second, terms_.begin()->first);
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent(rank_, 0));
}

FieldElement LaurentPoly::constant_term() const { return coefficient(Exponent(rank_, 0)); }

FieldElement LaurentPoly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return FieldElement(tower_);
    return it->second;
}

void LaurentPoly::add_term(const Exponent& e, const FieldElement& c) {
    if (e.size() != rank_) throw PreconditionError("exponent of wrong rank");
    if (c.tower() != tower_) throw PreconditionError("Laurent coefficient from another tower");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.rank_ != b.rank_ || a.tower_ != b.tower_)
        throw PreconditionError("Laurent polynomials over different rings");
    LaurentPoly out(a.tower_, a.rank_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    return tower_ == o.tower_ && rank_ == o.rank_ && terms_ == o.terms_;
}

LaurentPoly LaurentPoly::apply(const FieldAutomorphism& s) const {
    LaurentPoly out(tower_, rank_);
    for (const auto& [e, c] : terms_) out.add_term(e, s(c));
    return out;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += Monomial(c, e).str();
    }
    return out;
}

}  // namespace xprod
