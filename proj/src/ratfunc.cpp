#include "yangian/ratfunc.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace yangian {

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) coeffs_.push_back(c);
}

Poly Poly::monomial(const Rational& c, int degree) {
    Poly p;
    if (c.is_zero()) return p;
    p.coeffs_.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
    p.coeffs_.back() = c;
    return p;
}

Rational Poly::coeff(int n) const {
    if (n < 0 || n > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(n)];
}

Rational Poly::eval(const Rational& k) const {
    Rational r(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * k + *it;
    return r;
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    r.trim();
    return r;
}

Poly Poly::operator-() const { return scaled(Rational(-1)); }

Poly Poly::scaled(const Rational& c) const {
    Poly r;
    if (c.is_zero()) return r;
    r.coeffs_ = coeffs_;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        auto c = a.coeffs_[static_cast<std::size_t>(i)] <=> b.coeffs_[static_cast<std::size_t>(i)];
        if (c != 0) return c;
    }
    return std::strong_ordering::equal;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    q = Poly();
    r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Poly t = monomial(r.lead() / b.lead(), r.degree() - b.degree());
        q += t;
        r -= t * b;
    }
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / lead());
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeffs_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << (c.sign() < 0 ? "-" : "+");
        else if (c.sign() < 0) os << "-";
        Rational a = c.abs();
        if (i == 0) os << a;
        else {
            if (a != Rational(1)) os << a << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        Poly q, r;
        Poly::divmod(num_, g, q, r);
        num_ = q;
        Poly::divmod(den_, g, q, r);
        den_ = q;
    }
    Rational l = den_.lead();
    if (l != Rational(1)) {
        num_ = num_.scaled(Rational(1) / l);
        den_ = den_.scaled(Rational(1) / l);
    }
}

Rational RatFunc::constant() const {
    if (!is_constant()) throw std::domain_error("rational function " + str() + " depends on k");
    return num_.coeff(0);
}

Rational RatFunc::eval(const Rational& k) const {
    Rational d = den_.eval(k);
    if (d.is_zero()) throw std::domain_error("rational function " + str() + " has a pole at k=" + k.str());
    return num_.eval(k) / d;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (den_ == o.den_) num_ += o.num_;
    else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
    if (auto c = a.num_ <=> b.num_; c != 0) return c;
    return a.den_ <=> b.den_;
}

std::string RatFunc::str() const {
    if (den_.degree() == 0) return num_.str();
    std::string n = num_.str(), d = den_.str();
    if (num_.degree() > 0 && n.find_first_of("+-", 1) != std::string::npos) n = "(" + n + ")";
    return n + "/(" + d + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

}  // namespace yangian
