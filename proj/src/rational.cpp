#include "yangian/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>
#include <string>

namespace yangian {

Rational::Rational(long n, long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    s = s.substr(b);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto valid_int = [](const std::string& t) {
        std::size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string n = s.substr(0, slash);
    std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(n) || !valid_int(d) || d[0] == '-' || d[0] == '+')
        throw std::invalid_argument("malformed rational '" + s + "'");
    if (n[0] == '+') n = n.substr(1);
    mpz_class zn(n), zd(d);
    if (zd == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r;
    r.v_ = mpq_class(zn, zd);
    r.v_.canonicalize();
    return r;
}

long Rational::to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
        throw std::domain_error("rational " + str() + " is not a machine integer");
    return v_.get_num().get_si();
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

Rational Rational::frac() const { return *this - from_mpz(floor()); }

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Rational::hash() const {
    std::size_t h = mpz_get_ui(v_.get_num().get_mpz_t()) * 1000003u;
    h ^= mpz_get_ui(v_.get_den().get_mpz_t()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(sign() + 1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, long e) {
    if (e < 0) return pow(Rational(1) / base, -e);
    Rational r(1), b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rational binomial(const Rational& top, long n) {
    if (n < 0) return Rational(0);
    Rational r(1);
    for (long i = 0; i < n; ++i) r = r * (top - Rational(i)) / Rational(i + 1);
    return r;
}

Rational from_mpz(const mpz_class& z) { return Rational(mpq_class(z)); }

}  // namespace yangian
