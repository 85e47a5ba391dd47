#pragma once

#include <string>
#include <vector>

#include "yangian/rational.hpp"

namespace yangian {

// Dense univariate polynomial over Q; coeffs_[n] multiplies k^n.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);
    template <std::integral I>
    Poly(I c) : Poly(Rational(c)) {}
    static Poly monomial(const Rational& c, int degree);
    static Poly k() { return monomial(Rational(1), 1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    const Rational& lead() const { return coeffs_.back(); }
    Rational coeff(int n) const;
    Rational eval(const Rational& k) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(const Rational& c) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

    // Euclidean division; divisor nonzero.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    static Poly gcd(Poly a, Poly b);  // monic, gcd(0,0)=0
    Poly monic() const;

    std::string str(const std::string& var = "k") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

// Rational function in the level k, normalized: gcd(num,den)=1, den monic.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
    template <std::integral I>
    RatFunc(I c) : RatFunc(Rational(c)) {}
    RatFunc(const Poly& p) : num_(p), den_(Rational(1)) {}
    RatFunc(const Poly& num, const Poly& den);

    static RatFunc k() { return RatFunc(Poly::k()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    Rational constant() const;  // throws unless is_constant
    Rational eval(const Rational& k) const;  // throws at a pole

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b);

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace yangian
