#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace yangian {

// Exact rational backed by GMP. Wrapped so that gmpxx expression templates
// never leak into Eigen or into generic code.
class Rational {
public:
    Rational() = default;
    template <std::integral I>
    Rational(I n) : v_(static_cast<long>(n)) {}
    Rational(long n, long d);
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view text);

    const mpq_class& mpq() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    long to_long() const;  // requires is_integer and fits
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    mpz_class floor() const;
    mpz_class ceil() const;
    Rational frac() const;  // this - floor(this), in [0,1)
    Rational abs() const;
    std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r; r.v_ = -v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::size_t hash() const;

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, long e);
// binomial(top, n) for rational top, n >= 0
Rational binomial(const Rational& top, long n);
Rational from_mpz(const mpz_class& z);

}  // namespace yangian

template <>
struct std::hash<yangian::Rational> {
    std::size_t operator()(const yangian::Rational& r) const { return r.hash(); }
};

namespace Eigen {
template <>
struct NumTraits<yangian::Rational> : GenericNumTraits<yangian::Rational> {
    typedef yangian::Rational Real;
    typedef yangian::Rational NonInteger;
    typedef yangian::Rational Nested;
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 16,
        MulCost = 32
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
