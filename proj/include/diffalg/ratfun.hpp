#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "diffalg/poly.hpp"

namespace diffalg {

/// Reduced rational function num/den over Q: gcd(num, den) = 1, den monic.
/// Zero is 0/1.
class RatFun {
public:
    RatFun() : den_(Rat(1)) {}
    RatFun(const Rat& c) : num_(c), den_(Rat(1)) {}  // NOLINT(google-explicit-constructor)
    RatFun(long c) : RatFun(Rat(c)) {}               // NOLINT(google-explicit-constructor)
    RatFun(const Poly& p) : num_(p), den_(Rat(1)) {}  // NOLINT(google-explicit-constructor)
    /// Reduces num/den. Throws PreconditionError if den is zero.
    RatFun(Poly num, Poly den);

    static RatFun x() { return RatFun(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }
    /// Constant value; only meaningful when is_constant().
    Rat constant_value() const { return num_[0]; }

    RatFun operator-() const { return RatFun(-num_, den_, Reduced{}); }
    RatFun& operator+=(const RatFun& o);
    RatFun& operator-=(const RatFun& o);
    RatFun& operator*=(const RatFun& o);
    RatFun& operator/=(const RatFun& o);

    friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
    friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
    friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
    friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Parenthesised "num/den" text that parse_ratfun reads back.
    std::string to_string() const;

private:
    struct Reduced {};
    RatFun(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    Poly num_;
    Poly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFun& f);

RatFun pow(const RatFun& f, int e);

/// Splits f with den(f) | d1 * d2, gcd(d1, d2) = 1, into
/// f = f1 + f2 where den(f1) | d1 and den(f2) | d2. f1 is proper; any
/// polynomial part of f lands in f2.
std::pair<RatFun, RatFun> partial_split(const RatFun& f, const Poly& d1, const Poly& d2);

} // namespace diffalg
