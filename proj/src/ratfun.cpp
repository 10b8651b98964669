#include "diffalg/ratfun.hpp"

#include "diffalg/error.hpp"

namespace diffalg {

RatFun::RatFun(Poly num, Poly den) {
    if (den.is_zero()) throw PreconditionError("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Poly(Rat(1));
        return;
    }
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    const Rat lc = den.lc();
    if (lc != 1) {
        const Rat inv = 1 / lc;
        num *= inv;
        den *= inv;
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

RatFun& RatFun::operator+=(const RatFun& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) return *this = RatFun(num_ + o.num_, den_);
    // Henrici-style: work over the gcd of the denominators.
    Poly g = gcd(den_, o.den_);
    if (g.degree() == 0) return *this = RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_, Reduced{});
    Poly a = exact_div(den_, g), b = exact_div(o.den_, g);
    return *this = RatFun(num_ * b + o.num_ * a, a * o.den_);
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun& RatFun::operator*=(const RatFun& o) {
    if (is_zero() || o.is_zero()) return *this = RatFun();
    // cross-cancel to keep the operands small
    Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    Poly n = exact_div(num_, g1) * exact_div(o.num_, g2);
    Poly d = exact_div(den_, g2) * exact_div(o.den_, g1);
    const Rat lc = d.lc();
    if (lc != 1) {
        n *= 1 / lc;
        d *= 1 / lc;
    }
    return *this = RatFun(std::move(n), std::move(d), Reduced{});
}

RatFun& RatFun::operator/=(const RatFun& o) {
    if (o.is_zero()) throw PreconditionError("division by the zero rational function");
    return *this *= RatFun(o.den_, o.num_);
}

std::string RatFun::to_string() const {
    if (is_polynomial()) {
        if (num_.degree() <= 0) return num_.to_string();
        return "(" + num_.to_string() + ")";
    }
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.to_string(); }

RatFun pow(const RatFun& f, int e) {
    if (e < 0) return pow(RatFun(Rat(1)) / f, -e);
    return RatFun(pow(f.num(), static_cast<unsigned>(e)), pow(f.den(), static_cast<unsigned>(e)));
}

std::pair<RatFun, RatFun> partial_split(const RatFun& f, const Poly& d1, const Poly& d2) {
    if (d1.is_zero() || d2.is_zero()) throw PreconditionError("partial_split: zero denominator factor");
    const Poly full = d1 * d2;
    auto [cofactor, rem] = divmod(full, f.den());
    if (!rem.is_zero()) throw PreconditionError("partial_split: den(f) must divide d1*d2");
    auto eg = extended_gcd(d1, d2);
    if (eg.g.degree() != 0) throw PreconditionError("partial_split: d1 and d2 are not coprime");
    // 1 = s*d1 + t*d2  =>  N/(d1 d2) = N t / d1 + N s / d2
    Poly n1 = divmod(f.num() * cofactor * eg.t, d1).second;
    RatFun f1(n1, d1);
    RatFun f2 = f - f1;
    return {f1, f2};
}

} // namespace diffalg
