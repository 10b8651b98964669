#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace diffalg {

/// Arbitrary-precision rational. gmpxx keeps every value canonical
/// (reduced, positive denominator) after arithmetic.
using Rat = mpq_class;

/// Parses "p" or "p/q" into a canonical Rat. Throws PreconditionError on
/// malformed input or a zero denominator.
Rat parse_rat(const std::string& text);

/// Dense univariate polynomial over Q. The coefficient vector never carries
/// trailing zeros, so the zero polynomial is the empty vector.
class Poly {
public:
    Poly() = default;
    Poly(const Rat& constant);  // NOLINT(google-explicit-constructor)
    Poly(long constant) : Poly(Rat(constant)) {}  // NOLINT(google-explicit-constructor)
    explicit Poly(std::vector<Rat> coeffs);

    static Poly x();
    static Poly monomial(const Rat& c, std::size_t k);
    /// (x - root)
    static Poly linear(const Rat& root);

    /// Degree, with -1 standing in for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    /// Coefficient of x^i, zero beyond the degree.
    const Rat& operator[](std::size_t i) const;
    const Rat& lc() const;
    std::span<const Rat> coeffs() const { return c_; }

    /// Lowest exponent with a nonzero coefficient; 0 for the zero polynomial.
    std::size_t valuation() const;

    Rat operator()(const Rat& at) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rat& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
    friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();

    std::vector<Rat> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

Poly pow(const Poly& p, unsigned e);

/// Euclidean division a = q*b + r with deg r < deg b. Throws on b == 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// a / b, throwing InvariantError if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& a);

Poly monic(const Poly& p);
Poly derivative(const Poly& p);
/// p(x + h)
Poly taylor_shift(const Poly& p, const Rat& h);
/// p(c*x)
Poly dilate(const Poly& p, const Rat& c);
/// p divided by x^valuation(p)
Poly strip_x(const Poly& p);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(const Poly& p, const Poly& q);
/// Extended Euclid: returns (g, s, t) with s*p + t*q = g, g monic.
struct ExtendedGcd {
    Poly g, s, t;
};
ExtendedGcd extended_gcd(const Poly& p, const Poly& q);
Poly lcm(const Poly& p, const Poly& q);

/// Sylvester resultant, Res = lc(p)^deg(q) * prod q(roots of p), via the
/// subresultant PRS over Z. Throws PreconditionError if p or q is zero.
Rat resultant(const Poly& p, const Poly& q);

struct SquarefreeFactor {
    Poly factor;
    unsigned multiplicity;
};
struct SquarefreeDecomposition {
    Rat leading;
    std::vector<SquarefreeFactor> factors;
};
/// Yun's algorithm. Factors are monic, squarefree and pairwise coprime.
SquarefreeDecomposition squarefree_decomposition(const Poly& p);
/// Product of the distinct monic irreducible factors of p (monic).
Poly squarefree_part(const Poly& p);

/// All rational roots of p, each once, ascending.
std::vector<Rat> rational_roots(const Poly& p);

/// Integer coefficients of a positive rational multiple of p with content 1.
std::vector<mpz_class> primitive_integer_coeffs(const Poly& p);

/// Upper bound on the modulus of every complex root of p (p non-constant).
double root_modulus_bound(const Poly& p);

} // namespace diffalg
