#pragma once

// Prime-field polynomial helpers used as fast filters in front of exact
// computations over Q. Nothing here is part of the public interface.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "diffalg/poly.hpp"

namespace diffalg::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ModPoly = std::vector<u64>;  // trailing zeros trimmed

class Field {
public:
    explicit Field(u64 p) : p_(p) {}

    u64 p() const { return p_; }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return (s >= p_ || s < a) ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p_ - b); }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<u128>(a) * b) % p_); }
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const { return pow(a, p_ - 2); }

    /// Image of a rational; nullopt when p divides its denominator.
    std::optional<u64> reduce(const Rat& r) const;
    /// Image of a polynomial; nullopt when p divides a denominator or the
    /// leading coefficient (the degree must survive reduction).
    std::optional<ModPoly> reduce(const Poly& f) const;

    u64 eval(const ModPoly& f, u64 at) const;
    ModPoly derivative(const ModPoly& f) const;
    /// f(x + h)
    ModPoly taylor_shift(const ModPoly& f, u64 h) const;
    /// f(c x)
    ModPoly dilate(const ModPoly& f, u64 c) const;
    /// Degree of gcd(a, b); -1 if both are zero.
    int gcd_degree(ModPoly a, ModPoly b) const;

private:
    u64 p_;
};

void trim(ModPoly& f);

/// Large primes below 2^62 for filtering; a handful in case one divides a
/// denominator.
inline constexpr u64 kFilterPrimes[] = {
    4611686018427387847ULL,  // 2^62 - 57
    2305843009213693951ULL,  // 2^61 - 1
    1152921504606846883ULL,  // 2^60 - 93
    576460752303423433ULL,   // 2^59 - 55
};

} // namespace diffalg::modp
