#include "modp.hpp"

#include <utility>

namespace diffalg::modp {

void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

u64 Field::pow(u64 a, u64 e) const {
    u64 r = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

static u64 mpz_mod(const mpz_class& z, u64 p) {
    mpz_class r;
    mpz_class pm;
    mpz_import(pm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pm.get_mpz_t());
    u64 out = 0;
    mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    return out;
}

std::optional<u64> Field::reduce(const Rat& r) const {
    u64 d = mpz_mod(r.get_den(), p_);
    if (d == 0) return std::nullopt;
    return mul(mpz_mod(r.get_num(), p_), inv(d));
}

std::optional<ModPoly> Field::reduce(const Poly& f) const {
    ModPoly out;
    out.reserve(f.coeffs().size());
    for (const Rat& c : f.coeffs()) {
        auto v = reduce(c);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    if (!out.empty() && out.back() == 0) return std::nullopt;
    return out;
}

u64 Field::eval(const ModPoly& f, u64 at) const {
    u64 acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = add(mul(acc, at), *it);
    return acc;
}

ModPoly Field::derivative(const ModPoly& f) const {
    ModPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mul(f[i], i % p_));
    trim(d);
    return d;
}

ModPoly Field::taylor_shift(const ModPoly& f, u64 h) const {
    ModPoly g = f;
    const std::size_t n = g.size();
    // Horner-style synthetic division, O(n^2).
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) g[j - 1] = add(g[j - 1], mul(h, g[j]));
    trim(g);
    return g;
}

ModPoly Field::dilate(const ModPoly& f, u64 c) const {
    ModPoly g = f;
    u64 pw = 1;
    for (auto& a : g) {
        a = mul(a, pw);
        pw = mul(pw, c);
    }
    trim(g);
    return g;
}

int Field::gcd_degree(ModPoly a, ModPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a <- a mod b
        const u64 inv_lc = inv(b.back());
        while (a.size() >= b.size()) {
            const u64 factor = mul(a.back(), inv_lc);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = sub(a[shift + i], mul(factor, b[i]));
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

} // namespace diffalg::modp
