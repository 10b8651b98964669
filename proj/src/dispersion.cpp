#include "diffalg/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "diffalg/error.hpp"
#include "modp.hpp"

namespace diffalg {

namespace {

constexpr std::int64_t kMaxWindow = 4096;

Poly reversed(const Poly& p) {
    auto c = p.coeffs();
    return Poly(std::vector<Rat>(c.rbegin(), c.rend()));
}

// Modular screen: false means gcd(a, sigma^h b) is certainly constant.
class Screen {
public:
    Screen(const DiffStructure& ds, const Poly& a, const Poly& b) : ds_(ds) {
        for (auto p : modp::kFilterPrimes) {
            modp::Field F(p);
            auto am = F.reduce(a), bm = F.reduce(b);
            if (!am || !bm) continue;
            if (ds.is_q()) {
                auto qm = F.reduce(ds.q());
                if (!qm || *qm == 0) continue;
                q_ = *qm;
            }
            field_.emplace(F);
            a_ = std::move(*am);
            b_ = std::move(*bm);
            return;
        }
    }

    bool maybe(std::int64_t h) const {
        if (!field_) return true;
        const auto& F = *field_;
        modp::ModPoly bh;
        if (ds_.is_shift())
            bh = F.taylor_shift(b_, static_cast<modp::u64>(h) % F.p());
        else
            bh = F.dilate(b_, F.pow(q_, static_cast<modp::u64>(h)));
        return F.gcd_degree(a_, bh) > 0;
    }

private:
    const DiffStructure& ds_;
    std::optional<modp::Field> field_;
    modp::ModPoly a_, b_;
    modp::u64 q_ = 1;
};

bool shares_root(const DiffStructure& ds, const Poly& a, const Poly& b, std::int64_t h) {
    return gcd(a, sigma_poly(ds, b, h)).degree() > 0;
}

// Res_x(a(x), b_y(x)) as a polynomial in y by evaluation and Newton
// interpolation; b_y is b(x + y) (shift) or b(y x) (q).
Poly parametric_resultant(const DiffStructure& ds, const Poly& a, const Poly& b) {
    const int D = a.degree() * b.degree();
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= D; ++k) {
        const Rat y(k + (ds.is_q() ? 1 : 0));
        const Poly by = ds.is_shift() ? taylor_shift(b, y) : dilate(b, y);
        xs.push_back(y);
        ys.push_back(resultant(a, by));
    }
    // divided differences
    std::vector<Rat> c = ys;
    for (int j = 1; j <= D; ++j)
        for (int i = D; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
    Poly r(c[D]);
    for (int i = D - 1; i >= 0; --i) r = r * Poly::linear(xs[i]) + Poly(c[i]);
    return r;
}

std::optional<std::int64_t> log_q(const Rat& q, const Rat& z) {
    if (z == 1) return 0;
    if (z == 0) return std::nullopt;
    const bool grows = abs(q) > 1;
    Rat t = q;
    for (std::int64_t h = 1;; ++h) {
        if (t == z) return h;
        if (grows ? abs(t) > abs(z) : abs(t) < abs(z)) return std::nullopt;
        t *= q;
    }
}

std::vector<std::int64_t> candidates_by_resultant(const DiffStructure& ds, const Poly& a, const Poly& b) {
    std::vector<std::int64_t> out;
    const Poly r = parametric_resultant(ds, a, b);
    if (r.is_zero()) throw InvariantError("parametric resultant vanished identically");
    for (const Rat& z : rational_roots(r)) {
        if (ds.is_shift()) {
            if (z.get_den() != 1 || z < 0) continue;
            if (!z.get_num().fits_slong_p()) throw BoundExceededError("shift distance exceeds machine range");
            out.push_back(z.get_num().get_si());
        } else if (auto h = log_q(ds.q(), z)) {
            out.push_back(*h);
        }
    }
    return out;
}

} // namespace

std::vector<std::int64_t> shift_set(const DiffStructure& ds, const Poly& a_in, const Poly& b_in) {
    Poly a = a_in, b = b_in;
    if (ds.is_q()) {
        a = strip_x(a);
        b = strip_x(b);
    }
    if (a.degree() < 1 || b.degree() < 1) return {};
    a = squarefree_part(a);
    b = squarefree_part(b);

    std::int64_t lo = 0, hi = -1;
    bool windowed = false;
    if (ds.is_shift()) {
        const double H = root_modulus_bound(a) + root_modulus_bound(b);
        if (std::isfinite(H) && H < static_cast<double>(kMaxWindow)) {
            hi = static_cast<std::int64_t>(std::floor(H));
            windowed = true;
        }
    } else {
        const double la_hi = std::log2(root_modulus_bound(a));
        const double la_lo = -std::log2(root_modulus_bound(reversed(a)));
        const double lb_hi = std::log2(root_modulus_bound(b));
        const double lb_lo = -std::log2(root_modulus_bound(reversed(b)));
        const double L = std::log2(std::fabs(ds.q().get_d()));
        double r0 = (lb_lo - la_hi) / L, r1 = (lb_hi - la_lo) / L;
        if (r0 > r1) std::swap(r0, r1);
        if (std::isfinite(r0) && std::isfinite(r1) && r1 - r0 < static_cast<double>(kMaxWindow)) {
            lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(r0)) - 1);
            hi = static_cast<std::int64_t>(std::ceil(r1)) + 1;
            windowed = true;
        }
    }

    std::vector<std::int64_t> out;
    if (windowed) {
        Screen screen(ds, a, b);
        for (std::int64_t h = lo; h <= hi; ++h)
            if (screen.maybe(h) && shares_root(ds, a, b, h)) out.push_back(h);
        return out;
    }
    for (std::int64_t h : candidates_by_resultant(ds, a, b))
        if (shares_root(ds, a, b, h)) out.push_back(h);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::int64_t dispersion(const DiffStructure& ds, const Poly& Q) {
    if (Q.is_zero()) throw PreconditionError("dispersion of the zero polynomial");
    auto s = shift_set(ds, Q, Q);
    return s.empty() ? 0 : s.back();
}

std::int64_t polar_dispersion(const DiffStructure& ds, const RatFun& f) { return dispersion(ds, f.den()); }

bool is_standard(const DiffStructure& ds, const RatFun& f) {
    if (f.is_zero()) throw PreconditionError("is_standard: zero input");
    return dispersion(ds, f.num() * f.den()) == 0;
}

Poly saturate_part(const Poly& p, const Poly& g) {
    Poly part(Rat(1));
    Poly rest = p;
    for (;;) {
        Poly d = gcd(rest, g);
        if (d.degree() < 1) break;
        part *= d;
        rest = exact_div(rest, d);
    }
    return part;
}

namespace {

// Roots alpha of S with S(alpha + l) = 0 (shift) or S(q^l alpha) = 0 (q).
// sigma^{-l} carries a pole or zero at alpha onto that partner.
Poly left_ends(const DiffStructure& ds, const Poly& S, std::int64_t l) {
    return gcd(S, sigma_poly(ds, S, l));
}

} // namespace

StandardDecomp additive_standard_decomp(const DiffStructure& ds, const RatFun& f, const Rat& a) {
    if (a == 0) throw PreconditionError("additive_standard_decomp: a must be nonzero");
    // Separate the part that passes through unchanged: the polynomial part
    // (shift) or the Laurent part at 0 (q).
    RatFun h, passthrough;
    {
        Poly core = ds.is_q() ? strip_x(f.den()) : f.den();
        core = monic(core);
        Poly outer = exact_div(f.den(), core);
        auto split = partial_split(f, core, outer);
        h = split.first;
        passthrough = split.second;
    }

    RatFun g;
    for (;;) {
        const Poly S = squarefree_part(h.den());
        auto shifts = shift_set(ds, S, S);
        const std::int64_t l = shifts.empty() ? 0 : shifts.back();
        if (l == 0) break;
        const Poly ends = left_ends(ds, S, l);
        const Poly block = saturate_part(h.den(), ends);
        const Poly other = exact_div(h.den(), block);
        auto [phi, rest] = partial_split(h, block, other);
        // phi == a^l sigma^{-l}(phi) modulo the image of sigma - a
        Rat ai(1);
        for (std::int64_t i = 1; i <= l; ++i) {
            g += RatFun(ai) * apply_sigma(ds, phi, -i);
            ai *= a;
        }
        h = RatFun(ai) * apply_sigma(ds, phi, -l) + rest;
    }

    StandardDecomp out{ds, a, h + passthrough, g};
    if (out.standard_part + apply_sigma(ds, g) - RatFun(a) * g != f)
        throw InvariantError("additive standard decomposition failed to reassemble");
    return out;
}

MultStandardForm multiplicative_standard_form(const DiffStructure& ds, const RatFun& f) {
    if (f.is_zero()) throw PreconditionError("multiplicative_standard_form: zero input");
    RatFun cur = f;
    RatFun g(1);
    for (;;) {
        Poly S = cur.num() * cur.den();
        if (ds.is_q()) S = strip_x(S);
        S = squarefree_part(S);
        auto shifts = shift_set(ds, S, S);
        const std::int64_t l = shifts.empty() ? 0 : shifts.back();
        if (l == 0) break;
        const Poly ends = left_ends(ds, S, l);
        const RatFun rho(saturate_part(cur.num(), ends), saturate_part(cur.den(), ends));
        cur = cur / rho * apply_sigma(ds, rho, -l);
        for (std::int64_t i = 1; i <= l; ++i) g *= apply_sigma(ds, rho, -i);
    }
    // only g up to a constant matters; make its numerator monic
    if (!g.num().is_monic()) g = g * RatFun(1 / g.num().lc());

    MultStandardForm out{ds, cur, g};
    if (cur * apply_sigma(ds, g) / g != f)
        throw InvariantError("multiplicative standard form failed to reassemble");
    return out;
}

} // namespace diffalg
