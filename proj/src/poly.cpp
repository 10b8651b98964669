#include "diffalg/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diffalg/error.hpp"
#include "modp.hpp"

namespace diffalg {

namespace {

const Rat& zero_rat() {
    static const Rat z(0);
    return z;
}

} // namespace

Rat parse_rat(const std::string& text) {
    Rat r;
    if (text.empty() || r.set_str(text, 10) != 0)
        throw PreconditionError("malformed rational '" + text + "'");
    if (r.get_den() == 0) throw PreconditionError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

Poly::Poly(const Rat& constant) {
    if (constant != 0) c_.push_back(constant);
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

Poly Poly::monomial(const Rat& c, std::size_t k) {
    if (c == 0) return {};
    std::vector<Rat> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
}

Poly Poly::linear(const Rat& root) { return Poly(std::vector<Rat>{-root, Rat(1)}); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& Poly::operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_rat(); }

const Rat& Poly::lc() const { return c_.empty() ? zero_rat() : c_.back(); }

std::size_t Poly::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return i;
    return 0;
}

Rat Poly::operator()(const Rat& at) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& a : c_) a *= s;
    return *this;
}

std::string Poly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rat& a = c_[k];
        if (a == 0) continue;
        Rat mag = abs(a);
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

Poly pow(const Poly& p, unsigned e) {
    Poly r(Rat(1));
    Poly b = p;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rat> r(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db + 1));
    const Rat inv_lc = 1 / b.lc();
    for (int k = a.degree(); k >= db; --k) {
        const Rat& top = r[static_cast<std::size_t>(k)];
        if (top == 0) continue;
        Rat f = top * inv_lc;
        for (int i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(k - db + i)] -= f * b[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(k - db)] = std::move(f);
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InvariantError("exact_div: nonzero remainder");
    return q;
}

bool divides(const Poly& d, const Poly& a) {
    if (d.is_zero()) return a.is_zero();
    return divmod(a, d).second.is_zero();
}

Poly monic(const Poly& p) {
    if (p.is_zero() || p.lc() == 1) return p;
    return p * (1 / p.lc());
}

Poly derivative(const Poly& p) {
    if (p.degree() < 1) return {};
    std::vector<Rat> d(static_cast<std::size_t>(p.degree()));
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    return Poly(std::move(d));
}

Poly taylor_shift(const Poly& p, const Rat& h) {
    if (h == 0 || p.degree() < 1) return p;
    std::vector<Rat> g(p.coeffs().begin(), p.coeffs().end());
    const std::size_t n = g.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) g[j - 1] += h * g[j];
    return Poly(std::move(g));
}

Poly dilate(const Poly& p, const Rat& c) {
    if (c == 1) return p;
    std::vector<Rat> g(p.coeffs().begin(), p.coeffs().end());
    Rat pw(1);
    for (auto& a : g) {
        a *= pw;
        pw *= c;
    }
    return Poly(std::move(g));
}

Poly strip_x(const Poly& p) {
    const std::size_t v = p.valuation();
    if (v == 0) return p;
    return Poly(std::vector<Rat>(p.coeffs().begin() + static_cast<long>(v), p.coeffs().end()));
}

Poly gcd(const Poly& p, const Poly& q) {
    Poly a = p, b = q;
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

ExtendedGcd extended_gcd(const Poly& p, const Poly& q) {
    Poly r0 = p, r1 = q;
    Poly s0(Rat(1)), s1;
    Poly t0, t1(Rat(1));
    while (!r1.is_zero()) {
        auto [quo, rem] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly s2 = s0 - quo * s1;
        Poly t2 = t0 - quo * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {Poly(), Poly(), Poly()};
    const Rat inv = 1 / r0.lc();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Poly lcm(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    return monic(exact_div(p, gcd(p, q)) * q);
}

std::vector<mpz_class> primitive_integer_coeffs(const Poly& p) {
    std::vector<mpz_class> out;
    if (p.is_zero()) return out;
    mpz_class den = 1;
    for (const Rat& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    out.reserve(p.coeffs().size());
    mpz_class content = 0;
    for (const Rat& c : p.coeffs()) {
        mpz_class v = c.get_num() * (den / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        out.push_back(std::move(v));
    }
    if (out.back() < 0) content = -content;
    for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    return out;
}

namespace {

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

mpz_class zcontent(const ZPoly& f) {
    mpz_class g = 0;
    for (const auto& a : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    return g;
}

// lc(b)^(deg a - deg b + 1) * a mod b
ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
    const int db = zdeg(b);
    int e = zdeg(a) - db + 1;
    const mpz_class& lb = b.back();
    while (zdeg(a) >= db && !a.empty()) {
        mpz_class top = a.back();
        const std::size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= top * b[i];
        ztrim(a);
        --e;
    }
    if (e > 0) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : a) c *= f;
    }
    return a;
}

mpz_class zpow(const mpz_class& b, long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// Collins/Brown subresultant PRS resultant over Z.
mpz_class subresultant(ZPoly A, ZPoly B) {
    int s = 1;
    if (zdeg(A) < zdeg(B)) {
        std::swap(A, B);
        if ((zdeg(A) % 2 == 1) && (zdeg(B) % 2 == 1)) s = -s;
    }
    if (zdeg(B) == 0) return zpow(B[0], zdeg(A)) * s;
    mpz_class a = zcontent(A), b = zcontent(B);
    for (auto& c : A) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
    for (auto& c : B) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), b.get_mpz_t());
    const mpz_class t = zpow(a, zdeg(B)) * zpow(b, zdeg(A));
    mpz_class g = 1, h = 1;
    while (true) {
        const int delta = zdeg(A) - zdeg(B);
        if ((zdeg(A) % 2 == 1) && (zdeg(B) % 2 == 1)) s = -s;
        ZPoly R = pseudo_remainder(A, B);
        A = std::move(B);
        if (R.empty()) return 0;
        const mpz_class div = g * zpow(h, delta);
        for (auto& c : R) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
        B = std::move(R);
        g = A.back();
        if (delta == 0) {
            // h unchanged
        } else {
            mpz_class num = zpow(g, delta);
            mpz_class den = zpow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (zdeg(B) <= 0) break;
    }
    const int da = zdeg(A);
    mpz_class num = zpow(B[0], da);
    mpz_class den = zpow(h, da - 1);
    mpz_class res;
    mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return res * t * s;
}

} // namespace

Rat resultant(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) throw PreconditionError("resultant of a zero polynomial");
    // p = (dp)^-1 * P with integer P: Res(p, q) = Res(P, Q) / (dp^deg q * dq^deg p).
    auto to_z = [](const Poly& f, mpz_class& scale) {
        scale = 1;
        for (const Rat& c : f.coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
        ZPoly z;
        for (const Rat& c : f.coeffs()) z.push_back(c.get_num() * (scale / c.get_den()));
        return z;
    };
    mpz_class sp, sq;
    ZPoly P = to_z(p, sp), Q = to_z(q, sq);
    Rat r(subresultant(P, Q));
    r /= Rat(zpow(sp, q.degree()) * zpow(sq, p.degree()));
    return r;
}

SquarefreeDecomposition squarefree_decomposition(const Poly& p) {
    if (p.is_zero()) throw PreconditionError("squarefree decomposition of zero");
    SquarefreeDecomposition out{p.lc(), {}};
    Poly f = monic(p);
    if (f.degree() < 1) return out;
    // Yun
    Poly fp = derivative(f);
    Poly a = gcd(f, fp);
    Poly b = exact_div(f, a);
    Poly c = exact_div(fp, a);
    Poly d = c - derivative(b);
    unsigned i = 1;
    while (b.degree() >= 1) {
        Poly g = gcd(b, d);
        if (g.degree() >= 1) out.factors.push_back({g, i});
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - derivative(b);
        ++i;
    }
    return out;
}

Poly squarefree_part(const Poly& p) {
    if (p.degree() < 1) return p.is_zero() ? p : Poly(Rat(1));
    return monic(exact_div(p, gcd(p, derivative(p))));
}

double root_modulus_bound(const Poly& p) {
    // Fujiwara: 2 * max_k |a_{n-k}/a_n|^(1/k), last term halved.
    const int n = p.degree();
    if (n < 1) return 0.0;
    auto log2abs = [](const Rat& r) {
        long en = 0, ed = 0;
        double mn = mpz_get_d_2exp(&en, r.get_num_mpz_t());
        double md = mpz_get_d_2exp(&ed, r.get_den_mpz_t());
        return std::log2(std::fabs(mn)) - std::log2(md) + static_cast<double>(en - ed);
    };
    const double llc = log2abs(p.lc());
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n; ++k) {
        const Rat& a = p[static_cast<std::size_t>(n - k)];
        if (a == 0) continue;
        double l = log2abs(a) - llc;
        if (k == n) l -= 1.0;
        best = std::max(best, l / k);
    }
    if (best == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp2(best + 1.0) * 1.0001 + 1e-9;
}

namespace {

mpz_class zeval(const ZPoly& f, const mpz_class& at) {
    mpz_class acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * at + *it;
    return acc;
}

bool is_prime_small(modp::u64 n) {
    if (n < 2) return false;
    for (modp::u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Integer roots of a squarefree integer polynomial with f(0) != 0, via
// roots modulo a small good prime and Hensel lifting past the root bound.
std::vector<mpz_class> integer_roots_squarefree(const ZPoly& f) {
    std::vector<mpz_class> roots;
    const int n = zdeg(f);
    if (n < 1) return roots;
    if (n == 1) {
        if (mpz_divisible_p(f[0].get_mpz_t(), f[1].get_mpz_t())) roots.push_back(-f[0] / f[1]);
        return roots;
    }
    // every integer root divides f(0) and is bounded by the Cauchy bound
    mpz_class bound = abs(f[0]);
    {
        mpz_class m = 0;
        for (int i = 0; i < n; ++i) m = std::max(m, mpz_class(abs(f[static_cast<std::size_t>(i)])));
        mpz_class cauchy = m / abs(f.back()) + 1;
        bound = std::min(bound, cauchy);
    }
    Poly fq;
    {
        std::vector<Rat> v;
        for (const auto& c : f) v.emplace_back(c);
        fq = Poly(std::move(v));
    }
    modp::u64 p = std::max<modp::u64>(3, static_cast<modp::u64>(n) + 1);
    for (;; ++p) {
        if (!is_prime_small(p)) continue;
        modp::Field F(p);
        auto fm = F.reduce(fq);
        if (!fm) continue;
        if (F.gcd_degree(*fm, F.derivative(*fm)) != 0) continue;
        // roots mod p
        std::vector<modp::u64> base;
        for (modp::u64 r = 0; r < p; ++r)
            if (F.eval(*fm, r) == 0) base.push_back(r);
        const mpz_class target = 2 * bound + 1;
        ZPoly df;
        for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<long>(i));
        for (modp::u64 r0 : base) {
            mpz_class M = static_cast<unsigned long>(p);
            mpz_class r = static_cast<unsigned long>(r0);
            while (M < target) {
                M *= M;
                mpz_class fv = zeval(f, r), dv = zeval(df, r), inv;
                mpz_class dvm;
                mpz_mod(dvm.get_mpz_t(), dv.get_mpz_t(), M.get_mpz_t());
                if (mpz_invert(inv.get_mpz_t(), dvm.get_mpz_t(), M.get_mpz_t()) == 0)
                    throw InvariantError("Hensel lifting hit a non-simple root");
                r = r - fv * inv;
                mpz_mod(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
            }
            if (2 * r > M) r -= M;
            if (abs(r) <= bound && zeval(f, r) == 0) roots.push_back(r);
        }
        return roots;
    }
}

} // namespace

std::vector<Rat> rational_roots(const Poly& p) {
    if (p.is_zero()) throw PreconditionError("rational_roots of the zero polynomial");
    std::vector<Rat> out;
    if (p.degree() < 1) return out;
    if (p.valuation() > 0) out.emplace_back(0);
    Poly f = squarefree_part(strip_x(p));
    if (f.degree() >= 1) {
        // Rational root theorem: a root r = a/b has b | lc. Substituting
        // x = t / lc gives a monic integer polynomial in t whose rational
        // roots are therefore integers.
        ZPoly z = primitive_integer_coeffs(f);
        const int n = zdeg(z);
        const mpz_class an = z.back();
        ZPoly g(z.size());
        for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] * zpow(an, n - 1 - i < 0 ? 0 : n - 1 - i);
        g.back() = 1;
        for (const auto& t : integer_roots_squarefree(g)) {
            Rat r(t, an);
            r.canonicalize();
            out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace diffalg
