#include "diffalg/solver.hpp"

#include <algorithm>
#include <sstream>

#include "diffalg/dispersion.hpp"
#include "diffalg/error.hpp"
#include "diffalg/linalg.hpp"

namespace diffalg {

namespace {

Rat rat_pow(const Rat& q, std::int64_t e) {
    if (e < 0) return rat_pow(1 / q, -e);
    Rat r(1), b = q;
    auto k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

std::optional<std::int64_t> log_q_signed(const Rat& q, const Rat& t) {
    if (t == 1) return 0;
    if (t == 0) return std::nullopt;
    for (int dir : {1, -1}) {
        const Rat base = dir == 1 ? q : 1 / q;
        const bool grows = abs(base) > 1;
        Rat cur = base;
        for (std::int64_t h = 1;; ++h) {
            if (cur == t) return dir * h;
            if (grows ? abs(cur) > abs(t) : abs(cur) < abs(t)) break;
            cur *= base;
        }
    }
    return std::nullopt;
}

std::int64_t to_i64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw BoundExceededError("degree bound exceeds machine range");
    return z.get_si();
}

Poly lcm_dens(const std::vector<RatFun>& fs) {
    Poly D(Rat(1));
    for (const auto& f : fs) D = lcm(D, f.den());
    return D;
}

ScalarDiffEq normalize(const ScalarDiffEq& in) {
    if (!in.fixed.empty() && in.fixed.size() != in.rhs_basis.size())
        throw PreconditionError("fixed lambda list must match the right-hand side basis");
    ScalarDiffEq eq = in;
    eq.fixed.resize(eq.rhs_basis.size());
    while (!eq.coeffs.empty() && eq.coeffs.back().is_zero()) eq.coeffs.pop_back();
    if (eq.coeffs.empty()) throw PreconditionError("operator has no nonzero coefficient");
    std::size_t k = 0;
    while (eq.coeffs[k].is_zero()) ++k;
    if (k > 0) {
        // apply sigma^{-k} to the whole equation
        const auto s = -static_cast<std::int64_t>(k);
        std::vector<Poly> c;
        for (std::size_t i = k; i < eq.coeffs.size(); ++i) c.push_back(sigma_poly(eq.structure, eq.coeffs[i], s));
        eq.coeffs = std::move(c);
        for (auto& r : eq.rhs_basis) r = apply_sigma(eq.structure, r, s);
    }
    return eq;
}

std::string poly_text(const Poly& p) { return p.to_string(); }

struct Window {
    bool empty = true;
    std::int64_t lo = 0, hi = -1;
    std::string why;
};

// Numerator exponent window for sum_i P_i sigma^i(z) = R with z polynomial
// (shift) or Laurent polynomial (q).
Window numerator_window(const DiffStructure& ds, const std::vector<Poly>& P, const std::vector<Poly>& R) {
    Window w;
    int degR = -1;
    std::int64_t valR = 0;
    bool anyR = false;
    for (const auto& r : R)
        if (!r.is_zero()) {
            if (!anyR || static_cast<std::int64_t>(r.valuation()) < valR)
                valR = static_cast<std::int64_t>(r.valuation());
            degR = std::max(degR, r.degree());
            anyR = true;
        }
    std::ostringstream why;

    if (ds.is_shift()) {
        // sigma^i = sum_j C(i, j) Delta^j
        const std::size_t m = P.size() - 1;
        std::vector<Poly> Q(m + 1);
        for (std::size_t j = 0; j <= m; ++j) {
            mpz_class binom = 1;  // C(i, j) starting at i = j
            for (std::size_t i = j; i <= m; ++i) {
                if (i > j) binom = binom * static_cast<unsigned long>(i) / static_cast<unsigned long>(i - j);
                Q[j] += P[i] * Rat(binom);
            }
        }
        std::int64_t b = std::numeric_limits<std::int64_t>::min();
        for (std::size_t j = 0; j <= m; ++j)
            if (!Q[j].is_zero()) b = std::max<std::int64_t>(b, Q[j].degree() - static_cast<std::int64_t>(j));
        Poly I;
        for (std::size_t j = 0; j <= m; ++j) {
            if (Q[j].is_zero() || Q[j].degree() - static_cast<std::int64_t>(j) != b) continue;
            Poly falling(Rat(1));
            for (std::size_t k = 0; k < j; ++k) falling *= Poly::linear(Rat(static_cast<long>(k)));
            I += falling * Q[j].lc();
        }
        std::int64_t N = -1;
        if (anyR) N = std::max<std::int64_t>(N, degR - b);
        for (const Rat& r : rational_roots(I))
            if (r.get_den() == 1 && r >= 0) N = std::max(N, to_i64(r.get_num()));
        why << "indicial polynomial at infinity " << I.to_string("d") << ", degree bound " << N;
        w.lo = 0;
        w.hi = N;
        w.empty = N < 0;
        w.why = why.str();
        return w;
    }

    const Rat& q = ds.q();
    int b = -1;
    std::int64_t v = std::numeric_limits<std::int64_t>::max();
    for (const auto& p : P)
        if (!p.is_zero()) {
            b = std::max(b, p.degree());
            v = std::min<std::int64_t>(v, static_cast<std::int64_t>(p.valuation()));
        }
    std::vector<Rat> Iinf(P.size()), I0(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (P[i].is_zero()) continue;
        if (P[i].degree() == b) Iinf[i] = P[i].lc();
        if (static_cast<std::int64_t>(P[i].valuation()) == v) I0[i] = P[i][static_cast<std::size_t>(v)];
    }
    const Poly Pinf(Iinf), P0(I0);
    std::optional<std::int64_t> hi, lo;
    if (anyR) {
        hi = degR - b;
        lo = valR - v;
    }
    for (const Rat& t : rational_roots(Pinf))
        if (auto j = log_q_signed(q, t)) hi = hi ? std::max(*hi, *j) : *j;
    for (const Rat& t : rational_roots(P0))
        if (auto j = log_q_signed(q, t)) lo = lo ? std::min(*lo, *j) : *j;
    why << "indicial polynomials " << Pinf.to_string("t") << " at infinity and " << P0.to_string("t")
        << " at zero";
    if (!hi || !lo || *hi < *lo) {
        why << " admit no exponent window";
        w.why = why.str();
        return w;
    }
    why << ", exponent window [" << *lo << ", " << *hi << "]";
    w.lo = *lo;
    w.hi = *hi;
    w.empty = false;
    w.why = why.str();
    return w;
}

RatFun laurent(const std::vector<Rat>& coeffs, std::int64_t lo) {
    Poly z(coeffs);
    if (lo >= 0) return RatFun(z * Poly::monomial(Rat(1), static_cast<std::size_t>(lo)));
    return RatFun(z, Poly::monomial(Rat(1), static_cast<std::size_t>(-lo)));
}

void verify(const ScalarDiffEq& eq, const ParamSolution& s) {
    if (!residual(eq, s.g, s.lambda).is_zero())
        throw InvariantError("solver output failed substitution check: g = " + s.g.to_string());
}

} // namespace

ScalarDiffEq make_scalar_eq(const DiffStructure& ds, const std::vector<RatFun>& coeffs,
                            const std::vector<RatFun>& rhs_basis, const std::vector<std::optional<Rat>>& fixed) {
    const Poly L = lcm_dens(coeffs);
    ScalarDiffEq eq{ds, {}, {}, fixed};
    for (const auto& c : coeffs) eq.coeffs.push_back(c.num() * exact_div(L, c.den()));
    for (const auto& r : rhs_basis) eq.rhs_basis.push_back(r * RatFun(L));
    return eq;
}

RatFun residual(const ScalarDiffEq& eq, const RatFun& g, const std::vector<Rat>& lambda) {
    RatFun acc;
    for (std::size_t i = 0; i < eq.coeffs.size(); ++i)
        if (!eq.coeffs[i].is_zero())
            acc += RatFun(eq.coeffs[i]) * apply_sigma(eq.structure, g, static_cast<std::int64_t>(i));
    for (std::size_t k = 0; k < eq.rhs_basis.size() && k < lambda.size(); ++k)
        if (lambda[k] != 0) acc -= RatFun(lambda[k]) * eq.rhs_basis[k];
    return acc;
}

Poly universal_denominator(const ScalarDiffEq& in) {
    const ScalarDiffEq eq = normalize(in);
    const DiffStructure& ds = eq.structure;
    const auto m = static_cast<std::int64_t>(eq.order());
    Poly D = lcm_dens(eq.rhs_basis);
    Poly A = sigma_poly(ds, eq.coeffs.back() * D, -m);
    Poly B = eq.coeffs.front() * D;
    if (ds.is_q()) {
        A = strip_x(A);
        B = strip_x(B);
    }
    Poly u(Rat(1));
    auto hs = shift_set(ds, A, B);
    for (auto it = hs.rbegin(); it != hs.rend(); ++it) {
        const std::int64_t h = *it;
        const Poly d = gcd(A, sigma_poly(ds, B, h));
        if (d.degree() < 1) continue;
        A = exact_div(A, d);
        B = exact_div(B, sigma_poly(ds, d, -h));
        for (std::int64_t i = 0; i <= h; ++i) u *= sigma_poly(ds, d, -i);
    }
    return monic(u);
}

SolutionSpace solve_scalar(const ScalarDiffEq& in, const SolveOptions& opts) {
    const ScalarDiffEq eq = normalize(in);
    const DiffStructure& ds = eq.structure;
    const std::size_t m = eq.coeffs.size() - 1;
    const std::size_t t = eq.rhs_basis.size();

    SolutionSpace out;
    const Poly u = universal_denominator(eq);
    out.universal_denominator = u;

    Poly W = lcm_dens(eq.rhs_basis);
    std::vector<Poly> su(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        su[i] = sigma_poly(ds, u, static_cast<std::int64_t>(i));
        W = lcm(W, su[i]);
    }
    std::vector<Poly> P(m + 1), R(t);
    for (std::size_t i = 0; i <= m; ++i) P[i] = eq.coeffs[i] * exact_div(W, su[i]);
    for (std::size_t k = 0; k < t; ++k) R[k] = eq.rhs_basis[k].num() * exact_div(W, eq.rhs_basis[k].den());

    const Window win = numerator_window(ds, P, R);
    out.window_lo = win.lo;
    out.window_hi = win.hi;
    const std::int64_t width = win.empty ? 0 : win.hi - win.lo + 1;
    if (width > opts.degree_cap) {
        out.status = SolveStatus::BoundExceeded;
        out.witness = "certified numerator window has " + std::to_string(width) + " exponents, above the cap of " +
                      std::to_string(opts.degree_cap) + " (" + win.why + ")";
        return out;
    }

    // Columns: z coefficients for exponents lo..hi, then the free lambdas.
    std::vector<std::size_t> free_idx;
    for (std::size_t k = 0; k < t; ++k)
        if (!eq.fixed[k]) free_idx.push_back(k);
    const auto nz = static_cast<std::size_t>(width);
    const std::size_t ncols = nz + free_idx.size();
    const std::int64_t lift = (ds.is_q() && win.lo < 0) ? -win.lo : 0;
    auto lifted = [&](const Poly& p) {
        return lift ? p * Poly::monomial(Rat(1), static_cast<std::size_t>(lift)) : p;
    };

    std::vector<Poly> cols;
    cols.reserve(ncols);
    if (ds.is_shift()) {
        std::vector<Poly> pw(m + 1, Poly(Rat(1)));  // (x + i)^j
        for (std::int64_t j = 0; j <= win.hi && nz > 0; ++j) {
            Poly col;
            for (std::size_t i = 0; i <= m; ++i) {
                if (j > 0) pw[i] *= Poly({Rat(static_cast<long>(i)), Rat(1)});
                if (!P[i].is_zero()) col += P[i] * pw[i];
            }
            cols.push_back(std::move(col));
        }
    } else {
        for (std::int64_t j = win.lo; j <= win.hi && nz > 0; ++j) {
            Poly scal;
            for (std::size_t i = 0; i <= m; ++i)
                if (!P[i].is_zero()) scal += P[i] * rat_pow(ds.q(), static_cast<std::int64_t>(i) * j);
            cols.push_back(scal * Poly::monomial(Rat(1), static_cast<std::size_t>(j + lift)));
        }
    }
    for (std::size_t k : free_idx) cols.push_back(-lifted(R[k]));
    Poly rhs;
    for (std::size_t k = 0; k < t; ++k)
        if (eq.fixed[k] && *eq.fixed[k] != 0) rhs += lifted(R[k]) * *eq.fixed[k];

    int maxdeg = rhs.degree();
    for (const auto& c : cols) maxdeg = std::max(maxdeg, c.degree());
    const auto nrows = static_cast<std::size_t>(std::max(maxdeg + 1, 0));
    RatMatrix A(nrows, ncols);
    std::vector<Rat> b(nrows);
    for (std::size_t c = 0; c < ncols; ++c)
        for (std::size_t r = 0; r < nrows; ++r) A(r, c) = cols[c][r];
    for (std::size_t r = 0; r < nrows; ++r) b[r] = rhs[r];

    const AffineSolution sol = solve_affine(std::move(A), std::move(b));
    auto make = [&](const std::vector<Rat>& vec, bool homogeneous) {
        ParamSolution s;
        std::vector<Rat> zc(vec.begin(), vec.begin() + static_cast<std::ptrdiff_t>(nz));
        s.g = nz ? laurent(zc, win.lo) / RatFun(u) : RatFun();
        s.lambda.assign(t, Rat(0));
        for (std::size_t k = 0; k < t; ++k)
            if (eq.fixed[k] && !homogeneous) s.lambda[k] = *eq.fixed[k];
        for (std::size_t f = 0; f < free_idx.size(); ++f) s.lambda[free_idx[f]] = vec[nz + f];
        return s;
    };

    std::ostringstream why;
    why << "denominator divides " << poly_text(u) << "; " << win.why;
    if (!sol.consistent) {
        out.status = SolveStatus::NoSolution;
        out.witness = "no rational solution: " + why.str() + "; the " + std::to_string(nrows) + "x" +
                      std::to_string(ncols) + " coefficient system over Q is inconsistent";
        return out;
    }
    out.particular = make(sol.particular, false);
    verify(in, *out.particular);
    for (const auto& k : sol.kernel) {
        out.homogeneous_basis.push_back(make(k, true));
        verify(in, out.homogeneous_basis.back());
    }

    const bool all_free = t > 0 && free_idx.size() == t;
    if (all_free) {
        bool nonzero = false;
        for (const auto& h : out.homogeneous_basis)
            for (const Rat& l : h.lambda) nonzero = nonzero || l != 0;
        if (!nonzero) {
            out.status = SolveStatus::NoSolution;
            out.witness = "every solution forces all lambda = 0: " + why.str();
            return out;
        }
    }
    out.status = SolveStatus::Solved;
    return out;
}

SolutionSpace solve_first_order(const DiffStructure& ds, const RatFun& a, const std::vector<RatFun>& rhs_basis,
                                const std::vector<std::optional<Rat>>& fixed, const SolveOptions& opts) {
    if (a.is_zero()) throw PreconditionError("solve_first_order: a must be nonzero");
    // den(a) sigma(g) - num(a) g = sum lambda_k den(a) r_k
    ScalarDiffEq eq{ds, {-a.num(), a.den()}, {}, fixed};
    for (const auto& r : rhs_basis) eq.rhs_basis.push_back(r * RatFun(a.den()));
    SolutionSpace s = solve_scalar(eq, opts);
    if (s.status == SolveStatus::NoSolution && a.is_constant() && rhs_basis.size() == 1) {
        // Sharper witness from the standard decomposition when it applies.
        const Rat lam = (!fixed.empty() && fixed[0]) ? *fixed[0] : Rat(1);
        if (lam != 0) {
            auto d = additive_standard_decomp(ds, rhs_basis[0] * RatFun(lam), a.constant_value());
            const Poly poles = ds.is_q() ? strip_x(d.standard_part.den()) : d.standard_part.den();
            if (poles.degree() > 0)
                s.witness = "pole-orbit obstruction: the standard part " + d.standard_part.to_string() +
                            " keeps poles at the roots of " + poles.to_string() +
                            ", and sigma(g) - a*g has positive polar dispersion whenever g has such poles; " +
                            s.witness;
        }
    }
    return s;
}

namespace {

// Solves sum_k alpha_k cols[k] = target over Q(x); nullopt if inconsistent.
std::optional<std::vector<RatFun>> solve_rf(const std::vector<std::vector<RatFun>>& cols,
                                            const std::vector<RatFun>& target) {
    const std::size_t n = target.size(), m = cols.size();
    std::vector<std::vector<RatFun>> A(n, std::vector<RatFun>(m + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) A[i][k] = cols[k][i];
        A[i][m] = target[i];
    }
    std::vector<std::size_t> piv_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m && row < n; ++c) {
        std::size_t p = n;
        for (std::size_t r = row; r < n; ++r)
            if (!A[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p == n) continue;
        std::swap(A[p], A[row]);
        const RatFun inv = RatFun(1) / A[row][c];
        for (std::size_t k = c; k <= m; ++k)
            if (!A[row][k].is_zero()) A[row][k] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || A[r][c].is_zero()) continue;
            const RatFun f = A[r][c];
            for (std::size_t k = c; k <= m; ++k)
                if (!A[row][k].is_zero()) A[r][k] -= f * A[row][k];
        }
        piv_col.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < n; ++r)
        if (!A[r][m].is_zero()) return std::nullopt;
    std::vector<RatFun> x(m);
    for (std::size_t r = 0; r < piv_col.size(); ++r) x[piv_col[r]] = A[r][m];
    return x;
}

std::vector<RatFun> row_times(const std::vector<RatFun>& row, const MatrixRF& M) {
    const std::size_t n = row.size();
    std::vector<RatFun> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (row[k].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!M(k, j).is_zero()) out[j] += row[k] * M(k, j);
    }
    return out;
}

RatFun dot(const std::vector<RatFun>& a, const std::vector<RatFun>& b) {
    RatFun s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

// Divides out the rational content shared by all coefficients.
void make_primitive(std::vector<Poly>& P, RatFun& rhs) {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& p : P)
        for (const Rat& c : p.coeffs()) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        }
    if (num_gcd == 0) return;
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (P.back().lc() < 0) scale = -scale;
    for (auto& p : P) p *= scale;
    rhs = rhs * RatFun(scale);
}

std::vector<RatFun> residual_vec(const DiffStructure& ds, const MatrixRF& M, const std::vector<RatFun>& c,
                                 const std::vector<RatFun>& v, bool with_c) {
    std::vector<RatFun> Mv = M.apply(v);
    std::vector<RatFun> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        r[i] = apply_sigma(ds, v[i]) - Mv[i];
        if (with_c) r[i] -= c[i];
    }
    return r;
}

bool all_zero(const std::vector<RatFun>& v) {
    return std::all_of(v.begin(), v.end(), [](const RatFun& f) { return f.is_zero(); });
}

} // namespace

ScalarDiffEq eliminate_coordinate(const DiffStructure& ds, const MatrixRF& M, const std::vector<RatFun>& c_in,
                                  std::size_t j) {
    const std::size_t n = M.size();
    if (j >= n) throw PreconditionError("coordinate index out of range");
    std::vector<RatFun> c = c_in;
    c.resize(n);
    // sigma^k(v_j) = rows[k] . v + s[k]
    std::vector<std::vector<RatFun>> rows{std::vector<RatFun>(n)};
    rows[0][j] = RatFun(1);
    std::vector<RatFun> s{RatFun()};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<RatFun> sr(n);
        for (std::size_t i = 0; i < n; ++i) sr[i] = apply_sigma(ds, rows[m - 1][i]);
        rows.push_back(row_times(sr, M));
        s.push_back(dot(sr, c) + apply_sigma(ds, s[m - 1]));
        std::vector<RatFun> neg(n);
        for (std::size_t i = 0; i < n; ++i) neg[i] = -rows[m][i];
        auto alpha = solve_rf(std::vector<std::vector<RatFun>>(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(m)), neg);
        if (!alpha) continue;
        alpha->push_back(RatFun(1));
        Poly L(Rat(1));
        for (const auto& a : *alpha) L = lcm(L, a.den());
        std::vector<Poly> P;
        RatFun rhs;
        for (std::size_t k = 0; k <= m; ++k) {
            P.push_back((*alpha)[k].num() * exact_div(L, (*alpha)[k].den()));
            rhs += (*alpha)[k] * s[k];
        }
        rhs *= RatFun(L);
        Poly g;
        for (const auto& p : P) g = gcd(g, p);
        if (g.degree() > 0) {
            for (auto& p : P) p = exact_div(p, g);
            rhs /= RatFun(g);
        }
        make_primitive(P, rhs);
        return ScalarDiffEq{ds, std::move(P), {rhs}, {Rat(1)}};
    }
    throw InvariantError("cyclic elimination did not close within the system dimension");
}

VectorSolutionSpace solve_system(const DiffStructure& ds, const MatrixRF& M, const std::vector<RatFun>& c_in,
                                 const SolveOptions& opts) {
    const std::size_t n = M.size();
    if (n == 0) throw PreconditionError("empty system");
    if (!c_in.empty() && c_in.size() != n) throw PreconditionError("inhomogeneous term has the wrong length");
    if (M.det().is_zero()) throw PreconditionError("system matrix is singular over Q(x)");
    std::vector<RatFun> c = c_in;
    c.resize(n);
    const bool with_c = !all_zero(c);

    VectorSolutionSpace out;
    for (std::size_t j = 0; j < n; ++j) out.traces.push_back(eliminate_coordinate(ds, M, c, j));

    std::vector<SolutionSpace> coord;
    for (std::size_t j = 0; j < n; ++j) {
        SolutionSpace sp = solve_scalar(out.traces[j], opts);
        if (sp.status != SolveStatus::Solved) {
            out.status = sp.status;
            out.failed_coordinate = j;
            out.witness = "coordinate " + std::to_string(j) + ": " + sp.witness;
            return out;
        }
        coord.push_back(std::move(sp));
    }

    // v = v0 + sum mu_{j,i} e_j b_{j,i}; impose sigma(v) = M v + c.
    std::vector<RatFun> v0(n);
    for (std::size_t j = 0; j < n; ++j) v0[j] = coord[j].particular->g;
    std::vector<std::vector<RatFun>> dirs;
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& b : coord[j].homogeneous_basis) {
            std::vector<RatFun> d(n);
            d[j] = b.g;
            dirs.push_back(std::move(d));
        }
    const std::vector<RatFun> E0 = residual_vec(ds, M, c, v0, with_c);
    std::vector<std::vector<RatFun>> Ed;
    for (const auto& d : dirs) Ed.push_back(residual_vec(ds, M, c, d, false));

    const std::size_t K = dirs.size();
    RatMatrix A(0, K);
    std::vector<Rat> rhs;
    for (std::size_t i = 0; i < n; ++i) {
        Poly den = E0[i].den();
        for (const auto& e : Ed) den = lcm(den, e[i].den());
        std::vector<Poly> nums;
        for (const auto& e : Ed) nums.push_back(e[i].num() * exact_div(den, e[i].den()));
        const Poly n0 = E0[i].num() * exact_div(den, E0[i].den());
        int deg = n0.degree();
        for (const auto& p : nums) deg = std::max(deg, p.degree());
        for (int r = 0; r <= deg; ++r) {
            const std::size_t row = A.rows();
            A.add_rows(1);
            for (std::size_t k = 0; k < K; ++k) A(row, k) = nums[k][static_cast<std::size_t>(r)];
            rhs.push_back(-n0[static_cast<std::size_t>(r)]);
        }
    }
    const AffineSolution sol = solve_affine(std::move(A), std::move(rhs));
    if (!sol.consistent) {
        out.status = SolveStatus::NoSolution;
        out.witness = "each coordinate equation is solvable, but no combination of the coordinate solutions "
                      "satisfies the coupled system";
        return out;
    }
    auto combine = [&](const std::vector<Rat>& mu, bool include_v0) {
        std::vector<RatFun> v = include_v0 ? v0 : std::vector<RatFun>(n);
        for (std::size_t k = 0; k < K; ++k)
            if (mu[k] != 0)
                for (std::size_t i = 0; i < n; ++i)
                    if (!dirs[k][i].is_zero()) v[i] += RatFun(mu[k]) * dirs[k][i];
        return v;
    };
    out.particular = combine(sol.particular, true);
    if (!all_zero(residual_vec(ds, M, c, *out.particular, with_c)))
        throw InvariantError("system solution failed substitution check");
    for (const auto& k : sol.kernel) {
        out.homogeneous_basis.push_back(combine(k, false));
        if (!all_zero(residual_vec(ds, M, c, out.homogeneous_basis.back(), false)))
            throw InvariantError("homogeneous system solution failed substitution check");
    }
    out.status = SolveStatus::Solved;
    return out;
}

} // namespace diffalg
