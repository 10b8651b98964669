#include "oracle.hpp"

#include "diffalg/error.hpp"
#include "diffalg/linalg.hpp"

namespace diffalg::testing {

SolutionSpace brute_force_oracle(const ScalarDiffEq& eq, int deg_bound, const Poly& U) {
    if (deg_bound > 12) throw PreconditionError("oracle degree bound is limited to 12");
    const DiffStructure& ds = eq.structure;
    Poly Ux = U;
    if (ds.is_q()) Ux *= Poly::monomial(Rat(1), static_cast<std::size_t>(deg_bound));
    const int K = deg_bound + Ux.degree() + 1;
    const std::size_t t = eq.rhs_basis.size();

    std::vector<RatFun> terms;
    for (int k = 0; k < K; ++k) {
        const RatFun y(Poly::monomial(Rat(1), static_cast<std::size_t>(k)), Ux);
        RatFun acc;
        for (std::size_t i = 0; i < eq.coeffs.size(); ++i)
            acc += RatFun(eq.coeffs[i]) * apply_sigma(ds, y, static_cast<std::int64_t>(i));
        terms.push_back(acc);
    }
    std::vector<std::size_t> free_idx;
    for (std::size_t k = 0; k < t; ++k)
        if (!eq.is_fixed(k)) free_idx.push_back(k);

    Poly den(Rat(1));
    for (const auto& f : terms) den = lcm(den, f.den());
    for (const auto& r : eq.rhs_basis) den = lcm(den, r.den());
    auto numer = [&](const RatFun& f) { return f.num() * exact_div(den, f.den()); };

    std::vector<Poly> cols;
    for (const auto& f : terms) cols.push_back(numer(f));
    for (std::size_t k : free_idx) cols.push_back(-numer(eq.rhs_basis[k]));
    Poly rhs;
    for (std::size_t k = 0; k < t; ++k)
        if (eq.is_fixed(k)) rhs += numer(eq.rhs_basis[k]) * *eq.fixed[k];
    int deg = rhs.degree();
    for (const auto& c : cols) deg = std::max(deg, c.degree());
    const auto rows = static_cast<std::size_t>(deg + 1);
    RatMatrix A(rows, cols.size());
    std::vector<Rat> b(rows);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) A(r, c) = cols[c][r];
    for (std::size_t r = 0; r < rows; ++r) b[r] = rhs[r];
    const AffineSolution sol = solve_affine(std::move(A), std::move(b));

    SolutionSpace out;
    out.universal_denominator = U;
    if (!sol.consistent) return out;
    auto make = [&](const std::vector<Rat>& v, bool homogeneous) {
        ParamSolution s;
        std::vector<Rat> nc(v.begin(), v.begin() + K);
        s.g = RatFun(Poly(nc), Ux);
        s.lambda.assign(t, Rat(0));
        for (std::size_t k = 0; k < t; ++k)
            if (eq.is_fixed(k) && !homogeneous) s.lambda[k] = *eq.fixed[k];
        for (std::size_t f = 0; f < free_idx.size(); ++f) s.lambda[free_idx[f]] = v[static_cast<std::size_t>(K) + f];
        return s;
    };
    out.particular = make(sol.particular, false);
    for (const auto& k : sol.kernel) out.homogeneous_basis.push_back(make(k, true));
    out.status = SolveStatus::Solved;
    if (t > 0 && free_idx.size() == t) {
        bool nonzero = false;
        for (const auto& h : out.homogeneous_basis)
            for (const Rat& l : h.lambda) nonzero = nonzero || l != 0;
        if (!nonzero) out.status = SolveStatus::NoSolution;
    }
    return out;
}

Poly naive_universal_denominator(const ScalarDiffEq& eq, int max_shift) {
    const DiffStructure& ds = eq.structure;
    const auto m = static_cast<std::int64_t>(eq.order());
    Poly D(Rat(1));
    for (const auto& r : eq.rhs_basis) D = lcm(D, r.den());
    Poly A = sigma_poly(ds, eq.coeffs.back() * D, -m);
    Poly B = eq.coeffs.front() * D;
    if (ds.is_q()) {
        A = strip_x(A);
        B = strip_x(B);
    }
    int N = -1;
    for (int h = 0; h <= max_shift; ++h)
        if (gcd(A, sigma_poly(ds, B, h)).degree() > 0) N = h;
    Poly U(Rat(1));
    for (int i = 0; i <= N; ++i) U *= sigma_poly(ds, A, -i);
    return U;
}

} // namespace diffalg::testing
