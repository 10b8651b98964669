#include "diffalg/structure.hpp"

#include <cstdlib>

#include "diffalg/error.hpp"

namespace diffalg {

namespace {

// q^power is materialised exactly, so keep the exponent within reach.
constexpr std::int64_t kMaxQPower = std::int64_t{1} << 20;

Rat rat_pow(const Rat& base, std::int64_t e) {
    if (e < 0) return rat_pow(1 / base, -e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    Rat r(num, den);
    r.canonicalize();
    return r;
}

} // namespace

DiffStructure DiffStructure::q_dilation(const Rat& q) {
    if (q == 0) throw PreconditionError("q must be nonzero");
    if (abs(q.get_num()) == q.get_den())
        throw PreconditionError("q must satisfy |q| != 1 (this also rules out roots of unity); got " +
                                q.get_str());
    return DiffStructure(Kind::QDilation, q);
}

std::string DiffStructure::describe() const {
    if (is_shift()) return "shift: sigma(x) = x + 1, d = d/dx";
    return "q-dilation: sigma(x) = " + q_.get_str() + "*x, d = x*d/dx";
}

ConstLinDiffOp::ConstLinDiffOp(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::string ConstLinDiffOp::to_string() const {
    if (c_.empty()) return "0";
    Poly as_poly(c_);
    return as_poly.to_string("D");
}

Poly sigma_poly(const DiffStructure& ds, const Poly& p, std::int64_t power) {
    if (power == 0) return p;
    if (ds.is_shift()) return taylor_shift(p, Rat(power));
    if (power > kMaxQPower || power < -kMaxQPower)
        throw PreconditionError("sigma power out of range for q-dilation");
    return dilate(p, rat_pow(ds.q(), power));
}

RatFun apply_sigma(const DiffStructure& ds, const RatFun& f, std::int64_t power) {
    if (power == 0 || f.is_constant()) return f;
    return RatFun(sigma_poly(ds, f.num(), power), sigma_poly(ds, f.den(), power));
}

Poly derive_poly(const DiffStructure& ds, const Poly& p) {
    Poly d = derivative(p);
    if (ds.is_q()) d *= Poly::x();
    return d;
}

RatFun apply_derivation(const DiffStructure& ds, const RatFun& f) {
    if (f.is_constant()) return RatFun();
    const Poly& n = f.num();
    const Poly& d = f.den();
    if (f.is_polynomial()) return RatFun(derive_poly(ds, n) * (1 / d.lc()));
    Poly top = derive_poly(ds, n) * d - n * derive_poly(ds, d);
    return RatFun(std::move(top), d * d);
}

RatFun apply_op(const DiffStructure& ds, const ConstLinDiffOp& op, const RatFun& f) {
    RatFun acc;
    RatFun term = f;
    const auto& c = op.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j > 0) term = apply_derivation(ds, term);
        if (c[j] != 0) acc += RatFun(c[j]) * term;
    }
    return acc;
}

} // namespace diffalg
