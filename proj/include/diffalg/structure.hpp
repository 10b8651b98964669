#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diffalg/ratfun.hpp"

namespace diffalg {

/// One of the two commuting (sigma, d) pairs on Q(x):
///   Shift:     sigma(x) = x + 1, d = d/dx
///   QDilation: sigma(x) = q x,   d = x d/dx, q rational with |q| != 1
class DiffStructure {
public:
    enum class Kind { Shift, QDilation };

    static DiffStructure shift() { return DiffStructure(Kind::Shift, Rat(1)); }
    /// Throws PreconditionError unless q != 0 and |q| != 1.
    static DiffStructure q_dilation(const Rat& q);

    Kind kind() const { return kind_; }
    bool is_shift() const { return kind_ == Kind::Shift; }
    bool is_q() const { return kind_ == Kind::QDilation; }
    /// The dilation factor; 1 for the shift structure.
    const Rat& q() const { return q_; }

    std::string describe() const;

    friend bool operator==(const DiffStructure& a, const DiffStructure& b) {
        return a.kind_ == b.kind_ && a.q_ == b.q_;
    }

private:
    DiffStructure(Kind k, Rat q) : kind_(k), q_(std::move(q)) {}

    Kind kind_;
    Rat q_;
};

/// L = sum_j c_j d^j with rational constant coefficients.
class ConstLinDiffOp {
public:
    ConstLinDiffOp() = default;
    explicit ConstLinDiffOp(std::vector<Rat> coeffs);

    static ConstLinDiffOp identity() { return ConstLinDiffOp({Rat(1)}); }
    static ConstLinDiffOp d() { return ConstLinDiffOp({Rat(0), Rat(1)}); }

    /// Order s; -1 for the zero operator.
    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    friend bool operator==(const ConstLinDiffOp&, const ConstLinDiffOp&) = default;

    std::string to_string() const;

private:
    std::vector<Rat> c_;
};

/// sigma^power applied to a polynomial (not renormalised).
Poly sigma_poly(const DiffStructure& ds, const Poly& p, std::int64_t power);

/// sigma^power(f); negative powers apply the inverse automorphism.
RatFun apply_sigma(const DiffStructure& ds, const RatFun& f, std::int64_t power = 1);

/// d(f) for the structure's derivation.
RatFun apply_derivation(const DiffStructure& ds, const RatFun& f);

/// sum_j c_j d^j(f)
RatFun apply_op(const DiffStructure& ds, const ConstLinDiffOp& op, const RatFun& f);

/// d^k of a polynomial for the structure's derivation.
Poly derive_poly(const DiffStructure& ds, const Poly& p);

} // namespace diffalg
