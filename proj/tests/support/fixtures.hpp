#pragma once

// Exact equations and matrices from the shift SL2 example and the
// q-hypergeometric example (q = 1/4, a = 1/2), shared by the unit tests and
// the acceptance binary.

#include "diffalg/solver.hpp"

namespace diffalg::fixtures {

inline const DiffStructure kShift = DiffStructure::shift();
inline const DiffStructure kQuarter = DiffStructure::q_dilation(Rat(1, 4));

inline RatFun X() { return RatFun::x(); }

/// x s^3 b - (x^3 + 2x^2 - 1) s^2 b + x (x^2 + x - 1) s b - (x + 1) b = 2x + 1
inline ScalarDiffEq shift_b_equation() {
    const RatFun x = X();
    return make_scalar_eq(kShift, {-(x + 1), x * (x * x + x - 1), -(x * x * x + 2 * x * x - 1), x}, {2 * x + 1},
                          {Rat(1)});
}

inline MatrixRF shift_sl2_matrix() {
    return MatrixRF({{RatFun(0), RatFun(-1)}, {RatFun(1), X()}});
}

/// The 4x4 system on (a, b, c, d) derived from the shift SL2 matrix.
inline MatrixRF shift_sl2_entry_system() {
    const RatFun x = X();
    return MatrixRF({{0, 0, -x, 1}, {0, 0, -1, 0}, {x, -1, x * x, -x}, {1, 0, x, 0}});
}
inline std::vector<RatFun> shift_sl2_entry_rhs() { return {0, 0, -1, 0}; }

/// The third-order equation satisfied by the v-entry in the q = 1/4 case.
inline ScalarDiffEq q_v_equation() {
    const RatFun x = X();
    const RatFun quad = 20 * x * x - 353 * x + 1032;
    const RatFun c3 = 1;
    const RatFun c2 = RatFun(Rat(-1, 4)) * (x - 64) * (x - 4) * quad / ((x - 32) * (x - 1) * (x - 1) * (x - 16));
    const RatFun c1 = quad * (x - 64) / ((x - 16) * (4 * x - 1) * (x - 32));
    const RatFun c0 = RatFun(Rat(1, 4)) * (x - 64) * (x - 2) * (4 * x - 1) / ((x - 1) * (x - 1) * (x - 32));
    const RatFun rhs = -x * (x - 64) * (47 * x * x - 496 * x + 1952) /
                       ((4 * x - 1) * (x - 8) * (x - 16) * (x - 1) * (x - 32));
    return make_scalar_eq(kQuarter, {c0, c1, c2, c3}, {rhs}, {Rat(1)});
}

/// y(q^2 x) - 4(x-2)/(x-4) y(qx) + 16(x-1)/(4x-1) y(x) = 0, as
/// (p0, p1, p2) with p2 = 1.
inline std::vector<RatFun> q_hypergeometric_coeffs() {
    const RatFun x = X();
    return {16 * (x - 1) / (4 * x - 1), -4 * (x - 2) / (x - 4), RatFun(1)};
}

/// Companion matrix [[0, 1], [-p0/p2, -p1/p2]] acting on (y, sigma(y)).
inline MatrixRF companion(const std::vector<RatFun>& p) {
    return MatrixRF({{RatFun(0), RatFun(1)}, {-p[0] / p[2], -p[1] / p[2]}});
}

} // namespace diffalg::fixtures
