#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffalg/matrix.hpp"

namespace diffalg {

inline constexpr std::int64_t kDefaultDegreeCap = 200;

struct SolveOptions {
    /// Largest numerator degree window the solver will set up.
    std::int64_t degree_cap = kDefaultDegreeCap;
};

/// sum_i p_i sigma^i(y) = sum_k lambda_k r_k. A lambda with a fixed value
/// is a known constant; the others are unknowns solved for alongside y.
struct ScalarDiffEq {
    DiffStructure structure = DiffStructure::shift();
    std::vector<Poly> coeffs;                 // p_0 .. p_m
    std::vector<RatFun> rhs_basis;            // r_1 .. r_t
    std::vector<std::optional<Rat>> fixed;    // empty, or one entry per r_k

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_fixed(std::size_t k) const { return k < fixed.size() && fixed[k].has_value(); }
};

/// Clears the denominators of rational coefficients c_0..c_m (multiplying
/// the right-hand sides by the same polynomial).
ScalarDiffEq make_scalar_eq(const DiffStructure& ds, const std::vector<RatFun>& coeffs,
                            const std::vector<RatFun>& rhs_basis, const std::vector<std::optional<Rat>>& fixed = {});

struct ParamSolution {
    RatFun g;
    std::vector<Rat> lambda;
};

enum class SolveStatus { Solved, NoSolution, BoundExceeded };

/// Solutions form particular + span(homogeneous_basis). The homogeneous
/// basis spans the difference space: fixed lambdas are zero there.
/// Status is Solved when the set is nonempty and, if every lambda is free
/// and there is at least one, it contains a point with some lambda != 0.
struct SolutionSpace {
    SolveStatus status = SolveStatus::NoSolution;
    std::optional<ParamSolution> particular;
    std::vector<ParamSolution> homogeneous_basis;
    std::string witness;
    Poly universal_denominator;
    /// Numerator exponent window used (Laurent in the q case).
    std::int64_t window_lo = 0, window_hi = -1;

    bool solved() const { return status == SolveStatus::Solved; }
};

/// Every rational solution y has den(y) | u. In the q case u is prime to x
/// and poles at 0 are left to the Laurent window.
Poly universal_denominator(const ScalarDiffEq& eq);

SolutionSpace solve_scalar(const ScalarDiffEq& eq, const SolveOptions& opts = {});

/// sigma(g) - a g = sum_k lambda_k r_k
SolutionSpace solve_first_order(const DiffStructure& ds, const RatFun& a, const std::vector<RatFun>& rhs_basis,
                                const std::vector<std::optional<Rat>>& fixed = {},
                                const SolveOptions& opts = {});

/// Residual sum_i p_i sigma^i(g) - sum_k lambda_k r_k.
RatFun residual(const ScalarDiffEq& eq, const RatFun& g, const std::vector<Rat>& lambda);

struct VectorSolutionSpace {
    SolveStatus status = SolveStatus::NoSolution;
    std::optional<std::vector<RatFun>> particular;
    std::vector<std::vector<RatFun>> homogeneous_basis;
    std::string witness;
    /// Scalar equation satisfied by each coordinate, in index order.
    std::vector<ScalarDiffEq> traces;
    /// Coordinate whose scalar equation stopped the solve, if any.
    std::optional<std::size_t> failed_coordinate;

    bool solved() const { return status == SolveStatus::Solved; }
};

/// The scalar equation satisfied by coordinate j of any solution of
/// sigma(v) = M v + c, with its right-hand side fixed (lambda = 1).
ScalarDiffEq eliminate_coordinate(const DiffStructure& ds, const MatrixRF& M, const std::vector<RatFun>& c,
                                  std::size_t j);

/// All rational v with sigma(v) = M v + c.
VectorSolutionSpace solve_system(const DiffStructure& ds, const MatrixRF& M, const std::vector<RatFun>& c,
                                 const SolveOptions& opts = {});

} // namespace diffalg
