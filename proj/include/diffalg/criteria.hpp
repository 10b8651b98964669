#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffalg/solver.hpp"

namespace diffalg {

/// sum_i L_i(a_i) = sigma(g) - g
struct Telescoper {
    std::vector<ConstLinDiffOp> operators;
    RatFun certificate_g;
};

/// Searches telescopers with every L_i of order <= order_bound. nullopt
/// only means none of that order exists. Throws BoundExceededError when
/// the underlying solve hits the degree cap.
std::optional<Telescoper> find_telescoper(const DiffStructure& ds, const std::vector<RatFun>& a, int order_bound,
                                          const SolveOptions& opts = {});

/// find_telescoper on the logarithmic derivatives d(b_i)/b_i.
std::optional<Telescoper> mult_dependence_test(const DiffStructure& ds, const std::vector<RatFun>& b,
                                               int order_bound, const SolveOptions& opts = {});

/// Sum of L_i(a_i), for checking telescopers.
RatFun apply_telescoper(const DiffStructure& ds, const Telescoper& t, const std::vector<RatFun>& a);

enum class DAStatus { DifferentiallyAlgebraic, DifferentiallyTranscendental, RationalSolutionExists };

struct DACertificate {
    std::optional<RatFun> f;
    std::optional<Rat> c;
    std::optional<std::int64_t> n_or_r;
    std::optional<Rat> d;
};

struct DAVerdict {
    DAStatus status;
    std::optional<DACertificate> certificate;
    std::string hypothesis_notes;
};

/// Nonzero solutions of sigma(y) = b y: differentially algebraic iff
/// b = c sigma(f)/f (shift) or b = c x^n sigma(f)/f (q).
DAVerdict hypergeom_da_test(const DiffStructure& ds, const RatFun& b);

/// Solutions z of sigma(z) = a z + b with a in standard form.
DAVerdict inhomog_da_classify(const DiffStructure& ds, const RatFun& a, const RatFun& b,
                              const SolveOptions& opts = {});

enum class GroupKind { TrivialGroup, ConstantsGa, FullGa };

struct GroupClass {
    GroupKind kind;
    std::optional<RatFun> h;
    std::optional<Rat> c;
    std::string hypothesis_notes;
};

/// Galois group of sigma(y) - y = f as a differential subgroup of G_a.
GroupClass group_classify_inhomog_sum(const DiffStructure& ds, const RatFun& f, const SolveOptions& opts = {});

struct IntegrabilityResult {
    bool constant_conjugate = false;
    std::optional<MatrixRF> B;
    /// Scalar equation that blocked the solve (or the (0,1)-entry equation
    /// when a solution exists), plus every coordinate's equation.
    ScalarDiffEq scalar_trace;
    std::size_t trace_coordinate = 0;
    std::vector<ScalarDiffEq> traces;
    std::string witness;
    std::string hypothesis_notes;
};

/// The affine system sigma(v) = M v + c on the row-major entries of B
/// expressing sigma(B) = A B A^{-1} + d(A) A^{-1}.
std::pair<MatrixRF, std::vector<RatFun>> integrability_system(const DiffStructure& ds, const MatrixRF& A);

IntegrabilityResult integrability_test(const DiffStructure& ds, const MatrixRF& A, const SolveOptions& opts = {});

/// sigma(B) - (A B A^{-1} + d(A) A^{-1}) == 0
bool integrability_holds(const DiffStructure& ds, const MatrixRF& A, const MatrixRF& B);

} // namespace diffalg
