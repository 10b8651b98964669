#include "diffalg/linalg.hpp"

#include "diffalg/error.hpp"

namespace diffalg {

namespace {

// Reduced row echelon form in place on the augmented matrix [A | b].
// Returns the pivot column of each pivot row.
std::vector<std::size_t> rref(RatMatrix& M, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const std::size_t total = M.cols();
    for (std::size_t col = 0; col < ncols && row < M.rows(); ++col) {
        std::size_t piv = M.rows();
        for (std::size_t r = row; r < M.rows(); ++r)
            if (sgn(M(r, col)) != 0) {
                piv = r;
                break;
            }
        if (piv == M.rows()) continue;
        if (piv != row)
            for (std::size_t k = 0; k < total; ++k) swap(M(piv, k), M(row, k));
        const Rat inv = 1 / M(row, col);
        for (std::size_t k = col; k < total; ++k)
            if (sgn(M(row, k)) != 0) M(row, k) *= inv;
        for (std::size_t r = 0; r < M.rows(); ++r) {
            if (r == row || sgn(M(r, col)) == 0) continue;
            const Rat f = M(r, col);
            for (std::size_t k = col; k < total; ++k)
                if (sgn(M(row, k)) != 0) M(r, k) -= f * M(row, k);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Rat>> kernel_from_rref(const RatMatrix& M, const std::vector<std::size_t>& pivots,
                                               std::size_t n) {
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(n);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

AffineSolution solve_affine(RatMatrix A, std::vector<Rat> b) {
    if (b.size() != A.rows()) throw PreconditionError("solve_affine: dimension mismatch");
    const std::size_t n = A.cols();
    RatMatrix M(A.rows(), n + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) swap(M(i, j), A(i, j));
        swap(M(i, n), b[i]);
    }
    auto pivots = rref(M, n);
    AffineSolution out;
    for (std::size_t r = pivots.size(); r < M.rows(); ++r)
        if (sgn(M(r, n)) != 0) return out;
    out.consistent = true;
    out.particular.assign(n, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) out.particular[pivots[r]] = M(r, n);
    out.kernel = kernel_from_rref(M, pivots, n);
    return out;
}

std::vector<std::vector<Rat>> nullspace(const RatMatrix& A) {
    RatMatrix M = A;
    auto pivots = rref(M, A.cols());
    return kernel_from_rref(M, pivots, A.cols());
}

} // namespace diffalg
