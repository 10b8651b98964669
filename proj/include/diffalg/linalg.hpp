#pragma once

#include <cstddef>
#include <vector>

#include "diffalg/poly.hpp"

namespace diffalg {

/// Dense row-major matrix over Q.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    /// Appends zero rows.
    void add_rows(std::size_t n) {
        rows_ += n;
        a_.resize(rows_ * cols_);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Solution set of A z = b.
struct AffineSolution {
    bool consistent = false;
    std::vector<Rat> particular;             // free variables set to zero
    std::vector<std::vector<Rat>> kernel;    // basis of {z : A z = 0}
};

/// Exact Gauss-Jordan elimination over Q.
AffineSolution solve_affine(RatMatrix A, std::vector<Rat> b);

/// Basis of the right nullspace of A.
std::vector<std::vector<Rat>> nullspace(const RatMatrix& A);

} // namespace diffalg
