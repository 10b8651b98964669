#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "diffalg/structure.hpp"

namespace diffalg {

/// Square matrix over Q(x).
class MatrixRF {
public:
    MatrixRF() = default;
    explicit MatrixRF(std::size_t n) : n_(n), e_(n * n) {}
    /// Throws PreconditionError unless rows is a non-empty square grid.
    explicit MatrixRF(const std::vector<std::vector<RatFun>>& rows);

    static MatrixRF identity(std::size_t n);

    std::size_t size() const { return n_; }
    RatFun& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const RatFun& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    friend MatrixRF operator*(const MatrixRF& a, const MatrixRF& b);
    friend MatrixRF operator+(const MatrixRF& a, const MatrixRF& b);
    friend MatrixRF operator-(const MatrixRF& a, const MatrixRF& b);
    friend bool operator==(const MatrixRF& a, const MatrixRF& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

    std::vector<RatFun> apply(const std::vector<RatFun>& v) const;

    RatFun det() const;
    /// Throws PreconditionError if the matrix is singular over Q(x).
    MatrixRF inverse() const;

    std::string to_string() const;

private:
    std::size_t n_ = 0;
    std::vector<RatFun> e_;
};

MatrixRF apply_sigma(const DiffStructure& ds, const MatrixRF& m, std::int64_t power = 1);
MatrixRF apply_derivation(const DiffStructure& ds, const MatrixRF& m);

} // namespace diffalg
