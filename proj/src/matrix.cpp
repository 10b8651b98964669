#include "diffalg/matrix.hpp"

#include "diffalg/error.hpp"

namespace diffalg {

MatrixRF::MatrixRF(const std::vector<std::vector<RatFun>>& rows) : n_(rows.size()), e_() {
    if (n_ == 0) throw PreconditionError("matrix must be non-empty");
    e_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_) throw PreconditionError("matrix must be square");
        e_.insert(e_.end(), r.begin(), r.end());
    }
}

MatrixRF MatrixRF::identity(std::size_t n) {
    MatrixRF m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFun(1);
    return m;
}

MatrixRF operator*(const MatrixRF& a, const MatrixRF& b) {
    if (a.n_ != b.n_) throw PreconditionError("matrix size mismatch");
    MatrixRF c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t k = 0; k < a.n_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < a.n_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

MatrixRF operator+(const MatrixRF& a, const MatrixRF& b) {
    if (a.n_ != b.n_) throw PreconditionError("matrix size mismatch");
    MatrixRF c = a;
    for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
    return c;
}

MatrixRF operator-(const MatrixRF& a, const MatrixRF& b) {
    if (a.n_ != b.n_) throw PreconditionError("matrix size mismatch");
    MatrixRF c = a;
    for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] -= b.e_[i];
    return c;
}

std::vector<RatFun> MatrixRF::apply(const std::vector<RatFun>& v) const {
    if (v.size() != n_) throw PreconditionError("vector size mismatch");
    std::vector<RatFun> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

RatFun MatrixRF::det() const {
    MatrixRF m = *this;
    RatFun d(1);
    for (std::size_t c = 0; c < n_; ++c) {
        std::size_t piv = n_;
        for (std::size_t r = c; r < n_; ++r)
            if (!m(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv == n_) return RatFun();
        if (piv != c) {
            for (std::size_t k = 0; k < n_; ++k) std::swap(m(piv, k), m(c, k));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t r = c + 1; r < n_; ++r) {
            if (m(r, c).is_zero()) continue;
            RatFun f = m(r, c) / m(c, c);
            for (std::size_t k = c; k < n_; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return d;
}

MatrixRF MatrixRF::inverse() const {
    MatrixRF m = *this;
    MatrixRF inv = identity(n_);
    for (std::size_t c = 0; c < n_; ++c) {
        std::size_t piv = n_;
        for (std::size_t r = c; r < n_; ++r)
            if (!m(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv == n_) throw PreconditionError("matrix is singular over Q(x)");
        if (piv != c)
            for (std::size_t k = 0; k < n_; ++k) {
                std::swap(m(piv, k), m(c, k));
                std::swap(inv(piv, k), inv(c, k));
            }
        const RatFun p = RatFun(1) / m(c, c);
        for (std::size_t k = 0; k < n_; ++k) {
            m(c, k) *= p;
            inv(c, k) *= p;
        }
        for (std::size_t r = 0; r < n_; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            const RatFun f = m(r, c);
            for (std::size_t k = 0; k < n_; ++k) {
                m(r, k) -= f * m(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

std::string MatrixRF::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
        if (i) s += ",";
        s += "[";
        for (std::size_t j = 0; j < n_; ++j) {
            if (j) s += ",";
            s += (*this)(i, j).to_string();
        }
        s += "]";
    }
    return s + "]";
}

MatrixRF apply_sigma(const DiffStructure& ds, const MatrixRF& m, std::int64_t power) {
    MatrixRF out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = apply_sigma(ds, m(i, j), power);
    return out;
}

MatrixRF apply_derivation(const DiffStructure& ds, const MatrixRF& m) {
    MatrixRF out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = apply_derivation(ds, m(i, j));
    return out;
}

} // namespace diffalg
