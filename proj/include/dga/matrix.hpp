#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dga/field.hpp"

namespace dga {

template <FieldType F>
using Vec = std::vector<typename F::Elt>;

/* Dense matrix over an exact field.  Row-major.  All operations are pure;
 * results are deterministic for fixed input (first-nonzero pivoting). */
template <FieldType F>
class Matrix {
public:
    using Elt = typename F::Elt;

    Matrix(const F& f, std::size_t rows, std::size_t cols)
        : fld_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

    static Matrix identity(const F& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    static Matrix from_columns(const F& f, std::size_t rows, const std::vector<Vec<F>>& cols) {
        Matrix m(f, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw DimensionError("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    const F& field() const { return fld_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elt& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Elt& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<Elt> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
    std::span<const Elt> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

    Vec<F> col(std::size_t j) const {
        Vec<F> v(rows_, fld_.zero());
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }
    void set_col(std::size_t j, const Vec<F>& v) {
        if (v.size() != rows_) throw DimensionError("set_col length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    bool is_zero() const {
        for (const auto& e : a_)
            if (!fld_.is_zero(e)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (!(a.fld_ == b.fld_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.a_.size(); ++i)
            if (!a.fld_.eq(a.a_[i], b.a_[i])) return false;
        return true;
    }

    void check_same_field(const Matrix& o) const {
        if (!(fld_ == o.fld_)) throw FieldMismatchError("matrices over different fields");
    }

    Matrix mul(const Matrix& o) const {
        check_same_field(o);
        if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
        Matrix r(fld_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elt& aik = at(i, k);
                if (fld_.is_zero(aik)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Elt& b = o.at(k, j);
                    if (!fld_.is_zero(b)) r.at(i, j) = fld_.add(r.at(i, j), fld_.mul(aik, b));
                }
            }
        return r;
    }

    Vec<F> apply(std::span<const Elt> v) const {
        if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
        Vec<F> r(rows_, fld_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!fld_.is_zero(at(i, j)) && !fld_.is_zero(v[j]))
                    r[i] = fld_.add(r[i], fld_.mul(at(i, j), v[j]));
        return r;
    }

    Matrix add(const Matrix& o) const {
        check_same_field(o);
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
        Matrix r(fld_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_.add(a_[i], o.a_[i]);
        return r;
    }

    Matrix scaled(const Elt& c) const {
        Matrix r = *this;
        for (auto& e : r.a_) e = fld_.mul(e, c);
        return r;
    }

    Matrix negated() const {
        Matrix r = *this;
        for (auto& e : r.a_) e = fld_.neg(e);
        return r;
    }

    Matrix transposed() const {
        Matrix r(fld_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix hstack(const Matrix& o) const {
        check_same_field(o);
        if (rows_ != o.rows_) throw DimensionError("hstack row mismatch");
        Matrix r(fld_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    struct Rref {
        Matrix reduced;
        std::vector<std::size_t> pivots;
    };

    /* Reduced row echelon form with deterministic pivoting: columns scanned
     * left to right, pivot = first row with a nonzero entry. */
    Rref rref() const {
        Matrix m = *this;
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t sel = r;
            while (sel < rows_ && fld_.is_zero(m.at(sel, c))) ++sel;
            if (sel == rows_) continue;
            if (sel != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(r, j));
            Elt piv_inv = fld_.inv(m.at(r, c));
            fld_.row_scale(m.row(r), piv_inv);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || fld_.is_zero(m.at(i, c))) continue;
                Elt factor = fld_.neg(m.at(i, c));
                fld_.row_axpy(m.row(i), m.row(r), factor);
            }
            pivots.push_back(c);
            ++r;
        }
        return {std::move(m), std::move(pivots)};
    }

    std::size_t rank() const { return rref().pivots.size(); }

    /* Basis of the null space; size = cols - rank. */
    std::vector<Vec<F>> kernel_basis() const {
        auto [m, piv] = rref();
        std::vector<bool> is_piv(cols_, false);
        std::vector<std::size_t> piv_row(cols_, 0);
        for (std::size_t k = 0; k < piv.size(); ++k) {
            is_piv[piv[k]] = true;
            piv_row[piv[k]] = k;
        }
        std::vector<Vec<F>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_piv[f]) continue;
            Vec<F> v(cols_, fld_.zero());
            v[f] = fld_.one();
            for (std::size_t c = 0; c < cols_; ++c)
                if (is_piv[c]) v[c] = fld_.neg(m.at(piv_row[c], f));
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /* Basis of the column space: the original columns at the pivot indices. */
    std::vector<Vec<F>> image_basis() const {
        auto piv = rref().pivots;
        std::vector<Vec<F>> basis;
        basis.reserve(piv.size());
        for (std::size_t c : piv) basis.push_back(col(c));
        return basis;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw DimensionError("inverse of non-square matrix");
        auto [m, piv] = hstack(identity(fld_, rows_)).rref();
        if (piv.size() != rows_ || (rows_ > 0 && piv.back() >= rows_))
            throw Error("matrix is singular");
        Matrix r(fld_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = m.at(i, cols_ + j);
        return r;
    }

    /* Some x with m*x = b, or nullopt when the system is inconsistent.
     * Free variables are set to zero. */
    std::optional<Vec<F>> solve(const Vec<F>& b) const {
        if (b.size() != rows_) throw DimensionError("solve: rhs length mismatch");
        Matrix aug(fld_, rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        auto [m, piv] = aug.rref();
        if (!piv.empty() && piv.back() == cols_) return std::nullopt;
        Vec<F> x(cols_, fld_.zero());
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = m.at(k, cols_);
        return x;
    }

private:
    F fld_;
    std::size_t rows_, cols_;
    std::vector<Elt> a_;
};

/* Vector helpers. */
template <FieldType F>
Vec<F> zero_vec(const F& f, std::size_t n) {
    return Vec<F>(n, f.zero());
}

template <FieldType F>
Vec<F> unit_vec(const F& f, std::size_t n, std::size_t i) {
    Vec<F> v(n, f.zero());
    v[i] = f.one();
    return v;
}

template <FieldType F>
bool vec_is_zero(const F& f, const Vec<F>& v) {
    for (const auto& e : v)
        if (!f.is_zero(e)) return false;
    return true;
}

template <FieldType F>
void vec_axpy(const F& f, Vec<F>& y, const Vec<F>& x, const typename F::Elt& c) {
    if (y.size() != x.size()) throw DimensionError("vec_axpy length mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = f.add(y[i], f.mul(c, x[i]));
}

/* Coordinates of v's class in ambient/span(sub), over the deterministic
 * complement basis: the lexicographically earliest standard basis vectors
 * completing `sub` to a basis of the ambient space. */
template <FieldType F>
struct QuotientCoords {
    std::vector<std::size_t> complement;  // indices of the chosen standard basis vectors
    Vec<F> coords;
};

template <FieldType F>
QuotientCoords<F> coordinates_in_quotient(const F& f, const std::vector<Vec<F>>& sub,
                                          std::size_t ambient_dim, const Vec<F>& v) {
    if (v.size() != ambient_dim) throw DimensionError("vector outside ambient dimension");
    for (const auto& s : sub)
        if (s.size() != ambient_dim) throw DimensionError("subspace vector outside ambient dimension");
    Matrix<F> s = Matrix<F>::from_columns(f, ambient_dim, sub);
    Matrix<F> w = s.hstack(Matrix<F>::identity(f, ambient_dim));
    auto piv = w.rref().pivots;
    std::size_t k = sub.size();
    for (std::size_t i = 0; i < std::min(k, piv.size()); ++i)
        if (piv[i] != i) throw Error("subspace vectors are not linearly independent");
    if (piv.size() < k) throw Error("subspace vectors are not linearly independent");
    std::vector<std::size_t> complement;
    for (std::size_t i = k; i < piv.size(); ++i) complement.push_back(piv[i] - k);
    Matrix<F> basis(f, ambient_dim, k + complement.size());
    for (std::size_t j = 0; j < k; ++j) basis.set_col(j, sub[j]);
    for (std::size_t j = 0; j < complement.size(); ++j)
        basis.set_col(k + j, unit_vec(f, ambient_dim, complement[j]));
    auto x = basis.solve(v);
    if (!x) throw Error("vector not expressible in the combined basis");
    QuotientCoords<F> out;
    out.complement = std::move(complement);
    out.coords.assign(x->begin() + k, x->end());
    return out;
}

}  // namespace dga
