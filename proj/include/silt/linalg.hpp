#pragma once

// Deterministic exact linear algebra kernels. Pivoting always picks the first
// nonzero entry in column order, so every basis the library produces is
// bit-identical across runs. Everything else in the library reduces to these.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "silt/field.hpp"

namespace silt {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using ColVec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;
using Index = Eigen::Index;

template <class S>
bool mat_is_zero(const Mat<S>& a) {
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (!scalar_is_zero(a(i, j))) return false;
    return true;
}

template <class S>
bool mat_eq(const Mat<S>& a, const Mat<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

template <class S>
Mat<S> mat_zero(Index r, Index c) {
    Mat<S> m(r, c);
    m.setConstant(S(0));
    return m;
}

template <class S>
Mat<S> mat_identity(Index n) {
    Mat<S> m = mat_zero<S>(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
}

template <class S>
struct Echelon {
    Mat<S> reduced;                 // reduced row echelon form
    std::vector<Index> pivot_cols;  // ascending
    Index rank = 0;
};

template <class S>
Echelon<S> rref(Mat<S> a) {
    Echelon<S> e;
    Index rows = a.rows(), cols = a.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i)
            if (!scalar_is_zero(a(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) a.row(piv).swap(a.row(r));
        S inv = S(1) / a(r, c);
        for (Index j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
        for (Index i = 0; i < rows; ++i) {
            if (i == r || scalar_is_zero(a(i, c))) continue;
            S f = a(i, c);
            for (Index j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.rank = r;
    e.reduced = std::move(a);
    return e;
}

template <class S>
Index rank_of(const Mat<S>& a) {
    return rref(a).rank;
}

// Basis of the right null space {x : a x = 0}, one column per basis vector,
// in reduced form: unit coordinate at its free column, zeros at other free
// columns. Deterministic.
template <class S>
Mat<S> kernel_basis(const Mat<S>& a) {
    Echelon<S> e = rref(a);
    Index cols = a.cols();
    std::vector<Index> free_cols;
    {
        std::size_t pi = 0;
        for (Index c = 0; c < cols; ++c) {
            if (pi < e.pivot_cols.size() && e.pivot_cols[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Mat<S> k = mat_zero<S>(cols, static_cast<Index>(free_cols.size()));
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        Index fc = free_cols[j];
        k(fc, static_cast<Index>(j)) = S(1);
        for (Index pi = 0; pi < e.rank; ++pi)
            k(e.pivot_cols[pi], static_cast<Index>(j)) = -e.reduced(pi, fc);
    }
    return k;
}

// Some x with a x = b (free variables zero), or nullopt when inconsistent.
template <class S>
std::optional<ColVec<S>> solve(const Mat<S>& a, const ColVec<S>& b) {
    if (b.rows() != a.rows()) throw usage_error("solve: dimension mismatch");
    Mat<S> aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    Echelon<S> e = rref(std::move(aug));
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
    ColVec<S> x = mat_zero<S>(a.cols(), 1).col(0);
    for (Index i = 0; i < e.rank; ++i) x(e.pivot_cols[i]) = e.reduced(i, a.cols());
    return x;
}

// Solves a X = rhs for all columns at once; nullopt if any column fails.
template <class S>
std::optional<Mat<S>> solve_matrix(const Mat<S>& a, const Mat<S>& rhs) {
    if (rhs.rows() != a.rows()) throw usage_error("solve_matrix: dimension mismatch");
    Mat<S> x = mat_zero<S>(a.cols(), rhs.cols());
    Mat<S> aug(a.rows(), a.cols() + rhs.cols());
    aug.leftCols(a.cols()) = a;
    aug.rightCols(rhs.cols()) = rhs;
    Echelon<S> e = rref(std::move(aug));
    for (Index i = 0; i < e.rank; ++i) {
        if (e.pivot_cols[i] >= a.cols()) return std::nullopt;
        for (Index j = 0; j < rhs.cols(); ++j)
            x(e.pivot_cols[i], j) = e.reduced(i, a.cols() + j);
    }
    return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    auto x = solve_matrix(a, mat_identity<S>(a.rows()));
    if (!x) return std::nullopt;
    if (!mat_eq<S>(a * *x, mat_identity<S>(a.rows()))) return std::nullopt;
    return x;
}

// Basis of the column space, reduced against earlier columns; deterministic.
template <class S>
Mat<S> column_space_basis(const Mat<S>& a) {
    Echelon<S> e = rref(a);
    Mat<S> b(a.rows(), e.rank);
    for (Index i = 0; i < e.rank; ++i) b.col(i) = a.col(e.pivot_cols[i]);
    return b;
}

// Projection/lift pair for ambient/span(sub): proj*lift = id on the quotient,
// ker(proj) = span(sub). `sub` holds the subspace generators as columns.
template <class S>
struct QuotientMaps {
    Mat<S> proj;  // q x ambient
    Mat<S> lift;  // ambient x q
    Index dim = 0;
};

template <class S>
QuotientMaps<S> quotient_basis(const Mat<S>& sub, Index ambient_dim) {
    if (sub.rows() != ambient_dim && sub.cols() != 0)
        throw usage_error("quotient_basis: subspace vectors have wrong ambient dimension");
    Mat<S> rows = sub.transpose();  // subspace as row space
    Echelon<S> e = rref(std::move(rows));
    std::vector<Index> free_cols;
    {
        std::size_t pi = 0;
        for (Index c = 0; c < ambient_dim; ++c) {
            if (pi < e.pivot_cols.size() && e.pivot_cols[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Index q = static_cast<Index>(free_cols.size());
    QuotientMaps<S> maps;
    maps.dim = q;
    // proj: reduce modulo the echelonized subspace, then read free coordinates.
    maps.proj = mat_zero<S>(q, ambient_dim);
    for (Index j = 0; j < q; ++j) maps.proj(j, free_cols[j]) = S(1);
    for (Index i = 0; i < e.rank; ++i) {
        Index pc = e.pivot_cols[i];
        for (Index j = 0; j < q; ++j)
            maps.proj(j, pc) = -e.reduced(i, free_cols[j]);
    }
    maps.lift = mat_zero<S>(ambient_dim, q);
    for (Index j = 0; j < q; ++j) maps.lift(free_cols[j], j) = S(1);
    return maps;
}

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> k = mat_zero<S>(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            if (scalar_is_zero(a(i, j))) continue;
            for (Index r = 0; r < b.rows(); ++r)
                for (Index c = 0; c < b.cols(); ++c)
                    k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
        }
    return k;
}

template <class S>
Mat<S> vcat(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() != b.cols())
        throw usage_error("vcat: column mismatch");
    Mat<S> m(a.rows() + b.rows(), a.cols());
    m.topRows(a.rows()) = a;
    m.bottomRows(b.rows()) = b;
    return m;
}

template <class S>
Mat<S> hcat(const Mat<S>& a, const Mat<S>& b) {
    if (a.rows() != b.rows())
        throw usage_error("hcat: row mismatch");
    Mat<S> m(a.rows(), a.cols() + b.cols());
    m.leftCols(a.cols()) = a;
    m.rightCols(b.cols()) = b;
    return m;
}

// --- row-convention helpers -------------------------------------------------
// Modules in this library act on row vectors (m -> m * A), so subspaces of a
// module are row spaces. These wrappers keep the transposition in one place.

// Rows spanning {x : x * a = 0}, echelonized.
template <class S>
Mat<S> left_kernel(const Mat<S>& a) {
    Mat<S> k = kernel_basis<S>(Mat<S>(a.transpose()));
    return k.transpose();
}

// Echelonized basis of the row space.
template <class S>
Mat<S> row_space_basis(const Mat<S>& a) {
    Echelon<S> e = rref(a);
    return e.reduced.topRows(e.rank);
}

// Quotient of row-vector space k^ambient by the row space of `sub`.
// proj: ambient x q (applied on the right), lift: q x ambient, lift*proj = id.
template <class S>
struct RowQuotient {
    Mat<S> proj;
    Mat<S> lift;
    Index dim = 0;
};

template <class S>
RowQuotient<S> row_quotient(const Mat<S>& sub, Index ambient_dim) {
    if (sub.cols() != ambient_dim && sub.rows() != 0)
        throw usage_error("row_quotient: wrong ambient dimension");
    QuotientMaps<S> q = quotient_basis<S>(Mat<S>(sub.transpose()), ambient_dim);
    return RowQuotient<S>{q.proj.transpose(), q.lift.transpose(), q.dim};
}

// Coordinates of row x in the echelonized row basis `basis`, if x lies in it.
template <class S>
std::optional<RowVec<S>> row_coordinates(const Mat<S>& basis, const RowVec<S>& x) {
    auto sol = solve<S>(Mat<S>(basis.transpose()), ColVec<S>(x.transpose()));
    if (!sol) return std::nullopt;
    return RowVec<S>(sol->transpose());
}

// Row-major flattening <-> matrix, used to move between maps and vectors.
template <class S>
RowVec<S> flatten(const Mat<S>& m) {
    RowVec<S> v(m.rows() * m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

template <class S>
Mat<S> unflatten(const RowVec<S>& v, Index rows, Index cols) {
    if (v.cols() != rows * cols) throw usage_error("unflatten: size mismatch");
    Mat<S> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
    return m;
}

}  // namespace silt
