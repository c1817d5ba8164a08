#pragma once

// Finite-dimensional right modules and their maps. Elements are row vectors;
// the action of a basis element b is a matrix acting on the right, so
// action(b1) * action(b2) == action(b1 * b2), and module maps compose
// left-to-right like paths: matrix_of(f then g) = matrix_of(f) * matrix_of(g).

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "silt/algebra.hpp"

namespace silt {

template <class S>
class FdModule {
public:
    AlgebraPtr<S> algebra;
    std::vector<Mat<S>> actions;  // one dim x dim matrix per algebra basis element

    FdModule() = default;
    FdModule(AlgebraPtr<S> alg, std::vector<Mat<S>> act, bool check = true)
        : algebra(std::move(alg)), actions(std::move(act)) {
        if (check) validate();
    }

    Index dim() const { return actions.empty() ? 0 : actions[0].rows(); }

    static FdModule zero(AlgebraPtr<S> alg) {
        std::vector<Mat<S>> act(alg->dim(), mat_zero<S>(0, 0));
        return FdModule(std::move(alg), std::move(act), false);
    }

    Mat<S> action_of(const RowVec<S>& x) const {
        Mat<S> m = mat_zero<S>(dim(), dim());
        for (Index k = 0; k < algebra->dim(); ++k)
            if (!scalar_is_zero(x(k))) m += x(k) * actions[k];
        return m;
    }

    Mat<S> unit_action() const { return action_of(algebra->unit); }

    void validate() const {
        const auto& A = *algebra;
        require(static_cast<Index>(actions.size()) == A.dim(), "one action matrix per basis element");
        Index d = dim();
        for (auto& m : actions)
            require(m.rows() == d && m.cols() == d, "action matrices must be square of equal size");
        require(mat_eq<S>(unit_action(), mat_identity<S>(d)), "unit must act as identity");
        for (Index i = 0; i < A.dim(); ++i)
            for (Index j = 0; j < A.dim(); ++j) {
                Mat<S> lhs = actions[i] * actions[j];
                Mat<S> rhs = action_of(RowVec<S>(A.table.row(i * A.dim() + j)));
                require(mat_eq<S>(lhs, rhs), "action does not respect the structure constants");
            }
    }

    // dimension of M e for each stored idempotent e
    std::vector<Index> dim_vector() const {
        std::vector<Index> dv;
        for (auto& e : algebra->idempotents) dv.push_back(rank_of<S>(action_of(e)));
        return dv;
    }

    bool is_zero() const { return dim() == 0; }
};

template <class S>
class ModuleMap {
public:
    FdModule<S> source;
    FdModule<S> target;
    Mat<S> matrix;  // source.dim x target.dim, applied as m -> m * matrix

    ModuleMap() = default;
    ModuleMap(FdModule<S> src, FdModule<S> tgt, Mat<S> m, bool check = true)
        : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
        if (check) validate();
    }

    void validate() const {
        require(matrix.rows() == source.dim() && matrix.cols() == target.dim(),
                "module map has wrong shape");
        for (Index k = 0; k < source.algebra->dim(); ++k)
            require(mat_eq<S>(Mat<S>(source.actions[k] * matrix), Mat<S>(matrix * target.actions[k])),
                    "matrix does not intertwine the actions");
    }

    bool is_zero() const { return mat_is_zero<S>(matrix); }

    ModuleMap then(const ModuleMap& g) const {
        return ModuleMap(source, g.target, Mat<S>(matrix * g.matrix), false);
    }

    static ModuleMap identity(const FdModule<S>& m) {
        return ModuleMap(m, m, mat_identity<S>(m.dim()), false);
    }

    static ModuleMap zero(const FdModule<S>& src, const FdModule<S>& tgt) {
        return ModuleMap(src, tgt, mat_zero<S>(src.dim(), tgt.dim()), false);
    }
};

// The right regular module A_A.
template <class S>
FdModule<S> regular_module(const AlgebraPtr<S>& alg) {
    std::vector<Mat<S>> act;
    for (Index j = 0; j < alg->dim(); ++j) act.push_back(alg->right_mult(j));
    return FdModule<S>(alg, std::move(act));
}

// Submodule spanned by the given rows (must already be action-invariant).
template <class S>
std::pair<FdModule<S>, ModuleMap<S>> submodule_from_rows(const FdModule<S>& m, const Mat<S>& rows) {
    Mat<S> basis = row_space_basis<S>(rows);
    std::vector<Mat<S>> act;
    for (Index k = 0; k < m.algebra->dim(); ++k) {
        Mat<S> moved = basis * m.actions[k];  // rows stay inside the span
        auto coords = solve_matrix<S>(Mat<S>(basis.transpose()), Mat<S>(moved.transpose()));
        require(coords.has_value(), "rows do not span an action-invariant subspace");
        act.push_back(coords->transpose());
    }
    FdModule<S> sub(m.algebra, std::move(act));
    ModuleMap<S> incl(sub, m, basis);
    return {std::move(sub), std::move(incl)};
}

// Smallest submodule containing the given rows.
template <class S>
std::pair<FdModule<S>, ModuleMap<S>> generated_submodule(const FdModule<S>& m, const Mat<S>& rows) {
    Mat<S> span = row_space_basis<S>(rows);
    for (;;) {
        Mat<S> bigger = span;
        for (Index k = 0; k < m.algebra->dim(); ++k)
            bigger = vcat<S>(bigger, Mat<S>(span * m.actions[k]));
        bigger = row_space_basis<S>(bigger);
        if (bigger.rows() == span.rows()) break;
        span = bigger;
    }
    return submodule_from_rows(m, span);
}

// Quotient of m by an action-invariant row space.
template <class S>
std::pair<FdModule<S>, ModuleMap<S>> quotient_by_rows(const FdModule<S>& m, const Mat<S>& rows) {
    RowQuotient<S> q = row_quotient<S>(rows, m.dim());
    std::vector<Mat<S>> act;
    for (Index k = 0; k < m.algebra->dim(); ++k)
        act.push_back(Mat<S>(q.lift * m.actions[k] * q.proj));
    FdModule<S> quot(m.algebra, std::move(act));
    ModuleMap<S> proj(m, quot, q.proj);
    return {std::move(quot), std::move(proj)};
}

template <class S>
std::pair<FdModule<S>, ModuleMap<S>> kernel_of(const ModuleMap<S>& f) {
    Mat<S> k = left_kernel<S>(f.matrix);
    return submodule_from_rows(f.source, k);
}

// kernel, image and cokernel of a map in one pass, with their structure maps
template <class S>
struct MapCalculus {
    FdModule<S> kernel;
    ModuleMap<S> kernel_incl;
    FdModule<S> image;
    ModuleMap<S> image_incl;
    FdModule<S> cokernel;
    ModuleMap<S> cokernel_proj;
};

template <class S>
std::pair<FdModule<S>, ModuleMap<S>> image_of(const ModuleMap<S>& f) {
    return submodule_from_rows(f.target, f.matrix);
}

template <class S>
std::pair<FdModule<S>, ModuleMap<S>> cokernel_of(const ModuleMap<S>& f) {
    return quotient_by_rows(f.target, f.matrix);
}

template <class S>
MapCalculus<S> map_calculus(const ModuleMap<S>& f) {
    auto [k, ki] = kernel_of(f);
    auto [im, ii] = image_of(f);
    auto [c, cp] = cokernel_of(f);
    require(k.dim() + im.dim() == f.source.dim(), "rank-nullity fails");
    require(c.dim() == f.target.dim() - im.dim(), "cokernel dimension fails");
    return MapCalculus<S>{std::move(k), std::move(ki), std::move(im),
                          std::move(ii), std::move(c), std::move(cp)};
}

template <class S>
FdModule<S> direct_sum(const FdModule<S>& a, const FdModule<S>& b) {
    require(a.algebra == b.algebra || mat_eq<S>(a.algebra->table, b.algebra->table),
            "direct sum across different algebras");
    std::vector<Mat<S>> act;
    for (Index k = 0; k < a.algebra->dim(); ++k) {
        Mat<S> m = mat_zero<S>(a.dim() + b.dim(), a.dim() + b.dim());
        m.topLeftCorner(a.dim(), a.dim()) = a.actions[k];
        m.bottomRightCorner(b.dim(), b.dim()) = b.actions[k];
        act.push_back(m);
    }
    return FdModule<S>(a.algebra, std::move(act), false);
}

// Basis of Hom_A(M, N), deterministic order.
template <class S>
std::vector<ModuleMap<S>> hom_space(const FdModule<S>& m, const FdModule<S>& n) {
    if (m.algebra != n.algebra && !mat_eq<S>(m.algebra->table, n.algebra->table))
        throw usage_error("hom_space: modules over different algebras");
    Index dm = m.dim(), dn = n.dim();
    if (dm == 0 || dn == 0) return {};
    // Unknown X (dm x dn, row-major flattened): A_k X = X B_k for every k.
    Index nb = m.algebra->dim();
    Mat<S> sys = mat_zero<S>(nb * dm * dn, dm * dn);
    Mat<S> idm = mat_identity<S>(dm), idn = mat_identity<S>(dn);
    for (Index k = 0; k < nb; ++k) {
        // row-major vec: vec(A X) = kron(A, I_dn) vec(X); vec(X B) = kron(I_dm, B^T) vec(X)
        Mat<S> block = kron<S>(m.actions[k], idn) - kron<S>(idm, Mat<S>(n.actions[k].transpose()));
        sys.middleRows(k * dm * dn, dm * dn) = block;
    }
    Mat<S> basis = kernel_basis<S>(sys);
    std::vector<ModuleMap<S>> out;
    for (Index j = 0; j < basis.cols(); ++j) {
        RowVec<S> flat = basis.col(j).transpose();
        out.emplace_back(m, n, unflatten<S>(flat, dm, dn), false);
    }
    return out;
}

// Trace of T in M: the largest T-generated submodule, computed as the sum of
// the images of a Hom basis.
template <class S>
std::pair<FdModule<S>, ModuleMap<S>> trace_of(const FdModule<S>& t, const FdModule<S>& m) {
    Mat<S> rows(0, m.dim());
    for (auto& f : hom_space(t, m)) rows = vcat<S>(rows, f.matrix);
    return submodule_from_rows(m, row_space_basis<S>(rows));
}

namespace detail {

template <class S>
std::optional<ModuleMap<S>> check_combination(const FdModule<S>& m, const FdModule<S>& n,
                                              const std::vector<ModuleMap<S>>& homs,
                                              const std::vector<S>& coeff) {
    Mat<S> x = mat_zero<S>(m.dim(), n.dim());
    for (std::size_t i = 0; i < homs.size(); ++i) x += coeff[i] * homs[i].matrix;
    if (rank_of<S>(x) != m.dim()) return std::nullopt;
    return ModuleMap<S>(m, n, std::move(x), false);
}

}  // namespace detail

// Isomorphism witness search. Certified in both directions: a returned map is
// exactly invertible; nullopt is only returned once the relevant search space
// has been exhausted. Throws undecided_error when caps forbid exhaustion.
template <class S>
std::optional<ModuleMap<S>> is_isomorphic(const FdModule<S>& m, const FdModule<S>& n,
                                          const Config& cfg = Config{}) {
    if (m.dim() != n.dim()) return std::nullopt;
    if (m.dim() == 0) return ModuleMap<S>(m, n, mat_zero<S>(0, 0), false);
    if (m.dim_vector() != n.dim_vector()) return std::nullopt;
    auto homs = hom_space(m, n);
    if (homs.empty()) return std::nullopt;
    if (hom_space(m, m).size() != hom_space(n, n).size()) return std::nullopt;
    Index h = static_cast<Index>(homs.size());
    const Field& fld = m.algebra->field;

    if (fld.is_finite()) {
        int64_t total = 1;
        bool overflow = false;  // cannot even represent the count
        for (Index i = 0; i < h; ++i) {
            if (total > (int64_t(1) << 48) / fld.p) { overflow = true; break; }
            total *= fld.p;
        }
        auto combo_at = [&](int64_t code) {
            std::vector<S> coeff(h);
            for (Index i = 0; i < h; ++i) {
                coeff[i] = FieldOps<S>::from_int(fld, code % fld.p);
                code /= fld.p;
            }
            return coeff;
        };
        if (!overflow && total <= cfg.iso_search_cap) {
            for (int64_t code = 1; code < total; ++code)
                if (auto iso = detail::check_combination(m, n, homs, combo_at(code))) return iso;
            return std::nullopt;
        }
        // sampling first: fast when an isomorphism exists
        std::mt19937_64 rng(cfg.seed);
        for (int64_t s = 0; s < cfg.iso_samples; ++s) {
            std::vector<S> coeff(h);
            for (Index i = 0; i < h; ++i)
                coeff[i] = FieldOps<S>::from_int(fld, static_cast<int64_t>(rng() % fld.p));
            if (auto iso = detail::check_combination(m, n, homs, coeff)) return iso;
        }
        if (!cfg.iso_exhaustive_fallback || overflow)
            throw undecided_error("hom space too large for exhaustive isomorphism search");
        for (int64_t code = 1; code < total; ++code)
            if (auto iso = detail::check_combination(m, n, homs, combo_at(code))) return iso;
        return std::nullopt;
    }

    // Rationals: det(sum c_i X_i) is a polynomial of degree <= d in each c_i.
    // A full grid with d+1 points per variable decides vanishing exactly;
    // every hit is certified by the exact rank computation.
    Index d = m.dim();
    std::vector<S> points;
    points.push_back(FieldOps<S>::from_int(fld, 0));
    for (Index k = 1; static_cast<Index>(points.size()) < d + 1; ++k) {
        points.push_back(FieldOps<S>::from_int(fld, k));
        if (static_cast<Index>(points.size()) < d + 1)
            points.push_back(FieldOps<S>::from_int(fld, -k));
    }
    int64_t total = 1;
    for (Index i = 0; i < h; ++i) {
        if (total > cfg.iso_search_cap / static_cast<int64_t>(points.size()) + 1)
            throw undecided_error("hom space too large for grid isomorphism search over Q");
        total *= static_cast<int64_t>(points.size());
    }
    if (total > cfg.iso_search_cap)
        throw undecided_error("hom space too large for grid isomorphism search over Q");
    for (int64_t code = 1; code < total; ++code) {
        int64_t c = code;
        std::vector<S> coeff(h);
        for (Index i = 0; i < h; ++i) {
            coeff[i] = points[c % points.size()];
            c /= static_cast<int64_t>(points.size());
        }
        if (auto iso = detail::check_combination(m, n, homs, coeff)) return iso;
    }
    return std::nullopt;
}

template <class S>
ModuleMap<S> inverse_map(const ModuleMap<S>& f) {
    auto inv = inverse<S>(f.matrix);
    require(inv.has_value(), "inverse_map: map is not invertible");
    return ModuleMap<S>(f.target, f.source, *inv, false);
}

// P(v) = e_v A with the right regular action; dim = #paths starting at v.
// Returned with its inclusion into the regular module.
template <class S>
std::pair<FdModule<S>, ModuleMap<S>> projective_with_inclusion(const AlgebraPtr<S>& alg, int vertex) {
    if (!alg->quiver) throw usage_error("projective_module needs a path algebra");
    if (vertex < 0 || vertex >= static_cast<int>(alg->quiver->vertices.size()))
        throw usage_error("unknown vertex index in projective_module");
    FdModule<S> reg = regular_module(alg);
    RowVec<S> ev = alg->vertex_units.at(vertex);
    Mat<S> rows(alg->dim(), alg->dim());
    for (Index k = 0; k < alg->dim(); ++k)
        rows.row(k) = alg->multiply(ev, alg->basis_vector(k));
    return submodule_from_rows(reg, row_space_basis<S>(rows));
}

template <class S>
FdModule<S> projective_module(const AlgebraPtr<S>& alg, int vertex) {
    return projective_with_inclusion(alg, vertex).first;
}

// One-dimensional module concentrated at a vertex (top of P(v)); only valid
// when the relations allow it, which validate() enforces.
template <class S>
FdModule<S> simple_module(const AlgebraPtr<S>& alg, int vertex) {
    if (!alg->quiver) throw usage_error("simple_module needs a path algebra");
    std::string label = "e_" + alg->quiver->vertices[vertex];
    std::vector<Mat<S>> act;
    for (Index k = 0; k < alg->dim(); ++k) {
        Mat<S> m(1, 1);
        m(0, 0) = FieldOps<S>::from_int(alg->field, alg->basis_labels[k] == label ? 1 : 0);
        act.push_back(m);
    }
    return FdModule<S>(alg, std::move(act));
}

// Deterministic right inverse: returns L with L * p = identity, for a
// surjective row-convention matrix p (e.g. a quotient projection).
template <class S>
Mat<S> row_section(const Mat<S>& p) {
    auto lt = solve_matrix<S>(Mat<S>(p.transpose()), mat_identity<S>(p.cols()));
    require(lt.has_value(), "row_section: matrix has no right inverse");
    return lt->transpose();
}

// Free module A^copies with the generator-to-coordinates surjection onto Z:
// generator (i, k) maps to z_i * b_k.
template <class S>
std::pair<FdModule<S>, ModuleMap<S>> free_cover(const FdModule<S>& z) {
    const AlgebraPtr<S>& alg = z.algebra;
    Index n = alg->dim(), a = z.dim();
    FdModule<S> free = FdModule<S>::zero(alg);
    for (Index i = 0; i < a; ++i) free = direct_sum(free, regular_module(alg));
    Mat<S> p = mat_zero<S>(a * n, z.dim());
    for (Index i = 0; i < a; ++i)
        for (Index k = 0; k < n; ++k) p.row(i * n + k) = z.actions[k].row(i);
    return {std::move(free), ModuleMap<S>(free, z, std::move(p))};
}

// dim Ext^1(Z, X) computed from 0 -> K -> A^a -> Z -> 0 as the cokernel of
// Hom(A^a, X) -> Hom(K, X).
template <class S>
Index ext1_dim(const FdModule<S>& z, const FdModule<S>& x) {
    if (z.dim() == 0) return 0;
    auto [free, p] = free_cover(z);
    require(rank_of<S>(p.matrix) == z.dim(), "free cover must be surjective");
    auto [k, incl] = kernel_of(p);
    auto hom_free_x = hom_space(free, x);
    auto hom_k_x = hom_space(k, x);
    if (hom_k_x.empty()) return 0;
    Mat<S> basis = mat_zero<S>(static_cast<Index>(hom_k_x.size()), k.dim() * x.dim());
    for (std::size_t t = 0; t < hom_k_x.size(); ++t)
        basis.row(static_cast<Index>(t)) = flatten<S>(hom_k_x[t].matrix);
    Mat<S> restricted = mat_zero<S>(static_cast<Index>(hom_free_x.size()), k.dim() * x.dim());
    for (std::size_t t = 0; t < hom_free_x.size(); ++t)
        restricted.row(static_cast<Index>(t)) = flatten<S>(Mat<S>(incl.matrix * hom_free_x[t].matrix));
    return static_cast<Index>(hom_k_x.size()) - rank_of<S>(restricted);
}

// Hom(e_s A, e_t A) is left multiplication by elements of e_t A e_s; this
// returns the map P(s) -> P(t), u -> x * u.
template <class S>
ModuleMap<S> hom_from_element(const FdModule<S>& ps, const FdModule<S>& pt,
                              const ModuleMap<S>& incl_s, const ModuleMap<S>& incl_t,
                              const RowVec<S>& x) {
    const auto& alg = *ps.algebra;
    Mat<S> img(ps.dim(), alg.dim());
    for (Index i = 0; i < ps.dim(); ++i)
        img.row(i) = alg.multiply(x, RowVec<S>(incl_s.matrix.row(i)));
    auto coords = solve_matrix<S>(Mat<S>(incl_t.matrix.transpose()), Mat<S>(img.transpose()));
    require(coords.has_value(), "element does not map the projective into the target");
    return ModuleMap<S>(ps, pt, coords->transpose());
}

}  // namespace silt
