#pragma once

// Finite-dimensional associative algebras with a distinguished basis,
// structure-constant multiplication and a stored family of orthogonal
// idempotents summing to one. Instances come from path algebras kQ/I and from
// endomorphism algebras of two-term complexes.

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "silt/config.hpp"
#include "silt/linalg.hpp"
#include "silt/quiver.hpp"

namespace silt {

template <class S>
class FiniteDimAlgebra {
public:
    Field field;
    std::vector<std::string> basis_labels;
    // row (i*dim + j) holds the coordinates of basis_i * basis_j
    Mat<S> table;
    RowVec<S> unit;
    std::vector<RowVec<S>> idempotents;
    // path algebras only: residues of the trivial paths and of the arrows
    std::vector<RowVec<S>> vertex_units;
    std::vector<RowVec<S>> arrow_units;
    std::vector<Path> basis_paths;  // path algebras: the residue basis as paths
    std::optional<Quiver> quiver;

    // residue of a path in the quotient algebra
    RowVec<S> path_element(const Path& p) const {
        if (!quiver) throw usage_error("path_element needs a path algebra");
        RowVec<S> x = vertex_units.at(p.start);
        for (int a : p.arrows) x = multiply(x, arrow_units.at(a));
        return x;
    }

    template <class Combo>
    RowVec<S> combo_element(const Combo& terms) const {
        RowVec<S> x = zero();
        for (auto& t : terms) x += t.coeff * path_element(t.path);
        return x;
    }

    Index dim() const { return static_cast<Index>(basis_labels.size()); }

    RowVec<S> zero() const { return RowVec<S>(mat_zero<S>(1, dim()).row(0)); }

    RowVec<S> basis_vector(Index k) const {
        RowVec<S> v = zero();
        v(k) = FieldOps<S>::from_int(field, 1);
        return v;
    }

    RowVec<S> multiply(const RowVec<S>& x, const RowVec<S>& y) const {
        RowVec<S> r = zero();
        for (Index i = 0; i < dim(); ++i) {
            if (scalar_is_zero(x(i))) continue;
            for (Index j = 0; j < dim(); ++j) {
                if (scalar_is_zero(y(j))) continue;
                r += (x(i) * y(j)) * table.row(i * dim() + j);
            }
        }
        return r;
    }

    // matrix of right multiplication by basis_j on row coordinates:
    // coords(x * b_j) = coords(x) * right_mult(j)
    Mat<S> right_mult(Index j) const {
        Mat<S> m(dim(), dim());
        for (Index i = 0; i < dim(); ++i) m.row(i) = table.row(i * dim() + j);
        return m;
    }

    Mat<S> left_mult(Index i) const {
        Mat<S> m(dim(), dim());
        for (Index j = 0; j < dim(); ++j) m.row(j) = table.row(i * dim() + j);
        return m;
    }

    Mat<S> right_mult_of(const RowVec<S>& x) const {
        Mat<S> m = mat_zero<S>(dim(), dim());
        for (Index j = 0; j < dim(); ++j)
            if (!scalar_is_zero(x(j))) m += x(j) * right_mult(j);
        return m;
    }

    void validate() const {
        Index n = dim();
        require(table.rows() == n * n && table.cols() == n, "algebra table shape");
        require(unit.cols() == n, "algebra unit shape");
        for (Index i = 0; i < n; ++i) {
            require(mat_eq<S>(Mat<S>(multiply(unit, basis_vector(i))), Mat<S>(basis_vector(i))),
                    "unit law fails on the left");
            require(mat_eq<S>(Mat<S>(multiply(basis_vector(i), unit)), Mat<S>(basis_vector(i))),
                    "unit law fails on the right");
        }
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < n; ++k) {
                    RowVec<S> ab_c = multiply(RowVec<S>(table.row(i * n + j)), basis_vector(k));
                    RowVec<S> a_bc = multiply(basis_vector(i), RowVec<S>(table.row(j * n + k)));
                    require(mat_eq<S>(Mat<S>(ab_c), Mat<S>(a_bc)), "associativity fails");
                }
        RowVec<S> sum = zero();
        for (std::size_t a = 0; a < idempotents.size(); ++a) {
            for (std::size_t b = 0; b < idempotents.size(); ++b) {
                RowVec<S> prod = multiply(idempotents[a], idempotents[b]);
                RowVec<S> expect = a == b ? idempotents[a] : zero();
                require(mat_eq<S>(Mat<S>(prod), Mat<S>(expect)), "idempotents not orthogonal");
            }
            sum += idempotents[a];
        }
        require(mat_eq<S>(Mat<S>(sum), Mat<S>(unit)), "idempotents do not sum to the unit");
    }

    FiniteDimAlgebra<S> opposite() const {
        FiniteDimAlgebra<S> op = *this;
        Index n = dim();
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) op.table.row(i * n + j) = table.row(j * n + i);
        return op;
    }

    // Splits the stored idempotents into finer orthogonal ones by exhaustive
    // search inside each Peirce corner. Finite fields only; respects the cap.
    void refine_idempotents(const Config& cfg) {
        if (!field.is_finite()) return;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t k = 0; k < idempotents.size(); ++k) {
                RowVec<S> e = idempotents[k];
                // corner basis of e*A*e
                Mat<S> corner(0, dim());
                for (Index i = 0; i < dim(); ++i) {
                    RowVec<S> v = multiply(multiply(e, basis_vector(i)), e);
                    corner = vcat<S>(corner, Mat<S>(v));
                }
                Mat<S> cb = row_space_basis<S>(corner);
                Index cd = cb.rows();
                if (cd <= 1) continue;
                int64_t total = 1;
                bool too_big = false;
                for (Index t = 0; t < cd; ++t) {
                    if (total > cfg.idem_refine_cap / field.p) { too_big = true; break; }
                    total *= field.p;
                }
                if (too_big) continue;  // corner too big to sweep; keep it coarse
                bool split = false;
                for (int64_t code = 1; code < total && !split; ++code) {
                    int64_t c = code;
                    RowVec<S> x = zero();
                    for (Index t = 0; t < cd; ++t) {
                        x += FieldOps<S>::from_int(field, c % field.p) * cb.row(t);
                        c /= field.p;
                    }
                    if (mat_is_zero<S>(Mat<S>(x))) continue;
                    if (mat_eq<S>(Mat<S>(x), Mat<S>(e))) continue;
                    if (!mat_eq<S>(Mat<S>(multiply(x, x)), Mat<S>(x))) continue;
                    RowVec<S> rest = e - x;  // also idempotent and orthogonal to x
                    idempotents[k] = x;
                    idempotents.insert(idempotents.begin() + k + 1, rest);
                    split = true;
                    changed = true;
                }
            }
        }
    }
};

namespace detail {

template <class S>
struct PathLevel {
    std::vector<Path> paths;          // ordered: length, then arrow sequence
    std::map<std::vector<int>, std::map<int, Index>> lookup;  // arrows -> start -> idx
};

template <class S>
Index path_index(const PathLevel<S>& lvl, const Path& p) {
    auto it = lvl.lookup.find(p.arrows);
    if (it == lvl.lookup.end()) return -1;
    auto jt = it->second.find(p.start);
    return jt == it->second.end() ? -1 : jt->second;
}

template <class S>
PathLevel<S> enumerate_paths(const Quiver& q, std::size_t max_len, int64_t count_cap) {
    PathLevel<S> lvl;
    std::vector<Path> frontier;
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
        frontier.push_back(Path{v, {}});
    std::size_t len = 0;
    while (!frontier.empty() && len <= max_len) {
        for (auto& p : frontier) {
            lvl.lookup[p.arrows][p.start] = static_cast<Index>(lvl.paths.size());
            lvl.paths.push_back(p);
            if (static_cast<int64_t>(lvl.paths.size()) > count_cap)
                throw cap_exceeded("path count cap exceeded while building the path algebra");
        }
        std::vector<Path> next;
        for (auto& p : frontier) {
            int t = p.target(q);
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
                if (q.arrows[a].from != t) continue;
                Path np = p;
                np.arrows.push_back(a);
                next.push_back(np);
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
        ++len;
    }
    return lvl;
}

}  // namespace detail

// Quotient of the path algebra kQ by the two-sided ideal generated by the
// relations, computed by exhaustion over path lengths. Works whenever the
// quotient admits a basis of path residues found below the configured caps;
// growth past the caps reports the algebra as (effectively) infinite
// dimensional. Each relation must be uniform: all terms share source and
// target vertices.
template <class S>
FiniteDimAlgebra<S> path_algebra(const Quiver& q, const std::vector<PathCombo<S>>& relations,
                                 const Field& field, const Config& cfg = Config{}) {
    q.validate();
    if (!FieldOps<S>::field_matches(field)) throw usage_error("scalar type does not match field");
    for (auto& rel : relations) {
        if (rel.empty()) throw usage_error("empty relation");
        int s = rel.front().path.source(), t = rel.front().path.target(q);
        for (auto& term : rel) {
            if (term.path.source() != s || term.path.target(q) != t)
                throw usage_error("relation is not uniform (mixed sources or targets)");
        }
    }

    std::size_t max_rel_len = 0;
    for (auto& rel : relations)
        for (auto& term : rel) max_rel_len = std::max(max_rel_len, term.path.length());

    auto quotient_at_level = [&](std::size_t L, const detail::PathLevel<S>& lvl,
                                 Echelon<S>* ideal_out) {
        // ideal elements u * rel * v with every component of length <= L,
        // written in path coordinates ordered by descending path order so the
        // echelon pivots eat the longest paths first.
        Index n = static_cast<Index>(lvl.paths.size());
        std::vector<RowVec<S>> gens;
        for (auto& rel : relations) {
            int rs = rel.front().path.source(), rt = rel.front().path.target(q);
            for (auto& u : lvl.paths) {
                if (u.target(q) != rs) continue;
                if (u.length() + max_rel_len > L) continue;
                for (auto& v : lvl.paths) {
                    if (v.source() != rt) continue;
                    if (u.length() + max_rel_len + v.length() > L) continue;
                    RowVec<S> g = mat_zero<S>(1, n).row(0);
                    bool fits = true;
                    for (auto& term : rel) {
                        Path full = u;
                        full.arrows.insert(full.arrows.end(), term.path.arrows.begin(),
                                           term.path.arrows.end());
                        full.arrows.insert(full.arrows.end(), v.arrows.begin(), v.arrows.end());
                        Index idx = detail::path_index<S>(lvl, full);
                        if (idx < 0) { fits = false; break; }
                        g(n - 1 - idx) += term.coeff;  // descending coordinate order
                    }
                    if (fits && !mat_is_zero<S>(Mat<S>(g))) gens.push_back(g);
                }
            }
        }
        Mat<S> gm = mat_zero<S>(static_cast<Index>(gens.size()), n);
        for (std::size_t i = 0; i < gens.size(); ++i) gm.row(static_cast<Index>(i)) = gens[i];
        Echelon<S> ech = rref(std::move(gm));
        std::vector<Index> basis;  // path indices (ascending order) surviving the quotient
        std::size_t pi = 0;
        for (Index c = 0; c < n; ++c) {
            if (pi < ech.pivot_cols.size() && ech.pivot_cols[pi] == c) { ++pi; continue; }
            basis.push_back(n - 1 - c);
        }
        std::sort(basis.begin(), basis.end());
        if (ideal_out) *ideal_out = std::move(ech);
        return basis;
    };

    // Grow the level until some length has no surviving path; past that point
    // every longer path reduces to shorter ones by induction.
    std::size_t L = 0;
    std::vector<Index> basis;
    detail::PathLevel<S> lvl;
    bool stabilized = false;
    for (L = 1; static_cast<int64_t>(L) <= cfg.path_length_cap; ++L) {
        lvl = detail::enumerate_paths<S>(q, L, cfg.path_count_cap);
        basis = quotient_at_level(L, lvl, nullptr);
        std::size_t max_basis_len = 0;
        for (Index b : basis) max_basis_len = std::max(max_basis_len, lvl.paths[b].length());
        if (max_basis_len < L) { stabilized = true; break; }
    }
    if (!stabilized)
        throw cap_exceeded("infinite-dimensional algebra: path residues keep growing past the cap");

    // Recompute deep enough to reduce every product of two basis paths, and
    // iterate in case the deeper ideal kills further residues.
    Echelon<S> ideal;
    for (;;) {
        std::size_t max_basis_len = 0;
        for (Index b : basis) max_basis_len = std::max(max_basis_len, lvl.paths[b].length());
        std::size_t L_use = std::max({L, 2 * max_basis_len, max_rel_len});
        if (static_cast<int64_t>(L_use) > cfg.path_length_cap)
            throw cap_exceeded("path length cap exceeded while closing the multiplication table");
        lvl = detail::enumerate_paths<S>(q, L_use, cfg.path_count_cap);
        std::vector<Index> basis2 = quotient_at_level(L_use, lvl, &ideal);
        std::vector<Path> bp1, bp2;
        for (Index b : basis) bp1.push_back(lvl.paths[b]);
        for (Index b : basis2) bp2.push_back(lvl.paths[b]);
        if (bp1 == bp2) { basis = basis2; L = L_use; break; }
        basis = basis2;
        L = L_use;
    }

    Index n = static_cast<Index>(lvl.paths.size());
    Index d = static_cast<Index>(basis.size());
    std::vector<Index> basis_pos(n, -1);
    for (Index i = 0; i < d; ++i) basis_pos[basis[i]] = i;

    // residue of a path-coordinate vector (descending order) on the basis
    auto reduce = [&](RowVec<S> vec_desc) {
        for (Index r = 0; r < ideal.rank; ++r) {
            Index pc = ideal.pivot_cols[r];
            if (scalar_is_zero(vec_desc(pc))) continue;
            vec_desc -= vec_desc(pc) * ideal.reduced.row(r);
        }
        RowVec<S> out = mat_zero<S>(1, d).row(0);
        for (Index c = 0; c < n; ++c) {
            if (scalar_is_zero(vec_desc(c))) continue;
            Index pidx = n - 1 - c;
            require(basis_pos[pidx] >= 0, "path residue escaped the basis");
            out(basis_pos[pidx]) = vec_desc(c);
        }
        return out;
    };
    auto reduce_path = [&](const Path& p) {
        RowVec<S> v = mat_zero<S>(1, n).row(0);
        Index idx = detail::path_index<S>(lvl, p);
        require(idx >= 0, "path outside enumerated range");
        v(n - 1 - idx) = FieldOps<S>::from_int(field, 1);
        return reduce(v);
    };

    FiniteDimAlgebra<S> alg;
    alg.field = field;
    alg.quiver = q;
    for (Index i = 0; i < d; ++i) {
        alg.basis_labels.push_back(path_to_string(q, lvl.paths[basis[i]]));
        alg.basis_paths.push_back(lvl.paths[basis[i]]);
    }
    alg.table = mat_zero<S>(d * d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            auto prod = compose(q, lvl.paths[basis[i]], lvl.paths[basis[j]]);
            if (prod) alg.table.row(i * d + j) = reduce_path(*prod);
        }
    alg.unit = mat_zero<S>(1, d).row(0);
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) {
        RowVec<S> ev = reduce_path(Path{v, {}});
        alg.unit += ev;
        alg.vertex_units.push_back(ev);
        if (!mat_is_zero<S>(Mat<S>(ev))) alg.idempotents.push_back(ev);
    }
    for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a)
        alg.arrow_units.push_back(reduce_path(Path{q.arrows[a].from, {a}}));
    alg.validate();
    return alg;
}

template <class S>
using AlgebraPtr = std::shared_ptr<const FiniteDimAlgebra<S>>;

template <class S>
AlgebraPtr<S> make_path_algebra(const Quiver& q, const std::vector<PathCombo<S>>& relations,
                                const Field& field, const Config& cfg = Config{}) {
    return std::make_shared<const FiniteDimAlgebra<S>>(path_algebra<S>(q, relations, field, cfg));
}

}  // namespace silt
