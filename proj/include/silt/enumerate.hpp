#pragma once

// Brute-force inventories over finite fields: all modules of bounded dimension
// up to isomorphism, and all submodules of a given module. Searches are
// parameterized by a small generating set of the algebra so the candidate
// space stays p^(sum of block sizes) instead of p^(dim * d^2).

#include <vector>

#include "silt/module.hpp"

namespace silt {

namespace detail {

// Expresses every basis element of A through its idempotents and a greedily
// chosen generating set: each node is a seed, a generator, or a product of
// two earlier nodes; basis elements are linear combinations of node values.
template <class S>
struct GeneratorWords {
    struct Node {
        RowVec<S> value;
        int kind;  // 0 seed (idempotent), 1 generator, 2 product
        Index a = -1, b = -1;  // node operands for products; seed/gen index otherwise
    };
    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> generator_blocks;  // (i, j): g in e_i A e_j
    Mat<S> basis_in_nodes;  // coordinates of each algebra basis element in node values

    static GeneratorWords build(const FiniteDimAlgebra<S>& A) {
        GeneratorWords w;
        Index n = A.dim();
        Mat<S> span(0, n);
        auto in_span = [&](const RowVec<S>& v) {
            if (mat_is_zero<S>(Mat<S>(v))) return true;
            return rank_of<S>(vcat<S>(span, Mat<S>(v))) == span.rows();
        };
        auto close = [&]() {
            bool grew = true;
            while (grew) {
                grew = false;
                std::size_t cur = w.nodes.size();
                for (std::size_t a = 0; a < cur && !grew; ++a)
                    for (std::size_t b = 0; b < cur && !grew; ++b) {
                        RowVec<S> prod = A.multiply(w.nodes[a].value, w.nodes[b].value);
                        if (in_span(prod)) continue;
                        w.nodes.push_back(
                            {prod, 2, static_cast<Index>(a), static_cast<Index>(b)});
                        span = row_space_basis<S>(vcat<S>(span, Mat<S>(prod)));
                        grew = true;
                    }
            }
        };
        for (std::size_t i = 0; i < A.idempotents.size(); ++i) {
            const RowVec<S>& e = A.idempotents[i];
            if (!in_span(e)) span = row_space_basis<S>(vcat<S>(span, Mat<S>(e)));
            w.nodes.push_back({e, 0, static_cast<Index>(i), -1});
        }
        close();
        // Peirce elements e_i b_k e_j in deterministic order; add while the
        // closure is still short of the whole algebra.
        for (std::size_t i = 0; i < A.idempotents.size() && span.rows() < n; ++i)
            for (std::size_t j = 0; j < A.idempotents.size() && span.rows() < n; ++j)
                for (Index k = 0; k < n && span.rows() < n; ++k) {
                    RowVec<S> g =
                        A.multiply(A.multiply(A.idempotents[i], A.basis_vector(k)), A.idempotents[j]);
                    if (in_span(g)) continue;
                    w.nodes.push_back({g, 1, static_cast<Index>(w.generator_blocks.size()), -1});
                    w.generator_blocks.emplace_back(static_cast<int>(i), static_cast<int>(j));
                    span = row_space_basis<S>(vcat<S>(span, Mat<S>(g)));
                    close();
                }
        require(span.rows() == n, "idempotents and Peirce elements fail to generate the algebra");
        Mat<S> node_vals(static_cast<Index>(w.nodes.size()), n);
        for (std::size_t t = 0; t < w.nodes.size(); ++t)
            node_vals.row(static_cast<Index>(t)) = w.nodes[t].value;
        auto coords = solve_matrix<S>(Mat<S>(node_vals.transpose()), Mat<S>(mat_identity<S>(n)));
        require(coords.has_value(), "node values do not span the algebra");
        w.basis_in_nodes = coords->transpose();  // row t: basis_t in node coordinates
        return w;
    }
};

}  // namespace detail

enum class SweepOrder { forward, reverse };

// All right modules of dimension <= max_dim up to isomorphism, zero included.
// Finite fields only. Deterministic: dimension, then block dimension vector,
// then candidate code. `order` only permutes the candidate sweep; the returned
// set of isomorphism classes must not depend on it.
template <class S>
std::vector<FdModule<S>> enumerate_modules(const AlgebraPtr<S>& alg, Index max_dim,
                                           const Config& cfg = Config{},
                                           SweepOrder order = SweepOrder::forward) {
    const FiniteDimAlgebra<S>& A = *alg;
    if (!A.field.is_finite()) throw usage_error("enumerate_modules needs a finite field");
    if (max_dim > cfg.max_dim) throw cap_exceeded("enumerate_modules: max_dim above configured cap");
    const int64_t p = A.field.p;
    auto words = detail::GeneratorWords<S>::build(A);
    Index m = static_cast<Index>(A.idempotents.size());

    std::vector<FdModule<S>> found;
    found.push_back(FdModule<S>::zero(alg));

    for (Index d = 1; d <= max_dim; ++d) {
        // compositions of d into m nonnegative parts, lexicographic
        std::vector<Index> comp(m, 0);
        comp[m - 1] = d;
        auto next_comp = [&]() {
            // previous composition in colex from the right; standard odometer
            for (Index i = m - 1; i > 0; --i) {
                if (comp[i] > 0) {
                    comp[i - 1] += 1;
                    Index rest = comp[i] - 1;
                    for (Index j = i; j < m; ++j) comp[j] = 0;
                    comp[m - 1] = rest;
                    return true;
                }
            }
            return false;
        };
        // start from (0,...,0,d) and walk all compositions
        std::vector<std::vector<Index>> comps;
        comps.push_back(comp);
        while (next_comp()) comps.push_back(comp);

        for (auto& c : comps) {
            std::vector<Index> offset(m + 1, 0);
            for (Index i = 0; i < m; ++i) offset[i + 1] = offset[i] + c[i];
            // free entries: one block matrix per generator
            std::vector<std::pair<Index, Index>> shapes;
            int64_t total = 1;
            bool overflow = false;
            for (auto& [bi, bj] : words.generator_blocks) {
                Index r = c[bi], cl = c[bj];
                shapes.emplace_back(r, cl);
                for (Index t = 0; t < r * cl; ++t) {
                    if (total > cfg.enum_candidate_cap / p) { overflow = true; break; }
                    total *= p;
                }
                if (overflow) break;
            }
            if (overflow || total > cfg.enum_candidate_cap)
                throw cap_exceeded("enumerate_modules: candidate space above cap");

            for (int64_t code = 0; code < total; ++code) {
                int64_t cc = code;
                // seed actions: block projectors
                std::vector<Mat<S>> node_act(words.nodes.size(), Mat<S>());
                for (std::size_t t = 0; t < words.nodes.size(); ++t) {
                    auto& nd = words.nodes[t];
                    if (nd.kind == 0) {
                        Mat<S> e = mat_zero<S>(d, d);
                        for (Index r = offset[nd.a]; r < offset[nd.a + 1]; ++r)
                            e(r, r) = FieldOps<S>::from_int(A.field, 1);
                        node_act[t] = e;
                    }
                }
                // generator actions from the candidate code
                std::size_t gi = 0;
                for (std::size_t t = 0; t < words.nodes.size(); ++t) {
                    auto& nd = words.nodes[t];
                    if (nd.kind != 1) continue;
                    auto [bi, bj] = words.generator_blocks[nd.a];
                    Mat<S> g = mat_zero<S>(d, d);
                    for (Index r = 0; r < shapes[gi].first; ++r)
                        for (Index cl = 0; cl < shapes[gi].second; ++cl) {
                            int64_t digit = cc % p;
                            cc /= p;
                            if (order == SweepOrder::reverse) digit = (p - 1 - digit) % p;
                            g(offset[bi] + r, offset[bj] + cl) =
                                FieldOps<S>::from_int(A.field, digit);
                        }
                    node_act[t] = g;
                    ++gi;
                }
                for (std::size_t t = 0; t < words.nodes.size(); ++t) {
                    auto& nd = words.nodes[t];
                    if (nd.kind == 2) node_act[t] = node_act[nd.a] * node_act[nd.b];
                }
                std::vector<Mat<S>> act(A.dim());
                for (Index k = 0; k < A.dim(); ++k) {
                    Mat<S> ak = mat_zero<S>(d, d);
                    for (std::size_t t = 0; t < words.nodes.size(); ++t) {
                        const S& coeff = words.basis_in_nodes(k, static_cast<Index>(t));
                        if (!scalar_is_zero(coeff)) ak += coeff * node_act[t];
                    }
                    act[k] = std::move(ak);
                }
                // validity: unit acts as identity, structure constants respected
                FdModule<S> cand;
                cand.algebra = alg;
                cand.actions = std::move(act);
                if (!mat_eq<S>(cand.unit_action(), mat_identity<S>(d))) continue;
                bool ok = true;
                for (Index i = 0; i < A.dim() && ok; ++i)
                    for (Index j = 0; j < A.dim() && ok; ++j) {
                        Mat<S> lhs = cand.actions[i] * cand.actions[j];
                        Mat<S> rhs = cand.action_of(RowVec<S>(A.table.row(i * A.dim() + j)));
                        if (!mat_eq<S>(lhs, rhs)) ok = false;
                    }
                if (!ok) continue;
                bool fresh = true;
                for (auto& prev : found) {
                    if (prev.dim() != d) continue;
                    if (is_isomorphic(prev, cand, cfg)) { fresh = false; break; }
                }
                if (fresh) found.push_back(std::move(cand));
            }
        }
    }
    return found;
}

// All action-invariant subspaces of m, with inclusions, by exhaustion over
// reduced-echelon bases. Finite fields only.
template <class S>
std::vector<std::pair<FdModule<S>, ModuleMap<S>>> enumerate_submodules(const FdModule<S>& m,
                                                                       const Config& cfg = Config{}) {
    const Field& fld = m.algebra->field;
    if (!fld.is_finite()) throw usage_error("enumerate_submodules needs a finite field");
    const int64_t p = fld.p;
    Index d = m.dim();
    std::vector<std::pair<FdModule<S>, ModuleMap<S>>> out;
    int64_t visited = 0;

    for (Index k = 0; k <= d; ++k) {
        // pivot column subsets in increasing lexicographic order
        std::vector<Index> piv(k);
        for (Index i = 0; i < k; ++i) piv[i] = i;
        auto next_subset = [&]() {
            if (k == 0) return false;
            Index i = k;
            while (i-- > 0) {
                if (piv[i] < d - (k - i)) {
                    ++piv[i];
                    for (Index j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        bool more = true;
        while (more) {
            std::vector<std::pair<Index, Index>> free_pos;  // (row, col)
            for (Index i = 0; i < k; ++i)
                for (Index c = piv[i] + 1; c < d; ++c) {
                    bool is_piv = false;
                    for (Index j = 0; j < k; ++j)
                        if (piv[j] == c) { is_piv = true; break; }
                    if (!is_piv) free_pos.emplace_back(i, c);
                }
            int64_t total = 1;
            for (std::size_t t = 0; t < free_pos.size(); ++t) {
                if (total > cfg.subspace_cap / p)
                    throw cap_exceeded("enumerate_submodules: subspace count above cap");
                total *= p;
            }
            for (int64_t code = 0; code < total; ++code) {
                if (++visited > cfg.subspace_cap)
                    throw cap_exceeded("enumerate_submodules: subspace count above cap");
                Mat<S> rows = mat_zero<S>(k, d);
                int64_t cc = code;
                for (Index i = 0; i < k; ++i) rows(i, piv[i]) = FieldOps<S>::from_int(fld, 1);
                for (auto& [r, c] : free_pos) {
                    rows(r, c) = FieldOps<S>::from_int(fld, cc % p);
                    cc /= p;
                }
                bool invariant = true;
                for (Index b = 0; b < m.algebra->dim() && invariant; ++b) {
                    Mat<S> moved = rows * m.actions[b];
                    if (rank_of<S>(vcat<S>(rows, moved)) != k) invariant = false;
                }
                if (invariant) out.push_back(submodule_from_rows(m, rows));
            }
            more = next_subset();
        }
    }
    return out;
}

}  // namespace silt
