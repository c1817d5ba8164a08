#pragma once

// The dg-endomorphism algebra of P, pre-truncated to degrees -1 and 0, and
// the explicit two-term model of the derived tensor Y (x)_B P. This is what
// gives the tensor defect its R-module structure; the linear-level kernel
// from the presentation must agree in dimension, which is asserted.

#include <utility>
#include <vector>

#include "silt/endo.hpp"

namespace silt {

// B^-1 = Hom(P^0, P^-1), B^0 = commuting pairs in End(P^-1) x End(P^0),
// d(h) = (h then sigma-side pair), Coker(d) = the derived endomorphism algebra.
template <class S>
struct TruncatedDg {
    EndoAlgebra<S> e;
    Mat<S> b0_rows;  // cycle basis, rows in the C^0 coordinates of e.classes.hc
    Mat<S> d;        // B^-1 -> B^0 in (hm1 coords) -> (b0 coords)
    Mat<S> proj;     // B^0 -> class coordinates of the endomorphism algebra

    Index bm1_dim() const { return e.classes.hc.hm1.dim(); }
    Index b0_dim() const { return b0_rows.rows(); }

    std::pair<Mat<S>, Mat<S>> b0_pair(const RowVec<S>& coords) const {
        RowVec<S> v = coords * b0_rows;
        RowVec<S> a = v.leftCols(e.classes.hc.h0f.dim());
        RowVec<S> b = v.rightCols(e.classes.hc.h0g.dim());
        return {e.classes.hc.h0f.combo(a), e.classes.hc.h0g.combo(b)};
    }

    // product x * y = (apply y, then x), componentwise
    RowVec<S> b0_multiply(const RowVec<S>& x, const RowVec<S>& y) const {
        auto [fx, gx] = b0_pair(x);
        auto [fy, gy] = b0_pair(y);
        RowVec<S> chain(e.classes.hc.h0f.dim() + e.classes.hc.h0g.dim());
        chain.leftCols(e.classes.hc.h0f.dim()) = e.classes.hc.h0f.coords_of(Mat<S>(fy * fx));
        chain.rightCols(e.classes.hc.h0g.dim()) = e.classes.hc.h0g.coords_of(Mat<S>(gy * gx));
        auto c = row_coordinates<S>(b0_rows, chain);
        require(c.has_value(), "product of cycles must be a cycle");
        return *c;
    }
};

template <class S>
TruncatedDg<S> build_b(const EndoAlgebra<S>& e) {
    TruncatedDg<S> b;
    b.e = e;
    const HomComplex3<S>& hc = e.classes.hc;
    // degree-1 part vanishes in cohomology exactly when P is presilting
    require(hc.h1.dim() == rank_of<S>(hc.d_0),
            "dg endomorphism algebra has cohomology in degree 1");
    b.b0_rows = left_kernel<S>(hc.d_0);
    b.d = detail::rows_in_basis<S>(b.b0_rows, hc.d_m1);  // image consists of cycles
    // proj: class coordinates of each cycle basis vector
    b.proj = mat_zero<S>(b.b0_dim(), e.dim());
    for (Index i = 0; i < b.b0_dim(); ++i)
        b.proj.row(i) = e.classes.cls.coords(RowVec<S>(b.b0_rows.row(i)));
    require(b.b0_dim() - rank_of<S>(b.d) == e.dim(),
            "Coker(d) must have the dimension of the endomorphism algebra");
    require(rank_of<S>(b.proj) == e.dim(), "projection onto classes must be onto");
    require(mat_is_zero<S>(Mat<S>(b.d * b.proj)), "boundaries must project to zero");
    // proj is multiplicative and unital
    for (Index i = 0; i < b.b0_dim(); ++i)
        for (Index j = 0; j < b.b0_dim(); ++j) {
            RowVec<S> prod = b.b0_multiply(RowVec<S>(mat_identity<S>(b.b0_dim()).row(i)),
                                           RowVec<S>(mat_identity<S>(b.b0_dim()).row(j)));
            RowVec<S> lhs = prod * b.proj;
            RowVec<S> rhs = e.algebra->multiply(RowVec<S>(b.proj.row(i)), RowVec<S>(b.proj.row(j)));
            require(mat_eq<S>(Mat<S>(lhs), Mat<S>(rhs)), "projection is not multiplicative");
        }
    // graded Leibniz for the mixed products, which pins the sign convention
    for (Index t = 0; t < b.bm1_dim(); ++t) {
        Mat<S> h = hc.hm1.combo(RowVec<S>(mat_identity<S>(b.bm1_dim()).row(t)));
        const Mat<S>& sig = e.p.sigma.matrix;
        for (Index i = 0; i < b.b0_dim(); ++i) {
            auto [f, g] = b.b0_pair(RowVec<S>(mat_identity<S>(b.b0_dim()).row(i)));
            // d(b o h) = b o d(h) and d(h o b) = d(h) o b
            require(mat_eq<S>(Mat<S>(h * f * sig), Mat<S>(h * sig * g)), "Leibniz fails (right)");
            require(mat_eq<S>(Mat<S>(sig * g * h), Mat<S>(f * sig * h)), "Leibniz fails (left)");
        }
    }
    return b;
}

// The plain truncated tensor
//   ( Y (x)_{B^0} P^-1 ) / U  --id(x)sigma-->  Y (x)_{B^0} P^0
// with U spanned by y (x) h(p), h in B^-1, p in P^0. Its H^0 is always
// Y (x) T, but its H^-1 is only the derived value when the entries of P are
// flat over B^0; tensor_dg below computes the honest derived tensor.
template <class S>
GeneralTwoTerm<S> truncated_tensor_naive(const TruncatedDg<S>& b, const FdModule<S>& y) {
    const EndoAlgebra<S>& e = b.e;
    const AlgebraPtr<S>& r_alg = e.p.algebra();
    Index yd = y.dim(), q1 = e.p.pm1.dim(), q0 = e.p.p0.dim();

    // Y as a B^0-module through proj
    std::vector<Mat<S>> y_b0;
    for (Index i = 0; i < b.b0_dim(); ++i) y_b0.push_back(y.action_of(RowVec<S>(b.proj.row(i))));

    // bilinearity over B^0 in degree -1 and 0; f/g components act on P^-1/P^0
    auto relations = [&](Index pd, bool minus_one) {
        std::vector<RowVec<S>> rows;
        for (Index i = 0; i < b.b0_dim(); ++i) {
            auto [f, g] = b.b0_pair(RowVec<S>(mat_identity<S>(b.b0_dim()).row(i)));
            const Mat<S>& act = minus_one ? f : g;
            for (Index r = 0; r < yd; ++r)
                for (Index c = 0; c < pd; ++c) {
                    RowVec<S> v = mat_zero<S>(1, yd * pd).row(0);
                    for (Index k = 0; k < yd; ++k) v(k * pd + c) += y_b0[i](r, k);
                    for (Index k = 0; k < pd; ++k) v(r * pd + k) -= act(c, k);
                    rows.push_back(v);
                }
        }
        Mat<S> m = mat_zero<S>(static_cast<Index>(rows.size()), yd * pd);
        for (std::size_t t = 0; t < rows.size(); ++t) m.row(static_cast<Index>(t)) = rows[t];
        return m;
    };
    Mat<S> rel_m1 = relations(q1, true);
    Mat<S> rel_0 = relations(q0, false);

    // U = < y (x) h(p) >
    std::vector<RowVec<S>> urows;
    for (Index t = 0; t < b.bm1_dim(); ++t) {
        Mat<S> h = e.classes.hc.hm1.combo(RowVec<S>(mat_identity<S>(b.bm1_dim()).row(t)));
        for (Index r = 0; r < yd; ++r)
            for (Index j = 0; j < q0; ++j) {
                RowVec<S> v = mat_zero<S>(1, yd * q1).row(0);
                for (Index k = 0; k < q1; ++k) v(r * q1 + k) += h(j, k);
                urows.push_back(v);
            }
    }
    Mat<S> u = mat_zero<S>(static_cast<Index>(urows.size()), yd * q1);
    for (std::size_t t = 0; t < urows.size(); ++t) u.row(static_cast<Index>(t)) = urows[t];

    Mat<S> sub_m1 = row_space_basis<S>(vcat<S>(rel_m1, u));
    RowQuotient<S> qm1 = row_quotient<S>(sub_m1, yd * q1);
    Mat<S> sub_0 = row_space_basis<S>(rel_0);
    RowQuotient<S> q0q = row_quotient<S>(sub_0, yd * q0);

    // differential induced by id (x) sigma
    Mat<S> damb = kron<S>(mat_identity<S>(yd), e.p.sigma.matrix);
    require(mat_is_zero<S>(Mat<S>(sub_m1 * damb * q0q.proj)),
            "differential does not descend to the tensor quotient");

    auto induce = [&](const RowQuotient<S>& q, const std::vector<Mat<S>>& per_basis) {
        std::vector<Mat<S>> act;
        for (Index k = 0; k < r_alg->dim(); ++k) {
            Mat<S> amb = kron<S>(mat_identity<S>(yd), per_basis[k]);
            act.push_back(Mat<S>(q.lift * amb * q.proj));
        }
        return act;
    };
    FdModule<S> dm1(r_alg, induce(qm1, e.p.pm1.actions));
    FdModule<S> d0(r_alg, induce(q0q, e.p.p0.actions));
    ModuleMap<S> alpha(dm1, d0, Mat<S>(qm1.lift * damb * q0q.proj));
    return GeneralTwoTerm<S>{std::move(dm1), std::move(d0), std::move(alpha)};
}

// --- derived tensor through a bounded semifree resolution ---------------------
// The entries of P need not be flat over B^0, so the naive truncated tensor can
// miss H^-1. Resolve Y by free dg-B-modules W_0(x)B <- W_1(x)B <- W_2(x)B <- W_3(x)B
// (generators in degrees 0, -1, -2, -3), which is exact in degrees >= -2; then
// F (x)_B P collapses to sums of shifted copies of P and its degrees [-1, 0]
// carry the derived cohomology with the inherited R-action.

namespace detail {

template <class S>
struct Semifree {
    Index w0 = 0, w1 = 0, w2 = 0, w3 = 0;
    Mat<S> d1;      // w1 -> W0 (x) B^0
    Mat<S> d2_b0;   // w2 -> W1 (x) B^0
    Mat<S> d2_bm1;  // w2 -> W0 (x) B^-1
    Mat<S> d3_b0;   // w3 -> W2 (x) B^0
    Mat<S> d3_bm1;  // w3 -> W1 (x) B^-1
};

template <class S>
Semifree<S> semifree_resolution(const TruncatedDg<S>& b, const FdModule<S>& y) {
    const HomComplex3<S>& hc = b.e.classes.hc;
    Index bd = b.b0_dim(), md = b.bm1_dim(), yd = y.dim();
    Semifree<S> sf;
    sf.w0 = yd;

    // right action of B^0 on slots, precomputed per basis element: slot index
    // (t, i) -> sum_j coeffs (t, j)
    std::vector<Mat<S>> y_b0;
    for (Index i = 0; i < bd; ++i) y_b0.push_back(y.action_of(RowVec<S>(b.proj.row(i))));

    // augmentation F^0 = W0 (x) B^0 -> Y
    Mat<S> aug = mat_zero<S>(yd * bd, yd);
    for (Index t = 0; t < yd; ++t)
        for (Index i = 0; i < bd; ++i) aug.row(t * bd + i) = y_b0[i].row(t);

    // differential pieces of F in low degrees:
    // F^-1 = W0 (x) B^-1  +  W1 (x) B^0
    // d(w0 (x) h) = + w0 (x) d(h);   d(w1 (x) b) = d1(w1) * b

    // --- step 1: kill Ker(H^0 -> Y)
    Mat<S> bound0 = mat_zero<S>(yd * md, yd * bd);  // boundaries from W0 (x) B^-1
    for (Index t = 0; t < yd; ++t)
        for (Index u = 0; u < md; ++u)
            bound0.row(t * md + u).middleCols(t * bd, bd) = b.d.row(u);
    Mat<S> ker_aug = left_kernel<S>(aug);
    // reduce modulo the boundary space and keep independent representatives
    ClassSpace<S> cls0 = class_space<S>(ker_aug, Mat<S>(row_space_basis<S>(bound0)));
    sf.d1 = cls0.reps;
    sf.w1 = sf.d1.rows();

    // full d: F^-1 -> F^0
    Index fm1_dim = yd * md + sf.w1 * bd;
    Mat<S> dfm1 = mat_zero<S>(fm1_dim, yd * bd);
    dfm1.topRows(yd * md) = bound0;
    for (Index t = 0; t < sf.w1; ++t)
        for (Index i = 0; i < bd; ++i) {
            // (w1_t (x) b_i) -> d1(t) * b_i
            RowVec<S> image = mat_zero<S>(1, yd * bd).row(0);
            for (Index s = 0; s < yd; ++s)
                for (Index j = 0; j < bd; ++j) {
                    const S& c = sf.d1(t, s * bd + j);
                    if (scalar_is_zero(c)) continue;
                    RowVec<S> prod = b.b0_multiply(RowVec<S>(mat_identity<S>(bd).row(j)),
                                                   RowVec<S>(mat_identity<S>(bd).row(i)));
                    image.middleCols(s * bd, bd) += c * prod;
                }
            dfm1.row(yd * md + t * bd + i) = image;
        }

    // --- step 2: kill H^-1(F) = Ker(dfm1) / Im(d from F^-2)
    // F^-2 (before attaching W2) = W1 (x) B^-1;
    // d(w1 (x) h) = d1(w1) o h  -  w1 (x) d(h)
    Mat<S> dfm2_w1 = mat_zero<S>(sf.w1 * md, fm1_dim);
    for (Index t = 0; t < sf.w1; ++t)
        for (Index u = 0; u < md; ++u) {
            RowVec<S> image = mat_zero<S>(1, fm1_dim).row(0);
            // d1(t) o h_u lands in W0 (x) B^-1
            Mat<S> hmat = hc.hm1.combo(RowVec<S>(mat_identity<S>(md).row(u)));
            for (Index s = 0; s < yd; ++s)
                for (Index j = 0; j < bd; ++j) {
                    const S& c = sf.d1(t, s * bd + j);
                    if (scalar_is_zero(c)) continue;
                    auto [f, g] = b.b0_pair(RowVec<S>(mat_identity<S>(bd).row(j)));
                    (void)g;
                    RowVec<S> prod = hc.hm1.coords_of(Mat<S>(hmat * f));
                    image.middleCols(s * md, md) += c * prod;
                }
            // minus w1 (x) d(h_u)
            image.middleCols(yd * md + t * bd, bd) -= b.d.row(u);
            dfm2_w1.row(t * md + u) = image;
        }
    ClassSpace<S> cls1 = class_space<S>(left_kernel<S>(dfm1), Mat<S>(row_space_basis<S>(dfm2_w1)));
    sf.w2 = cls1.dim();
    sf.d2_bm1 = mat_zero<S>(sf.w2, yd * md);
    sf.d2_b0 = mat_zero<S>(sf.w2, sf.w1 * bd);
    for (Index t = 0; t < sf.w2; ++t) {
        sf.d2_bm1.row(t) = cls1.reps.row(t).leftCols(yd * md);
        sf.d2_b0.row(t) = cls1.reps.row(t).rightCols(sf.w1 * bd);
    }

    // --- step 3: kill H^-2(F)
    // F^-2 = W1 (x) B^-1 + W2 (x) B^0 with differential rows:
    Index fm2_dim = sf.w1 * md + sf.w2 * bd;
    Mat<S> dfm2 = mat_zero<S>(fm2_dim, fm1_dim);
    dfm2.topRows(sf.w1 * md) = dfm2_w1;
    for (Index t = 0; t < sf.w2; ++t)
        for (Index i = 0; i < bd; ++i) {
            RowVec<S> image = mat_zero<S>(1, fm1_dim).row(0);
            // (W0 (x) B^-1 component) o b_i : h o x = (apply g-part of x, then h)
            auto [fx, gx] = b.b0_pair(RowVec<S>(mat_identity<S>(bd).row(i)));
            (void)fx;
            for (Index s = 0; s < yd; ++s)
                for (Index u = 0; u < md; ++u) {
                    const S& c = sf.d2_bm1(t, s * md + u);
                    if (scalar_is_zero(c)) continue;
                    Mat<S> hmat = hc.hm1.combo(RowVec<S>(mat_identity<S>(md).row(u)));
                    RowVec<S> prod = hc.hm1.coords_of(Mat<S>(gx * hmat));
                    image.middleCols(s * md, md) += c * prod;
                }
            // (W1 (x) B^0 component) * b_i
            for (Index s = 0; s < sf.w1; ++s)
                for (Index j = 0; j < bd; ++j) {
                    const S& c = sf.d2_b0(t, s * bd + j);
                    if (scalar_is_zero(c)) continue;
                    RowVec<S> prod = b.b0_multiply(RowVec<S>(mat_identity<S>(bd).row(j)),
                                                   RowVec<S>(mat_identity<S>(bd).row(i)));
                    image.middleCols(yd * md + s * bd, bd) += c * prod;
                }
            dfm2.row(sf.w1 * md + t * bd + i) = image;
        }
    require(mat_is_zero<S>(Mat<S>(dfm2 * dfm1)), "semifree differential does not square to zero");

    // boundaries into F^-2 from W2 (x) B^-1
    Mat<S> dfm3_w2 = mat_zero<S>(sf.w2 * md, fm2_dim);
    for (Index t = 0; t < sf.w2; ++t)
        for (Index u = 0; u < md; ++u) {
            RowVec<S> image = mat_zero<S>(1, fm2_dim).row(0);
            Mat<S> hmat = hc.hm1.combo(RowVec<S>(mat_identity<S>(md).row(u)));
            // (W1 (x) B^0 part of d2) o h_u -> W1 (x) B^-1
            for (Index s = 0; s < sf.w1; ++s)
                for (Index j = 0; j < bd; ++j) {
                    const S& c = sf.d2_b0(t, s * bd + j);
                    if (scalar_is_zero(c)) continue;
                    auto [f, g] = b.b0_pair(RowVec<S>(mat_identity<S>(bd).row(j)));
                    (void)g;
                    RowVec<S> prod = hc.hm1.coords_of(Mat<S>(hmat * f));
                    image.middleCols(s * md, md) += c * prod;
                }
            // (W0 (x) B^-1 part of d2) o h_u = 0 in B^-2
            // + w2 (x) d(h_u) with sign (-1)^{|w2|} = +
            image.middleCols(sf.w1 * md + t * bd, bd) += b.d.row(u);
            dfm3_w2.row(t * md + u) = image;
        }
    ClassSpace<S> cls2 = class_space<S>(left_kernel<S>(dfm2), Mat<S>(row_space_basis<S>(dfm3_w2)));
    sf.w3 = cls2.dim();
    sf.d3_bm1 = mat_zero<S>(sf.w3, sf.w1 * md);
    sf.d3_b0 = mat_zero<S>(sf.w3, sf.w2 * bd);
    for (Index t = 0; t < sf.w3; ++t) {
        sf.d3_bm1.row(t) = cls2.reps.row(t).leftCols(sf.w1 * md);
        sf.d3_b0.row(t) = cls2.reps.row(t).rightCols(sf.w2 * bd);
    }
    return sf;
}

}  // namespace detail

// Derived tensor Y (x)^L_B P, smart-truncated to degrees [-1, 0], as a genuine
// two-term complex of R-modules.
template <class S>
GeneralTwoTerm<S> tensor_dg(const TruncatedDg<S>& b, const FdModule<S>& y) {
    const EndoAlgebra<S>& e = b.e;
    const AlgebraPtr<S>& r_alg = e.p.algebra();
    const HomComplex3<S>& hc = e.classes.hc;
    Index q1 = e.p.pm1.dim(), q0 = e.p.p0.dim();
    detail::Semifree<S> sf = detail::semifree_resolution(b, y);

    // F (x)_B P spaces: T^0 = W0 (x) P^0, T^-1 = W0 (x) P^-1 + W1 (x) P^0,
    // T^-2 = W1 (x) P^-1 + W2 (x) P^0
    Index t0 = sf.w0 * q0;
    Index tm1 = sf.w0 * q1 + sf.w1 * q0;
    Index tm2 = sf.w1 * q1 + sf.w2 * q0;

    // left action of a B^0 element on P components, as matrices on rows
    auto b0_f = [&](Index j) { return b.b0_pair(RowVec<S>(mat_identity<S>(b.b0_dim()).row(j))).first; };
    auto b0_g = [&](Index j) { return b.b0_pair(RowVec<S>(mat_identity<S>(b.b0_dim()).row(j))).second; };

    const Mat<S>& sig = e.p.sigma.matrix;

    Mat<S> d_m1 = mat_zero<S>(tm1, t0);
    // (w0 (x) p^-1) -> + w0 (x) sigma(p)
    for (Index t = 0; t < sf.w0; ++t)
        d_m1.block(t * q1, t * q0, q1, q0) = sig;
    // (w1 (x) p^0) -> d1(w1) acting by g-components
    for (Index t = 0; t < sf.w1; ++t)
        for (Index s = 0; s < sf.w0; ++s)
            for (Index j = 0; j < b.b0_dim(); ++j) {
                const S& c = sf.d1(t, s * b.b0_dim() + j);
                if (scalar_is_zero(c)) continue;
                d_m1.block(sf.w0 * q1 + t * q0, s * q0, q0, q0) += c * b0_g(j);
            }

    Mat<S> d_m2 = mat_zero<S>(tm2, tm1);
    // (w1 (x) p^-1): d1(w1) by f-components  -  w1 (x) sigma(p)
    for (Index t = 0; t < sf.w1; ++t) {
        for (Index s = 0; s < sf.w0; ++s)
            for (Index j = 0; j < b.b0_dim(); ++j) {
                const S& c = sf.d1(t, s * b.b0_dim() + j);
                if (scalar_is_zero(c)) continue;
                d_m2.block(t * q1, s * q1, q1, q1) += c * b0_f(j);
            }
        d_m2.block(t * q1, sf.w0 * q1 + t * q0, q1, q0) -= sig;
    }
    // (w2 (x) p^0): d2 components; B^-1 slots act P^0 -> P^-1
    for (Index t = 0; t < sf.w2; ++t) {
        for (Index s = 0; s < sf.w0; ++s)
            for (Index u = 0; u < b.bm1_dim(); ++u) {
                const S& c = sf.d2_bm1(t, s * b.bm1_dim() + u);
                if (scalar_is_zero(c)) continue;
                Mat<S> hmat = hc.hm1.combo(RowVec<S>(mat_identity<S>(b.bm1_dim()).row(u)));
                d_m2.block(sf.w1 * q1 + t * q0, s * q1, q0, q1) += c * hmat;
            }
        for (Index s = 0; s < sf.w1; ++s)
            for (Index j = 0; j < b.b0_dim(); ++j) {
                const S& c = sf.d2_b0(t, s * b.b0_dim() + j);
                if (scalar_is_zero(c)) continue;
                d_m2.block(sf.w1 * q1 + t * q0, sf.w0 * q1 + s * q0, q0, q0) += c * b0_g(j);
            }
    }
    require(mat_is_zero<S>(Mat<S>(d_m2 * d_m1)), "tensor differential does not square to zero");

    // smart truncation at degree -1 and the inherited R-action
    Mat<S> image_rows = row_space_basis<S>(d_m2);
    RowQuotient<S> qm1 = row_quotient<S>(image_rows, tm1);
    auto act_on = [&](Index w_p1, Index w_p0) {
        // R acts on the P slots of W (x) P^-1 + W' (x) P^0
        std::vector<Mat<S>> acts;
        for (Index k = 0; k < r_alg->dim(); ++k) {
            Mat<S> m = mat_zero<S>(w_p1 * q1 + w_p0 * q0, w_p1 * q1 + w_p0 * q0);
            for (Index t = 0; t < w_p1; ++t)
                m.block(t * q1, t * q1, q1, q1) = e.p.pm1.actions[k];
            for (Index t = 0; t < w_p0; ++t)
                m.block(w_p1 * q1 + t * q0, w_p1 * q1 + t * q0, q0, q0) = e.p.p0.actions[k];
            acts.push_back(m);
        }
        return acts;
    };
    std::vector<Mat<S>> amb_m1 = act_on(sf.w0, sf.w1);
    std::vector<Mat<S>> amb_0 = act_on(0, sf.w0);
    std::vector<Mat<S>> act_m1, act_0;
    for (Index k = 0; k < r_alg->dim(); ++k) {
        act_m1.push_back(Mat<S>(qm1.lift * amb_m1[k] * qm1.proj));
        act_0.push_back(amb_0[k]);
    }
    FdModule<S> dm1(r_alg, std::move(act_m1));
    FdModule<S> d0(r_alg, std::move(act_0));
    ModuleMap<S> alpha(dm1, d0, Mat<S>(qm1.lift * d_m1));
    return GeneralTwoTerm<S>{std::move(dm1), std::move(d0), std::move(alpha)};
}

// K_T(Y) as an honest R-module: H^-1 of the dg tensor. Asserts dimension
// agreement with the presentation-level kernel.
template <class S>
FdModule<S> k_t_module(const TruncatedDg<S>& b, const BetaStar<S>& bs, const FdModule<S>& y) {
    GeneralTwoTerm<S> c = tensor_dg(b, y);
    auto [h, incl] = kernel_of(c.alpha);
    KTLinear<S> lin = k_t_linear(b.e, y, bs);
    require(h.dim() == lin.dim(), "dg and presentation tensor defects disagree in dimension");
    return h;
}

// H^0 of the dg tensor; asserts the isomorphism with Y (x)_E T.
template <class S>
FdModule<S> h0_check(const TruncatedDg<S>& b, const BimoduleT<S>& t, const FdModule<S>& y,
                     const Config& cfg = Config{}) {
    GeneralTwoTerm<S> c = tensor_dg(b, y);
    auto [h, proj] = cokernel_of(c.alpha);
    TPModule<S> tp = t_p(b.e, t, y);
    require(h.dim() == tp.module.dim(), "H^0 of the dg tensor has the wrong dimension");
    if (h.dim() > 0)
        require(is_isomorphic(h, tp.module, cfg).has_value(),
                "H^0 of the dg tensor is not the plain tensor");
    return h;
}

// --- lifting cross-check -----------------------------------------------------
// The alternative R-action on Ker(Y (x) beta*): lift each right multiplication
// of R through the certificate triangle and act by the contravariant functor.
// The resulting module must be isomorphic to H^-1 of the dg tensor.

namespace detail {

// solve for chain maps and homotopies given as blocks of hom-space coordinates:
// returns the stacked unknown assignment for `rows` unknown blocks satisfying
// sum_k X_k * coeff_k = rhs per equation; assembled by the caller.
template <class S>
struct LinearAssembly {
    std::vector<Index> block_dims;
    std::vector<Mat<S>> columns;  // per equation: (total_unknowns x eq_dim)
    std::vector<RowVec<S>> rhs;

    Index total() const {
        Index t = 0;
        for (Index d : block_dims) t += d;
        return t;
    }

    // contribution of block `blk`: unknown coordinate u contributes row
    // images[u] to equation `eq`
    void add_block(std::size_t eq, std::size_t blk, const Mat<S>& images) {
        Index off = 0;
        for (std::size_t i = 0; i < blk; ++i) off += block_dims[i];
        columns[eq].middleRows(off, block_dims[blk]) += images;
    }

    std::optional<RowVec<S>> solve_all() const {
        Index cols = 0;
        for (auto& r : rhs) cols += r.cols();
        Mat<S> sys = mat_zero<S>(total(), cols);
        RowVec<S> target = mat_zero<S>(1, cols).row(0);
        Index off = 0;
        for (std::size_t e = 0; e < rhs.size(); ++e) {
            sys.middleCols(off, rhs[e].cols()) = columns[e];
            target.middleCols(off, rhs[e].cols()) = rhs[e];
            off += rhs[e].cols();
        }
        auto sol = solve<S>(Mat<S>(sys.transpose()), ColVec<S>(target.transpose()));
        if (!sol) return std::nullopt;
        return RowVec<S>(sol->transpose());
    }
};

}  // namespace detail

template <class S>
FdModule<S> k_t_lifted(const EndoAlgebra<S>& e, const BetaStar<S>& bs,
                       const SiltingCertificate<S>& cert, const FdModule<S>& y) {
    const AlgebraPtr<S>& alg = e.p.algebra();
    KTLinear<S> kt = k_t_linear(e, y, bs);

    // left multiplication by r on A, in the sum-adapted coordinates of R0
    ProjSum<S> ps = projective_sum(alg, cert.r0.tags_0);
    Mat<S> embed = mat_zero<S>(ps.module.dim(), alg->dim());
    for (std::size_t k = 0; k < ps.parts.size(); ++k)
        embed.middleRows(ps.offsets[k], ps.parts[k].dim()) = ps.part_incl_regular[k].matrix;
    Mat<S> embed_inv = *inverse<S>(embed);

    HomBasis<S> end_q1m1 = hom_basis(cert.q1.pm1, cert.q1.pm1);
    HomBasis<S> end_q10 = hom_basis(cert.q1.p0, cert.q1.p0);
    HomBasis<S> end_q2m1 = hom_basis(cert.q2.pm1, cert.q2.pm1);
    HomBasis<S> end_q20 = hom_basis(cert.q2.p0, cert.q2.p0);
    HomBasis<S> h_a_q1m1 = hom_basis(ps.module, cert.q1.pm1);
    HomBasis<S> h_q10_q2m1 = hom_basis(cert.q1.p0, cert.q2.pm1);
    HomBasis<S> h_q20_a = hom_basis(cert.q2.p0, ps.module);

    const Mat<S>& s1 = cert.q1.sigma.matrix;
    const Mat<S>& s2 = cert.q2.sigma.matrix;

    std::vector<Mat<S>> actions;
    for (Index rb = 0; rb < alg->dim(); ++rb) {
        Mat<S> lr = embed_inv * alg->left_mult(rb) * embed;  // t_r on R0 coordinates

        // stage 1: chain map f on Q1 with (f after alpha) ~ (alpha after t_r)
        detail::LinearAssembly<S> st1;
        st1.block_dims = {end_q1m1.dim(), end_q10.dim(), h_a_q1m1.dim()};
        st1.columns.assign(2, Mat<S>());
        st1.rhs.assign(2, RowVec<S>());
        // eq 0: Fm1 * s1 - s1 * F0 = 0 (chain condition)
        Index eq0 = cert.q1.pm1.dim() * cert.q1.p0.dim();
        st1.columns[0] = mat_zero<S>(st1.total(), eq0);
        st1.rhs[0] = mat_zero<S>(1, eq0).row(0);
        {
            Mat<S> img = mat_zero<S>(end_q1m1.dim(), eq0);
            for (Index u = 0; u < end_q1m1.dim(); ++u)
                img.row(u) = flatten<S>(Mat<S>(end_q1m1.combo(RowVec<S>(mat_identity<S>(end_q1m1.dim()).row(u))) * s1));
            st1.add_block(0, 0, img);
            Mat<S> img2 = mat_zero<S>(end_q10.dim(), eq0);
            for (Index u = 0; u < end_q10.dim(); ++u)
                img2.row(u) = flatten<S>(Mat<S>(-(s1 * end_q10.combo(RowVec<S>(mat_identity<S>(end_q10.dim()).row(u))))));
            st1.add_block(0, 1, img2);
        }
        // eq 1: alpha0 * F0 + H * s1 = lr * alpha0
        Index eq1 = ps.module.dim() * cert.q1.p0.dim();
        st1.columns[1] = mat_zero<S>(st1.total(), eq1);
        st1.rhs[1] = flatten<S>(Mat<S>(lr * cert.alpha_0));
        {
            Mat<S> img = mat_zero<S>(end_q10.dim(), eq1);
            for (Index u = 0; u < end_q10.dim(); ++u)
                img.row(u) = flatten<S>(Mat<S>(cert.alpha_0 * end_q10.combo(RowVec<S>(mat_identity<S>(end_q10.dim()).row(u)))));
            st1.add_block(1, 1, img);
            Mat<S> img2 = mat_zero<S>(h_a_q1m1.dim(), eq1);
            for (Index u = 0; u < h_a_q1m1.dim(); ++u)
                img2.row(u) = flatten<S>(Mat<S>(h_a_q1m1.combo(RowVec<S>(mat_identity<S>(h_a_q1m1.dim()).row(u))) * s1));
            st1.add_block(1, 2, img2);
        }
        auto sol1 = st1.solve_all();
        require(sol1.has_value(), "cannot lift t_r to the middle of the triangle");
        Mat<S> fm1 = end_q1m1.combo(RowVec<S>(sol1->leftCols(end_q1m1.dim())));
        Mat<S> f0 = end_q10.combo(RowVec<S>(sol1->middleCols(end_q1m1.dim(), end_q10.dim())));

        // stage 2: chain map g on Q2 with (g after beta) ~ (beta after f) and
        // (t_r[1] after gamma) ~ (gamma after g)
        detail::LinearAssembly<S> st2;
        st2.block_dims = {end_q2m1.dim(), end_q20.dim(), h_q10_q2m1.dim(), h_q20_a.dim()};
        st2.columns.assign(3, Mat<S>());
        st2.rhs.assign(3, RowVec<S>());
        Index eqa = cert.q2.pm1.dim() * cert.q2.p0.dim();
        st2.columns[0] = mat_zero<S>(st2.total(), eqa);
        st2.rhs[0] = mat_zero<S>(1, eqa).row(0);
        {
            Mat<S> img = mat_zero<S>(end_q2m1.dim(), eqa);
            for (Index u = 0; u < end_q2m1.dim(); ++u)
                img.row(u) = flatten<S>(Mat<S>(end_q2m1.combo(RowVec<S>(mat_identity<S>(end_q2m1.dim()).row(u))) * s2));
            st2.add_block(0, 0, img);
            Mat<S> img2 = mat_zero<S>(end_q20.dim(), eqa);
            for (Index u = 0; u < end_q20.dim(); ++u)
                img2.row(u) = flatten<S>(Mat<S>(-(s2 * end_q20.combo(RowVec<S>(mat_identity<S>(end_q20.dim()).row(u))))));
            st2.add_block(0, 1, img2);
        }
        // eq b (degree -1 of square 2): beta_m1 * Gm1 - Fm1 * beta_m1 = s1 * H2
        Index eqb = cert.q1.pm1.dim() * cert.q2.pm1.dim();
        st2.columns[1] = mat_zero<S>(st2.total(), eqb);
        st2.rhs[1] = flatten<S>(Mat<S>(fm1 * cert.beta_m1));
        {
            Mat<S> img = mat_zero<S>(end_q2m1.dim(), eqb);
            for (Index u = 0; u < end_q2m1.dim(); ++u)
                img.row(u) = flatten<S>(Mat<S>(cert.beta_m1 * end_q2m1.combo(RowVec<S>(mat_identity<S>(end_q2m1.dim()).row(u)))));
            st2.add_block(1, 0, img);
            Mat<S> img2 = mat_zero<S>(h_q10_q2m1.dim(), eqb);
            for (Index u = 0; u < h_q10_q2m1.dim(); ++u)
                img2.row(u) = flatten<S>(Mat<S>(-(s1 * h_q10_q2m1.combo(RowVec<S>(mat_identity<S>(h_q10_q2m1.dim()).row(u))))));
            st2.add_block(1, 2, img2);
        }
        // eq b' (degree 0 of square 2): beta_0 * G0 - F0 * beta_0 = H2 * s2
        Index eqb2 = cert.q1.p0.dim() * cert.q2.p0.dim();
        st2.columns.push_back(mat_zero<S>(st2.total(), eqb2));
        st2.rhs.push_back(flatten<S>(Mat<S>(f0 * cert.beta_0)));
        {
            Mat<S> img = mat_zero<S>(end_q20.dim(), eqb2);
            for (Index u = 0; u < end_q20.dim(); ++u)
                img.row(u) = flatten<S>(Mat<S>(cert.beta_0 * end_q20.combo(RowVec<S>(mat_identity<S>(end_q20.dim()).row(u)))));
            st2.add_block(3, 1, img);
            Mat<S> img2 = mat_zero<S>(h_q10_q2m1.dim(), eqb2);
            for (Index u = 0; u < h_q10_q2m1.dim(); ++u)
                img2.row(u) = flatten<S>(Mat<S>(-(h_q10_q2m1.combo(RowVec<S>(mat_identity<S>(h_q10_q2m1.dim()).row(u))) * s2)));
            st2.add_block(3, 2, img2);
        }
        // eq c (square 3): Gm1 * gamma - gamma * lr = s2 * H3
        Index eqc = cert.q2.pm1.dim() * ps.module.dim();
        st2.columns[2] = mat_zero<S>(st2.total(), eqc);
        st2.rhs[2] = flatten<S>(Mat<S>(cert.gamma_m1 * lr));
        {
            Mat<S> img = mat_zero<S>(end_q2m1.dim(), eqc);
            for (Index u = 0; u < end_q2m1.dim(); ++u)
                img.row(u) = flatten<S>(Mat<S>(end_q2m1.combo(RowVec<S>(mat_identity<S>(end_q2m1.dim()).row(u))) * cert.gamma_m1));
            st2.add_block(2, 0, img);
            Mat<S> img2 = mat_zero<S>(h_q20_a.dim(), eqc);
            for (Index u = 0; u < h_q20_a.dim(); ++u)
                img2.row(u) = flatten<S>(Mat<S>(-(s2 * h_q20_a.combo(RowVec<S>(mat_identity<S>(h_q20_a.dim()).row(u))))));
            st2.add_block(2, 3, img2);
        }
        auto sol2 = st2.solve_all();
        require(sol2.has_value(), "cannot complete t_r to a morphism of triangles");
        Mat<S> gm1 = end_q2m1.combo(RowVec<S>(sol2->leftCols(end_q2m1.dim())));
        Mat<S> g0 = end_q20.combo(RowVec<S>(sol2->middleCols(end_q2m1.dim(), end_q20.dim())));

        // contravariant action on Hom(Q2, P) classes: phi -> (g then phi)
        Mat<S> w = mat_zero<S>(bs.src_hk.dim(), bs.src_hk.dim());
        for (Index r = 0; r < bs.src_hk.dim(); ++r) {
            auto [pm1, p0] = bs.src_hk.unpack0(RowVec<S>(bs.src_hk.cls.reps.row(r)));
            w.row(r) = bs.src_hk.cls.coords(bs.src_hk.pack0(Mat<S>(gm1 * pm1), Mat<S>(g0 * p0)));
        }
        Mat<S> on_tensor = tensor_map_right(kt.ten_src, kt.ten_src, w);
        actions.push_back(detail::rows_in_basis<S>(kt.kernel_rows, Mat<S>(kt.kernel_rows * on_tensor)));
    }
    return FdModule<S>(e.p.algebra(), std::move(actions));
}

}  // namespace silt
