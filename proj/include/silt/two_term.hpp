#pragma once

// Two-term complexes of projectives concentrated in degrees -1 and 0, their
// homotopy-category Hom spaces, presilting/silting certification and the
// defining triangle of a silting complex.
//
// All Hom computations go through one 3-term complex
//   Hom(P^0, Y^-1) -> Hom(P^-1, Y^-1) x Hom(P^0, Y^0) -> Hom(P^-1, Y^0)
// with differentials h -> (h.sigma, alpha.h) and (f, g) -> alpha.f - g.sigma,
// whose cohomologies in degrees -1, 0, 1 are Hom_K(P, Y[n]). Signs are fixed
// here once; everything downstream inherits them.

#include <optional>
#include <utility>
#include <vector>

#include "silt/module.hpp"

namespace silt {

template <class S>
struct GeneralTwoTerm {
    FdModule<S> xm1, x0;
    ModuleMap<S> alpha;  // xm1 -> x0

    static GeneralTwoTerm stalk(const FdModule<S>& m, int degree) {
        if (degree != 0 && degree != -1) throw usage_error("stalk degree must be 0 or -1");
        FdModule<S> z = FdModule<S>::zero(m.algebra);
        if (degree == 0)
            return GeneralTwoTerm{z, m, ModuleMap<S>::zero(z, m)};
        return GeneralTwoTerm{m, z, ModuleMap<S>::zero(m, z)};
    }
};

template <class S>
struct TwoTermComplex {
    FdModule<S> pm1, p0;
    ModuleMap<S> sigma;
    std::vector<int> tags_m1, tags_0;  // indecomposable projective summands P(v)

    AlgebraPtr<S> algebra() const { return p0.algebra; }
    GeneralTwoTerm<S> general() const { return GeneralTwoTerm<S>{pm1, p0, sigma}; }

    bool is_zero() const { return pm1.dim() == 0 && p0.dim() == 0; }
};

// Direct sum of projectives P(v) keeping the block structure (for building
// sigma entries from algebra elements).
template <class S>
struct ProjSum {
    FdModule<S> module;
    std::vector<FdModule<S>> parts;
    std::vector<ModuleMap<S>> part_incl_regular;  // P(v_k) -> A_A
    std::vector<Index> offsets;                   // block offsets in `module`
    std::vector<int> tags;
};

template <class S>
ProjSum<S> projective_sum(const AlgebraPtr<S>& alg, const std::vector<int>& vertices) {
    ProjSum<S> ps;
    ps.tags = vertices;
    ps.module = FdModule<S>::zero(alg);
    Index off = 0;
    for (int v : vertices) {
        auto [p, incl] = projective_with_inclusion(alg, v);
        ps.offsets.push_back(off);
        off += p.dim();
        ps.parts.push_back(p);
        ps.part_incl_regular.push_back(incl);
        ps.module = direct_sum(ps.module, p);
    }
    ps.offsets.push_back(off);
    return ps;
}

// sigma given entrywise: entry (i, j) is an algebra element x in e_t A e_s
// defining P(s_j) -> P(t_i), u -> x u.
template <class S>
TwoTermComplex<S> two_term_from_elements(const AlgebraPtr<S>& alg, const std::vector<int>& vm1,
                                         const std::vector<int>& v0,
                                         const std::vector<std::vector<RowVec<S>>>& entries) {
    ProjSum<S> bottom = projective_sum(alg, vm1);
    ProjSum<S> top = projective_sum(alg, v0);
    if (entries.size() != v0.size())
        throw usage_error("sigma has wrong number of rows");
    Mat<S> m = mat_zero<S>(bottom.module.dim(), top.module.dim());
    for (std::size_t i = 0; i < v0.size(); ++i) {
        if (entries[i].size() != vm1.size()) throw usage_error("sigma has a ragged row");
        for (std::size_t j = 0; j < vm1.size(); ++j) {
            const RowVec<S>& x = entries[i][j];
            if (mat_is_zero<S>(Mat<S>(x))) continue;
            ModuleMap<S> comp = hom_from_element(bottom.parts[j], top.parts[i],
                                                 bottom.part_incl_regular[j],
                                                 top.part_incl_regular[i], x);
            m.block(bottom.offsets[j], top.offsets[i], comp.matrix.rows(), comp.matrix.cols()) =
                comp.matrix;
        }
    }
    TwoTermComplex<S> cx;
    cx.pm1 = bottom.module;
    cx.p0 = top.module;
    cx.sigma = ModuleMap<S>(cx.pm1, cx.p0, std::move(m));
    cx.tags_m1 = vm1;
    cx.tags_0 = v0;
    return cx;
}

// Complex with the direct sum of the P(v) in one degree, zero elsewhere.
template <class S>
TwoTermComplex<S> stalk_projectives(const AlgebraPtr<S>& alg, const std::vector<int>& vertices,
                                    int degree) {
    if (degree != 0 && degree != -1) throw usage_error("stalk degree must be 0 or -1");
    ProjSum<S> ps = projective_sum(alg, vertices);
    FdModule<S> z = FdModule<S>::zero(alg);
    TwoTermComplex<S> cx;
    if (degree == 0) {
        cx.pm1 = z;
        cx.p0 = ps.module;
        cx.tags_0 = vertices;
    } else {
        cx.pm1 = ps.module;
        cx.p0 = z;
        cx.tags_m1 = vertices;
    }
    cx.sigma = ModuleMap<S>::zero(cx.pm1, cx.p0);
    return cx;
}

// The free module A as a complex concentrated in `degree` (R or R[1]).
template <class S>
TwoTermComplex<S> stalk_regular(const AlgebraPtr<S>& alg, int degree) {
    std::vector<int> all;
    for (int v = 0; v < static_cast<int>(alg->quiver ? alg->quiver->vertices.size() : 0); ++v)
        all.push_back(v);
    if (!alg->quiver) throw usage_error("stalk_regular needs a path algebra");
    return stalk_projectives(alg, all, degree);
}

template <class S>
TwoTermComplex<S> zero_complex(const AlgebraPtr<S>& alg) {
    TwoTermComplex<S> cx;
    cx.pm1 = FdModule<S>::zero(alg);
    cx.p0 = FdModule<S>::zero(alg);
    cx.sigma = ModuleMap<S>::zero(cx.pm1, cx.p0);
    return cx;
}

template <class S>
TwoTermComplex<S> direct_sum_complex(const TwoTermComplex<S>& a, const TwoTermComplex<S>& b) {
    TwoTermComplex<S> cx;
    cx.pm1 = direct_sum(a.pm1, b.pm1);
    cx.p0 = direct_sum(a.p0, b.p0);
    Mat<S> m = mat_zero<S>(cx.pm1.dim(), cx.p0.dim());
    m.topLeftCorner(a.pm1.dim(), a.p0.dim()) = a.sigma.matrix;
    m.bottomRightCorner(b.pm1.dim(), b.p0.dim()) = b.sigma.matrix;
    cx.sigma = ModuleMap<S>(cx.pm1, cx.p0, std::move(m), false);
    cx.tags_m1 = a.tags_m1;
    cx.tags_m1.insert(cx.tags_m1.end(), b.tags_m1.begin(), b.tags_m1.end());
    cx.tags_0 = a.tags_0;
    cx.tags_0.insert(cx.tags_0.end(), b.tags_0.begin(), b.tags_0.end());
    return cx;
}

template <class S>
TwoTermComplex<S> power_complex(const TwoTermComplex<S>& a, Index d) {
    TwoTermComplex<S> cx = zero_complex<S>(a.algebra());
    for (Index i = 0; i < d; ++i) cx = direct_sum_complex(cx, a);
    return cx;
}

// H^0 = Coker(sigma) with projection, H^-1 = Ker(sigma) with inclusion.
template <class S>
std::pair<FdModule<S>, ModuleMap<S>> cohomology_0(const TwoTermComplex<S>& x) {
    return cokernel_of(x.sigma);
}

template <class S>
std::pair<FdModule<S>, ModuleMap<S>> cohomology_m1(const TwoTermComplex<S>& x) {
    return kernel_of(x.sigma);
}

template <class S>
FdModule<S> cohomology(const TwoTermComplex<S>& x, int degree) {
    if (degree == 0) return cohomology_0(x).first;
    if (degree == -1) return cohomology_m1(x).first;
    throw usage_error("cohomology degree must be 0 or -1");
}

// --- the Hom complex and homotopy classes -----------------------------------

// A cohomology space with chosen class representatives: rows of `reps` are
// cycles, reduced against the echelonized boundary space, deterministic.
template <class S>
struct ClassSpace {
    Mat<S> reps;
    Echelon<S> boundary;
    Index ambient = 0;

    Index dim() const { return reps.rows(); }

    RowVec<S> reduce(RowVec<S> v) const {
        for (Index r = 0; r < boundary.rank; ++r) {
            Index pc = boundary.pivot_cols[r];
            if (scalar_is_zero(v(pc))) continue;
            v -= v(pc) * boundary.reduced.row(r);
        }
        return v;
    }

    bool is_zero_class(const RowVec<S>& v) const { return mat_is_zero<S>(Mat<S>(reduce(v))); }

    // class coordinates of a cycle in the representative basis
    RowVec<S> coords(const RowVec<S>& v) const {
        RowVec<S> r = reduce(v);
        auto c = row_coordinates<S>(reps, r);
        require(c.has_value(), "vector is not a cycle of this class space");
        return *c;
    }
};

template <class S>
ClassSpace<S> class_space(const Mat<S>& cycles, const Mat<S>& boundaries) {
    ClassSpace<S> cs;
    cs.ambient = cycles.cols();
    cs.boundary = rref(Mat<S>(boundaries));
    Mat<S> reduced(0, cycles.cols());
    for (Index i = 0; i < cycles.rows(); ++i) {
        RowVec<S> r = cs.reduce(RowVec<S>(cycles.row(i)));
        if (!mat_is_zero<S>(Mat<S>(r))) reduced = vcat<S>(reduced, Mat<S>(r));
    }
    cs.reps = row_space_basis<S>(reduced);
    return cs;
}

// Flattened basis of Hom_R(M, N); chain-level data lives in these coordinates.
template <class S>
struct HomBasis {
    Index rows = 0, cols = 0;  // shape of the maps
    Mat<S> flat;               // dim x (rows*cols), row k = flatten(basis map k)

    Index dim() const { return flat.rows(); }

    Mat<S> combo(const RowVec<S>& coords) const {
        RowVec<S> v = coords * flat;
        return unflatten<S>(v, rows, cols);
    }

    RowVec<S> coords_of(const Mat<S>& m) const {
        auto c = row_coordinates<S>(flat, flatten<S>(m));
        require(c.has_value(), "matrix is not a module homomorphism in this basis");
        return *c;
    }
};

template <class S>
HomBasis<S> hom_basis(const FdModule<S>& m, const FdModule<S>& n) {
    HomBasis<S> hb;
    hb.rows = m.dim();
    hb.cols = n.dim();
    auto maps = hom_space(m, n);
    hb.flat = mat_zero<S>(static_cast<Index>(maps.size()), m.dim() * n.dim());
    for (std::size_t k = 0; k < maps.size(); ++k)
        hb.flat.row(static_cast<Index>(k)) = flatten<S>(maps[k].matrix);
    return hb;
}

// The 3-term Hom complex Hom(P, Y) in module-hom coordinates.
template <class S>
struct HomComplex3 {
    HomBasis<S> hm1;   // Hom(X0, Ym1)
    HomBasis<S> h0f;   // Hom(Xm1, Ym1)
    HomBasis<S> h0g;   // Hom(X0, Y0)
    HomBasis<S> h1;    // Hom(Xm1, Y0)
    Mat<S> d_m1, d_0;  // acting on row vectors of coordinates
};

template <class S>
HomComplex3<S> hom_complex(const TwoTermComplex<S>& x, const GeneralTwoTerm<S>& y) {
    HomComplex3<S> hc;
    hc.hm1 = hom_basis(x.p0, y.xm1);
    hc.h0f = hom_basis(x.pm1, y.xm1);
    hc.h0g = hom_basis(x.p0, y.x0);
    hc.h1 = hom_basis(x.pm1, y.x0);
    const Mat<S>& sig = x.sigma.matrix;
    const Mat<S>& alp = y.alpha.matrix;
    Index c0 = hc.h0f.dim() + hc.h0g.dim();
    hc.d_m1 = mat_zero<S>(hc.hm1.dim(), c0);
    for (Index u = 0; u < hc.hm1.dim(); ++u) {
        Mat<S> h = unflatten<S>(RowVec<S>(hc.hm1.flat.row(u)), hc.hm1.rows, hc.hm1.cols);
        hc.d_m1.row(u).leftCols(hc.h0f.dim()) = hc.h0f.coords_of(Mat<S>(sig * h));
        hc.d_m1.row(u).rightCols(hc.h0g.dim()) = hc.h0g.coords_of(Mat<S>(h * alp));
    }
    hc.d_0 = mat_zero<S>(c0, hc.h1.dim());
    for (Index u = 0; u < hc.h0f.dim(); ++u) {
        Mat<S> f = unflatten<S>(RowVec<S>(hc.h0f.flat.row(u)), hc.h0f.rows, hc.h0f.cols);
        hc.d_0.row(u) = hc.h1.coords_of(Mat<S>(f * alp));
    }
    for (Index u = 0; u < hc.h0g.dim(); ++u) {
        Mat<S> g = unflatten<S>(RowVec<S>(hc.h0g.flat.row(u)), hc.h0g.rows, hc.h0g.cols);
        hc.d_0.row(hc.h0f.dim() + u) = hc.h1.coords_of(Mat<S>(-(sig * g)));
    }
    return hc;
}

// Hom_K(X, Y[n]) for n in {-1, 0, 1}. Class representatives are rows of chain
// coordinates:
//   n =  0 : [ coords in Hom(Xm1,Ym1) | coords in Hom(X0,Y0) ]
//   n =  1 : coords in Hom(Xm1, Y0)
//   n = -1 : coords in Hom(X0, Ym1)
template <class S>
struct HomK {
    int n = 0;
    HomComplex3<S> hc;
    ClassSpace<S> cls;

    Index dim() const { return cls.dim(); }

    std::pair<Mat<S>, Mat<S>> unpack0(const RowVec<S>& v) const {
        require(n == 0, "unpack0 on shifted hom space");
        RowVec<S> a = v.leftCols(hc.h0f.dim());
        RowVec<S> b = v.rightCols(hc.h0g.dim());
        return {hc.h0f.combo(a), hc.h0g.combo(b)};
    }

    RowVec<S> pack0(const Mat<S>& fm1, const Mat<S>& f0) const {
        require(n == 0, "pack0 on shifted hom space");
        RowVec<S> v(hc.h0f.dim() + hc.h0g.dim());
        v.leftCols(hc.h0f.dim()) = hc.h0f.coords_of(fm1);
        v.rightCols(hc.h0g.dim()) = hc.h0g.coords_of(f0);
        return v;
    }

    Mat<S> unpack1(const RowVec<S>& v) const {
        require(n == 1, "unpack1 on wrong shift");
        return hc.h1.combo(v);
    }

    RowVec<S> pack1(const Mat<S>& u) const {
        require(n == 1, "pack1 on wrong shift");
        return hc.h1.coords_of(u);
    }

    Mat<S> unpack_m1(const RowVec<S>& v) const {
        require(n == -1, "unpack_m1 on wrong shift");
        return hc.hm1.combo(v);
    }
};

template <class S>
HomK<S> hom_k(const TwoTermComplex<S>& x, const GeneralTwoTerm<S>& y, int n) {
    HomK<S> hk;
    hk.n = n;
    hk.hc = hom_complex(x, y);
    if (n == 0) {
        Mat<S> cycles = left_kernel<S>(hk.hc.d_0);
        Mat<S> boundaries = row_space_basis<S>(hk.hc.d_m1);
        hk.cls = class_space<S>(cycles, boundaries);
    } else if (n == 1) {
        Mat<S> cycles = mat_identity<S>(hk.hc.h1.dim());
        Mat<S> boundaries = row_space_basis<S>(hk.hc.d_0);
        hk.cls = class_space<S>(cycles, boundaries);
    } else if (n == -1) {
        Mat<S> cycles = left_kernel<S>(hk.hc.d_m1);
        hk.cls = class_space<S>(cycles, Mat<S>(mat_zero<S>(0, hk.hc.hm1.dim())));
    } else {
        throw usage_error("hom_k: shift must be -1, 0 or 1");
    }
    return hk;
}

template <class S>
HomK<S> hom_k(const TwoTermComplex<S>& x, const TwoTermComplex<S>& y, int n) {
    return hom_k(x, y.general(), n);
}

// Hom of the complex into a module stalk, shifted by n in {0, 1}, computed
// twice: through the module formulas (Hom(H^0(P), M), resp. the cokernel of
// precomposition with sigma) and through the chain-level Hom complex. The two
// dimensions must agree; the chain-level space with its representatives is
// returned.
template <class S>
HomK<S> hom_d_module(const TwoTermComplex<S>& p, const FdModule<S>& m, int n) {
    HomK<S> chain = hom_k(p, GeneralTwoTerm<S>::stalk(m, 0), n);
    if (n == 0) {
        auto [t, proj] = cohomology_0(p);
        Index module_route = static_cast<Index>(hom_space(t, m).size());
        require(module_route == chain.dim(),
                "Hom(T, M) and the chain-level computation disagree");
    } else if (n == 1) {
        // cokernel of Hom(P^0, M) -> Hom(P^-1, M), f -> (sigma then f)
        HomBasis<S> h0m = hom_basis(p.p0, m);
        HomBasis<S> hm1m = hom_basis(p.pm1, m);
        Mat<S> pre = mat_zero<S>(h0m.dim(), hm1m.dim());
        for (Index u = 0; u < h0m.dim(); ++u) {
            Mat<S> f = h0m.combo(RowVec<S>(mat_identity<S>(h0m.dim()).row(u)));
            pre.row(u) = hm1m.coords_of(Mat<S>(p.sigma.matrix * f));
        }
        Index module_route = hm1m.dim() - rank_of<S>(pre);
        require(module_route == chain.dim(),
                "the defect and the chain-level computation disagree");
    } else {
        throw usage_error("hom_d_module: n must be 0 or 1");
    }
    return chain;
}

// (S1) for a compact two-term complex collapses to Hom_K(P, P[1]) = 0.
template <class S>
bool is_presilting(const TwoTermComplex<S>& p) {
    return hom_k(p, p, 1).dim() == 0;
}

// --- add-membership and the certificate triangle ----------------------------

template <class S>
struct AddWitness {
    Index power = 0;      // the evaluation P^power -> Q
    Mat<S> e_m1, e_0;     // chain map P^power -> Q
    Mat<S> s_m1, s_0;     // chain map Q -> P^power with (s then e) ~ id_Q
};

// Decides Q in add(P) by testing whether id_Q factors through the evaluation
// map P^d -> Q built from a basis of Hom_K(P, Q).
template <class S>
std::optional<AddWitness<S>> add_membership(const TwoTermComplex<S>& q, const TwoTermComplex<S>& p) {
    HomK<S> hpq = hom_k(p, q, 0);
    Index d = hpq.dim();
    TwoTermComplex<S> pd = power_complex(p, d);
    AddWitness<S> w;
    w.power = d;
    w.e_m1 = mat_zero<S>(pd.pm1.dim(), q.pm1.dim());
    w.e_0 = mat_zero<S>(pd.p0.dim(), q.p0.dim());
    for (Index k = 0; k < d; ++k) {
        auto [fm1, f0] = hpq.unpack0(RowVec<S>(hpq.cls.reps.row(k)));
        w.e_m1.middleRows(k * p.pm1.dim(), p.pm1.dim()) = fm1;
        w.e_0.middleRows(k * p.p0.dim(), p.p0.dim()) = f0;
    }
    HomK<S> hq_pd = hom_k(q, pd, 0);
    HomK<S> hq_q = hom_k(q, q, 0);
    // pairing: s -> class of (s then e)
    Mat<S> pairing = mat_zero<S>(hq_pd.dim(), hq_q.dim());
    for (Index j = 0; j < hq_pd.dim(); ++j) {
        auto [sm1, s0] = hq_pd.unpack0(RowVec<S>(hq_pd.cls.reps.row(j)));
        RowVec<S> comp = hq_q.pack0(Mat<S>(sm1 * w.e_m1), Mat<S>(s0 * w.e_0));
        pairing.row(j) = hq_q.cls.coords(comp);
    }
    RowVec<S> id_class =
        hq_q.cls.coords(hq_q.pack0(mat_identity<S>(q.pm1.dim()), mat_identity<S>(q.p0.dim())));
    auto sol = solve<S>(Mat<S>(pairing.transpose()), ColVec<S>(id_class.transpose()));
    if (!sol) return std::nullopt;
    w.s_m1 = mat_zero<S>(q.pm1.dim(), pd.pm1.dim());
    w.s_0 = mat_zero<S>(q.p0.dim(), pd.p0.dim());
    for (Index j = 0; j < hq_pd.dim(); ++j) {
        if (scalar_is_zero((*sol)(j))) continue;
        auto [sm1, s0] = hq_pd.unpack0(RowVec<S>(hq_pd.cls.reps.row(j)));
        w.s_m1 += (*sol)(j)*sm1;
        w.s_0 += (*sol)(j)*s0;
    }
    // e after s is homotopic to the identity of Q
    RowVec<S> check = hq_q.pack0(Mat<S>(w.s_m1 * w.e_m1 - mat_identity<S>(q.pm1.dim())),
                                 Mat<S>(w.s_0 * w.e_0 - mat_identity<S>(q.p0.dim())));
    require(hq_q.cls.is_zero_class(check), "add witness does not split up to homotopy");
    return w;
}

template <class S>
struct SiltingCertificate {
    Index d = 0;
    TwoTermComplex<S> r0;   // A in degree 0
    TwoTermComplex<S> r1;   // A in degree -1
    TwoTermComplex<S> q1;   // cocone of the precover
    TwoTermComplex<S> q2;   // P^d
    Mat<S> alpha_0;         // A -> Q1^0 (only degree-0 component)
    Mat<S> beta_m1, beta_0; // Q1 -> Q2
    Mat<S> gamma_m1;        // Q2^-1 -> A, the precover g: Q2 -> R[1]
    AddWitness<S> w1, w2;
};

// Builds the triangle R -> Q1 -> P^d -> R[1] from a basis of Hom_K(P, R[1])
// and certifies silting by deciding Q1 in add(P). Requires presilting input.
template <class S>
std::optional<SiltingCertificate<S>> silting_certificate(const TwoTermComplex<S>& p) {
    if (!is_presilting(p)) throw usage_error("silting_certificate requires a presilting complex");
    const AlgebraPtr<S> alg = p.algebra();
    SiltingCertificate<S> cert;
    cert.r0 = stalk_regular(alg, 0);
    cert.r1 = stalk_regular(alg, -1);

    HomK<S> g_basis = hom_k(p, cert.r1, 0);
    cert.d = g_basis.dim();
    Index d = cert.d;
    cert.q2 = power_complex(p, d);

    // gamma: Q2 -> R[1], component (P^-1)^d -> A stacking the basis maps
    Index adim = cert.r1.pm1.dim();
    cert.gamma_m1 = mat_zero<S>(cert.q2.pm1.dim(), adim);
    for (Index k = 0; k < d; ++k) {
        auto [gm1, g0] = g_basis.unpack0(RowVec<S>(g_basis.cls.reps.row(k)));
        (void)g0;  // maps into the zero entry
        cert.gamma_m1.middleRows(k * p.pm1.dim(), p.pm1.dim()) = gm1;
    }

    // Q1 = cocone: entries (P^-1)^d and (P^0)^d + A, differential (sigma^d | gamma)
    cert.q1.pm1 = cert.q2.pm1;
    cert.q1.p0 = direct_sum(cert.q2.p0, cert.r0.p0);
    Mat<S> sq1 = mat_zero<S>(cert.q1.pm1.dim(), cert.q1.p0.dim());
    sq1.leftCols(cert.q2.p0.dim()) = cert.q2.sigma.matrix;
    sq1.rightCols(adim) = cert.gamma_m1;
    cert.q1.sigma = ModuleMap<S>(cert.q1.pm1, cert.q1.p0, std::move(sq1));
    cert.q1.tags_m1 = cert.q2.tags_m1;
    cert.q1.tags_0 = cert.q2.tags_0;
    cert.q1.tags_0.insert(cert.q1.tags_0.end(), cert.r0.tags_0.begin(), cert.r0.tags_0.end());

    // alpha: R -> Q1 into the A-block; beta: Q1 -> Q2 collapsing it
    cert.alpha_0 = mat_zero<S>(adim, cert.q1.p0.dim());
    cert.alpha_0.rightCols(adim) = mat_identity<S>(adim);
    cert.beta_m1 = mat_identity<S>(cert.q1.pm1.dim());
    cert.beta_0 = mat_zero<S>(cert.q1.p0.dim(), cert.q2.p0.dim());
    cert.beta_0.topRows(cert.q2.p0.dim()) = mat_identity<S>(cert.q2.p0.dim());

    // the three consecutive composites vanish up to homotopy
    {
        HomK<S> h = hom_k(cert.r0, cert.q2, 0);
        RowVec<S> comp = h.pack0(mat_zero<S>(0, cert.q2.pm1.dim()), Mat<S>(cert.alpha_0 * cert.beta_0));
        require(h.cls.is_zero_class(comp), "alpha then beta is not null-homotopic");
    }
    {
        HomK<S> h = hom_k(cert.q1, cert.r1, 0);
        RowVec<S> comp = h.pack0(Mat<S>(cert.beta_m1 * cert.gamma_m1), mat_zero<S>(cert.q1.p0.dim(), 0));
        require(h.cls.is_zero_class(comp), "beta then gamma is not null-homotopic");
    }
    {
        // gamma then alpha[1]: a degree-1 map Q2 -> Q1
        HomK<S> h = hom_k(cert.q2, cert.q1.general(), 1);
        RowVec<S> comp = h.pack1(Mat<S>(cert.gamma_m1 * cert.alpha_0));
        require(h.cls.is_zero_class(comp), "gamma then alpha[1] is not null-homotopic");
    }

    auto w1 = add_membership(cert.q1, p);
    if (!w1) return std::nullopt;  // presilting but not silting
    auto w2 = add_membership(cert.q2, p);
    require(w2.has_value(), "P^d must lie in add(P)");
    cert.w1 = std::move(*w1);
    cert.w2 = std::move(*w2);
    return cert;
}

}  // namespace silt
