#include <doctest.h>

#include "silt/dg.hpp"

using namespace silt;

namespace {

Quiver a2() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    return q;
}

struct Setup {
    AlgebraPtr<Fp> alg;
    TwoTermComplex<Fp> pbar, r0;
    FdModule<Fp> s1, s2, p1;
    EndoAlgebra<Fp> endo;
    BimoduleT<Fp> t;
    SiltingCertificate<Fp> cert;
    BetaStar<Fp> bs;
    TruncatedDg<Fp> b;
};

Setup& shared_setup() {
    static Setup s = [] {
        Setup u;
        u.alg = make_path_algebra<Fp>(a2(), {}, Field::fp(2));
        RowVec<Fp> a = u.alg->basis_vector(2), z = u.alg->zero();
        u.pbar = two_term_from_elements<Fp>(u.alg, {1, 1}, {0}, {{a, z}});
        u.r0 = stalk_regular(u.alg, 0);
        u.s1 = simple_module(u.alg, 0);
        u.s2 = simple_module(u.alg, 1);
        u.p1 = projective_module(u.alg, 0);
        u.endo = endo_algebra(u.pbar);
        u.t = bimodule_t(u.endo);
        u.cert = *silting_certificate(u.pbar);
        u.bs = beta_star(u.endo, u.t, u.cert);
        u.b = build_b(u.endo);
        return u;
    }();
    return s;
}

}  // namespace

TEST_CASE("truncated dg algebra shapes") {
    Setup& s = shared_setup();
    // Hom(P(1), P(2)^2) = 0, so B^-1 vanishes and B^0 is the class algebra
    CHECK(s.b.bm1_dim() == 0);
    CHECK(s.b.b0_dim() == 3);

    EndoAlgebra<Fp> er = endo_algebra(s.r0);
    TruncatedDg<Fp> br = build_b(er);
    CHECK(br.bm1_dim() == 0);
    CHECK(br.b0_dim() == 3);

    // contractible complex: d is onto B^0 and the class algebra vanishes
    RowVec<Fp> e1 = s.alg->vertex_units[0], e2 = s.alg->vertex_units[1];
    RowVec<Fp> z = s.alg->zero();
    TwoTermComplex<Fp> contractible =
        two_term_from_elements<Fp>(s.alg, {0, 1}, {0, 1}, {{e1, z}, {z, e2}});
    EndoAlgebra<Fp> ec = endo_algebra(contractible);
    CHECK(ec.dim() == 0);
    TruncatedDg<Fp> bc = build_b(ec);
    CHECK(bc.b0_dim() - rank_of<Fp>(bc.d) == 0);
}

TEST_CASE("dg tensor of the free module is the complex itself") {
    Setup& s = shared_setup();
    FdModule<Fp> e_reg = regular_module(s.endo.algebra);
    GeneralTwoTerm<Fp> c = tensor_dg(s.b, e_reg);
    // H^0 = T and H^-1 = Ker(sigma) = P(2)
    auto [h0, p0] = cokernel_of(c.alpha);
    CHECK(is_isomorphic(h0, s.t.right).has_value());
    auto [hm1, i0] = kernel_of(c.alpha);
    CHECK(is_isomorphic(hm1, projective_module(s.alg, 1)).has_value());
}

TEST_CASE("dg tensor of zero is zero") {
    Setup& s = shared_setup();
    GeneralTwoTerm<Fp> c = tensor_dg(s.b, FdModule<Fp>::zero(s.endo.algebra));
    CHECK(c.xm1.dim() == 0);
    CHECK(c.x0.dim() == 0);
}

TEST_CASE("tensor defect as an R-module on the torsion-free side") {
    Setup& s = shared_setup();
    HPModule<Fp> def_s2 = h_p(s.endo, s.s2, 1);
    FdModule<Fp> kt = k_t_module(s.b, s.bs, def_s2.module);
    CHECK(is_isomorphic(kt, s.s2).has_value());

    HPModule<Fp> def_p1 = h_p(s.endo, s.p1, 1);
    FdModule<Fp> kt2 = k_t_module(s.b, s.bs, def_p1.module);
    CHECK(is_isomorphic(kt2, s.p1).has_value());

    // and the shifted image is concentrated in degree -1 (in_U side)
    GeneralTwoTerm<Fp> c = tensor_dg(s.b, def_s2.module);
    CHECK(cokernel_of(c.alpha).first.dim() == 0);
}

TEST_CASE("H^0 of the dg tensor matches the plain tensor on the inventory") {
    Setup& s = shared_setup();
    for (auto& y : enumerate_modules(s.endo.algebra, 2)) {
        FdModule<Fp> h0 = h0_check(s.b, s.t, y);
        FdModule<Fp> kt = k_t_module(s.b, s.bs, y);
        (void)h0;
        (void)kt;
    }
}

TEST_CASE("acyclicity characterizes the kernel class") {
    Setup& s = shared_setup();
    for (auto& y : enumerate_modules(s.endo.algebra, 3)) {
        GeneralTwoTerm<Fp> c = tensor_dg(s.b, y);
        bool acyclic = kernel_of(c.alpha).first.dim() == 0 && cokernel_of(c.alpha).first.dim() == 0;
        CHECK(acyclic == in_script_e(s.endo, s.t, s.bs, y));
        if (y.dim() > 0) CHECK(!acyclic);  // compact case: only zero is acyclic
    }
}

TEST_CASE("naive truncated tensor misses H^-1 when the entries are not flat") {
    // Regression anchor: for Y = the 1-dim module with K_T(Y) = P(1), the plain
    // quotient formula collapses the degree -1 part entirely; only the derived
    // model recovers the kernel. H^0 agrees on both models.
    Setup& s = shared_setup();
    HPModule<Fp> def_p1 = h_p(s.endo, s.p1, 1);
    GeneralTwoTerm<Fp> naive = truncated_tensor_naive(s.b, def_p1.module);
    CHECK(kernel_of(naive.alpha).first.dim() == 0);
    GeneralTwoTerm<Fp> derived = tensor_dg(s.b, def_p1.module);
    CHECK(kernel_of(derived.alpha).first.dim() == 2);
    CHECK(cokernel_of(naive.alpha).first.dim() == cokernel_of(derived.alpha).first.dim());

    // on the free module both models agree
    FdModule<Fp> e_reg = regular_module(s.endo.algebra);
    GeneralTwoTerm<Fp> nf = truncated_tensor_naive(s.b, e_reg);
    GeneralTwoTerm<Fp> df = tensor_dg(s.b, e_reg);
    CHECK(kernel_of(nf.alpha).first.dim() == kernel_of(df.alpha).first.dim());
    CHECK(cokernel_of(nf.alpha).first.dim() == cokernel_of(df.alpha).first.dim());
}

TEST_CASE("lifted action agrees with the dg action up to isomorphism") {
    Setup& s = shared_setup();
    for (auto& y : enumerate_modules(s.endo.algebra, 2)) {
        FdModule<Fp> lifted = k_t_lifted(s.endo, s.bs, s.cert, y);
        FdModule<Fp> dg = k_t_module(s.b, s.bs, y);
        REQUIRE(lifted.dim() == dg.dim());
        if (lifted.dim() > 0) CHECK(is_isomorphic(lifted, dg).has_value());
    }
}

TEST_CASE("lifted action on the control stalk instance") {
    Setup& s = shared_setup();
    EndoAlgebra<Fp> er = endo_algebra(s.r0);
    BimoduleT<Fp> tr = bimodule_t(er);
    SiltingCertificate<Fp> cr = *silting_certificate(s.r0);
    BetaStar<Fp> bsr = beta_star(er, tr, cr);
    TruncatedDg<Fp> br = build_b(er);
    for (auto& y : enumerate_modules(er.algebra, 2)) {
        FdModule<Fp> lifted = k_t_lifted(er, bsr, cr, y);
        FdModule<Fp> dg = k_t_module(br, bsr, y);
        CHECK(lifted.dim() == dg.dim());
        // d = 0 for the stalk, so the source of beta* vanishes and K_T = 0
        CHECK(lifted.dim() == 0);
    }
}
