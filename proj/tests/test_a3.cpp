#include <doctest.h>

#include "silt/suite.hpp"

using namespace silt;

namespace {

Quiver a3() {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 2}};
    return q;
}

// (P2 -> P1) + (P2 -> 0) + (0 -> P3): the silting complex of the torsion pair
// whose class is the modules vanishing at the middle vertex. Its truncated
// dg-endomorphism algebra has a nonzero degree -1 part.
SuiteContext<Fp>& ctx_a3() {
    static SuiteContext<Fp> ctx = [] {
        auto alg = make_path_algebra<Fp>(a3(), {}, Field::fp(2));
        RowVec<Fp> a = alg->basis_vector(alg->dim() - 3);  // locate by label instead
        for (Index k = 0; k < alg->dim(); ++k)
            if (alg->basis_labels[k] == "a") a = alg->basis_vector(k);
        RowVec<Fp> z = alg->zero();
        TwoTermComplex<Fp> cx =
            two_term_from_elements<Fp>(alg, {1, 1}, {0, 2}, {{a, z}, {z, z}});
        Config cfg;
        cfg.max_dim = 3;
        return make_context(cx, 3, 2, cfg);
    }();
    return ctx;
}

}  // namespace

TEST_CASE("the A3 instance is silting with a nontrivial dg degree -1 part") {
    SuiteContext<Fp>& ctx = ctx_a3();
    CHECK(ctx.presilting);
    REQUIRE(ctx.cert.has_value());
    CHECK(ctx.b->bm1_dim() > 0);  // Hom(P1 + P3, P2^2) contains the b-components
    CHECK(cohomology_m1(ctx.p).first.dim() > 0);
}

TEST_CASE("torsion pair of the A3 instance is the middle-vertex vanishing locus") {
    SuiteContext<Fp>& ctx = ctx_a3();
    for (auto& m : ctx.r_inventory) {
        bool vanishes_at_2 = m.dim_vector()[1] == 0;
        CHECK(ctx.tp->in_t(m) == vanishes_at_2);
    }
}

TEST_CASE("full suite passes on the A3 instance") {
    SuiteContext<Fp>& ctx = ctx_a3();
    VerificationReport rep = run_suite(ctx);
    for (auto& c : rep.checks) {
        INFO(c.name);
        for (auto& f : c.failures) { INFO(f); }
        CHECK(c.failures.empty());
    }
    CHECK(rep.failed() == 0);
}

TEST_CASE("the machinery runs over the rationals") {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    auto alg = make_path_algebra<Rat>(q, {}, Field::rationals());
    RowVec<Rat> a = alg->basis_vector(2), z = alg->zero();
    TwoTermComplex<Rat> pbar = two_term_from_elements<Rat>(alg, {1, 1}, {0}, {{a, z}});
    CHECK(is_presilting(pbar));
    auto cert = silting_certificate(pbar);
    REQUIRE(cert.has_value());
    CHECK(cert->d == 3);

    EndoAlgebra<Rat> e = endo_algebra(pbar);
    CHECK(e.dim() == 3);
    BimoduleT<Rat> t = bimodule_t(e);
    BetaStar<Rat> bs = beta_star(e, t, *cert);
    CHECK_FALSE(bs.injective);
    TruncatedDg<Rat> b = build_b(e);

    FdModule<Rat> s1 = simple_module(alg, 0);
    FdModule<Rat> s2 = simple_module(alg, 1);
    FdModule<Rat> p1 = projective_module(alg, 0);
    TorsionPair<Rat> tp(pbar, cert);
    CHECK(tp.in_t(s1));
    CHECK(tp.in_f(s2));
    CHECK(tp.in_f(p1));

    PhiResult<Rat> ph = phi(e, t, s1);
    CHECK(ph.iso);
    HPModule<Rat> def_p1 = h_p(e, p1, 1);
    FdModule<Rat> kt = k_t_module(b, bs, def_p1.module);
    CHECK(kt.dim() == 2);
    CHECK(is_isomorphic(kt, p1).has_value());
    FdModule<Rat> lifted = k_t_lifted(e, bs, *cert, def_p1.module);
    CHECK(is_isomorphic(lifted, kt).has_value());

    // heart round trip for a shifted torsion-free stalk
    HeartRoundtrip<Rat> r = roundtrip_heart(tp, e, b, GeneralTwoTerm<Rat>::stalk(s2, -1));
    CHECK(r.ok());
}
