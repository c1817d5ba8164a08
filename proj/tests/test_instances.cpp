#include <doctest.h>

#include "silt/suite.hpp"

// Instances chosen to leave the comfort of characteristic 2 (sign conventions
// are invisible when -1 = 1), of single arrows (Kronecker has a 2-dimensional
// arrow space) and of hereditary algebras (a bound quiver with a zero
// relation).

using namespace silt;

namespace {

Quiver a2() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    return q;
}

Quiver kronecker() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
    return q;
}

Quiver a3() {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 2}};
    return q;
}

// Big certificates push the triangle-lift systems over the cost cap; the two
// lift-based checks may then report as skipped, never as failed.
void expect_clean(const VerificationReport& rep, bool allow_lift_skips = false) {
    for (auto& c : rep.checks) {
        INFO(c.name);
        for (auto& f : c.failures) { INFO(f); }
        CHECK(c.failures.empty());
        bool lift_check = c.name == "zeta-iso-natural" || c.name == "lifting-crosscheck";
        if (!(allow_lift_skips && lift_check)) CHECK(!c.skipped);
    }
}

}  // namespace

TEST_CASE("reference instance over F_3 exercises the sign conventions") {
    auto alg = make_path_algebra<Fp>(a2(), {}, Field::fp(3));
    RowVec<Fp> a = alg->basis_vector(2), z = alg->zero();
    TwoTermComplex<Fp> pbar = two_term_from_elements<Fp>(alg, {1, 1}, {0}, {{a, z}});
    Config cfg;
    cfg.max_dim = 3;
    SuiteContext<Fp> ctx = make_context(pbar, 3, 2, cfg);
    REQUIRE(ctx.cert.has_value());
    CHECK(ctx.cert->d == 3);
    CHECK(ctx.endo->dim() == 3);
    expect_clean(run_suite(ctx));
}

TEST_CASE("Kronecker quiver: the simple at the source is silting with its support") {
    // With a 2-dimensional arrow space the certificate grows (d = 8), which
    // makes the functor machinery expensive; this instance covers the
    // certification and torsion layers only.
    auto alg = make_path_algebra<Fp>(kronecker(), {}, Field::fp(2));
    RowVec<Fp> a = alg->zero(), b = alg->zero(), z = alg->zero();
    for (Index k = 0; k < alg->dim(); ++k) {
        if (alg->basis_labels[k] == "a") a = alg->basis_vector(k);
        if (alg->basis_labels[k] == "b") b = alg->basis_vector(k);
    }
    // (P2^2 --(a b)--> P1) + (P2 -> 0)
    TwoTermComplex<Fp> cx = two_term_from_elements<Fp>(alg, {1, 1, 1}, {0}, {{a, b, z}});
    Config cfg;
    cfg.max_dim = 2;
    CHECK(is_presilting(cx));
    auto cert = silting_certificate(cx);
    REQUIRE(cert.has_value());
    CHECK(cert->d == 8);
    FdModule<Fp> t = cohomology_0(cx).first;
    CHECK(is_isomorphic(t, simple_module(alg, 0)).has_value());

    auto inventory = enumerate_modules(alg, 2, cfg);
    CHECK(verify_silting_equality(cx, inventory).all_agree);
    TorsionPair<Fp> tp(cx, cert);
    for (auto& m : inventory) {
        bool at_source_only = m.dim_vector()[1] == 0;
        CHECK(tp.in_t(m) == at_source_only);
    }

    // a complex that is not even presilting: both stalk degrees at once
    TwoTermComplex<Fp> bad = direct_sum_complex(stalk_projectives<Fp>(alg, {0}, 0),
                                                stalk_projectives<Fp>(alg, {0}, -1));
    CHECK(!is_presilting(bad));
}

TEST_CASE("bound quiver algebra with a zero relation") {
    // A3 modulo (a b = 0): projectives shrink and the machinery must respect
    // the relation everywhere, from enumeration to the derived tensor.
    PathCombo<Fp> rel = {{Fp(1, 2), Path{0, {0, 1}}}};
    auto alg = make_path_algebra<Fp>(a3(), {rel}, Field::fp(2));
    CHECK(alg->dim() == 5);  // e1, e2, e3, a, b
    CHECK(projective_module(alg, 0).dim() == 2);

    RowVec<Fp> a = alg->zero(), z = alg->zero();
    for (Index k = 0; k < alg->dim(); ++k)
        if (alg->basis_labels[k] == "a") a = alg->basis_vector(k);
    // (P2 -> P1) + (P2 -> 0) + (0 -> P3)
    TwoTermComplex<Fp> cx = two_term_from_elements<Fp>(alg, {1, 1}, {0, 2}, {{a, z}, {z, z}});
    Config cfg;
    cfg.max_dim = 2;
    SuiteContext<Fp> ctx = make_context(cx, 2, 2, cfg);
    CHECK(ctx.presilting);
    REQUIRE(ctx.cert.has_value());
    expect_clean(run_suite(ctx), /*allow_lift_skips=*/true);
}
