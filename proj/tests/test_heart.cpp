#include <doctest.h>

#include "silt/suite.hpp"

using namespace silt;

namespace {

Quiver a2() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    return q;
}

SuiteContext<Fp>& ctx_pbar() {
    static SuiteContext<Fp> ctx = [] {
        auto alg = make_path_algebra<Fp>(a2(), {}, Field::fp(2));
        RowVec<Fp> a = alg->basis_vector(2), z = alg->zero();
        TwoTermComplex<Fp> pbar = two_term_from_elements<Fp>(alg, {1, 1}, {0}, {{a, z}});
        Config cfg;
        cfg.max_dim = 3;
        return make_context(pbar, 3, 3, cfg);
    }();
    return ctx;
}

}  // namespace

TEST_CASE("heart membership on stalks") {
    SuiteContext<Fp>& ctx = ctx_pbar();
    auto alg = ctx.p.algebra();
    FdModule<Fp> s1 = simple_module(alg, 0);
    FdModule<Fp> s2 = simple_module(alg, 1);
    FdModule<Fp> p1 = projective_module(alg, 0);

    CHECK(in_heart(*ctx.tp, GeneralTwoTerm<Fp>::stalk(s1, 0)));    // torsion in degree 0
    CHECK(in_heart(*ctx.tp, GeneralTwoTerm<Fp>::stalk(s2, -1)));   // torsion-free shifted
    CHECK(in_heart(*ctx.tp, GeneralTwoTerm<Fp>::stalk(p1, -1)));
    CHECK(!in_heart(*ctx.tp, GeneralTwoTerm<Fp>::stalk(s2, 0)));   // S(2) is not torsion
    CHECK(!in_heart(*ctx.tp, GeneralTwoTerm<Fp>::stalk(s1, -1)));  // S(1) is not torsion-free
}

TEST_CASE("hom_heart values on stalks") {
    SuiteContext<Fp>& ctx = ctx_pbar();
    auto alg = ctx.p.algebra();
    FdModule<Fp> s2 = simple_module(alg, 1);
    HPModule<Fp> h = hom_heart(*ctx.endo, GeneralTwoTerm<Fp>::stalk(s2, -1));
    CHECK(h.module.dim() == 2);  // the shifted stalk has the defect as its Hom image
}

TEST_CASE("heart round trips recover both cohomologies") {
    SuiteContext<Fp>& ctx = ctx_pbar();
    auto alg = ctx.p.algebra();
    FdModule<Fp> s1 = simple_module(alg, 0);
    FdModule<Fp> s2 = simple_module(alg, 1);

    auto r1 = roundtrip_heart(*ctx.tp, *ctx.endo, *ctx.b, GeneralTwoTerm<Fp>::stalk(s1, 0));
    CHECK(r1.ok());

    auto r2 = roundtrip_heart(*ctx.tp, *ctx.endo, *ctx.b, GeneralTwoTerm<Fp>::stalk(s2, -1));
    CHECK(r2.ok());

    // S(2)[1] + S(1): the zero map between them is a heart object
    GeneralTwoTerm<Fp> x{s2, s1, ModuleMap<Fp>::zero(s2, s1)};
    REQUIRE(in_heart(*ctx.tp, x));
    auto r3 = roundtrip_heart(*ctx.tp, *ctx.endo, *ctx.b, x);
    CHECK(r3.ok());
}

TEST_CASE("full suite passes on the reference instance") {
    SuiteContext<Fp>& ctx = ctx_pbar();
    VerificationReport rep = run_suite(ctx);
    for (auto& c : rep.checks) {
        INFO(c.name);
        for (auto& f : c.failures) { INFO(f); }
        CHECK(c.failures.empty());
        CHECK(!c.skipped);
    }
    CHECK(rep.failed() == 0);
    CHECK(rep.skipped() == 0);
}

TEST_CASE("suite on the control stalk instance") {
    auto alg = make_path_algebra<Fp>(a2(), {}, Field::fp(2));
    TwoTermComplex<Fp> r0 = stalk_regular(alg, 0);
    Config cfg;
    cfg.max_dim = 3;
    SuiteContext<Fp> ctx = make_context(r0, 3, 3, cfg);
    VerificationReport rep = run_suite(ctx);
    for (auto& c : rep.checks) {
        INFO(c.name);
        for (auto& f : c.failures) { INFO(f); }
        CHECK(c.failures.empty());
    }
}

TEST_CASE("suite reports the non-silting summand and skips downstream checks") {
    auto alg = make_path_algebra<Fp>(a2(), {}, Field::fp(2));
    RowVec<Fp> a = alg->basis_vector(2);
    TwoTermComplex<Fp> single = two_term_from_elements<Fp>(alg, {1}, {0}, {{a}});
    Config cfg;
    cfg.max_dim = 3;
    SuiteContext<Fp> ctx = make_context(single, 3, 3, cfg);
    VerificationReport rep = run_suite(ctx);
    bool cert_failed = false, gen_failed = false;
    int64_t skipped = 0;
    for (auto& c : rep.checks) {
        if (c.name == "silting-certificate" && !c.failures.empty()) cert_failed = true;
        if (c.name == "gen-equals-defect" && !c.failures.empty()) gen_failed = true;
        if (c.skipped) ++skipped;
    }
    CHECK(cert_failed);
    CHECK(gen_failed);
    CHECK(skipped > 10);
}

TEST_CASE("check filter runs only the requested checks") {
    SuiteContext<Fp>& ctx = ctx_pbar();
    VerificationReport rep = run_suite(ctx, {"presilting", "gen-equals-defect"});
    CHECK(rep.checks.size() == 2);
}
