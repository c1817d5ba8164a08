#pragma once

// The theorem-verification harness: every statement the library certifies is
// run over brute-force inventories and reported with reproducible witnesses.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "silt/heart.hpp"

namespace silt {

struct CheckRecord {
    std::string name;
    std::string statement;  // serialized under "paper_ref" in the report schema
    int64_t instances = 0;
    std::vector<std::string> failures;
    bool skipped = false;
    std::string skip_reason;

    bool passed() const { return !skipped && failures.empty(); }
};

struct VerificationReport {
    std::string algebra;
    std::string complex_name;
    std::vector<CheckRecord> checks;

    int64_t passed() const {
        int64_t n = 0;
        for (auto& c : checks) n += c.passed() ? 1 : 0;
        return n;
    }
    int64_t failed() const {
        int64_t n = 0;
        for (auto& c : checks) n += (!c.skipped && !c.failures.empty()) ? 1 : 0;
        return n;
    }
    int64_t skipped() const {
        int64_t n = 0;
        for (auto& c : checks) n += c.skipped ? 1 : 0;
        return n;
    }
};

// Everything the checks share, built once per complex.
template <class S>
struct SuiteContext {
    TwoTermComplex<S> p;
    Config cfg;
    bool presilting = false;
    std::optional<SiltingCertificate<S>> cert;
    std::optional<TorsionPair<S>> tp;
    std::optional<EndoAlgebra<S>> endo;
    std::optional<BimoduleT<S>> t;
    std::optional<BetaStar<S>> bs;
    std::optional<TruncatedDg<S>> b;
    std::vector<FdModule<S>> r_inventory;
    std::vector<FdModule<S>> e_inventory;
    std::string e_inventory_error;
};

template <class S>
SuiteContext<S> make_context(const TwoTermComplex<S>& p, Index r_cap, Index e_cap,
                             const Config& cfg) {
    SuiteContext<S> ctx;
    ctx.p = p;
    ctx.cfg = cfg;
    ctx.presilting = is_presilting(p);
    if (ctx.presilting) ctx.cert = silting_certificate(p);
    ctx.tp.emplace(p, ctx.cert);
    if (p.algebra()->field.is_finite())
        ctx.r_inventory = enumerate_modules(p.algebra(), r_cap, cfg);
    if (ctx.cert) {
        ctx.endo.emplace(endo_algebra(p, cfg));
        ctx.t.emplace(bimodule_t(*ctx.endo));
        ctx.bs.emplace(beta_star(*ctx.endo, *ctx.t, *ctx.cert));
        ctx.b.emplace(build_b(*ctx.endo));
        if (ctx.endo->algebra->field.is_finite()) {
            try {
                ctx.e_inventory = enumerate_modules(ctx.endo->algebra, e_cap, cfg);
            } catch (const error& e) {
                ctx.e_inventory_error = e.what();
            }
        }
    }
    return ctx;
}

// zeta_F: K_T(H_P(F[1])) -> F through the certificate triangle, as a matrix on
// the kernel coordinates of the tensor defect.
template <class S>
struct Zeta {
    HPModule<S> hp1;
    KTLinear<S> kt;
    Mat<S> matrix;  // kernel rows -> F
};

template <class S>
Zeta<S> zeta(const EndoAlgebra<S>& e, const BetaStar<S>& bs, const SiltingCertificate<S>& cert,
             const FdModule<S>& f) {
    Zeta<S> z;
    z.hp1 = h_p(e, f, 1);
    z.kt = k_t_linear(e, z.hp1.module, bs);
    HomK<S> v = hom_k(cert.q2, GeneralTwoTerm<S>::stalk(f, 0), 1);

    // pairing into Hom(Q2, F[1]): (x (x) g) -> (g then x)
    Index yd = z.hp1.module.dim(), sd = bs.source.dim();
    Mat<S> amb = mat_zero<S>(yd * sd, v.dim());
    for (Index i = 0; i < yd; ++i) {
        Mat<S> xi = z.hp1.hk.unpack1(RowVec<S>(z.hp1.hk.cls.reps.row(i)));
        for (Index j = 0; j < sd; ++j) {
            auto [gm1, g0] = bs.src_hk.unpack0(RowVec<S>(bs.src_hk.cls.reps.row(j)));
            (void)g0;
            amb.row(i * sd + j) = v.cls.coords(v.pack1(Mat<S>(gm1 * xi)));
        }
    }
    require(mat_is_zero<S>(Mat<S>(z.kt.ten_src.relations * amb)),
            "pairing does not factor through the tensor relations");
    Mat<S> theta = z.kt.ten_src.q.lift * amb;

    // gamma*: F -> Hom(Q2, F[1]), x -> (gamma then (a -> x a))
    ProjSum<S> ps = projective_sum(e.p.algebra(), cert.r0.tags_0);
    Mat<S> embed = mat_zero<S>(ps.module.dim(), e.p.algebra()->dim());
    for (std::size_t k = 0; k < ps.parts.size(); ++k)
        embed.middleRows(ps.offsets[k], ps.parts[k].dim()) = ps.part_incl_regular[k].matrix;
    Mat<S> gamma_star = mat_zero<S>(f.dim(), v.dim());
    for (Index x = 0; x < f.dim(); ++x) {
        Mat<S> mx(ps.module.dim(), f.dim());  // a -> x * a in the sum coordinates
        for (Index u = 0; u < ps.module.dim(); ++u)
            mx.row(u) = RowVec<S>(mat_identity<S>(f.dim()).row(x)) *
                        f.action_of(RowVec<S>(embed.row(u)));
        gamma_star.row(x) = v.cls.coords(v.pack1(Mat<S>(cert.gamma_m1 * mx)));
    }
    require(rank_of<S>(gamma_star) == f.dim(), "gamma* must embed F");

    Mat<S> pushed = z.kt.kernel_rows * theta;
    z.matrix = detail::rows_in_basis<S>(gamma_star, pushed);
    return z;
}

// K_T of a right module over the derived endo algebra as an honest R-module,
// carried by the kernel coordinates with the triangle-lifted action.
template <class S>
FdModule<S> k_t_rmodule(const SuiteContext<S>& ctx, const FdModule<S>& y) {
    return k_t_lifted(*ctx.endo, *ctx.bs, *ctx.cert, y);
}

// Rough size of the linear systems the triangle lift has to solve; the
// lift-based checks are skipped above the configured cap.
template <class S>
int64_t lift_cost_estimate(const SuiteContext<S>& ctx) {
    if (!ctx.cert) return 0;
    int64_t q1m = ctx.cert->q1.pm1.dim(), q10 = ctx.cert->q1.p0.dim();
    int64_t q2m = ctx.cert->q2.pm1.dim(), q20 = ctx.cert->q2.p0.dim();
    int64_t unknowns = q1m * q1m + q10 * q10 + q2m * q2m + q20 * q20;
    int64_t equations = q1m * q10 + q2m * q20 + q1m * q2m + q10 * q20;
    return unknowns * equations;
}

namespace detail {

template <class S>
std::string modname(const SuiteContext<S>& ctx, const std::vector<FdModule<S>>& inv,
                    std::size_t i) {
    (void)ctx;
    return "module #" + std::to_string(i) + " (dim " + std::to_string(inv[i].dim()) + ")";
}

}  // namespace detail

template <class S>
VerificationReport run_suite(const SuiteContext<S>& ctx,
                             const std::vector<std::string>& only = {}) {
    VerificationReport rep;
    rep.complex_name = "two-term complex";
    const Config& cfg = ctx.cfg;

    auto enabled = [&](const std::string& name) {
        if (only.empty()) return true;
        for (auto& n : only)
            if (n == name) return true;
        return false;
    };
    auto add = [&](const std::string& name, const std::string& statement) -> CheckRecord& {
        rep.checks.push_back(CheckRecord{name, statement, 0, {}, false, ""});
        return rep.checks.back();
    };
    auto skip = [&](CheckRecord& rec, const std::string& why) {
        rec.skipped = true;
        rec.skip_reason = why;
    };
    auto guard = [&](CheckRecord& rec, const std::string& instance, auto&& fn) {
        ++rec.instances;
        try {
            fn();
        } catch (const error& e) {
            rec.failures.push_back(instance + ": " + e.what());
        }
    };
    auto expect = [&](CheckRecord& rec, const std::string& instance, bool cond,
                      const std::string& what) {
        if (!cond) rec.failures.push_back(instance + ": " + what);
    };
    const std::string no_cert = "no silting certificate (complex is not silting)";
    const std::string no_einv = "endo-module inventory unavailable" +
                                (ctx.e_inventory_error.empty() ? std::string()
                                                               : ": " + ctx.e_inventory_error);

    // 1. presilting
    if (enabled("presilting")) {
        CheckRecord& rec = add("presilting", "Hom_K(P, P[1]) = 0");
        ++rec.instances;
        expect(rec, "P", ctx.presilting == (hom_k(ctx.p, ctx.p, 1).dim() == 0), "mismatch");
        if (!ctx.presilting) rec.failures.push_back("P: complex is not presilting");
    }

    // 2. silting certificate
    if (enabled("silting-certificate")) {
        CheckRecord& rec = add("silting-certificate",
                               "triangle R -> Q1 -> Q2 -> R[1] with Q1, Q2 in add(P)");
        ++rec.instances;
        if (!ctx.cert) rec.failures.push_back("P: no certificate; complex is not silting");
    }

    // 3. Gen(T) = D_sigma (runs without a certificate on purpose)
    if (enabled("gen-equals-defect")) {
        CheckRecord& rec = add("gen-equals-defect", "Gen(T) = D_sigma on the inventory");
        if (ctx.r_inventory.empty()) {
            skip(rec, "no module inventory (field not finite)");
        } else {
            auto eq = verify_silting_equality(ctx.p, ctx.r_inventory);
            rec.instances = static_cast<int64_t>(eq.rows.size());
            for (auto& row : eq.rows)
                if (!row.agree())
                    rec.failures.push_back(
                        detail::modname(ctx, ctx.r_inventory, row.module_index) +
                        (row.generated ? ": generated but nonzero defect"
                                       : ": zero defect but not generated"));
        }
    }

    bool have = ctx.cert.has_value() && !ctx.r_inventory.empty();

    // 4. torsion pair closure properties
    if (enabled("torsion-pair-closure")) {
        CheckRecord& rec = add("torsion-pair-closure",
                               "Gen(T) closed under quotients and sums; Ker Hom(T,-) under "
                               "submodules; intersection zero");
        if (!have) {
            skip(rec, no_cert);
        } else {
            const TorsionPair<S>& tp = *ctx.tp;
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& m = ctx.r_inventory[i];
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    bool int_t = tp.in_t(m), int_f = tp.in_f(m);
                    if (m.dim() > 0 && int_t && int_f)
                        throw invariant_violation("both torsion and torsion-free");
                    auto dec = tp.decompose(m);
                    require(dec.torsion.dim() + dec.free.dim() == m.dim(),
                            "decomposition dimensions do not add up");
                    if (int_t) {
                        for (auto& [sub, incl] : enumerate_submodules(m, cfg)) {
                            auto [quot, pr] = quotient_by_rows(m, incl.matrix);
                            require(tp.in_t(quot), "quotient left the torsion class");
                        }
                    }
                    if (int_f) {
                        for (auto& [sub, incl] : enumerate_submodules(m, cfg))
                            require(tp.in_f(sub), "submodule left the torsion-free class");
                    }
                });
            }
        }
    }

    // 5. counit behaviour
    if (enabled("counit-monic-iso-on-torsion")) {
        CheckRecord& rec = add("counit-monic-iso-on-torsion",
                               "phi_M is monic for every module and an isomorphism on Gen(T)");
        if (!have) {
            skip(rec, no_cert);
        } else {
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& m = ctx.r_inventory[i];
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    PhiResult<S> ph = phi(*ctx.endo, *ctx.t, m);
                    require(ph.monic, "counit not monic");
                    if (ctx.tp->in_t(m)) require(ph.iso, "counit not iso on torsion module");
                });
            }
        }
    }

    // 6 + 7. image description of the torsion-side equivalence
    if (enabled("hom-image-orthogonality")) {
        CheckRecord& rec =
            add("hom-image-orthogonality",
                "H_P(M) for torsion M lies in V and is Hom/Ext1-orthogonal to the kernel class");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            std::vector<std::size_t> kernel_members;
            for (std::size_t j = 0; j < ctx.e_inventory.size(); ++j)
                if (ctx.e_inventory[j].dim() > 0 &&
                    in_script_e(*ctx.endo, *ctx.t, *ctx.bs, ctx.e_inventory[j]))
                    kernel_members.push_back(j);
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& m = ctx.r_inventory[i];
                if (!ctx.tp->in_t(m)) continue;
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    HPModule<S> hp = h_p(*ctx.endo, m, 0);
                    require(in_v(*ctx.endo, *ctx.t, hp.module, cfg), "image not in V");
                    for (std::size_t j : kernel_members) {
                        require(hom_space(ctx.e_inventory[j], hp.module).empty(),
                                "Hom from a kernel-class module is nonzero");
                        require(ext1_dim(ctx.e_inventory[j], hp.module) == 0,
                                "Ext1 from a kernel-class module is nonzero");
                    }
                });
            }
        }
    }

    if (enabled("unit-iso-on-images")) {
        CheckRecord& rec = add("unit-iso-on-images",
                               "psi is an isomorphism on H_P(M) for torsion M");
        if (!have) {
            skip(rec, no_cert);
        } else {
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& m = ctx.r_inventory[i];
                if (!ctx.tp->in_t(m)) continue;
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    HPModule<S> hp = h_p(*ctx.endo, m, 0);
                    PsiResult<S> ps = psi(*ctx.endo, *ctx.t, hp.module);
                    require(ps.iso, "unit not iso on a Hom image");
                });
            }
        }
    }

    // 8. tensor-hom pairing
    if (enabled("tensor-hom-pairing")) {
        CheckRecord& rec = add("tensor-hom-pairing",
                               "H_P(M) (x) Hom_K(Q, P) -> Hom_K(Q, M) is bijective for Q in add P");
        if (!have) {
            skip(rec, no_cert);
        } else {
            std::vector<std::pair<std::string, const TwoTermComplex<S>*>> qs = {
                {"Q=P", &ctx.p}, {"Q=Q2", &ctx.cert->q2}, {"Q=Q1", &ctx.cert->q1}};
            for (auto& [qname, q] : qs) {
                auto [qmod, qhk] = detail::hom_into_p_module(*ctx.endo, *q);
                for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                    const FdModule<S>& m = ctx.r_inventory[i];
                    std::string nm = qname + ", " + detail::modname(ctx, ctx.r_inventory, i);
                    guard(rec, nm, [&] {
                        HPModule<S> hp = h_p(*ctx.endo, m, 0);
                        HomK<S> target = hom_k(*q, GeneralTwoTerm<S>::stalk(m, 0), 0);
                        TensorSpace<S> ten = tensor_over(ctx.endo->algebra, hp.module, qmod);
                        Index hd = hp.module.dim(), qd = qmod.dim();
                        Mat<S> amb = mat_zero<S>(hd * qd, target.dim());
                        for (Index a = 0; a < hd; ++a) {
                            auto [fm1, f0] = hp.hk.unpack0(RowVec<S>(hp.hk.cls.reps.row(a)));
                            (void)fm1;
                            for (Index bimod = 0; bimod < qd; ++bimod) {
                                auto [gm1, g0] =
                                    qhk.unpack0(RowVec<S>(qhk.cls.reps.row(bimod)));
                                (void)gm1;
                                amb.row(a * qd + bimod) = target.cls.coords(target.pack0(
                                    mat_zero<S>(q->pm1.dim(), 0), Mat<S>(g0 * f0)));
                            }
                        }
                        require(mat_is_zero<S>(Mat<S>(ten.relations * amb)),
                                "pairing not balanced");
                        Mat<S> induced = ten.q.lift * amb;
                        require(tensor_dim(ten) == target.dim() &&
                                    rank_of<S>(induced) == target.dim(),
                                "pairing not bijective");
                    });
                }
            }
        }
    }

    // 9 + 10. defect-functor vanishing laws
    if (enabled("kt-after-hom-vanishes")) {
        CheckRecord& rec = add("kt-after-hom-vanishes", "K_T(H_P(M)) = 0 for every module M");
        if (!have) {
            skip(rec, no_cert);
        } else {
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    HPModule<S> hp = h_p(*ctx.endo, ctx.r_inventory[i], 0);
                    require(k_t_linear(*ctx.endo, hp.module, *ctx.bs).dim() == 0,
                            "tensor defect of a Hom image is nonzero");
                });
            }
        }
    }
    if (enabled("tensor-after-shifted-hom-vanishes")) {
        CheckRecord& rec =
            add("tensor-after-shifted-hom-vanishes", "T_P(H_P(M[1])) = 0 for every module M");
        if (!have) {
            skip(rec, no_cert);
        } else {
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    HPModule<S> hp = h_p(*ctx.endo, ctx.r_inventory[i], 1);
                    require(t_p(*ctx.endo, *ctx.t, hp.module).module.dim() == 0,
                            "tensor of a shifted Hom image is nonzero");
                });
            }
        }
    }

    // 11. six-term exactness
    if (enabled("six-term-exactness")) {
        CheckRecord& rec =
            add("six-term-exactness",
                "0 -> K_T(L) -> K_T(M) -> K_T(N) -> T_P(L) -> T_P(M) -> T_P(N) -> 0 exact");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                const FdModule<S>& m = ctx.e_inventory[i];
                auto subs = enumerate_submodules(m, cfg);
                for (std::size_t s = 0; s < subs.size(); ++s) {
                    std::string nm = detail::modname(ctx, ctx.e_inventory, i) + ", submodule #" +
                                     std::to_string(s);
                    guard(rec, nm, [&] {
                        auto [quot, pr] = quotient_by_rows(m, subs[s].second.matrix);
                        ShortExact<S> ses{subs[s].first, m, quot, subs[s].second, pr};
                        SixTerm<S> st = six_term(*ctx.endo, *ctx.t, *ctx.bs, ses);
                        require(st.all_exact, "six-term sequence not exact");
                    });
                }
            }
        }
    }

    // 12. K_T onto Tor_1
    if (enabled("kt-onto-tor1")) {
        CheckRecord& rec = add("kt-onto-tor1",
                               "K_T(X) surjects onto Tor_1(X, T); iso when beta* is injective");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                std::string nm = detail::modname(ctx, ctx.e_inventory, i);
                guard(rec, nm, [&] {
                    KTLinear<S> kt = k_t_linear(*ctx.endo, ctx.e_inventory[i], *ctx.bs);
                    tor1(*ctx.endo, *ctx.bs, ctx.e_inventory[i], kt);
                });
            }
        }
    }

    // 13. the tensor image lies in the torsion class
    if (enabled("tensor-image-in-torsion")) {
        CheckRecord& rec = add("tensor-image-in-torsion",
                               "T_P(X) in Gen(T); T_P(psi_X) iso; H_P(T_P(X)[1]) = 0");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                std::string nm = detail::modname(ctx, ctx.e_inventory, i);
                guard(rec, nm, [&] {
                    const FdModule<S>& x = ctx.e_inventory[i];
                    PsiResult<S> ps = psi(*ctx.endo, *ctx.t, x);  // asserts 1 = phi o T_P(psi)
                    require(ctx.tp->in_t(ps.tp.module), "tensor image not torsion");
                    HPModule<S> h1 = h_p(*ctx.endo, ps.tp.module, 1);
                    require(h1.module.dim() == 0, "shifted Hom of a tensor image is nonzero");
                });
            }
        }
    }

    // 14-18. dg-model consistency
    if (enabled("dg-h0")) {
        CheckRecord& rec = add("dg-h0", "H^0(Y (x)L P) = Y (x) T");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                std::string nm = detail::modname(ctx, ctx.e_inventory, i);
                guard(rec, nm, [&] { h0_check(*ctx.b, *ctx.t, ctx.e_inventory[i], cfg); });
            }
        }
    }
    if (enabled("dg-hm1-dimension")) {
        CheckRecord& rec = add("dg-hm1-dimension",
                               "dim H^-1(Y (x)L P) = dim Ker(Y (x) beta*)");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                std::string nm = detail::modname(ctx, ctx.e_inventory, i);
                guard(rec, nm, [&] { k_t_module(*ctx.b, *ctx.bs, ctx.e_inventory[i]); });
            }
        }
    }
    if (enabled("dg-acyclic-iff-kernel-class")) {
        CheckRecord& rec = add("dg-acyclic-iff-kernel-class",
                               "Y (x)L P acyclic iff T_P(Y) = 0 and K_T(Y) = 0");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                std::string nm = detail::modname(ctx, ctx.e_inventory, i);
                guard(rec, nm, [&] {
                    const FdModule<S>& y = ctx.e_inventory[i];
                    GeneralTwoTerm<S> c = tensor_dg(*ctx.b, y);
                    bool acyclic = kernel_of(c.alpha).first.dim() == 0 &&
                                   cokernel_of(c.alpha).first.dim() == 0;
                    require(acyclic == in_script_e(*ctx.endo, *ctx.t, *ctx.bs, y),
                            "acyclicity disagrees with the kernel class");
                });
            }
        }
    }
    if (enabled("dg-shift-when-torsion-kills")) {
        CheckRecord& rec = add("dg-shift-when-torsion-kills",
                               "Y (x) T = 0 forces the tensor into degree -1");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                const FdModule<S>& y = ctx.e_inventory[i];
                if (!in_u(*ctx.endo, *ctx.t, y)) continue;
                std::string nm = detail::modname(ctx, ctx.e_inventory, i);
                guard(rec, nm, [&] {
                    GeneralTwoTerm<S> c = tensor_dg(*ctx.b, y);
                    require(cokernel_of(c.alpha).first.dim() == 0,
                            "H^0 nonzero although Y (x) T = 0");
                });
            }
        }
    }
    if (enabled("lifting-crosscheck")) {
        CheckRecord& rec = add("lifting-crosscheck",
                               "triangle-lifted action on Ker(Y (x) beta*) matches the dg action");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else if (lift_cost_estimate(ctx) > cfg.lift_cost_cap) {
            skip(rec, "triangle-lift systems above the configured cost cap");
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                std::string nm = detail::modname(ctx, ctx.e_inventory, i);
                guard(rec, nm, [&] {
                    const FdModule<S>& y = ctx.e_inventory[i];
                    FdModule<S> lifted = k_t_rmodule(ctx, y);
                    GeneralTwoTerm<S> c = tensor_dg(*ctx.b, y);
                    auto [hm1, incl] = kernel_of(c.alpha);
                    require(lifted.dim() == hm1.dim(), "dimension mismatch");
                    if (lifted.dim() > 0)
                        require(is_isomorphic(lifted, hm1, cfg).has_value(),
                                "lifted and dg tensor defects not isomorphic");
                });
            }
        }
    }

    // 19. zeta on the torsion-free class
    if (enabled("zeta-iso-natural")) {
        CheckRecord& rec =
            add("zeta-iso-natural", "zeta: K_T(H_P(-[1])) -> id on the torsion-free class, "
                                    "an isomorphism of modules, natural");
        if (!have) {
            skip(rec, no_cert);
        } else if (lift_cost_estimate(ctx) > cfg.lift_cost_cap) {
            skip(rec, "triangle-lift systems above the configured cost cap");
        } else {
            std::vector<std::size_t> ff;
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i)
                if (ctx.tp->in_f(ctx.r_inventory[i])) ff.push_back(i);
            for (std::size_t i : ff) {
                const FdModule<S>& f = ctx.r_inventory[i];
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    Zeta<S> z = zeta(*ctx.endo, *ctx.bs, *ctx.cert, f);
                    require(z.matrix.rows() == f.dim() && rank_of<S>(z.matrix) == f.dim(),
                            "zeta is not bijective");
                    if (f.dim() > 0) {
                        FdModule<S> src = k_t_rmodule(ctx, z.hp1.module);
                        ModuleMap<S> zmap(src, f, z.matrix);  // validates R-linearity
                        (void)zmap;
                    }
                });
            }
            // naturality squares over all basis morphisms between torsion-free
            // inventory modules
            for (std::size_t i : ff)
                for (std::size_t j : ff) {
                    const FdModule<S>& fa = ctx.r_inventory[i];
                    const FdModule<S>& fb = ctx.r_inventory[j];
                    if (fa.dim() == 0 || fb.dim() == 0) continue;
                    auto homs = hom_space(fa, fb);
                    if (homs.empty()) continue;
                    std::string nm = detail::modname(ctx, ctx.r_inventory, i) + " -> " +
                                     detail::modname(ctx, ctx.r_inventory, j);
                    guard(rec, nm, [&] {
                        Zeta<S> za = zeta(*ctx.endo, *ctx.bs, *ctx.cert, fa);
                        Zeta<S> zb = zeta(*ctx.endo, *ctx.bs, *ctx.cert, fb);
                        for (auto& g : homs) {
                            // H_P(g[1]): postcompose representatives with g
                            Index da = za.hp1.module.dim(), db = zb.hp1.module.dim();
                            Mat<S> hg = mat_zero<S>(da, db);
                            for (Index r = 0; r < da; ++r) {
                                Mat<S> u = za.hp1.hk.unpack1(RowVec<S>(za.hp1.hk.cls.reps.row(r)));
                                hg.row(r) = zb.hp1.hk.cls.coords(
                                    zb.hp1.hk.pack1(Mat<S>(u * g.matrix)));
                            }
                            // K_T of that map, restricted to kernels
                            Mat<S> on_tensor =
                                tensor_map_left(za.kt.ten_src, zb.kt.ten_src, hg);
                            Mat<S> ktg = detail::rows_in_basis<S>(
                                zb.kt.kernel_rows, Mat<S>(za.kt.kernel_rows * on_tensor));
                            require(mat_eq<S>(Mat<S>(ktg * zb.matrix),
                                              Mat<S>(za.matrix * g.matrix)),
                                    "naturality square does not commute");
                        }
                    });
                }
        }
    }

    // 20. compact case
    if (enabled("compact-kernel-trivial")) {
        CheckRecord& rec = add("compact-kernel-trivial",
                               "only the zero module kills both T_P and K_T");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            for (std::size_t i = 0; i < ctx.e_inventory.size(); ++i) {
                const FdModule<S>& y = ctx.e_inventory[i];
                if (y.dim() == 0) continue;
                std::string nm = detail::modname(ctx, ctx.e_inventory, i);
                guard(rec, nm, [&] {
                    require(!in_script_e(*ctx.endo, *ctx.t, *ctx.bs, y),
                            "nonzero module kills both functors");
                });
            }
        }
    }

    // 21. preenvelope
    if (enabled("envelope")) {
        CheckRecord& rec = add("envelope",
                               "R -> H^0(Q1) is a Gen(T)-preenvelope against the inventory");
        if (!have) {
            skip(rec, no_cert);
        } else {
            auto [h0q1, prq1] = cohomology_0(ctx.cert->q1);
            Mat<S> eta = ctx.cert->alpha_0 * prq1.matrix;  // R -> H^0(Q1)
            ProjSum<S> ps = projective_sum(ctx.p.algebra(), ctx.cert->r0.tags_0);
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& m = ctx.r_inventory[i];
                if (!ctx.tp->in_t(m)) continue;
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    auto homs_rm = hom_space(ps.module, m);
                    auto homs_qm = hom_space(h0q1, m);
                    for (auto& f : homs_rm) {
                        // solve f = eta then psi over module maps psi
                        Mat<S> sys = mat_zero<S>(static_cast<Index>(homs_qm.size()),
                                                 ps.module.dim() * m.dim());
                        for (std::size_t k = 0; k < homs_qm.size(); ++k)
                            sys.row(static_cast<Index>(k)) =
                                flatten<S>(Mat<S>(eta * homs_qm[k].matrix));
                        auto sol = row_coordinates<S>(sys, flatten<S>(f.matrix));
                        require(sol.has_value(), "a map to a torsion module does not factor");
                    }
                });
            }
        }
    }

    // 22. torsion-free <-> kernel-of-tensor bijection
    if (enabled("ff-u-bijection")) {
        CheckRecord& rec = add("ff-u-bijection",
                               "M -> H_P(M[1]) and Y -> K_T(Y) invert each other between the "
                               "torsion-free class and Ker(- (x) T)");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            // up-to-isomorphism content only, so the cheap dg route carries it
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& f = ctx.r_inventory[i];
                if (!ctx.tp->in_f(f) || f.dim() == 0) continue;
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                guard(rec, nm, [&] {
                    HPModule<S> hp = h_p(*ctx.endo, f, 1);
                    require(in_u(*ctx.endo, *ctx.t, hp.module), "image not in Ker(- (x) T)");
                    FdModule<S> back = k_t_module(*ctx.b, *ctx.bs, hp.module);
                    require(back.dim() == f.dim() &&
                                (f.dim() == 0 || is_isomorphic(back, f, cfg).has_value()),
                            "K_T does not recover the torsion-free module");
                });
            }
            for (std::size_t j = 0; j < ctx.e_inventory.size(); ++j) {
                const FdModule<S>& y = ctx.e_inventory[j];
                if (y.dim() == 0 || !in_u(*ctx.endo, *ctx.t, y)) continue;
                std::string nm = detail::modname(ctx, ctx.e_inventory, j);
                guard(rec, nm, [&] {
                    FdModule<S> f = k_t_module(*ctx.b, *ctx.bs, y);
                    require(ctx.tp->in_f(f), "K_T image not torsion-free");
                    HPModule<S> hp = h_p(*ctx.endo, f, 1);
                    require(hp.module.dim() == y.dim() &&
                                (y.dim() == 0 ||
                                 is_isomorphic(hp.module, y, cfg).has_value()),
                            "H_P([1]) does not recover the module");
                });
            }
        }
    }

    // 23. torsion <-> image bijection
    if (enabled("torsion-v-bijection")) {
        CheckRecord& rec = add("torsion-v-bijection",
                               "M -> H_P(M) and Y -> T_P(Y) invert each other between Gen(T) "
                               "and the orthogonal part of V");
        if (!have) {
            skip(rec, no_cert);
        } else if (ctx.e_inventory.empty()) {
            skip(rec, no_einv);
        } else {
            std::vector<std::size_t> kernel_members;
            for (std::size_t j = 0; j < ctx.e_inventory.size(); ++j)
                if (ctx.e_inventory[j].dim() > 0 &&
                    in_script_e(*ctx.endo, *ctx.t, *ctx.bs, ctx.e_inventory[j]))
                    kernel_members.push_back(j);
            for (std::size_t j = 0; j < ctx.e_inventory.size(); ++j) {
                const FdModule<S>& x = ctx.e_inventory[j];
                if (x.dim() == 0) continue;
                if (!in_v(*ctx.endo, *ctx.t, x, cfg)) continue;
                bool orthogonal = true;
                for (std::size_t k : kernel_members) {
                    if (!hom_space(ctx.e_inventory[k], x).empty() ||
                        ext1_dim(ctx.e_inventory[k], x) != 0)
                        orthogonal = false;
                }
                if (!orthogonal) continue;
                std::string nm = detail::modname(ctx, ctx.e_inventory, j);
                guard(rec, nm, [&] {
                    TPModule<S> tpx = t_p(*ctx.endo, *ctx.t, x);
                    require(ctx.tp->in_t(tpx.module), "tensor image not torsion");
                    HPModule<S> hp = h_p(*ctx.endo, tpx.module, 0);
                    require(hp.module.dim() == x.dim() &&
                                is_isomorphic(hp.module, x, cfg).has_value(),
                            "H_P does not recover the module");
                });
            }
        }
    }

    // 24. heart criteria on generated complexes
    if (enabled("heart-criteria")) {
        CheckRecord& rec = add("heart-criteria",
                               "cohomological heart membership matches middle concentration of "
                               "the Hom complex");
        if (!have) {
            skip(rec, no_cert);
        } else {
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& xm1 = ctx.r_inventory[i];
                if (xm1.dim() > 2) continue;
                for (std::size_t j = 0; j < ctx.r_inventory.size(); ++j) {
                    const FdModule<S>& x0 = ctx.r_inventory[j];
                    if (x0.dim() > 2) continue;
                    auto homs = hom_space(xm1, x0);
                    std::vector<Mat<S>> alphas;
                    alphas.push_back(mat_zero<S>(xm1.dim(), x0.dim()));
                    for (auto& h : homs) alphas.push_back(h.matrix);
                    if (homs.size() == 2)
                        alphas.push_back(Mat<S>(homs[0].matrix + homs[1].matrix));
                    for (std::size_t a = 0; a < alphas.size(); ++a) {
                        std::string nm = "X = (#" + std::to_string(i) + " -> #" +
                                         std::to_string(j) + "), alpha " + std::to_string(a);
                        guard(rec, nm, [&] {
                            GeneralTwoTerm<S> x{xm1, x0,
                                                ModuleMap<S>(xm1, x0, alphas[a], false)};
                            in_heart(*ctx.tp, x);  // throws if the criteria disagree
                        });
                    }
                }
            }
        }
    }

    // 25. heart round trip
    if (enabled("heart-roundtrip")) {
        CheckRecord& rec = add("heart-roundtrip",
                               "Hom(P,-) then -(x)L P recovers both cohomologies of heart "
                               "objects");
        if (!have) {
            skip(rec, no_cert);
        } else {
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& xm1 = ctx.r_inventory[i];
                if (xm1.dim() > 2) continue;
                for (std::size_t j = 0; j < ctx.r_inventory.size(); ++j) {
                    const FdModule<S>& x0 = ctx.r_inventory[j];
                    if (x0.dim() > 2) continue;
                    auto homs = hom_space(xm1, x0);
                    std::vector<Mat<S>> alphas;
                    alphas.push_back(mat_zero<S>(xm1.dim(), x0.dim()));
                    for (auto& h : homs) alphas.push_back(h.matrix);
                    for (std::size_t a = 0; a < alphas.size(); ++a) {
                        GeneralTwoTerm<S> x{xm1, x0, ModuleMap<S>(xm1, x0, alphas[a], false)};
                        bool heart = false;
                        try {
                            heart = in_heart(*ctx.tp, x);
                        } catch (const error&) {
                            continue;  // reported by heart-criteria
                        }
                        if (!heart) continue;
                        std::string nm = "X = (#" + std::to_string(i) + " -> #" +
                                         std::to_string(j) + "), alpha " + std::to_string(a);
                        guard(rec, nm, [&] {
                            HeartRoundtrip<S> r =
                                roundtrip_heart(*ctx.tp, *ctx.endo, *ctx.b, x, cfg);
                            require(r.ok(), "round trip failed to recover the cohomology");
                        });
                    }
                }
            }
        }
    }

    // 26. hom_heart on stalks
    if (enabled("hom-heart-stalks")) {
        CheckRecord& rec = add("hom-heart-stalks",
                               "hom_heart on stalks agrees with H_P in the matching degree");
        if (!have) {
            skip(rec, no_cert);
        } else {
            for (std::size_t i = 0; i < ctx.r_inventory.size(); ++i) {
                const FdModule<S>& m = ctx.r_inventory[i];
                std::string nm = detail::modname(ctx, ctx.r_inventory, i);
                if (ctx.tp->in_t(m)) {
                    guard(rec, nm + " in degree 0", [&] {
                        HPModule<S> a = hom_heart(*ctx.endo, GeneralTwoTerm<S>::stalk(m, 0));
                        HPModule<S> b2 = h_p(*ctx.endo, m, 0);
                        require(a.module.dim() == b2.module.dim() &&
                                    (a.module.dim() == 0 ||
                                     is_isomorphic(a.module, b2.module, cfg).has_value()),
                                "mismatch");
                    });
                }
                if (ctx.tp->in_f(m)) {
                    guard(rec, nm + " in degree -1", [&] {
                        HPModule<S> a = hom_heart(*ctx.endo, GeneralTwoTerm<S>::stalk(m, -1));
                        HPModule<S> b2 = h_p(*ctx.endo, m, 1);
                        require(a.module.dim() == b2.module.dim() &&
                                    (a.module.dim() == 0 ||
                                     is_isomorphic(a.module, b2.module, cfg).has_value()),
                                "mismatch");
                    });
                }
            }
        }
    }

    // 27. the comparison map onto End(T)
    if (enabled("epsilon-onto")) {
        CheckRecord& rec = add("epsilon-onto",
                               "H^0: End_K(P) -> End(T) is onto and multiplicative");
        if (!ctx.cert) {
            skip(rec, no_cert);
        } else {
            guard(rec, "P", [&] { epsilon(*ctx.endo, *ctx.t); });
        }
    }

    return rep;
}

}  // namespace silt
