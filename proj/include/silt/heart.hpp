#pragma once

// Heart membership for two-term complexes and the Hom functor into modules
// over the derived endomorphism algebra, with the round-trip through the
// derived tensor.

#include <utility>

#include "silt/dg.hpp"

namespace silt {

// Both sides of the heart criterion: (a) Ker(alpha) torsion-free and
// Coker(alpha) torsion; (b) the Hom complex against P is concentrated in the
// middle. Returns the common value; disagreement is an invariant violation.
template <class S>
bool in_heart(const TorsionPair<S>& tp, const GeneralTwoTerm<S>& x) {
    auto [ker, ki] = kernel_of(x.alpha);
    auto [cok, cp] = cokernel_of(x.alpha);
    bool by_torsion = tp.in_f(ker) && tp.in_t(cok);
    bool by_hom = hom_k(tp.p, x, -1).dim() == 0 && hom_k(tp.p, x, 1).dim() == 0;
    require(by_torsion == by_hom, "heart criteria disagree");
    return by_torsion;
}

// Hom into the heart object as a right module over the derived endomorphism
// algebra (middle cohomology of the Hom complex, precomposition action).
template <class S>
HPModule<S> hom_heart(const EndoAlgebra<S>& e, const GeneralTwoTerm<S>& x) {
    return h_p_complex(e, x, 0);
}

template <class S>
struct HeartRoundtrip {
    Index hom_dim = 0;
    bool hm1_matches = false;  // H^-1 of the tensor is Ker(alpha)
    bool h0_matches = false;   // H^0 of the tensor is Coker(alpha)
    bool ok() const { return hm1_matches && h0_matches; }
};

template <class S>
HeartRoundtrip<S> roundtrip_heart(const TorsionPair<S>& tp, const EndoAlgebra<S>& e,
                                  const TruncatedDg<S>& b, const GeneralTwoTerm<S>& x,
                                  const Config& cfg = Config{}) {
    if (!in_heart(tp, x)) throw usage_error("roundtrip_heart needs a heart object");
    HPModule<S> y = hom_heart(e, x);
    GeneralTwoTerm<S> c = tensor_dg(b, y.module);
    auto [ker, ki] = kernel_of(x.alpha);
    auto [cok, cp] = cokernel_of(x.alpha);
    auto [chm1, ci] = kernel_of(c.alpha);
    auto [ch0, cq] = cokernel_of(c.alpha);
    HeartRoundtrip<S> r;
    r.hom_dim = y.module.dim();
    r.hm1_matches = chm1.dim() == ker.dim() &&
                    (chm1.dim() == 0 || is_isomorphic(chm1, ker, cfg).has_value());
    r.h0_matches = ch0.dim() == cok.dim() &&
                   (ch0.dim() == 0 || is_isomorphic(ch0, cok, cfg).has_value());
    return r;
}

}  // namespace silt
