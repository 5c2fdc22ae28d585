#pragma once

#include <vector>

#include "obt/errors.hpp"
#include "obt/theory.hpp"
#include "obt/universal.hpp"

namespace obt {

// Evaluates one (not necessarily canonical) cobordism cycle through a target
// theory: pushforward along h of phi(L1) ... phi(Lr) applied to theta(ctx . h).
// `reverse` applies the bundle operators in the opposite order; the two must
// agree whenever phi satisfies the commutativity axiom.
template <Theory T>
typename T::Value gamma_cycle(const UniversalTheory& om, const T& target, Mor h,
                              const std::vector<Label>& bundles, Mor ctx,
                              bool reverse = false) {
    const Category& cat = om.category();
    Mor fh = cat.compose(h, ctx);
    if (!cat.specialized(fh))
        throw NotSpecialized("gamma: composite " + cat.morphism_id(fh) + " is not specialized");
    if (!bundles.empty() && !target.has_phi())
        throw MissingOrientationData("target theory `" + target.name() +
                                     "` has no orientation operator");
    typename T::Value v = target.theta(fh);
    if (reverse) {
        for (auto it = bundles.rbegin(); it != bundles.rend(); ++it) v = target.phi(*it, v);
    } else {
        for (Label l : bundles) v = target.phi(l, v);
    }
    return target.pushforward(h, ctx, v);
}

// The universal Grothendieck transformation into `target`, evaluated by
// linear extension of the closed form on generators. It is the unique
// operation-preserving transformation with gamma([X -id-> X]) = theta(f).
template <Theory T>
typename T::Value gamma(const UniversalTheory& om, const T& target, const OMValue& a,
                        bool reverse = false) {
    typename T::Value acc = target.zero(a.ctx);
    for (const auto& [key, coeff] : a.elt.terms())
        acc = target.add(acc, target.scalar(coeff, gamma_cycle(om, target, key.h, key.bundles,
                                                               a.ctx, reverse)));
    return acc;
}

// f^!(a) = theta(f) . a on the covariant restriction B_*(Y) = B(Y -> pt).
template <Theory T>
typename T::Value gysin_pullback(const T& target, Mor f, const typename T::Value& a) {
    const Category& cat = target.category();
    if (!cat.specialized(f))
        throw NotSpecialized("gysin_pullback: " + cat.morphism_id(f) + " is not specialized");
    if (a.ctx != cat.terminal_morphism(cat.src(a.ctx)))
        throw ContextError("gysin_pullback: operand is not a covariant class (context must be "
                           "the map to the final object)");
    if (cat.dst(f) != cat.src(a.ctx))
        throw ContextError("gysin_pullback: operand does not live over the target of f");
    return target.product(target.theta(f), a);
}

// f_!(a) = f_*(a . theta(f)) on the contravariant restriction B^*(X).
template <Theory T>
typename T::Value gysin_pushforward(const T& target, Mor f, const typename T::Value& a) {
    const Category& cat = target.category();
    if (!cat.confined(f))
        throw NotConfined("gysin_pushforward: " + cat.morphism_id(f) + " is not confined");
    if (!cat.specialized(f))
        throw NotSpecialized("gysin_pushforward: " + cat.morphism_id(f) + " is not specialized");
    if (a.ctx != cat.identity(cat.src(f)))
        throw ContextError("gysin_pushforward: operand is not a contravariant class over the "
                           "source of f");
    return target.pushforward(f, cat.identity(cat.dst(f)), target.product(a, target.theta(f)));
}

// a x b = pi_Y^* a . b for covariant classes a over X -> pt, b over Y -> pt.
template <Theory T>
typename T::Value exterior_covariant(const T& target, const typename T::Value& a,
                                     const typename T::Value& b) {
    const Category& cat = target.category();
    Obj x = cat.src(a.ctx), y = cat.src(b.ctx);
    if (a.ctx != cat.terminal_morphism(x) || b.ctx != cat.terminal_morphism(y))
        throw ContextError("exterior product: operands must be covariant classes");
    PullbackData pd = cat.fiber_product(Cospan{a.ctx, b.ctx});
    Square sq{pd.proj_left, pd.proj_right, a.ctx, b.ctx};
    if (!cat.is_independent(sq))
        throw NotIndependent("exterior product: projection square is not independent");
    return target.product(target.pullback(sq, a), b);
}

// a x b = p1^* a . p2^* b for contravariant classes a over id_X, b over id_Y.
template <Theory T>
typename T::Value exterior_contravariant(const T& target, const typename T::Value& a,
                                         const typename T::Value& b) {
    const Category& cat = target.category();
    Obj x = cat.src(a.ctx), y = cat.src(b.ctx);
    if (a.ctx != cat.identity(x) || b.ctx != cat.identity(y))
        throw ContextError("exterior product: operands must be contravariant classes");
    PullbackData pd = cat.fiber_product(Cospan{cat.terminal_morphism(x),
                                               cat.terminal_morphism(y)});
    Obj p = pd.apex;
    Square s1{pd.proj_left, cat.identity(p), cat.identity(x), pd.proj_left};
    Square s2{pd.proj_right, cat.identity(p), cat.identity(y), pd.proj_right};
    return target.product(target.pullback(s1, a), target.pullback(s2, b));
}

// [X]_B = theta(pi_X) = pi_X^!(1_pt); both routes are computed and compared.
template <Theory T>
typename T::Value fundamental_class(const T& target, Obj x) {
    const Category& cat = target.category();
    Mor pi = cat.terminal_morphism(x);
    if (!cat.specialized(pi))
        throw NotSpecialized("fundamental class: " + cat.object_id(x) +
                             " -> pt is not specialized");
    typename T::Value v = target.theta(pi);
    typename T::Value via_gysin = gysin_pullback(target, pi, target.unit(cat.final_object()));
    if (!target.equal(v, via_gysin))
        throw Error("fundamental class: theta(pi_X) and pi_X^!(1_pt) disagree for " +
                    cat.object_id(x));
    return v;
}

}  // namespace obt
