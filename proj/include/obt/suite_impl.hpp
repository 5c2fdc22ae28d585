#pragma once

#include "obt/suite.hpp"
#include "obt/transform.hpp"

namespace obt {

template <Theory T>
std::vector<AxiomResult> check_grothendieck(const UniversalTheory& om, const T& target,
                                            const Bounds& b) {
    detail::Checker<UniversalTheory> C(om, b);
    const Category& cat = om.category();
    const FiberedCategory* fc = om.fibered();
    std::vector<AxiomResult> out;

    {  // normalization
        AxiomResult& r = out.emplace_back();
        r.tag = "gamma-normalization";
        r.name = "gamma([X -id-> X]) = theta(f)";
        r.formula = "gamma(theta_univ(f)) = theta(f), f specialized";
        detail::Sweep sw(r, b);
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 0), 0xe1)) {
            if (sw.done()) break;
            if (!cat.specialized(f)) continue;
            sw.run(
                [&] { return target.equal(gamma(om, target, om.theta(f)), target.theta(f)); },
                [&] { return "gamma(theta(" + cat.morphism_id(f) + ")) != theta(" +
                             cat.morphism_id(f) + ") in the target"; });
        }
    }

    {  // product preservation
        AxiomResult& r = out.emplace_back();
        r.tag = "gamma-product";
        r.name = "gamma preserves the product";
        r.formula = "gamma(a.b) = gamma(a).gamma(b)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 2);
        for (Mor f : C.pick_mors(C.mors_, q, 0xe2)) {
            if (sw.done()) break;
            for (Mor g : C.pick_mors(C.from_[cat.dst(f)], q, 0xe3 ^ f)) {
                if (sw.done()) break;
                for (auto* a : C.pick_vals(C.tv(f), 0xe4)) {
                    if (sw.done()) break;
                    for (auto* bb : C.pick_vals(C.tv(g), 0xe5)) {
                        sw.run(
                            [&] {
                                return target.equal(
                                    gamma(om, target, om.product(*a, *bb)),
                                    target.product(gamma(om, target, *a),
                                                   gamma(om, target, *bb)));
                            },
                            [&] {
                                return "gamma(prod(" + C.vs(*a) + ", " + C.vs(*bb) +
                                       ")) != prod(gamma(" + C.vs(*a) + "), gamma(" +
                                       C.vs(*bb) + "))";
                            });
                        if (sw.done()) break;
                    }
                }
            }
        }
    }

    {  // pushforward preservation
        AxiomResult& r = out.emplace_back();
        r.tag = "gamma-pushforward";
        r.name = "gamma preserves pushforward";
        r.formula = "gamma(f_* a) = f_* gamma(a)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 1);
        for (Mor f : C.pick_mors(C.mors_, q, 0xe6)) {
            if (sw.done()) break;
            if (!cat.confined(f)) continue;
            for (Mor g : C.pick_mors(C.from_[cat.dst(f)], q, 0xe7 ^ f)) {
                if (sw.done()) break;
                Mor ctx = cat.compose(f, g);
                for (auto* a : C.pick_vals(C.tv(ctx), 0xe8)) {
                    sw.run(
                        [&] {
                            return target.equal(
                                gamma(om, target, om.pushforward(f, g, *a)),
                                target.pushforward(f, g, gamma(om, target, *a)));
                        },
                        [&] {
                            return "gamma(push(" + cat.morphism_id(f) + ", " + C.vs(*a) +
                                   ")) != push(" + cat.morphism_id(f) + ", gamma(" + C.vs(*a) +
                                   "))";
                        });
                    if (sw.done()) break;
                }
            }
        }
    }

    {  // pullback preservation
        AxiomResult& r = out.emplace_back();
        r.tag = "gamma-pullback";
        r.name = "gamma preserves pullback";
        r.formula = "gamma(g^* a) = g^* gamma(a)";
        detail::Sweep sw(r, b);
        for (auto* sq : C.pick_all_squares(C.cq(1, 1), 0xe9)) {
            if (sw.done()) break;
            for (auto* a : C.pick_vals(C.tv(sq->right), 0xea)) {
                sw.run(
                    [&] {
                        return target.equal(gamma(om, target, om.pullback(*sq, *a)),
                                            target.pullback(*sq, gamma(om, target, *a)));
                    },
                    [&] {
                        return "gamma(pull(" + cat.morphism_id(sq->bottom) + ", " + C.vs(*a) +
                               ")) != pull(" + cat.morphism_id(sq->bottom) + ", gamma(" +
                               C.vs(*a) + "))";
                    });
                if (sw.done()) break;
            }
        }
    }

    if (om.has_phi() && target.has_phi() && fc) {
        AxiomResult& r = out.emplace_back();
        r.tag = "gamma-orientation";
        r.name = "gamma intertwines the operators";
        r.formula = "gamma(Phi(L) a) = phi(L)(gamma(a))";
        detail::Sweep sw(r, b);
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 2), 0xeb)) {
            if (sw.done()) break;
            Obj x = cat.src(f);
            std::vector<Label> ls;
            for (auto i : detail::pick(fc->label_count(x), C.vq(), 0xec, b.seed))
                ls.push_back(static_cast<Label>(i));
            for (Label l : ls) {
                if (sw.done()) break;
                for (auto* a : C.pick_vals(C.tv(f), 0xed)) {
                    sw.run(
                        [&] {
                            return target.equal(gamma(om, target, om.phi(l, *a)),
                                                target.phi(l, gamma(om, target, *a)));
                        },
                        [&] {
                            return "gamma(orient(" + fc->token(x, l) + ", " + C.vs(*a) +
                                   ")) != orient(" + fc->token(x, l) + ", gamma(" + C.vs(*a) +
                                   "))";
                        });
                    if (sw.done()) break;
                }
            }
        }
    }

    {  // independence of the representative
        AxiomResult& r = out.emplace_back();
        r.tag = "gamma-representative";
        r.name = "gamma is constant on isomorphism classes";
        r.formula = "gamma([h.g; g^*Ls]) = gamma([h; Ls]) for iso g";
        detail::Sweep sw(r, b);
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 1), 0xee)) {
            if (sw.done()) break;
            for (const CycleKey& k : om.generators(f, b.max_source, b.max_bundles)) {
                if (sw.done()) break;
                Obj v = cat.src(k.h);
                auto canonical = gamma_cycle(om, target, k.h, k.bundles, f);
                for (Mor g : cat.isos_into(v)) {
                    if (sw.done()) break;
                    Mor h2 = cat.compose(g, k.h);
                    std::vector<Label> b2;
                    for (Label l : k.bundles) b2.push_back(fc ? fc->pull(g, l) : l);
                    sw.run(
                        [&] {
                            return target.equal(gamma_cycle(om, target, h2, b2, f), canonical);
                        },
                        [&] {
                            return "gamma of representative (" + cat.morphism_id(h2) +
                                   ") differs from gamma of " + k.render() + " over " +
                                   cat.morphism_id(f);
                        });
                }
            }
        }
    }

    {  // closed form vs decomposition, both fold orders
        AxiomResult& r = out.emplace_back();
        r.tag = "gamma-fold";
        r.name = "closed form agrees with the decomposition route";
        r.formula = "h_*(phi(L1)..phi(Lr) theta) = h_*(phi(Lr)..phi(L1) theta)";
        detail::Sweep sw(r, b);
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 1), 0xef)) {
            if (sw.done()) break;
            for (auto* a : C.pick_vals(C.tv(f), 0xf0)) {
                sw.run(
                    [&] {
                        return target.equal(gamma(om, target, *a, false),
                                            gamma(om, target, *a, true));
                    },
                    [&] { return "the two bundle fold orders disagree on gamma(" + C.vs(*a) +
                                 ")"; });
                if (sw.done()) break;
            }
        }
    }

    return out;
}

inline std::vector<AxiomResult> check_additivity(const UniversalTheory& om, const Bounds& b) {
    const Category& cat = om.category();
    std::vector<AxiomResult> out;
    AxiomResult& r = out.emplace_back();
    r.tag = "additivity";
    r.name = "coproduct pushforwards are bijective on generators";
    r.formula = "inj_* : gens(summand -> Z) <-> gens over the injection";
    if (cat.coproducts().empty()) {
        r.not_applicable = true;
        return out;
    }
    detail::Sweep sw(r, b);
    detail::Checker<UniversalTheory> C(om, b);

    for (const auto& cp : cat.coproducts()) {
        if (sw.done()) break;
        if (b.max_source > 0 &&
            cat.object_size(cp.object) > static_cast<std::size_t>(b.max_source))
            continue;
        for (Mor f : C.pick_mors(C.from_[cp.object], C.cq(1, 0), 0xf1)) {
            if (sw.done()) break;
            std::set<CycleKey> ambient;
            for (auto& k : om.generators(f, b.max_source, b.max_bundles)) ambient.insert(k);
            for (int side = 0; side < 2 && !sw.done(); ++side) {
                Mor inj = side == 0 ? cp.inj_left : cp.inj_right;
                Obj summand = side == 0 ? cp.left : cp.right;
                sw.run(
                    [&] {
                        Mor sub_ctx = cat.compose(inj, f);
                        auto gens = om.generators(sub_ctx, b.max_source, b.max_bundles);
                        std::set<CycleKey> image;
                        for (const auto& k : gens)
                            image.insert(om.canonicalize(cat.compose(k.h, inj), k.bundles));
                        if (image.size() != gens.size()) return false;  // not injective
                        std::set<CycleKey> supported;
                        for (const auto& k : ambient) {
                            Obj w = cat.src(k.h);
                            for (Mor h0 : cat.hom(w, summand)) {
                                if (cat.compose(h0, inj) == k.h && cat.confined(h0)) {
                                    supported.insert(k);
                                    break;
                                }
                            }
                        }
                        return image == supported;
                    },
                    [&] {
                        return "coproduct (" + cat.object_id(cp.left) + " + " +
                               cat.object_id(cp.right) + "), context " + cat.morphism_id(f) +
                               ", injection " + cat.morphism_id(inj) +
                               ": generator sets do not biject";
                    });
            }
        }
    }
    return out;
}

}  // namespace obt
