#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "obt/category.hpp"
#include "obt/errors.hpp"
#include "obt/free_abelian.hpp"

namespace obt {

// Isomorphism class of a cobordism cycle [V -h-> X ; L1,...,Lr]: a confined
// morphism with finitely many fiber-object labels on its source, reduced to
// the serialization-minimal representative so that element equality is
// syntactic. `repr` is the serialized form and defines the key order.
struct CycleKey {
    Mor h = kNone;
    std::vector<Label> bundles;  // label indices over src(h), sorted by token
    std::string repr;            // "<h> ; <tok1>,<tok2>"

    bool operator<(const CycleKey& o) const { return repr < o.repr; }
    bool operator==(const CycleKey& o) const { return repr == o.repr; }
    std::string render() const { return "[" + repr + "]"; }
};

using OMElement = FreeAbelian<CycleKey>;

// An element of the universal group attached to the hom-context f.
struct OMValue {
    Mor ctx = kNone;
    OMElement elt;
};

// The universal oriented bivariant theory over a finite category: the free
// abelian group on isomorphism classes of decorated confined morphisms
// h: V -> X with f . h specialized, together with the product, pushforward,
// pullback and orientation operators on generators. With every bundle bound
// set to zero this is exactly the undecorated universal bivariant theory.
class UniversalTheory {
  public:
    using Value = OMValue;

    UniversalTheory(const Category& cat, const FiberedCategory* fc) : cat_(&cat), fc_(fc) {}

    const Category& category() const { return *cat_; }
    const FiberedCategory* fibered() const { return fc_; }
    std::string name() const { return "universal"; }
    bool has_phi() const { return fc_ != nullptr; }

    // ---- carriers of cycles -------------------------------------------

    CycleKey canonicalize(Mor h, std::vector<Label> bundles) const {
        Obj v = cat_->src(h);
        std::vector<Label> orig = sort_bundles(v, std::move(bundles));
        CycleKey best = make_key(h, orig);
        for (Mor g : cat_->isos_into(v)) {
            if (cat_->is_identity(g)) continue;
            Mor h2 = cat_->compose(g, h);
            std::vector<Label> b2;
            b2.reserve(orig.size());
            for (Label l : orig) b2.push_back(fc_->pull(g, l));
            CycleKey cand = make_key(h2, sort_bundles(cat_->src(g), std::move(b2)));
            if (cand.repr < best.repr) best = std::move(cand);
        }
        return best;
    }

    // 1 * [h ; bundles] in the group over ctx; enforces the generator
    // membership condition h in C and ctx . h in S.
    Value make_cycle(Mor h, std::vector<Label> bundles, Mor ctx) const {
        if (cat_->dst(h) != cat_->src(ctx))
            throw ContextError("cycle carrier " + cat_->morphism_id(h) +
                               " does not land in the source of context " +
                               cat_->morphism_id(ctx));
        if (!bundles.empty() && !fc_)
            throw MissingOrientationData("bundles given but no fibered layer is loaded");
        for (Label l : bundles)
            if (!fc_ || l >= fc_->label_count(cat_->src(h)))
                throw UnknownLabel("bundle label out of range over " +
                                   cat_->object_id(cat_->src(h)));
        check_membership(h, ctx);
        return Value{ctx, OMElement::generator(canonicalize(h, std::move(bundles)))};
    }

    // All canonical cycles (h: V -> X, bundles) with h in C, ctx . h in S,
    // object_size(V) within max_source (0 = unbounded) and r <= max_bundles,
    // in serialization order.
    std::vector<CycleKey> generators(Mor ctx, int max_source, int max_bundles) const {
        Obj x = cat_->src(ctx);
        std::set<CycleKey> out;
        for (Obj v = 0; v < cat_->object_count(); ++v) {
            if (max_source > 0 &&
                cat_->object_size(v) > static_cast<std::size_t>(max_source))
                continue;
            for (Mor h : cat_->hom(v, x)) {
                if (!cat_->confined(h)) continue;
                if (!cat_->specialized(cat_->compose(h, ctx))) continue;
                std::size_t nlabels = fc_ ? fc_->label_count(v) : 0;
                std::vector<std::vector<Label>> multisets{{}};
                for (int r = 1; r <= max_bundles && nlabels > 0; ++r) {
                    std::vector<Label> cur(static_cast<std::size_t>(r), 0);
                    while (true) {
                        multisets.push_back(cur);
                        int i = r - 1;
                        while (i >= 0 && cur[i] == nlabels - 1) --i;
                        if (i < 0) break;
                        Label next = cur[i] + 1;
                        for (int j = i; j < r; ++j) cur[j] = next;
                    }
                }
                for (auto& ms : multisets) out.insert(canonicalize(h, std::move(ms)));
            }
        }
        return {out.begin(), out.end()};
    }

    // ---- group structure ----------------------------------------------

    Value zero(Mor ctx) const { return Value{ctx, OMElement{}}; }

    Value add(const Value& a, const Value& b) const {
        require_same_ctx(a, b);
        return Value{a.ctx, a.elt + b.elt};
    }

    Value scalar(const BigInt& n, const Value& a) const {
        return Value{a.ctx, OMElement::scalar_mul(n, a.elt)};
    }

    bool equal(const Value& a, const Value& b) const { return a.ctx == b.ctx && a.elt == b.elt; }

    std::string render(const Value& a) const {
        return a.elt.str() + " over " + cat_->morphism_id(a.ctx);
    }

    // ---- canonical orientation and units ------------------------------

    Value theta(Mor f) const {
        if (!cat_->specialized(f))
            throw NotSpecialized("theta: " + cat_->morphism_id(f) + " is not specialized");
        return Value{f, OMElement::generator(canonicalize(cat_->identity(cat_->src(f)), {}))};
    }

    Value unit(Obj x) const { return theta(cat_->identity(x)); }

    // ---- the three bivariant operations -------------------------------

    Value product(const Value& a, const Value& b) const {
        Mor f = a.ctx, g = b.ctx;
        Mor fg = cat_->compose(f, g);
        std::vector<OMElement::Term> terms;
        for (const auto& [ka, ma] : a.elt.terms()) {
            for (const auto& [kb, nb] : b.elt.terms()) {
                // X' = X x_Y W, then V' = V x_X X'
                PullbackData p1 = cat_->fiber_product(Cospan{f, kb.h});
                Mor kp = p1.proj_left;    // X' -> X
                Mor fp = p1.proj_right;   // X' -> W
                PullbackData p2 = cat_->fiber_product(Cospan{ka.h, kp});
                Mor kpp = p2.proj_left;   // V' -> V
                Mor hp = p2.proj_right;   // V' -> X'
                Mor carrier = cat_->compose(kpp, ka.h);  // V' -> X
                std::vector<Label> bundles;
                bundles.reserve(ka.bundles.size() + kb.bundles.size());
                for (Label l : ka.bundles) bundles.push_back(fc_->pull(kpp, l));
                Mor fphp = cat_->compose(hp, fp);  // V' -> W
                for (Label l : kb.bundles) bundles.push_back(fc_->pull(fphp, l));
                check_membership(carrier, fg);
                terms.emplace_back(canonicalize(carrier, std::move(bundles)), ma * nb);
            }
        }
        return Value{fg, OMElement::normalize(std::move(terms))};
    }

    Value pushforward(Mor f, Mor g, const Value& a) const {
        if (!cat_->confined(f))
            throw NotConfined("pushforward: " + cat_->morphism_id(f) + " is not confined");
        if (cat_->compose(f, g) != a.ctx)
            throw ContextError("pushforward: context of the operand does not factor as g . f");
        std::vector<OMElement::Term> terms;
        for (const auto& [k, n] : a.elt.terms()) {
            Mor carrier = cat_->compose(k.h, f);
            check_membership(carrier, g);
            terms.emplace_back(canonicalize(carrier, k.bundles), n);
        }
        return Value{g, OMElement::normalize(std::move(terms))};
    }

    Value pullback(const Square& sq, const Value& a) const {
        if (a.ctx != sq.right)
            throw ContextError("pullback: operand context is not the right vertical");
        if (!cat_->commutes(sq)) throw NotIndependent("pullback: square does not commute");
        if (!cat_->is_independent(sq))
            throw NotIndependent("pullback: square is not independent");
        std::vector<OMElement::Term> terms;
        for (const auto& [k, n] : a.elt.terms()) {
            PullbackData pd = cat_->fiber_product(Cospan{k.h, sq.top});
            Mor gpp = pd.proj_left;   // V' -> V
            Mor hp = pd.proj_right;   // V' -> X'
            std::vector<Label> bundles;
            bundles.reserve(k.bundles.size());
            for (Label l : k.bundles) bundles.push_back(fc_->pull(gpp, l));
            check_membership(hp, sq.left);
            terms.emplace_back(canonicalize(hp, std::move(bundles)), n);
        }
        return Value{sq.left, OMElement::normalize(std::move(terms))};
    }

    // ---- orientation operator ------------------------------------------

    // Appends h^*L to every generator's bundle list.
    Value phi(Label l, const Value& a) const {
        if (!fc_) throw MissingOrientationData("no fibered layer loaded");
        Obj x = cat_->src(a.ctx);
        if (l >= fc_->label_count(x))
            throw UnknownLabel("label index out of range over " + cat_->object_id(x));
        std::vector<OMElement::Term> terms;
        for (const auto& [k, n] : a.elt.terms()) {
            std::vector<Label> bundles = k.bundles;
            bundles.push_back(fc_->pull(k.h, l));
            terms.emplace_back(canonicalize(k.h, std::move(bundles)), n);
        }
        return Value{a.ctx, OMElement::normalize(std::move(terms))};
    }

    // ---- test enumeration ------------------------------------------------

    std::vector<Value> test_values(Mor ctx, int max_source, int max_bundles) const {
        std::vector<Value> out;
        for (auto& k : generators(ctx, max_source, max_bundles))
            out.push_back(Value{ctx, OMElement::generator(std::move(k))});
        return out;
    }

  private:
    CycleKey make_key(Mor h, std::vector<Label> bundles) const {
        CycleKey k;
        k.h = h;
        k.bundles = std::move(bundles);
        k.repr = cat_->morphism_id(h) + " ; ";
        Obj v = cat_->src(h);
        for (std::size_t i = 0; i < k.bundles.size(); ++i) {
            if (i) k.repr += ",";
            k.repr += fc_->token(v, k.bundles[i]);
        }
        return k;
    }

    std::vector<Label> sort_bundles(Obj v, std::vector<Label> bundles) const {
        std::sort(bundles.begin(), bundles.end(), [&](Label a, Label b) {
            return fc_->token(v, a) < fc_->token(v, b);
        });
        return bundles;
    }

    void check_membership(Mor h, Mor ctx) const {
        if (!cat_->confined(h))
            throw NotConfined("generator carrier " + cat_->morphism_id(h) + " is not confined");
        if (!cat_->specialized(cat_->compose(h, ctx)))
            throw NotSpecialized("composite of " + cat_->morphism_id(h) + " and context " +
                                 cat_->morphism_id(ctx) + " is not specialized");
    }

    void require_same_ctx(const Value& a, const Value& b) const {
        if (a.ctx != b.ctx)
            throw ContextError("elements live over different contexts: " +
                               cat_->morphism_id(a.ctx) + " vs " + cat_->morphism_id(b.ctx));
    }

    const Category* cat_;
    const FiberedCategory* fc_;
};

}  // namespace obt
