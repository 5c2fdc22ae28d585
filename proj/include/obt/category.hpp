#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "obt/errors.hpp"

namespace obt {

// Objects, morphisms and labels are dense indices into the owning category.
using Obj = std::uint32_t;
using Mor = std::uint32_t;
using Label = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

struct Cospan {
    Mor left;   // X -> Z
    Mor right;  // Y -> Z
};

// Declared pullback of a cospan: apex = X x_Z Y with the two projections.
struct PullbackData {
    Obj apex;
    Mor proj_left;   // apex -> src(left)
    Mor proj_right;  // apex -> src(right)
};

// Commutative square, oriented as
//
//   X' --top--> X
//   |left       |right
//   Y' -bottom> Y
//
// with right . top = bottom . left.
struct Square {
    Mor top;
    Mor left;
    Mor right;
    Mor bottom;

    friend bool operator==(const Square&, const Square&) = default;
};

struct CoproductData {
    Obj left;
    Obj right;
    Obj object;
    Mor inj_left;
    Mor inj_right;
};

enum class SquareMode { AllFiberSquares, Explicit };

// Optional per-object carrier sets with per-morphism pointwise maps. Used for
// source-size bounds and by function-valued target theories.
struct Carriers {
    // elems[obj] = element names of the carrier of obj.
    std::vector<std::vector<std::string>> elems;
    // map[mor][i] = index in elems[dst] of the image of element i of src.
    std::vector<std::vector<std::uint32_t>> map;
};

// Raw category data as read from a document. References are resolved indices;
// semantic validation happens separately in validate().
struct CategoryData {
    std::vector<std::string> object_ids;
    std::vector<std::string> morphism_ids;
    std::vector<Obj> mor_src;
    std::vector<Obj> mor_dst;
    std::vector<Mor> identity;  // per object
    Obj final_object = kNone;
    // compose[f * M + g] = g . f for dst(f) == src(g), kNone when absent.
    std::vector<Mor> compose;
    std::vector<bool> confined;
    std::vector<bool> specialized;
    SquareMode square_mode = SquareMode::AllFiberSquares;
    std::vector<Square> declared_squares;
    std::map<std::uint64_t, PullbackData> pullbacks;  // keyed by pack(left, right)
    std::vector<CoproductData> coproducts;
    std::optional<Carriers> carriers;
    std::string name;
};

inline std::uint64_t pack_pair(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

class Category {
  public:
    explicit Category(CategoryData d) : d_(std::move(d)) { build_derived(); }

    const std::string& name() const { return d_.name; }
    std::size_t object_count() const { return d_.object_ids.size(); }
    std::size_t morphism_count() const { return d_.morphism_ids.size(); }

    const std::string& object_id(Obj x) const { return d_.object_ids[x]; }
    const std::string& morphism_id(Mor f) const { return d_.morphism_ids[f]; }

    std::optional<Obj> find_object(const std::string& id) const {
        auto it = obj_by_id_.find(id);
        if (it == obj_by_id_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<Mor> find_morphism(const std::string& id) const {
        auto it = mor_by_id_.find(id);
        if (it == mor_by_id_.end()) return std::nullopt;
        return it->second;
    }

    Obj src(Mor f) const { return d_.mor_src[f]; }
    Obj dst(Mor f) const { return d_.mor_dst[f]; }
    Mor identity(Obj x) const { return d_.identity[x]; }
    bool is_identity(Mor f) const { return d_.identity[src(f)] == f; }
    Obj final_object() const { return d_.final_object; }
    Mor terminal_morphism(Obj x) const {
        const auto& hs = hom(x, d_.final_object);
        if (hs.size() != 1)
            throw Error("no unique morphism " + object_id(x) + " -> final object");
        return hs[0];
    }

    bool confined(Mor f) const { return d_.confined[f]; }
    bool specialized(Mor f) const { return d_.specialized[f]; }

    // g . f; requires dst(f) == src(g).
    Mor compose(Mor f, Mor g) const {
        if (dst(f) != src(g))
            throw NotComposable("compose: dst(" + morphism_id(f) + ") != src(" +
                                morphism_id(g) + ")");
        Mor r = d_.compose[static_cast<std::size_t>(f) * morphism_count() + g];
        if (r == kNone)
            throw NotComposable("compose: no table entry for (" + morphism_id(f) + ", " +
                                morphism_id(g) + ")");
        return r;
    }

    Mor compose_raw(Mor f, Mor g) const {
        return d_.compose[static_cast<std::size_t>(f) * morphism_count() + g];
    }

    const std::vector<Mor>& hom(Obj a, Obj b) const {
        return hom_[static_cast<std::size_t>(a) * object_count() + b];
    }
    const std::vector<Mor>& morphisms_from(Obj a) const { return out_[a]; }
    const std::vector<Mor>& morphisms_into(Obj b) const { return in_[b]; }

    bool is_iso(Mor f) const { return inverse_[f] != kNone; }
    std::optional<Mor> inverse(Mor f) const {
        if (inverse_[f] == kNone) return std::nullopt;
        return inverse_[f];
    }
    // Isomorphisms with destination v, in index order.
    const std::vector<Mor>& isos_into(Obj v) const { return isos_into_[v]; }

    const std::map<std::uint64_t, PullbackData>& pullback_table() const { return d_.pullbacks; }

    std::optional<PullbackData> fiber_product_opt(const Cospan& c) const {
        if (dst(c.left) != dst(c.right))
            throw Error("fiber_product: cospan legs have different targets");
        auto it = d_.pullbacks.find(pack_pair(c.left, c.right));
        if (it != d_.pullbacks.end()) return it->second;
        it = d_.pullbacks.find(pack_pair(c.right, c.left));
        if (it != d_.pullbacks.end())
            return PullbackData{it->second.apex, it->second.proj_right, it->second.proj_left};
        return std::nullopt;
    }

    PullbackData fiber_product(const Cospan& c) const {
        auto r = fiber_product_opt(c);
        if (!r)
            throw PullbackUnavailable("no declared pullback for cospan (" +
                                      morphism_id(c.left) + ", " + morphism_id(c.right) + ")");
        return *r;
    }

    bool commutes(const Square& s) const {
        if (dst(s.top) != src(s.right) || src(s.top) != src(s.left) ||
            dst(s.left) != src(s.bottom) || dst(s.right) != dst(s.bottom))
            return false;
        return compose(s.top, s.right) == compose(s.left, s.bottom);
    }

    // Always-independent shapes: identity horizontals with equal verticals,
    // or identity verticals with equal horizontals.
    bool is_forced_independent(const Square& s) const {
        if (is_identity(s.top) && is_identity(s.bottom) && s.left == s.right) return true;
        if (is_identity(s.left) && is_identity(s.right) && s.top == s.bottom) return true;
        return false;
    }

    // Under AllFiberSquares a commuting square is independent iff it is a
    // fiber square (checked against the universal property directly) or one
    // of the forced shapes. Under Explicit mode, membership in the declared
    // list plus the forced shapes.
    bool is_independent(const Square& s) const {
        if (!commutes(s)) return false;
        if (is_forced_independent(s)) return true;
        if (d_.square_mode == SquareMode::Explicit) {
            for (const auto& q : d_.declared_squares)
                if (q == s) return true;
            return false;
        }
        // Declared fiber squares short-circuit the universal-property search.
        if (auto pd = fiber_product_opt(Cospan{s.right, s.bottom});
            pd && pd->apex == src(s.top) && pd->proj_left == s.top && pd->proj_right == s.left)
            return true;
        return satisfies_pullback_property(Cospan{s.right, s.bottom}, src(s.top), s.top, s.left);
    }

    // Exhaustively checks that (apex, pl, pr) is a limit of the cospan:
    // commutativity plus exactly one mediator for every commuting cone.
    bool satisfies_pullback_property(const Cospan& c, Obj apex, Mor pl, Mor pr) const {
        if (src(pl) != apex || src(pr) != apex) return false;
        if (dst(pl) != src(c.left) || dst(pr) != src(c.right)) return false;
        if (compose(pl, c.left) != compose(pr, c.right)) return false;
        for (Obj q = 0; q < object_count(); ++q) {
            // mediator image: cone (pl.m, pr.m) -> number of mediators m
            std::map<std::uint64_t, int> mediated;
            for (Mor m : hom(q, apex)) {
                std::uint64_t key = pack_pair(compose(m, pl), compose(m, pr));
                if (++mediated[key] > 1) return false;  // two mediators for one cone
            }
            // enumerate commuting cones by bucketing on the composite into z
            std::map<Mor, std::vector<Mor>> by_comp;
            for (Mor q1 : hom(q, src(c.left))) by_comp[compose(q1, c.left)].push_back(q1);
            for (Mor q2 : hom(q, src(c.right))) {
                Mor comp = compose(q2, c.right);
                auto it = by_comp.find(comp);
                if (it == by_comp.end()) continue;
                for (Mor q1 : it->second) {
                    if (mediated.find(pack_pair(q1, q2)) == mediated.end()) return false;
                }
            }
        }
        return true;
    }

    // Witness g: src(h1) -> src(h2), invertible, with h2 . g = h1.
    std::optional<Mor> isomorphic_over(Mor h1, Mor h2) const {
        if (dst(h1) != dst(h2))
            throw Error("isomorphic_over: morphisms have different targets");
        for (Mor g : hom(src(h1), src(h2))) {
            if (!is_iso(g)) continue;
            if (compose(g, h2) == h1) return g;
        }
        return std::nullopt;
    }

    SquareMode square_mode() const { return d_.square_mode; }
    const std::vector<Square>& declared_squares() const { return d_.declared_squares; }
    const std::vector<CoproductData>& coproducts() const { return d_.coproducts; }

    bool has_carriers() const { return d_.carriers.has_value(); }
    const Carriers& carriers() const {
        if (!d_.carriers) throw Error("category has no carrier data");
        return *d_.carriers;
    }
    // Size used by source bounds: carrier size when declared, else 0
    // (never excluded by a bound).
    std::size_t object_size(Obj x) const {
        return d_.carriers ? d_.carriers->elems[x].size() : 0;
    }

    const CategoryData& data() const { return d_; }

  private:
    void build_derived() {
        std::size_t n = object_count(), m = morphism_count();
        for (Obj x = 0; x < n; ++x) obj_by_id_.emplace(d_.object_ids[x], x);
        for (Mor f = 0; f < m; ++f) mor_by_id_.emplace(d_.morphism_ids[f], f);
        hom_.assign(n * n, {});
        out_.assign(n, {});
        in_.assign(n, {});
        for (Mor f = 0; f < m; ++f) {
            hom_[static_cast<std::size_t>(src(f)) * n + dst(f)].push_back(f);
            out_[src(f)].push_back(f);
            in_[dst(f)].push_back(f);
        }
        inverse_.assign(m, kNone);
        isos_into_.assign(n, {});
        for (Mor f = 0; f < m; ++f) {
            Mor ids = d_.identity[src(f)];
            Mor idd = d_.identity[dst(f)];
            for (Mor g : hom(dst(f), src(f))) {
                if (compose_raw(f, g) == ids && compose_raw(g, f) == idd) {
                    inverse_[f] = g;
                    break;
                }
            }
            if (inverse_[f] != kNone) isos_into_[dst(f)].push_back(f);
        }
    }

    CategoryData d_;
    std::unordered_map<std::string, Obj> obj_by_id_;
    std::unordered_map<std::string, Mor> mor_by_id_;
    std::vector<std::vector<Mor>> hom_;
    std::vector<std::vector<Mor>> out_;
    std::vector<std::vector<Mor>> in_;
    std::vector<Mor> inverse_;
    std::vector<std::vector<Mor>> isos_into_;
};

// Strict fibered category: a finite label set per object and, for every
// morphism f: X -> Y, a pullback map labels(Y) -> labels(X) that is
// functorial on the nose. Labels stand for isomorphism classes of
// fiber-objects, so no cleavage data is needed.
class FiberedCategory {
  public:
    FiberedCategory(const Category& cat, std::vector<std::vector<std::string>> labels,
                    std::vector<std::vector<Label>> pull)
        : cat_(&cat), labels_(std::move(labels)), pull_(std::move(pull)) {
        by_token_.resize(labels_.size());
        for (Obj x = 0; x < labels_.size(); ++x)
            for (Label l = 0; l < labels_[x].size(); ++l) by_token_[x].emplace(labels_[x][l], l);
    }

    const Category& category() const { return *cat_; }
    std::size_t label_count(Obj x) const { return labels_[x].size(); }
    const std::string& token(Obj x, Label l) const { return labels_[x][l]; }
    std::optional<Label> find_label(Obj x, const std::string& tok) const {
        auto it = by_token_[x].find(tok);
        if (it == by_token_[x].end()) return std::nullopt;
        return it->second;
    }

    // pull(f: X -> Y): labels(Y) -> labels(X).
    Label pull(Mor f, Label over_dst) const {
        if (over_dst >= labels_[cat_->dst(f)].size())
            throw UnknownLabel("pull: label index out of range over " +
                               cat_->object_id(cat_->dst(f)));
        Label r = pull_[f][over_dst];
        if (r == kNone)
            throw UnknownLabel("pull: no entry for morphism " + cat_->morphism_id(f));
        return r;
    }

    bool pull_defined(Mor f) const {
        for (Label l : pull_[f])
            if (l == kNone) return false;
        return true;
    }

    const std::vector<std::vector<Label>>& pull_table() const { return pull_; }

  private:
    const Category* cat_;
    std::vector<std::vector<std::string>> labels_;  // per object
    std::vector<std::vector<Label>> pull_;          // per morphism: dst label -> src label
    std::vector<std::unordered_map<std::string, Label>> by_token_;
};

}  // namespace obt
