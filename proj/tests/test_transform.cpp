#include <doctest.h>

#include "obt/fiberwise.hpp"
#include "obt/transform.hpp"
#include "test_util.hpp"

using namespace obt;
using testutil::diamond;
using testutil::fs4;
using testutil::mor;
using testutil::obj;

namespace {

struct Rig {
    UniversalTheory om{fs4().category(), fs4().fibered_or_null()};
    FiberwiseTheory fw{fs4().category(), fs4().fibered_or_null()};
    const Category& cat = fs4().category();
};

}  // namespace

TEST_CASE("gamma evaluates the closed form") {
    Rig r;
    Mor bang = mor(fs4(), "f21_aa");
    Obj two = obj(fs4(), "2");

    // normalization on a specialized context
    CHECK(r.fw.equal(gamma(r.om, r.fw, r.om.theta(bang)), r.fw.theta(bang)));

    // gamma([2 -const_a-> 2] over 2 -> pt) = (a -> 2, b -> 0)
    OMValue a = r.om.make_cycle(mor(fs4(), "f22_aa"), {}, bang);
    CHECK(gamma(r.om, r.fw, a).values == std::vector<long long>{2, 0});

    // gamma([2 -id-> 2; w3_5] over 2 -> pt) = (3, 5)
    const FiberedCategory* fl = fs4().fibered_or_null();
    Label w35 = *fl->find_label(two, "w3_5");
    OMValue b = r.om.make_cycle(r.cat.identity(two), {w35}, bang);
    CHECK(gamma(r.om, r.fw, b).values == std::vector<long long>{3, 5});

    // linearity
    OMValue combo = r.om.add(r.om.scalar(BigInt{2}, a), r.om.scalar(BigInt{-1}, b));
    FWValue expected = r.fw.add(r.fw.scalar(BigInt{2}, gamma(r.om, r.fw, a)),
                                r.fw.scalar(BigInt{-1}, gamma(r.om, r.fw, b)));
    CHECK(r.fw.equal(gamma(r.om, r.fw, combo), expected));

    // both fold orders agree
    OMValue c = r.om.phi(w35, b);
    CHECK(r.fw.equal(gamma(r.om, r.fw, c, false), gamma(r.om, r.fw, c, true)));
}

TEST_CASE("gamma into the universal theory itself is the identity on generators") {
    UniversalTheory om(diamond().category(), diamond().fibered_or_null());
    for (Mor f : {mor(diamond(), "x_top"), mor(diamond(), "bot_top")}) {
        for (const CycleKey& k : om.generators(f, 0, 1)) {
            OMValue g{f, OMElement::generator(k)};
            CHECK(om.equal(gamma(om, om, g), g));
        }
    }
}

TEST_CASE("gysin pullback is product with theta") {
    Rig r;
    Mor bang = mor(fs4(), "f21_aa");
    Obj two = obj(fs4(), "2");

    // f = id: no change
    FWValue a{bang, {3, 7}};
    CHECK(gysin_pullback(r.fw, r.cat.identity(two), a).values == std::vector<long long>{3, 7});

    // along const_a: alpha . const_a
    CHECK(gysin_pullback(r.fw, mor(fs4(), "f22_aa"), a).values == std::vector<long long>{3, 3});

    // along 2 -> 1: constant pull of the point value
    FWValue pt{r.cat.identity(obj(fs4(), "1")), {5}};
    CHECK(gysin_pullback(r.fw, bang, pt).values == std::vector<long long>{5, 5});

    CHECK_THROWS_AS(gysin_pullback(r.fw, bang, FWValue{r.cat.identity(two), {1, 1}}),
                    ContextError);
}

TEST_CASE("gysin pushforward sums against theta") {
    Rig r;
    Obj two = obj(fs4(), "2");
    Mor id2 = r.cat.identity(two);

    FWValue a{id2, {1, 1}};
    CHECK(gysin_pushforward(r.fw, id2, a).values == std::vector<long long>{1, 1});
    CHECK(gysin_pushforward(r.fw, mor(fs4(), "f22_aa"), a).values ==
          std::vector<long long>{2, 0});
    FWValue b{id2, {1, 2}};
    CHECK(gysin_pushforward(r.fw, mor(fs4(), "f22_ba"), b).values ==
          std::vector<long long>{2, 1});
}

TEST_CASE("exterior product of covariant classes") {
    Rig r;
    Mor bang = mor(fs4(), "f21_aa");
    FWValue a{bang, {1, 2}};
    FWValue b{bang, {3, 4}};
    FWValue axb = exterior_covariant(r.fw, a, b);
    CHECK(r.cat.object_id(r.cat.src(axb.ctx)) == "4");
    CHECK(axb.values == std::vector<long long>{3, 4, 6, 8});  // (a,a),(a,b),(b,a),(b,b)

    // swapping the factors permutes the values through the factor swap
    FWValue bxa = exterior_covariant(r.fw, b, a);
    CHECK(bxa.values == std::vector<long long>{3, 6, 4, 8});

    // unit factor: the other side pulled back
    FWValue unit_pt{r.cat.identity(obj(fs4(), "1")), {1}};
    FWValue ext_u = exterior_covariant(r.fw, a, unit_pt);
    CHECK(ext_u.values == std::vector<long long>{1, 2});
}

TEST_CASE("exterior product of contravariant classes") {
    Rig r;
    Obj two = obj(fs4(), "2");
    Mor id2 = r.cat.identity(two);
    FWValue a{id2, {1, 2}};
    FWValue b{id2, {3, 4}};
    FWValue axb = exterior_contravariant(r.fw, a, b);
    CHECK(r.cat.object_id(r.cat.src(axb.ctx)) == "4");
    CHECK(r.cat.is_identity(axb.ctx));
    CHECK(axb.values == std::vector<long long>{3, 4, 6, 8});
}

TEST_CASE("fundamental classes") {
    Rig r;
    CHECK(fundamental_class(r.fw, obj(fs4(), "2")).values == std::vector<long long>{1, 1});
    CHECK(fundamental_class(r.fw, obj(fs4(), "1")).values == std::vector<long long>{1});

    // in the universal theory the fundamental class is the identity cycle
    CHECK(r.om.render(fundamental_class(r.om, obj(fs4(), "2"))) ==
          "1*[f22_ab ; ] over f21_aa");
}

// ---------------------------------------------------------------------------
// Derived functorialities, swept over small instances for both the fiberwise
// theory and the universal theory itself.
// ---------------------------------------------------------------------------

namespace {

// Morphisms of fs4 whose endpoints have carrier size <= 2.
std::vector<Mor> small_morphisms(const Category& cat) {
    std::vector<Mor> out;
    for (Mor f = 0; f < cat.morphism_count(); ++f)
        if (cat.object_size(cat.src(f)) <= 2 && cat.object_size(cat.dst(f)) <= 2)
            out.push_back(f);
    return out;
}

// f x g : A -> A' between declared product objects, found as the unique
// mediator of the induced cone.
std::optional<Mor> product_map(const Category& cat, Mor f, Mor g, const PullbackData& p,
                               const PullbackData& q) {
    Mor q1 = cat.compose(p.proj_left, f);
    Mor q2 = cat.compose(p.proj_right, g);
    std::optional<Mor> found;
    for (Mor m : cat.hom(p.apex, q.apex)) {
        if (cat.compose(m, q.proj_left) == q1 && cat.compose(m, q.proj_right) == q2) {
            if (found) return std::nullopt;  // not unique: reject
            found = m;
        }
    }
    return found;
}

template <typename T>
void sweep_gysin_functoriality(const T& th) {
    const Category& cat = th.category();
    int ran = 0;
    for (Mor f : small_morphisms(cat)) {
        for (Mor g : cat.morphisms_from(cat.dst(f))) {
            if (cat.object_size(cat.dst(g)) > 2) continue;
            Mor fg = cat.compose(f, g);
            Mor pi_z = cat.terminal_morphism(cat.dst(g));
            for (const auto& a : th.test_values(pi_z, 2, 1)) {
                CHECK(th.equal(gysin_pullback(th, fg, a),
                               gysin_pullback(th, f, gysin_pullback(th, g, a))));
                ++ran;
            }
            Mor idx = cat.identity(cat.src(f));
            for (const auto& a : th.test_values(idx, 2, 1)) {
                CHECK(th.equal(gysin_pushforward(th, fg, a),
                               gysin_pushforward(th, g, gysin_pushforward(th, f, a))));
                ++ran;
            }
        }
    }
    CHECK(ran > 0);
}

template <typename T>
void sweep_base_change_squares(const T& th) {
    const Category& cat = th.category();
    int ran = 0;
    for (const auto& [key, pd] : cat.pullback_table()) {
        Mor l = static_cast<Mor>(key >> 32);
        Mor r = static_cast<Mor>(key & 0xffffffffu);
        Square sq{pd.proj_left, pd.proj_right, l, r};
        if (cat.object_size(cat.src(l)) > 2 || cat.object_size(cat.src(r)) > 2 ||
            cat.object_size(cat.dst(l)) > 2 || cat.object_size(pd.apex) > 2)
            continue;
        // covariant square: g = bottom confined, f = right specialized
        {
            Mor f = sq.right, g = sq.bottom, fp = sq.left, gp = sq.top;
            Mor pi_y = cat.terminal_morphism(cat.dst(g));
            Mor pi_yp = cat.terminal_morphism(cat.src(g));
            Mor pi_x = cat.terminal_morphism(cat.src(f));
            for (const auto& a : th.test_values(pi_yp, 2, 1)) {
                auto lhs = gysin_pullback(th, f, th.pushforward(g, pi_y, a));
                auto rhs = th.pushforward(gp, pi_x, gysin_pullback(th, fp, a));
                CHECK(th.equal(lhs, rhs));
                ++ran;
            }
        }
        // contravariant square: g = bottom confined and specialized
        {
            Mor f = sq.right, g = sq.bottom, fp = sq.left, gp = sq.top;
            Mor id_y = cat.identity(cat.dst(f));
            Mor id_x = cat.identity(cat.src(f));
            Square fstar{f, id_x, id_y, f};
            Square fpstar{fp, cat.identity(cat.src(fp)), cat.identity(cat.dst(fp)), fp};
            for (const auto& a : th.test_values(cat.identity(cat.src(g)), 2, 1)) {
                auto lhs = th.pullback(fstar, gysin_pushforward(th, g, a));
                auto rhs = gysin_pushforward(th, gp, th.pullback(fpstar, a));
                CHECK(th.equal(lhs, rhs));
                ++ran;
            }
        }
    }
    CHECK(ran > 0);
}

template <typename T>
void sweep_exterior_compatibilities(const T& th) {
    const Category& cat = th.category();
    int ran = 0;
    auto pi = [&](Obj x) { return cat.terminal_morphism(x); };
    for (Mor f : small_morphisms(cat)) {
        for (Mor g : small_morphisms(cat)) {
            Obj x = cat.src(f), y = cat.src(g), xp = cat.dst(f), yp = cat.dst(g);
            auto p = cat.fiber_product_opt(Cospan{pi(x), pi(y)});
            auto q = cat.fiber_product_opt(Cospan{pi(xp), pi(yp)});
            if (!p || !q) continue;
            auto fg = product_map(cat, f, g, *p, *q);
            if (!fg) continue;
            for (const auto& a : th.test_values(pi(x), 1, 1)) {
                for (const auto& b : th.test_values(pi(y), 1, 1)) {
                    // (f x g)_* (a x b) = f_* a x g_* b
                    auto lhs = th.pushforward(*fg, pi(q->apex), exterior_covariant(th, a, b));
                    auto rhs = exterior_covariant(th, th.pushforward(f, pi(xp), a),
                                                  th.pushforward(g, pi(yp), b));
                    CHECK(th.equal(lhs, rhs));
                    ++ran;
                }
            }
            for (const auto& a : th.test_values(pi(xp), 1, 1)) {
                for (const auto& b : th.test_values(pi(yp), 1, 1)) {
                    // (f x g)^! (a x b) = f^! a x g^! b
                    auto lhs = gysin_pullback(th, *fg, exterior_covariant(th, a, b));
                    auto rhs = exterior_covariant(th, gysin_pullback(th, f, a),
                                                  gysin_pullback(th, g, b));
                    CHECK(th.equal(lhs, rhs));
                    ++ran;
                }
            }
        }
    }
    CHECK(ran > 0);
}

template <typename T>
void sweep_operator_compatibilities(const T& th) {
    const Category& cat = th.category();
    const FiberedCategory* fl = th.fibered();
    REQUIRE(fl != nullptr);
    int ran = 0;
    auto pi = [&](Obj x) { return cat.terminal_morphism(x); };
    auto labels = [&](Obj x) {
        std::vector<Label> ls;
        for (Label l = 0; l < fl->label_count(x) && ls.size() < 3; ++l) ls.push_back(l);
        if (fl->label_count(x) > 3) ls.back() = static_cast<Label>(fl->label_count(x) - 1);
        return ls;
    };
    for (Mor f : small_morphisms(cat)) {
        Obj x = cat.src(f), y = cat.dst(f);
        // phi(L)(a) x b = phi(p1^* L)(a x b)
        auto p = cat.fiber_product_opt(Cospan{pi(x), pi(y)});
        if (p) {
            for (Label l : labels(x)) {
                Label pulled = fl->pull(p->proj_left, l);
                for (const auto& a : th.test_values(pi(x), 1, 1)) {
                    for (const auto& b : th.test_values(pi(y), 1, 1)) {
                        CHECK(th.equal(exterior_covariant(th, th.phi(l, a), b),
                                       th.phi(pulled, exterior_covariant(th, a, b))));
                        ++ran;
                    }
                }
            }
        }
        for (Label m : labels(y)) {
            Label fm = fl->pull(f, m);
            // phi(f^* M) . f^! = f^! . phi(M) on covariant classes
            for (const auto& a : th.test_values(pi(y), 2, 1)) {
                CHECK(th.equal(th.phi(fm, gysin_pullback(th, f, a)),
                               gysin_pullback(th, f, th.phi(m, a))));
                ++ran;
            }
            // f_! . phi(f^* M) = phi(M) . f_! on contravariant classes
            for (const auto& a : th.test_values(cat.identity(x), 2, 1)) {
                CHECK(th.equal(gysin_pushforward(th, f, th.phi(fm, a)),
                               th.phi(m, gysin_pushforward(th, f, a))));
                ++ran;
            }
            // phi(f^* M) . f^* = f^* . phi(M) on contravariant classes
            Square fstar{f, cat.identity(x), cat.identity(y), f};
            for (const auto& a : th.test_values(cat.identity(y), 2, 1)) {
                CHECK(th.equal(th.phi(fm, th.pullback(fstar, a)),
                               th.pullback(fstar, th.phi(m, a))));
                ++ran;
            }
        }
    }
    CHECK(ran > 0);
}

}  // namespace

TEST_CASE("gysin families are functorial") {
    Rig r;
    sweep_gysin_functoriality(r.fw);
    sweep_gysin_functoriality(r.om);
}

TEST_CASE("base-change squares commute with the gysin maps") {
    Rig r;
    sweep_base_change_squares(r.fw);
    sweep_base_change_squares(r.om);
}

TEST_CASE("exterior products are compatible with pushforward and gysin pullback") {
    Rig r;
    sweep_exterior_compatibilities(r.fw);
    sweep_exterior_compatibilities(r.om);
}

TEST_CASE("orientation operators are compatible with the derived structure") {
    Rig r;
    sweep_operator_compatibilities(r.fw);
    sweep_operator_compatibilities(r.om);
}

TEST_CASE("gamma demands orientation data exactly when cycles carry bundles") {
    Rig r;
    FiberwiseTheory plain(fs4().category(), nullptr);  // no fibered layer: no phi
    Mor bang = mor(fs4(), "f21_aa");
    const FiberedCategory* fl = fs4().fibered_or_null();
    Label w35 = *fl->find_label(obj(fs4(), "2"), "w3_5");

    OMValue undecorated = r.om.make_cycle(r.cat.identity(obj(fs4(), "2")), {}, bang);
    CHECK(gamma(r.om, plain, undecorated).values == std::vector<long long>{1, 1});

    OMValue decorated = r.om.phi(w35, undecorated);
    CHECK_THROWS_AS(gamma(r.om, plain, decorated), MissingOrientationData);
}
