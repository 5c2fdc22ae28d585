#pragma once

#include <concepts>
#include <functional>
#include <string>
#include <vector>

#include "obt/bigint.hpp"
#include "obt/category.hpp"

namespace obt {

// Contract every bivariant theory plugged into the engine satisfies: a value
// carrier per hom-context with abelian-group structure, the three bivariant
// operations, units, canonical-orientation data theta and (optionally) an
// orientation operator phi. The certification suite and the universal
// transformation are written against this concept only.
template <typename T>
concept Theory = requires(const T t, const typename T::Value v, Mor f, Obj x, Label l,
                          const Square& s, const BigInt& n) {
    { v.ctx } -> std::convertible_to<Mor>;
    { t.category() } -> std::convertible_to<const Category&>;
    { t.fibered() } -> std::convertible_to<const FiberedCategory*>;
    { t.name() } -> std::same_as<std::string>;
    { t.zero(f) } -> std::same_as<typename T::Value>;
    { t.add(v, v) } -> std::same_as<typename T::Value>;
    { t.scalar(n, v) } -> std::same_as<typename T::Value>;
    { t.equal(v, v) } -> std::same_as<bool>;
    { t.render(v) } -> std::same_as<std::string>;
    { t.unit(x) } -> std::same_as<typename T::Value>;
    { t.theta(f) } -> std::same_as<typename T::Value>;
    { t.product(v, v) } -> std::same_as<typename T::Value>;
    { t.pushforward(f, f, v) } -> std::same_as<typename T::Value>;
    { t.pullback(s, v) } -> std::same_as<typename T::Value>;
    { t.has_phi() } -> std::same_as<bool>;
    { t.phi(l, v) } -> std::same_as<typename T::Value>;
    { t.test_values(f, 0, 0) } -> std::same_as<std::vector<typename T::Value>>;
};

// Type-erased theory built from callbacks. This is the extension point for
// exotic targets and the vehicle for the suite's fault-injected mutants: wrap
// a base theory, then replace a single operation.
template <typename V>
class CallbackTheory {
  public:
    using Value = V;

    const Category& category() const { return *cat; }
    const FiberedCategory* fibered() const { return fibered_; }
    std::string name() const { return name_; }
    bool has_phi() const { return has_phi_; }

    Value zero(Mor ctx) const { return zero_(ctx); }
    Value add(const Value& a, const Value& b) const { return add_(a, b); }
    Value scalar(const BigInt& n, const Value& a) const { return scalar_(n, a); }
    bool equal(const Value& a, const Value& b) const { return equal_(a, b); }
    std::string render(const Value& a) const { return render_(a); }
    Value unit(Obj x) const { return unit_(x); }
    Value theta(Mor f) const { return theta_(f); }
    Value product(const Value& a, const Value& b) const { return product_(a, b); }
    Value pushforward(Mor f, Mor g, const Value& a) const { return pushforward_(f, g, a); }
    Value pullback(const Square& s, const Value& a) const { return pullback_(s, a); }
    Value phi(Label l, const Value& a) const { return phi_(l, a); }
    std::vector<Value> test_values(Mor ctx, int max_source, int max_bundles) const {
        return test_values_(ctx, max_source, max_bundles);
    }

    template <typename T>
    static CallbackTheory wrap(const T& base, std::string name) {
        CallbackTheory c;
        c.cat = &base.category();
        c.fibered_ = base.fibered();
        c.name_ = std::move(name);
        c.has_phi_ = base.has_phi();
        c.zero_ = [&base](Mor ctx) { return base.zero(ctx); };
        c.add_ = [&base](const Value& a, const Value& b) { return base.add(a, b); };
        c.scalar_ = [&base](const BigInt& n, const Value& a) { return base.scalar(n, a); };
        c.equal_ = [&base](const Value& a, const Value& b) { return base.equal(a, b); };
        c.render_ = [&base](const Value& a) { return base.render(a); };
        c.unit_ = [&base](Obj x) { return base.unit(x); };
        c.theta_ = [&base](Mor f) { return base.theta(f); };
        c.product_ = [&base](const Value& a, const Value& b) { return base.product(a, b); };
        c.pushforward_ = [&base](Mor f, Mor g, const Value& a) {
            return base.pushforward(f, g, a);
        };
        c.pullback_ = [&base](const Square& s, const Value& a) { return base.pullback(s, a); };
        c.phi_ = [&base](Label l, const Value& a) { return base.phi(l, a); };
        c.test_values_ = [&base](Mor ctx, int ms, int mb) {
            return base.test_values(ctx, ms, mb);
        };
        return c;
    }

    const Category* cat = nullptr;
    const FiberedCategory* fibered_ = nullptr;
    std::string name_;
    bool has_phi_ = false;
    std::function<Value(Mor)> zero_;
    std::function<Value(const Value&, const Value&)> add_;
    std::function<Value(const BigInt&, const Value&)> scalar_;
    std::function<bool(const Value&, const Value&)> equal_;
    std::function<std::string(const Value&)> render_;
    std::function<Value(Obj)> unit_;
    std::function<Value(Mor)> theta_;
    std::function<Value(const Value&, const Value&)> product_;
    std::function<Value(Mor, Mor, const Value&)> pushforward_;
    std::function<Value(const Square&, const Value&)> pullback_;
    std::function<Value(Label, const Value&)> phi_;
    std::function<std::vector<Value>(Mor, int, int)> test_values_;
};

}  // namespace obt
