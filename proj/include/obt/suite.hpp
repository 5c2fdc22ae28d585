#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "obt/theory.hpp"
#include "obt/universal.hpp"

namespace obt {

// Enumeration bounds for the certification sweeps. Enumeration is exhaustive
// within bounds; instance_cap truncates each axiom's sweep (0 = unlimited)
// and seed reseeds the deterministic stride used when a level is truncated.
struct Bounds {
    int max_source = 2;
    int max_bundles = 1;
    long long coeff_min = -2;
    long long coeff_max = 2;
    std::uint64_t instance_cap = 10000;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const {
        return nlohmann::json{{"max_source", max_source},
                              {"max_bundles", max_bundles},
                              {"coeff_min", coeff_min},
                              {"coeff_max", coeff_max},
                              {"instance_cap", instance_cap},
                              {"seed", seed}};
    }
};

struct AxiomResult {
    std::string tag;      // e.g. "B-1"
    std::string name;     // e.g. "product is associative"
    std::string formula;  // e.g. "(a.b).c = a.(b.c)"
    std::uint64_t passes = 0;
    std::uint64_t failures = 0;
    std::uint64_t skips = 0;
    bool not_applicable = false;
    std::string first_counterexample;

    std::uint64_t instances() const { return passes + failures; }
    std::uint64_t attempts() const { return passes + failures + skips; }

    // A pass with a majority of skipped instances proves too little.
    std::string verdict() const {
        if (not_applicable) return "not-applicable";
        if (failures > 0) return "fail";
        if (instances() == 0) return "inconclusive";
        if (skips > instances()) return "inconclusive";
        return "pass";
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"tag", tag},
                         {"name", name},
                         {"formula", formula},
                         {"instances", instances()},
                         {"passes", passes},
                         {"failures", failures},
                         {"skips", skips},
                         {"verdict", verdict()}};
        j["first_counterexample"] =
            first_counterexample.empty() ? nlohmann::json() : nlohmann::json(first_counterexample);
        return j;
    }
};

struct CheckReport {
    std::string category;
    std::string theory;
    Bounds bounds;
    std::vector<AxiomResult> axioms;

    bool all_passed() const {
        for (const auto& a : axioms) {
            std::string v = a.verdict();
            if (v != "pass" && v != "not-applicable") return false;
        }
        return true;
    }

    const AxiomResult* find(const std::string& tag) const {
        for (const auto& a : axioms)
            if (a.tag == tag) return &a;
        return nullptr;
    }

    void append(std::vector<AxiomResult> more) {
        for (auto& a : more) axioms.push_back(std::move(a));
    }

    nlohmann::json to_json() const {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& a : axioms) list.push_back(a.to_json());
        return nlohmann::json{{"category", category},
                              {"theory", theory},
                              {"bounds", bounds.to_json()},
                              {"results", list}};
    }

    std::string str() const {
        std::string out;
        out += "axiom                       instances   passes fails  skips  verdict\n";
        for (const auto& a : axioms) {
            char line[160];
            std::snprintf(line, sizeof line, "%-27s %9llu %8llu %5llu %6llu  %s\n",
                          (a.tag + " " + a.name).substr(0, 27).c_str(),
                          static_cast<unsigned long long>(a.instances()),
                          static_cast<unsigned long long>(a.passes),
                          static_cast<unsigned long long>(a.failures),
                          static_cast<unsigned long long>(a.skips), a.verdict().c_str());
            out += line;
            if (!a.first_counterexample.empty())
                out += "    counterexample: " + a.first_counterexample + "\n";
        }
        out += all_passed() ? "overall: pass\n" : "overall: FAIL\n";
        return out;
    }
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministically picks up to `quota` indices from [0, n): the natural
// order when everything fits, otherwise a coprime stride over the whole pool
// so truncated sweeps still vary every dimension.
inline std::vector<std::uint32_t> pick(std::size_t n, std::size_t quota, std::uint64_t salt,
                                       std::uint64_t seed) {
    std::vector<std::uint32_t> out;
    if (n == 0 || quota == 0) return out;
    if (quota >= n) {
        out.resize(n);
        std::iota(out.begin(), out.end(), 0);
        return out;
    }
    std::size_t step = static_cast<std::size_t>(n * 0.6180339887498949) | 1;
    while (std::gcd(step, n) != 1) step += 2;
    std::size_t offset = mix64(salt ^ (seed * 0x51ed270b7a642963ULL)) % n;
    out.reserve(quota);
    for (std::size_t i = 0; i < quota; ++i)
        out.push_back(static_cast<std::uint32_t>((offset + i * step) % n));
    std::sort(out.begin(), out.end());
    return out;
}

class Sweep {
  public:
    Sweep(AxiomResult& r, const Bounds& b) : r_(r), cap_(b.instance_cap) {}

    bool done() const { return cap_ != 0 && r_.attempts() >= cap_; }

    template <typename Check, typename Witness>
    void run(Check&& check, Witness&& witness) {
        if (done()) return;
        try {
            if (check()) {
                ++r_.passes;
            } else {
                ++r_.failures;
                if (r_.first_counterexample.empty()) r_.first_counterexample = witness();
            }
        } catch (const PullbackUnavailable&) {
            ++r_.skips;
        } catch (const Error& e) {
            ++r_.failures;
            if (r_.first_counterexample.empty())
                r_.first_counterexample = std::string("error: ") + e.what() + " at " + witness();
        }
    }

  private:
    AxiomResult& r_;
    std::uint64_t cap_;
};

}  // namespace detail

// Replayable expression for a universal-theory element; the label tokens are
// already part of each key's serialized form.
inline std::string om_to_dsl(const Category& cat, const OMValue& v) {
    if (v.elt.is_zero()) return "0*cyc(" + cat.morphism_id(cat.identity(cat.src(v.ctx))) +
                                 ";) over " + cat.morphism_id(v.ctx);
    std::string out;
    for (std::size_t i = 0; i < v.elt.terms().size(); ++i) {
        const auto& [key, coeff] = v.elt.terms()[i];
        if (i) out += " + ";
        // key.repr is "<h> ; <tok1>,<tok2>"
        std::string h = key.repr.substr(0, key.repr.find(' '));
        std::string toks = key.repr.substr(key.repr.find(';') + 2);
        out += coeff.str() + "*cyc(" + h + ";" + toks + ") over " + cat.morphism_id(v.ctx);
    }
    return out;
}

namespace detail {

template <Theory T>
class Checker {
  public:
    Checker(const T& th, const Bounds& b)
        : th_(th), cat_(th.category()), fc_(th.fibered()), b_(b) {
        // Context enumeration visits small objects first so that truncated
        // sweeps hit the regions where declared pullbacks exist.
        mors_.resize(cat_.morphism_count());
        std::iota(mors_.begin(), mors_.end(), 0);
        auto msize = [&](Mor f) { return cat_.object_size(cat_.src(f)) +
                                         cat_.object_size(cat_.dst(f)); };
        std::stable_sort(mors_.begin(), mors_.end(),
                         [&](Mor a, Mor b2) { return msize(a) < msize(b2); });
        from_.resize(cat_.object_count());
        for (Obj x = 0; x < cat_.object_count(); ++x) {
            from_[x] = cat_.morphisms_from(x);
            std::stable_sort(from_[x].begin(), from_[x].end(), [&](Mor a, Mor b2) {
                return cat_.object_size(cat_.dst(a)) < cat_.object_size(cat_.dst(b2));
            });
        }
        for (const auto& [key, pd] : cat_.pullback_table()) {
            Mor l = static_cast<Mor>(key >> 32);
            Mor r = static_cast<Mor>(key & 0xffffffffu);
            squares_.push_back(Square{pd.proj_left, pd.proj_right, l, r});
            if (l != r) squares_.push_back(Square{pd.proj_right, pd.proj_left, r, l});
        }
        auto ssize = [&](const Square& s) {
            return cat_.object_size(cat_.src(s.top)) + cat_.object_size(cat_.dst(s.top)) +
                   cat_.object_size(cat_.src(s.bottom)) + cat_.object_size(cat_.dst(s.bottom));
        };
        std::stable_sort(squares_.begin(), squares_.end(),
                         [&](const Square& a, const Square& s2) { return ssize(a) < ssize(s2); });
        for (std::uint32_t i = 0; i < squares_.size(); ++i) {
            sq_by_right_[squares_[i].right].push_back(i);
            sq_by_bottom_[squares_[i].bottom].push_back(i);
        }
    }

    using Value = typename T::Value;

    // Test values: the theory's own enumeration plus a few integer
    // combinations from the coefficient range, so every sweep exercises
    // multi-term elements and operation additivity.
    const std::vector<Value>& tv(Mor ctx) const {
        auto it = tv_cache_.find(ctx);
        if (it != tv_cache_.end()) return it->second;
        std::vector<Value> vals = th_.test_values(ctx, b_.max_source, b_.max_bundles);
        std::size_t n = vals.size();
        if (n >= 1 && b_.coeff_max != 1)
            vals.push_back(th_.scalar(BigInt{b_.coeff_max}, vals[0]));
        if (n >= 2) {
            vals.push_back(th_.add(th_.scalar(BigInt{b_.coeff_max}, vals[0]),
                                   th_.scalar(BigInt{b_.coeff_min}, vals[1])));
            vals.push_back(th_.add(vals[0], th_.scalar(BigInt{-1}, vals[1])));
        }
        return tv_cache_.emplace(ctx, std::move(vals)).first->second;
    }

    // quotas: value levels get a small fixed budget when capped, context
    // levels split the remaining cap evenly.
    std::size_t vq() const { return b_.instance_cap ? 3 : SIZE_MAX; }
    std::size_t cq(int ctx_levels, int val_levels) const {
        if (!b_.instance_cap) return SIZE_MAX;
        double per = std::max(1.0, static_cast<double>(b_.instance_cap) /
                                       std::pow(3.0, val_levels));
        return std::max<std::size_t>(
            2, static_cast<std::size_t>(std::ceil(std::pow(per, 1.0 / ctx_levels))));
    }

    std::vector<Mor> pick_mors(const std::vector<Mor>& pool, std::size_t quota,
                               std::uint64_t salt) const {
        std::vector<Mor> out;
        for (auto i : pick(pool.size(), quota, salt, b_.seed)) out.push_back(pool[i]);
        return out;
    }

    std::vector<const Value*> pick_vals(const std::vector<Value>& pool,
                                        std::uint64_t salt) const {
        std::vector<const Value*> out;
        for (auto i : pick(pool.size(), vq(), salt, b_.seed)) out.push_back(&pool[i]);
        return out;
    }

    std::vector<const Square*> pick_squares(const std::vector<std::uint32_t>& pool,
                                            std::size_t quota, std::uint64_t salt) const {
        std::vector<const Square*> out;
        for (auto i : pick(pool.size(), quota, salt, b_.seed)) out.push_back(&squares_[pool[i]]);
        return out;
    }

    std::vector<const Square*> pick_all_squares(std::size_t quota, std::uint64_t salt) const {
        std::vector<const Square*> out;
        for (auto i : pick(squares_.size(), quota, salt, b_.seed)) out.push_back(&squares_[i]);
        return out;
    }

    std::string vs(const Value& v) const {
        if constexpr (std::is_same_v<T, UniversalTheory>) {
            return om_to_dsl(cat_, v);
        } else {
            return th_.render(v);
        }
    }

    const std::vector<std::uint32_t>& by_right(Mor f) const {
        static const std::vector<std::uint32_t> empty;
        auto it = sq_by_right_.find(f);
        return it == sq_by_right_.end() ? empty : it->second;
    }
    const std::vector<std::uint32_t>& by_bottom(Mor f) const {
        static const std::vector<std::uint32_t> empty;
        auto it = sq_by_bottom_.find(f);
        return it == sq_by_bottom_.end() ? empty : it->second;
    }

    const T& th_;
    const Category& cat_;
    const FiberedCategory* fc_;
    Bounds b_;
    std::vector<Mor> mors_;
    std::vector<std::vector<Mor>> from_;
    std::vector<Square> squares_;
    std::map<Mor, std::vector<std::uint32_t>> sq_by_right_, sq_by_bottom_;
    mutable std::map<Mor, std::vector<Value>> tv_cache_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// (B-1)..(B-7), units, commutativity and the canonical-orientation laws,
// swept exhaustively within bounds over the theory's test values.
// ---------------------------------------------------------------------------
template <Theory T>
std::vector<AxiomResult> check_bivariant_axioms(const T& th, const Bounds& b) {
    detail::Checker<T> C(th, b);
    const Category& cat = C.cat_;
    std::vector<AxiomResult> out;

    {  // B-1
        AxiomResult& r = out.emplace_back();
        r.tag = "B-1";
        r.name = "product is associative";
        r.formula = "(a.b).c = a.(b.c)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(3, 3);
        for (Mor f : C.pick_mors(C.mors_, q, 0x11)) {
            if (sw.done()) break;
            for (Mor g : C.pick_mors(C.from_[cat.dst(f)], q, 0x12 ^ f)) {
                if (sw.done()) break;
                for (Mor h : C.pick_mors(C.from_[cat.dst(g)], q, 0x13 ^ g)) {
                    if (sw.done()) break;
                    for (auto* a : C.pick_vals(C.tv(f), 0x14)) {
                        if (sw.done()) break;
                        for (auto* bb : C.pick_vals(C.tv(g), 0x15)) {
                            if (sw.done()) break;
                            for (auto* c : C.pick_vals(C.tv(h), 0x16)) {
                                sw.run(
                                    [&] {
                                        return th.equal(
                                            th.product(th.product(*a, *bb), *c),
                                            th.product(*a, th.product(*bb, *c)));
                                    },
                                    [&] {
                                        return "prod(prod(" + C.vs(*a) + ", " + C.vs(*bb) +
                                               "), " + C.vs(*c) + ") != prod(" + C.vs(*a) +
                                               ", prod(" + C.vs(*bb) + ", " + C.vs(*c) + "))";
                                    });
                                if (sw.done()) break;
                            }
                        }
                    }
                }
            }
        }
    }

    {  // B-2
        AxiomResult& r = out.emplace_back();
        r.tag = "B-2";
        r.name = "pushforward is functorial";
        r.formula = "(g.f)_* a = g_*(f_* a); id_* a = a";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(3, 1);
        for (Mor f : C.pick_mors(C.mors_, q, 0x21)) {
            if (sw.done()) break;
            if (!cat.confined(f)) continue;
            for (Mor g : C.pick_mors(C.from_[cat.dst(f)], q, 0x22 ^ f)) {
                if (sw.done()) break;
                if (!cat.confined(g)) continue;
                Mor fg = cat.compose(f, g);
                for (Mor h : C.pick_mors(C.from_[cat.dst(g)], q, 0x23 ^ g)) {
                    if (sw.done()) break;
                    Mor gh = cat.compose(g, h);
                    Mor ctx = cat.compose(f, gh);
                    for (auto* a : C.pick_vals(C.tv(ctx), 0x24)) {
                        sw.run(
                            [&] {
                                return th.equal(th.pushforward(fg, h, *a),
                                                th.pushforward(g, h, th.pushforward(f, gh, *a)));
                            },
                            [&] {
                                return "push(" + cat.morphism_id(fg) + ", " + C.vs(*a) +
                                       ") != push(" + cat.morphism_id(g) + ", push(" +
                                       cat.morphism_id(f) + ", " + C.vs(*a) + "))";
                            });
                        if (sw.done()) break;
                    }
                }
            }
        }
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 1), 0x25)) {
            if (sw.done()) break;
            Mor e = cat.identity(cat.src(f));
            for (auto* a : C.pick_vals(C.tv(f), 0x26)) {
                sw.run([&] { return th.equal(th.pushforward(e, f, *a), *a); },
                       [&] { return "push(" + cat.morphism_id(e) + ", " + C.vs(*a) + ") != " +
                                    C.vs(*a); });
                if (sw.done()) break;
            }
        }
    }

    {  // B-3
        AxiomResult& r = out.emplace_back();
        r.tag = "B-3";
        r.name = "pullback is functorial";
        r.formula = "(g.h)^* a = h^*(g^* a); id^* a = a";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 1);
        for (auto* s1 : C.pick_all_squares(q, 0x31)) {
            if (sw.done()) break;
            for (auto* s2 : C.pick_squares(C.by_right(s1->left), q, 0x32 ^ s1->bottom)) {
                if (sw.done()) break;
                Square outer{cat.compose(s2->top, s1->top), s2->left, s1->right,
                             cat.compose(s2->bottom, s1->bottom)};
                for (auto* a : C.pick_vals(C.tv(s1->right), 0x33)) {
                    sw.run(
                        [&] {
                            return th.equal(th.pullback(*s2, th.pullback(*s1, *a)),
                                            th.pullback(outer, *a));
                        },
                        [&] {
                            return "pull(" + cat.morphism_id(s2->bottom) + ", pull(" +
                                   cat.morphism_id(s1->bottom) + ", " + C.vs(*a) +
                                   ")) != pull(" + cat.morphism_id(outer.bottom) + ", " +
                                   C.vs(*a) + ")";
                        });
                    if (sw.done()) break;
                }
            }
        }
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 1), 0x34)) {
            if (sw.done()) break;
            Square idsq{cat.identity(cat.src(f)), f, f, cat.identity(cat.dst(f))};
            for (auto* a : C.pick_vals(C.tv(f), 0x35)) {
                sw.run([&] { return th.equal(th.pullback(idsq, *a), *a); },
                       [&] { return "pull(identity square, " + C.vs(*a) + ") != " + C.vs(*a); });
                if (sw.done()) break;
            }
        }
    }

    {  // B-4
        AxiomResult& r = out.emplace_back();
        r.tag = "B-4";
        r.name = "product and pushforward commute";
        r.formula = "f_*(a.b) = (f_* a).b";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(3, 2);
        for (Mor f : C.pick_mors(C.mors_, q, 0x41)) {
            if (sw.done()) break;
            if (!cat.confined(f)) continue;
            for (Mor g : C.pick_mors(C.from_[cat.dst(f)], q, 0x42 ^ f)) {
                if (sw.done()) break;
                Mor fg = cat.compose(f, g);
                for (Mor h : C.pick_mors(C.from_[cat.dst(g)], q, 0x43 ^ g)) {
                    if (sw.done()) break;
                    Mor gh = cat.compose(g, h);
                    for (auto* a : C.pick_vals(C.tv(fg), 0x44)) {
                        if (sw.done()) break;
                        for (auto* bb : C.pick_vals(C.tv(h), 0x45)) {
                            sw.run(
                                [&] {
                                    return th.equal(
                                        th.pushforward(f, gh, th.product(*a, *bb)),
                                        th.product(th.pushforward(f, g, *a), *bb));
                                },
                                [&] {
                                    return "push(" + cat.morphism_id(f) + ", prod(" + C.vs(*a) +
                                           ", " + C.vs(*bb) + ")) != prod(push(" +
                                           cat.morphism_id(f) + ", " + C.vs(*a) + "), " +
                                           C.vs(*bb) + ")";
                                });
                            if (sw.done()) break;
                        }
                    }
                }
            }
        }
    }

    {  // B-5
        AxiomResult& r = out.emplace_back();
        r.tag = "B-5";
        r.name = "product and pullback commute";
        r.formula = "h^*(a.b) = h''^*(a) . h'^*(b)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 2);
        for (auto* lo : C.pick_all_squares(q, 0x51)) {
            if (sw.done()) break;
            for (auto* up : C.pick_squares(C.by_bottom(lo->top), q, 0x52 ^ lo->right)) {
                if (sw.done()) break;
                Mor f = up->right, g = lo->right;
                Square outer{up->top, cat.compose(up->left, lo->left), cat.compose(f, g),
                             lo->bottom};
                for (auto* a : C.pick_vals(C.tv(f), 0x53)) {
                    if (sw.done()) break;
                    for (auto* bb : C.pick_vals(C.tv(g), 0x54)) {
                        sw.run(
                            [&] {
                                return th.equal(th.pullback(outer, th.product(*a, *bb)),
                                                th.product(th.pullback(*up, *a),
                                                           th.pullback(*lo, *bb)));
                            },
                            [&] {
                                return "pull(" + cat.morphism_id(lo->bottom) + ", prod(" +
                                       C.vs(*a) + ", " + C.vs(*bb) + ")) != prod(pull(" +
                                       cat.morphism_id(up->bottom) + ", " + C.vs(*a) +
                                       "), pull(" + cat.morphism_id(lo->bottom) + ", " +
                                       C.vs(*bb) + "))";
                            });
                        if (sw.done()) break;
                    }
                }
            }
        }
    }

    {  // B-6
        AxiomResult& r = out.emplace_back();
        r.tag = "B-6";
        r.name = "pushforward and pullback commute";
        r.formula = "g^*(h_* a) = h'_*(g''^* a)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 1);
        for (auto* lo : C.pick_all_squares(q, 0x61)) {
            if (sw.done()) break;
            for (auto* up : C.pick_squares(C.by_bottom(lo->top), q, 0x62 ^ lo->right)) {
                if (sw.done()) break;
                Mor h = up->right;
                if (!cat.confined(h)) continue;
                Mor f = lo->right;
                Mor fh = cat.compose(h, f);
                Square outer{up->top, cat.compose(up->left, lo->left), fh, lo->bottom};
                for (auto* a : C.pick_vals(C.tv(fh), 0x63)) {
                    sw.run(
                        [&] {
                            return th.equal(
                                th.pushforward(up->left, lo->left, th.pullback(outer, *a)),
                                th.pullback(*lo, th.pushforward(h, f, *a)));
                        },
                        [&] {
                            return "push(" + cat.morphism_id(up->left) + ", pull(" +
                                   cat.morphism_id(lo->bottom) + ", " + C.vs(*a) +
                                   ")) != pull(" + cat.morphism_id(lo->bottom) + ", push(" +
                                   cat.morphism_id(h) + ", " + C.vs(*a) + "))";
                        });
                    if (sw.done()) break;
                }
            }
        }
    }

    {  // B-7
        AxiomResult& r = out.emplace_back();
        r.tag = "B-7";
        r.name = "projection formula";
        r.formula = "k''_*(k^*(a).b) = a.k_*(b)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 2);
        for (auto* sq : C.pick_all_squares(q, 0x71)) {
            if (sw.done()) break;
            Mor k = sq->bottom, m = sq->right;
            if (!cat.confined(k)) continue;
            for (Mor np : C.pick_mors(C.from_[cat.dst(m)], q, 0x72 ^ k)) {
                if (sw.done()) break;
                Mor nk = cat.compose(k, np);
                Mor nm = cat.compose(m, np);
                for (auto* a : C.pick_vals(C.tv(m), 0x73)) {
                    if (sw.done()) break;
                    for (auto* bb : C.pick_vals(C.tv(nk), 0x74)) {
                        sw.run(
                            [&] {
                                return th.equal(
                                    th.pushforward(sq->top, nm,
                                                   th.product(th.pullback(*sq, *a), *bb)),
                                    th.product(*a, th.pushforward(k, np, *bb)));
                            },
                            [&] {
                                return "push(" + cat.morphism_id(sq->top) + ", prod(pull(" +
                                       cat.morphism_id(k) + ", " + C.vs(*a) + "), " + C.vs(*bb) +
                                       ")) != prod(" + C.vs(*a) + ", push(" +
                                       cat.morphism_id(k) + ", " + C.vs(*bb) + "))";
                            });
                        if (sw.done()) break;
                    }
                }
            }
        }
    }

    {  // units
        AxiomResult& r = out.emplace_back();
        r.tag = "units";
        r.name = "units are neutral and stable";
        r.formula = "a.1 = a; 1.b = b; g^* 1 = 1";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(1, 1);
        for (Mor f : C.pick_mors(C.mors_, q, 0x81)) {
            if (sw.done()) break;
            for (auto* a : C.pick_vals(C.tv(f), 0x82)) {
                sw.run([&] { return th.equal(th.product(*a, th.unit(cat.dst(f))), *a); },
                       [&] { return "prod(" + C.vs(*a) + ", unit(" +
                                    cat.object_id(cat.dst(f)) + ")) != " + C.vs(*a); });
                if (sw.done()) break;
                sw.run([&] { return th.equal(th.product(th.unit(cat.src(f)), *a), *a); },
                       [&] { return "prod(unit(" + cat.object_id(cat.src(f)) + "), " + C.vs(*a) +
                                    ") != " + C.vs(*a); });
                if (sw.done()) break;
            }
            if (sw.done()) break;
            Square usq{f, cat.identity(cat.src(f)), cat.identity(cat.dst(f)), f};
            sw.run(
                [&] {
                    return th.equal(th.pullback(usq, th.unit(cat.dst(f))),
                                    th.unit(cat.src(f)));
                },
                [&] {
                    return "pull(" + cat.morphism_id(f) + ", unit(" +
                           cat.object_id(cat.dst(f)) + ")) != unit(" +
                           cat.object_id(cat.src(f)) + ")";
                });
        }
    }

    {  // commutativity
        AxiomResult& r = out.emplace_back();
        r.tag = "commutativity";
        r.name = "commutativity";
        r.formula = "g^*(a).b = f^*(b).a";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(1, 2);
        for (auto* sq : C.pick_all_squares(q, 0x91)) {
            if (sw.done()) break;
            Square t{sq->left, sq->top, sq->bottom, sq->right};
            for (auto* a : C.pick_vals(C.tv(sq->right), 0x92)) {
                if (sw.done()) break;
                for (auto* bb : C.pick_vals(C.tv(sq->bottom), 0x93)) {
                    sw.run(
                        [&] {
                            return th.equal(th.product(th.pullback(*sq, *a), *bb),
                                            th.product(th.pullback(t, *bb), *a));
                        },
                        [&] {
                            return "prod(pull(" + cat.morphism_id(sq->bottom) + ", " + C.vs(*a) +
                                   "), " + C.vs(*bb) + ") != prod(pull(" +
                                   cat.morphism_id(sq->right) + ", " + C.vs(*bb) + "), " +
                                   C.vs(*a) + ")";
                        });
                    if (sw.done()) break;
                }
            }
        }
    }

    {  // theta laws
        AxiomResult& r = out.emplace_back();
        r.tag = "theta";
        r.name = "nice canonical orientation";
        r.formula = "theta(g.f) = theta(f).theta(g); theta(id) = 1; theta(f') = g^* theta(f)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 1);
        for (Mor f : C.pick_mors(C.mors_, q, 0xa1)) {
            if (sw.done()) break;
            if (!cat.specialized(f)) continue;
            for (Mor g : C.pick_mors(C.from_[cat.dst(f)], q, 0xa2 ^ f)) {
                if (!cat.specialized(g)) continue;
                sw.run(
                    [&] {
                        return th.equal(th.theta(cat.compose(f, g)),
                                        th.product(th.theta(f), th.theta(g)));
                    },
                    [&] {
                        return "theta(" + cat.morphism_id(cat.compose(f, g)) +
                               ") != prod(theta(" + cat.morphism_id(f) + "), theta(" +
                               cat.morphism_id(g) + "))";
                    });
                if (sw.done()) break;
            }
        }
        for (Obj x = 0; x < cat.object_count() && !sw.done(); ++x) {
            sw.run([&] { return th.equal(th.theta(cat.identity(x)), th.unit(x)); },
                   [&] { return "theta(id_" + cat.object_id(x) + ") != unit(" +
                                cat.object_id(x) + ")"; });
        }
        for (auto* sq : C.pick_all_squares(C.cq(1, 1), 0xa3)) {
            if (sw.done()) break;
            if (!cat.specialized(sq->right)) continue;
            sw.run(
                [&] { return th.equal(th.theta(sq->left), th.pullback(*sq, th.theta(sq->right))); },
                [&] {
                    return "theta(" + cat.morphism_id(sq->left) + ") != pull(" +
                           cat.morphism_id(sq->bottom) + ", theta(" +
                           cat.morphism_id(sq->right) + "))";
                });
        }
    }

    return out;
}

// ---------------------------------------------------------------------------
// (O-1)..(O-5) and the observed orientation identities.
// ---------------------------------------------------------------------------
template <Theory T>
std::vector<AxiomResult> check_orientation_axioms(const T& th, const Bounds& b) {
    detail::Checker<T> C(th, b);
    const Category& cat = C.cat_;
    const FiberedCategory* fc = th.fibered();
    std::vector<AxiomResult> out;
    if (!th.has_phi() || !fc) {
        AxiomResult& r = out.emplace_back();
        r.tag = "orientation";
        r.name = "orientation axioms";
        r.formula = "(O-1)..(O-5)";
        r.not_applicable = true;
        return out;
    }

    auto labels_of = [&](Obj x, std::uint64_t salt) {
        std::vector<Label> ls;
        for (auto i : detail::pick(fc->label_count(x), C.vq(), salt, b.seed))
            ls.push_back(static_cast<Label>(i));
        return ls;
    };

    {  // O-1
        AxiomResult& r = out.emplace_back();
        r.tag = "O-1";
        r.name = "operator respects label classes";
        r.formula = "L ~ L' => phi(L) = phi(L')";
        detail::Sweep sw(r, b);
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 2), 0xb1)) {
            if (sw.done()) break;
            Obj x = cat.src(f);
            for (Label l : labels_of(x, 0xb2)) {
                if (sw.done()) break;
                for (auto* a : C.pick_vals(C.tv(f), 0xb3)) {
                    sw.run(
                        [&] {
                            return th.equal(th.phi(l, *a), th.phi(l, th.add(*a, th.zero(f))));
                        },
                        [&] {
                            return "orient(" + fc->token(x, l) + ", " + C.vs(*a) +
                                   ") is not well-defined (two evaluations differ)";
                        });
                    if (sw.done()) break;
                }
            }
        }
    }

    {  // O-2
        AxiomResult& r = out.emplace_back();
        r.tag = "O-2";
        r.name = "operators commute";
        r.formula = "phi(L) phi(L') = phi(L') phi(L)";
        detail::Sweep sw(r, b);
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 3), 0xb4)) {
            if (sw.done()) break;
            Obj x = cat.src(f);
            for (Label l1 : labels_of(x, 0xb5)) {
                if (sw.done()) break;
                for (Label l2 : labels_of(x, 0xb6)) {
                    if (sw.done()) break;
                    for (auto* a : C.pick_vals(C.tv(f), 0xb7)) {
                        sw.run(
                            [&] {
                                return th.equal(th.phi(l1, th.phi(l2, *a)),
                                                th.phi(l2, th.phi(l1, *a)));
                            },
                            [&] {
                                return "orient(" + fc->token(x, l1) + ", orient(" +
                                       fc->token(x, l2) + ", " + C.vs(*a) +
                                       ")) != the reverse order";
                            });
                        if (sw.done()) break;
                    }
                }
            }
        }
    }

    {  // O-3
        AxiomResult& r = out.emplace_back();
        r.tag = "O-3";
        r.name = "compatibility with product";
        r.formula = "phi(L)(a.b) = phi(L)(a).b; phi(f^*M)(a.b) = a.phi(M)(b)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 3);
        for (Mor f : C.pick_mors(C.mors_, q, 0xb8)) {
            if (sw.done()) break;
            Obj x = cat.src(f);
            Obj y = cat.dst(f);
            for (Mor g : C.pick_mors(C.from_[y], q, 0xb9 ^ f)) {
                if (sw.done()) break;
                for (auto* a : C.pick_vals(C.tv(f), 0xba)) {
                    if (sw.done()) break;
                    for (auto* bb : C.pick_vals(C.tv(g), 0xbb)) {
                        if (sw.done()) break;
                        for (Label l : labels_of(x, 0xbc)) {
                            sw.run(
                                [&] {
                                    return th.equal(th.phi(l, th.product(*a, *bb)),
                                                    th.product(th.phi(l, *a), *bb));
                                },
                                [&] {
                                    return "orient(" + fc->token(x, l) + ", prod(" + C.vs(*a) +
                                           ", " + C.vs(*bb) + ")) != prod(orient(" +
                                           fc->token(x, l) + ", " + C.vs(*a) + "), " +
                                           C.vs(*bb) + ")";
                                });
                            if (sw.done()) break;
                        }
                        for (Label m : labels_of(y, 0xbd)) {
                            if (sw.done()) break;
                            Label pulled = fc->pull(f, m);
                            sw.run(
                                [&] {
                                    return th.equal(th.phi(pulled, th.product(*a, *bb)),
                                                    th.product(*a, th.phi(m, *bb)));
                                },
                                [&] {
                                    return "orient(" + fc->token(x, pulled) + ", prod(" +
                                           C.vs(*a) + ", " + C.vs(*bb) + ")) != prod(" +
                                           C.vs(*a) + ", orient(" + fc->token(y, m) + ", " +
                                           C.vs(*bb) + "))";
                                });
                        }
                    }
                }
            }
        }
    }

    {  // O-4
        AxiomResult& r = out.emplace_back();
        r.tag = "O-4";
        r.name = "compatibility with pushforward";
        r.formula = "f_*(phi(f^*M)(a)) = phi(M)(f_* a)";
        detail::Sweep sw(r, b);
        std::size_t q = C.cq(2, 2);
        for (Mor f : C.pick_mors(C.mors_, q, 0xc1)) {
            if (sw.done()) break;
            if (!cat.confined(f)) continue;
            Obj y = cat.dst(f);
            for (Mor g : C.pick_mors(C.from_[y], q, 0xc2 ^ f)) {
                if (sw.done()) break;
                Mor ctx = cat.compose(f, g);
                for (auto* a : C.pick_vals(C.tv(ctx), 0xc3)) {
                    if (sw.done()) break;
                    for (Label m : labels_of(y, 0xc4)) {
                        Label pulled = fc->pull(f, m);
                        sw.run(
                            [&] {
                                return th.equal(th.pushforward(f, g, th.phi(pulled, *a)),
                                                th.phi(m, th.pushforward(f, g, *a)));
                            },
                            [&] {
                                return "push(" + cat.morphism_id(f) + ", orient(" +
                                       fc->token(cat.src(f), pulled) + ", " + C.vs(*a) +
                                       ")) != orient(" + fc->token(y, m) + ", push(" +
                                       cat.morphism_id(f) + ", " + C.vs(*a) + "))";
                            });
                        if (sw.done()) break;
                    }
                }
            }
        }
    }

    {  // O-5
        AxiomResult& r = out.emplace_back();
        r.tag = "O-5";
        r.name = "compatibility with pullback";
        r.formula = "g^*(phi(L)(a)) = phi(g'^*L)(g^* a)";
        detail::Sweep sw(r, b);
        for (auto* sq : C.pick_all_squares(C.cq(1, 2), 0xc5)) {
            if (sw.done()) break;
            Obj x = cat.src(sq->right);
            for (Label l : labels_of(x, 0xc6)) {
                if (sw.done()) break;
                Label pulled = fc->pull(sq->top, l);
                for (auto* a : C.pick_vals(C.tv(sq->right), 0xc7)) {
                    sw.run(
                        [&] {
                            return th.equal(th.pullback(*sq, th.phi(l, *a)),
                                            th.phi(pulled, th.pullback(*sq, *a)));
                        },
                        [&] {
                            return "pull(" + cat.morphism_id(sq->bottom) + ", orient(" +
                                   fc->token(x, l) + ", " + C.vs(*a) + ")) != orient(" +
                                   fc->token(cat.src(sq->top), pulled) + ", pull(" +
                                   cat.morphism_id(sq->bottom) + ", " + C.vs(*a) + "))";
                        });
                    if (sw.done()) break;
                }
            }
        }
    }

    {  // Observation (*): phi(L) is the product with the class of L
        AxiomResult& r = out.emplace_back();
        r.tag = "obs-*";
        r.name = "operator is product with the label class";
        r.formula = "phi(L)(a) = phi(L)(1_X).a";
        detail::Sweep sw(r, b);
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 2), 0xd1)) {
            if (sw.done()) break;
            Obj x = cat.src(f);
            for (Label l : labels_of(x, 0xd2)) {
                if (sw.done()) break;
                for (auto* a : C.pick_vals(C.tv(f), 0xd3)) {
                    sw.run(
                        [&] {
                            return th.equal(th.phi(l, *a),
                                            th.product(th.phi(l, th.unit(x)), *a));
                        },
                        [&] {
                            return "orient(" + fc->token(x, l) + ", " + C.vs(*a) +
                                   ") != prod(orient(" + fc->token(x, l) + ", unit(" +
                                   cat.object_id(x) + ")), " + C.vs(*a) + ")";
                        });
                    if (sw.done()) break;
                }
            }
        }
    }

    if constexpr (std::is_same_v<T, UniversalTheory>) {
        // Observation (**): every generator decomposes through its source.
        AxiomResult& r = out.emplace_back();
        r.tag = "obs-**";
        r.name = "generators decompose through their source";
        r.formula = "[V -h-> X; Ls] = h_*(phi(L1)...phi(Lr)([V -id-> V]))";
        detail::Sweep sw(r, b);
        for (Mor f : C.pick_mors(C.mors_, C.cq(1, 1), 0xd4)) {
            if (sw.done()) break;
            for (const CycleKey& k : th.generators(f, b.max_source, b.max_bundles)) {
                if (sw.done()) break;
                sw.run(
                    [&] {
                        Mor fh = cat.compose(k.h, f);
                        typename T::Value v = th.theta(fh);
                        for (Label l : k.bundles) v = th.phi(l, v);
                        return th.equal(th.pushforward(k.h, f, v),
                                        OMValue{f, OMElement::generator(k)});
                    },
                    [&] { return "decomposition of " + k.render() + " over " +
                                 cat.morphism_id(f) + " disagrees with the generator"; });
            }
        }
    }

    return out;
}

// ---------------------------------------------------------------------------
// The universal transformation into `target`: operation preservation,
// normalization, orientation preservation, independence of the choice of
// representative, and agreement of the two evaluation routes.
// ---------------------------------------------------------------------------
template <Theory T>
std::vector<AxiomResult> check_grothendieck(const UniversalTheory& om, const T& target,
                                            const Bounds& b);

// ---------------------------------------------------------------------------
// Additivity over declared coproducts.
// ---------------------------------------------------------------------------
inline std::vector<AxiomResult> check_additivity(const UniversalTheory& om, const Bounds& b);

}  // namespace obt

#include "obt/suite_impl.hpp"
