#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "obt/category.hpp"

namespace obt {

struct Violation {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<Violation> warnings;

    bool ok() const { return violations.empty(); }

    std::string str() const {
        if (violations.empty() && warnings.empty()) return "valid: no violations\n";
        std::string out;
        for (const auto& v : violations) out += "violation [" + v.check + "] " + v.detail + "\n";
        for (const auto& w : warnings) out += "warning [" + w.check + "] " + w.detail + "\n";
        return out;
    }
};

namespace detail {

class Validator {
  public:
    Validator(const Category& cat, const FiberedCategory* fc, ValidationReport& rep)
        : cat_(cat), fc_(fc), rep_(rep) {}

    void run() {
        check_composition();
        check_identities();
        check_final_object();
        check_classes();
        check_pullbacks();
        check_base_change();
        check_squares();
        check_coproducts();
        if (fc_) check_fibered();
    }

  private:
    static constexpr int kMaxPerCheck = 25;

    void report(const std::string& check, const std::string& detail) {
        if (++count_[check] <= kMaxPerCheck) rep_.violations.push_back({check, detail});
        if (count_[check] == kMaxPerCheck + 1)
            rep_.violations.push_back({check, "(further instances suppressed)"});
    }
    void warn(const std::string& check, const std::string& detail) {
        rep_.warnings.push_back({check, detail});
    }

    std::string mid(Mor f) const { return cat_.morphism_id(f); }
    std::string oid(Obj x) const { return cat_.object_id(x); }

    void check_composition() {
        std::size_t m = cat_.morphism_count();
        for (Mor f = 0; f < m; ++f) {
            for (Mor g : cat_.morphisms_from(cat_.dst(f))) {
                Mor fg = cat_.compose_raw(f, g);
                if (fg == kNone) {
                    report("composition-total",
                           "no entry for (" + mid(f) + ", " + mid(g) + ")");
                    continue;
                }
                if (cat_.src(fg) != cat_.src(f) || cat_.dst(fg) != cat_.dst(g))
                    report("composition-typing",
                           "(" + mid(f) + ", " + mid(g) + ") = " + mid(fg) +
                               " has wrong endpoints");
            }
        }
        // Associativity over all composable triples.
        for (Mor f = 0; f < m; ++f) {
            for (Mor g : cat_.morphisms_from(cat_.dst(f))) {
                Mor fg = cat_.compose_raw(f, g);
                if (fg == kNone) continue;
                for (Mor h : cat_.morphisms_from(cat_.dst(g))) {
                    Mor gh = cat_.compose_raw(g, h);
                    if (gh == kNone) continue;
                    if (cat_.compose_raw(fg, h) != cat_.compose_raw(f, gh)) {
                        report("associativity", "witness triple (" + mid(f) + ", " + mid(g) +
                                                    ", " + mid(h) + ")");
                    }
                }
            }
        }
    }

    void check_identities() {
        for (Obj x = 0; x < cat_.object_count(); ++x) {
            Mor e = cat_.identity(x);
            for (Mor f : cat_.morphisms_from(x))
                if (cat_.compose_raw(e, f) != f)
                    report("identity-neutral", "id_" + oid(x) + " not left-neutral for " + mid(f));
            for (Mor f : cat_.morphisms_into(x))
                if (cat_.compose_raw(f, e) != f)
                    report("identity-neutral", "id_" + oid(x) + " not right-neutral for " + mid(f));
        }
    }

    void check_final_object() {
        Obj t = cat_.final_object();
        for (Obj x = 0; x < cat_.object_count(); ++x) {
            std::size_t n = cat_.hom(x, t).size();
            if (n != 1)
                report("final-object", "hom(" + oid(x) + ", " + oid(t) + ") has " +
                                           std::to_string(n) + " morphisms, expected 1");
        }
    }

    void check_classes() {
        auto check_class = [&](const char* name, auto member) {
            for (Obj x = 0; x < cat_.object_count(); ++x)
                if (!member(cat_.identity(x)))
                    report(std::string(name) + "-class",
                           std::string(name) + " class missing identity of " + oid(x));
            for (Mor f = 0; f < cat_.morphism_count(); ++f) {
                if (!member(f)) continue;
                for (Mor g : cat_.morphisms_from(cat_.dst(f))) {
                    if (!member(g)) continue;
                    Mor fg = cat_.compose_raw(f, g);
                    if (fg != kNone && !member(fg))
                        report(std::string(name) + "-class",
                               std::string(name) + " not closed under composition: (" + mid(f) +
                                   ", " + mid(g) + ")");
                }
            }
        };
        check_class("confined", [&](Mor f) { return cat_.confined(f); });
        check_class("specialized", [&](Mor f) { return cat_.specialized(f); });
    }

    void check_pullbacks() {
        std::size_t mor_count = cat_.morphism_count();
        std::vector<std::uint32_t> comp_count(mor_count, 0);
        for (const auto& [key, pd] : cat_.pullback_table()) {
            Mor l = static_cast<Mor>(key >> 32);
            Mor r = static_cast<Mor>(key & 0xffffffffu);
            std::string where = "cospan (" + mid(l) + ", " + mid(r) + ")";
            if (cat_.src(pd.proj_left) != pd.apex || cat_.src(pd.proj_right) != pd.apex ||
                cat_.dst(pd.proj_left) != cat_.src(l) || cat_.dst(pd.proj_right) != cat_.src(r)) {
                report("pullback-typing", where + ": projections have wrong endpoints");
                continue;
            }
            if (cat_.compose_raw(pd.proj_left, l) != cat_.compose_raw(pd.proj_right, r)) {
                report("pullback-commutes", where + ": square does not commute");
                continue;
            }
            if (!universal_property(l, r, pd, where)) continue;
        }
    }

    // Mediator count per cone must be exactly one; checked by comparing the
    // deduplicated mediator-cone set against the commuting-cone count.
    bool universal_property(Mor l, Mor r, const PullbackData& pd, const std::string& where) {
        for (Obj q = 0; q < cat_.object_count(); ++q) {
            cones_.clear();
            for (Mor med : cat_.hom(q, pd.apex))
                cones_.push_back(pack_pair(cat_.compose_raw(med, pd.proj_left),
                                           cat_.compose_raw(med, pd.proj_right)));
            std::sort(cones_.begin(), cones_.end());
            for (std::size_t i = 1; i < cones_.size(); ++i) {
                if (cones_[i] == cones_[i - 1]) {
                    report("pullback-universal-property",
                           where + ": two mediators from " + oid(q) + " induce the same cone");
                    return false;
                }
            }
            // Count commuting cones by bucketing on the composite into the target.
            buckets_.assign(cat_.morphism_count(), 0);
            for (Mor q1 : cat_.hom(q, cat_.src(l))) ++buckets_[cat_.compose_raw(q1, l)];
            std::uint64_t cone_count = 0;
            for (Mor q2 : cat_.hom(q, cat_.src(r))) cone_count += buckets_[cat_.compose_raw(q2, r)];
            if (cone_count != cones_.size()) {
                report("pullback-universal-property",
                       where + ": cones from " + oid(q) + ": " + std::to_string(cone_count) +
                           " commuting, " + std::to_string(cones_.size()) + " mediated");
                return false;
            }
        }
        return true;
    }

    void check_base_change() {
        for (const auto& [key, pd] : cat_.pullback_table()) {
            Mor l = static_cast<Mor>(key >> 32);
            Mor r = static_cast<Mor>(key & 0xffffffffu);
            std::string where = "cospan (" + mid(l) + ", " + mid(r) + ")";
            if (cat_.confined(l) && !cat_.confined(pd.proj_right))
                report("base-change-confined", where + ": pullback of confined " + mid(l) +
                                                   " is not confined");
            if (cat_.confined(r) && !cat_.confined(pd.proj_left))
                report("base-change-confined", where + ": pullback of confined " + mid(r) +
                                                   " is not confined");
            if (cat_.specialized(l) && !cat_.specialized(pd.proj_right))
                report("base-change-specialized", where + ": pullback of specialized " + mid(l) +
                                                      " is not specialized");
            if (cat_.specialized(r) && !cat_.specialized(pd.proj_left))
                report("base-change-specialized", where + ": pullback of specialized " + mid(r) +
                                                      " is not specialized");
        }
    }

    void check_squares() {
        if (cat_.square_mode() == SquareMode::AllFiberSquares) return;
        const auto& squares = cat_.declared_squares();
        auto sq_str = [&](const Square& s) {
            return "(top " + mid(s.top) + ", left " + mid(s.left) + ", right " + mid(s.right) +
                   ", bottom " + mid(s.bottom) + ")";
        };
        for (const auto& s : squares)
            if (!cat_.commutes(s))
                report("independent-square-commutes", "declared square does not commute " +
                                                          sq_str(s));
        // Closure under horizontal and vertical pasting.
        for (const auto& a : squares) {
            for (const auto& b : squares) {
                if (b.right == a.left && cat_.commutes(a) && cat_.commutes(b)) {
                    Square outer{cat_.compose_raw(b.top, a.top), b.left, a.right,
                                 cat_.compose_raw(b.bottom, a.bottom)};
                    if (!cat_.is_independent(outer))
                        report("independent-closure-pasting",
                               "horizontal pasting of " + sq_str(b) + " and " + sq_str(a) +
                                   " is not independent");
                }
                if (b.top == a.bottom && cat_.commutes(a) && cat_.commutes(b)) {
                    Square outer{a.top, cat_.compose_raw(a.left, b.left),
                                 cat_.compose_raw(a.right, b.right), b.bottom};
                    if (!cat_.is_independent(outer))
                        report("independent-closure-pasting",
                               "vertical pasting of " + sq_str(a) + " over " + sq_str(b) +
                                   " is not independent");
                }
            }
        }
        // C-independence: a declared fiber square whose right vertical is
        // confined must be independent; without it the bivariant product is
        // not known to be well-defined over that square.
        for (const auto& [key, pd] : cat_.pullback_table()) {
            Mor l = static_cast<Mor>(key >> 32);
            Mor r = static_cast<Mor>(key & 0xffffffffu);
            Square as_square{pd.proj_left, pd.proj_right, l, r};
            if (cat_.confined(l) && !cat_.is_independent(as_square))
                report("c-independence", "fiber square over cospan (" + mid(l) + ", " + mid(r) +
                                             ") with confined right vertical is not independent");
            Square transpose{pd.proj_right, pd.proj_left, r, l};
            if (cat_.confined(r) && !cat_.is_independent(transpose))
                report("c-independence", "fiber square over cospan (" + mid(r) + ", " + mid(l) +
                                             ") with confined right vertical is not independent");
            if (!cat_.is_independent(as_square) && !cat_.is_independent(transpose))
                warn("square-availability", "declared pullback over cospan (" + mid(l) + ", " +
                                                mid(r) +
                                                ") is not independent in either orientation; "
                                                "pullback operations over it will be rejected");
        }
    }

    void check_coproducts() {
        for (const auto& c : cat_.coproducts()) {
            std::string where = "coproduct (" + oid(c.left) + ", " + oid(c.right) + ")";
            if (cat_.src(c.inj_left) != c.left || cat_.dst(c.inj_left) != c.object ||
                cat_.src(c.inj_right) != c.right || cat_.dst(c.inj_right) != c.object) {
                report("coproduct-typing", where + ": injections have wrong endpoints");
                continue;
            }
            // Dual universal property: unique copairing for every cocone.
            for (Obj q = 0; q < cat_.object_count(); ++q) {
                cones_.clear();
                for (Mor med : cat_.hom(c.object, q))
                    cones_.push_back(pack_pair(cat_.compose_raw(c.inj_left, med),
                                               cat_.compose_raw(c.inj_right, med)));
                std::sort(cones_.begin(), cones_.end());
                bool dup = false;
                for (std::size_t i = 1; i < cones_.size(); ++i) dup |= cones_[i] == cones_[i - 1];
                std::uint64_t want = static_cast<std::uint64_t>(cat_.hom(c.left, q).size()) *
                                     cat_.hom(c.right, q).size();
                if (dup || cones_.size() != want) {
                    report("coproduct-universal-property",
                           where + ": cocones into " + oid(q) + " are not uniquely copaired");
                    break;
                }
            }
        }
    }

    void check_fibered() {
        const auto& fc = *fc_;
        for (Mor f = 0; f < cat_.morphism_count(); ++f) {
            if (!fc.pull_defined(f)) {
                report("fibered-pull-total", "pull map missing or partial for " + mid(f));
                return;
            }
        }
        for (Obj x = 0; x < cat_.object_count(); ++x) {
            Mor e = cat_.identity(x);
            for (Label l = 0; l < fc.label_count(x); ++l)
                if (fc.pull(e, l) != l)
                    report("fibered-identity", "pull(id_" + oid(x) + ", " + fc.token(x, l) +
                                                   ") != " + fc.token(x, l));
        }
        for (Mor f = 0; f < cat_.morphism_count(); ++f) {
            for (Mor g : cat_.morphisms_from(cat_.dst(f))) {
                Mor fg = cat_.compose_raw(f, g);
                if (fg == kNone) continue;
                Obj zt = cat_.dst(g);
                for (Label l = 0; l < fc.label_count(zt); ++l) {
                    if (fc.pull(f, fc.pull(g, l)) != fc.pull(fg, l)) {
                        report("fibered-functorial",
                               "pull(" + mid(f) + ", pull(" + mid(g) + ", " + fc.token(zt, l) +
                                   ")) != pull(" + mid(fg) + ", " + fc.token(zt, l) + ")");
                    }
                }
            }
        }
    }

    const Category& cat_;
    const FiberedCategory* fc_;
    ValidationReport& rep_;
    std::map<std::string, int> count_;
    std::vector<std::uint64_t> cones_;
    std::vector<std::uint32_t> buckets_;
};

}  // namespace detail

// Checks every structural assumption the constructions rely on and reports
// each violation with a concrete witness. Violations are report entries, not
// faults: a loadable document always produces a report.
inline ValidationReport validate(const Category& cat, const FiberedCategory* fc = nullptr) {
    ValidationReport rep;
    detail::Validator(cat, fc, rep).run();
    return rep;
}

}  // namespace obt
