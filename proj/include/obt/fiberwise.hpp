#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obt/bigint.hpp"
#include "obt/category.hpp"
#include "obt/errors.hpp"

namespace obt {

// Integer-valued function on the carrier of the source of its context.
struct FWValue {
    Mor ctx = kNone;
    std::vector<long long> values;  // indexed by the carrier of src(ctx)

    friend bool operator==(const FWValue&, const FWValue&) = default;
};

// The built-in target theory on categories with declared carriers: a value
// over X -f-> Y is an integer function on the carrier of X. The product is
// pointwise through f, pushforward sums over fibers, pullback precomposes,
// theta is the constant 1 and phi multiplies by the weight a label encodes
// (token "w<v1>_<v2>...", one value per carrier element).
class FiberwiseTheory {
  public:
    using Value = FWValue;

    FiberwiseTheory(const Category& cat, const FiberedCategory* fc) : cat_(&cat), fc_(fc) {
        if (!cat.has_carriers())
            throw Error("fiberwise theory requires a category with declared carriers");
        if (fc_) parse_weights();
    }

    const Category& category() const { return *cat_; }
    const FiberedCategory* fibered() const { return fc_; }
    std::string name() const { return "fiberwise"; }
    bool has_phi() const { return fc_ != nullptr; }

    Value zero(Mor ctx) const { return Value{ctx, std::vector<long long>(card(ctx), 0)}; }

    Value add(const Value& a, const Value& b) const {
        require_ctx(a, b.ctx);
        Value r = a;
        for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
        return r;
    }

    Value scalar(const BigInt& n, const Value& a) const {
        long long k = n.to_ll();
        Value r = a;
        for (auto& v : r.values) v *= k;
        return r;
    }

    bool equal(const Value& a, const Value& b) const { return a == b; }

    std::string render(const Value& a) const {
        const auto& names = cat_->carriers().elems[cat_->src(a.ctx)];
        std::string out = "(";
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            if (i) out += ", ";
            out += names[i] + "↦" + std::to_string(a.values[i]);
        }
        out += ") over " + cat_->morphism_id(a.ctx);
        return out;
    }

    Value unit(Obj x) const { return theta(cat_->identity(x)); }

    Value theta(Mor f) const {
        if (!cat_->specialized(f))
            throw NotSpecialized("theta: " + cat_->morphism_id(f) + " is not specialized");
        return Value{f, std::vector<long long>(cat_->carriers().elems[cat_->src(f)].size(), 1)};
    }

    // (a . b)(x) = a(x) * b(f(x)) for a over X -f-> Y, b over Y -g-> Z.
    Value product(const Value& a, const Value& b) const {
        Mor f = a.ctx;
        Mor fg = cat_->compose(f, b.ctx);
        const auto& fmap = cat_->carriers().map[f];
        Value r{fg, a.values};
        for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] *= b.values[fmap[i]];
        return r;
    }

    // (f_* a)(y) = sum of a over the fiber of f at y.
    Value pushforward(Mor f, Mor g, const Value& a) const {
        if (!cat_->confined(f))
            throw NotConfined("pushforward: " + cat_->morphism_id(f) + " is not confined");
        if (cat_->compose(f, g) != a.ctx)
            throw ContextError("pushforward: operand context does not factor as g . f");
        const auto& fmap = cat_->carriers().map[f];
        Value r = zero(g);
        for (std::size_t i = 0; i < fmap.size(); ++i) r.values[fmap[i]] += a.values[i];
        return r;
    }

    // (g^* a)(x') = a(top(x')).
    Value pullback(const Square& sq, const Value& a) const {
        if (a.ctx != sq.right)
            throw ContextError("pullback: operand context is not the right vertical");
        if (!cat_->is_independent(sq))
            throw NotIndependent("pullback: square is not independent");
        const auto& tmap = cat_->carriers().map[sq.top];
        Value r{sq.left, std::vector<long long>(tmap.size(), 0)};
        for (std::size_t i = 0; i < tmap.size(); ++i) r.values[i] = a.values[tmap[i]];
        return r;
    }

    // phi(w)(a)(x) = w(x) * a(x).
    Value phi(Label l, const Value& a) const {
        if (!fc_) throw MissingOrientationData("no fibered layer loaded");
        Obj x = cat_->src(a.ctx);
        const auto& w = weight(x, l);
        Value r = a;
        for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] *= w[i];
        return r;
    }

    const std::vector<long long>& weight(Obj x, Label l) const {
        if (l >= weights_[x].size() || !parsed_[x][l])
            throw UnknownLabel("label " + (fc_ && l < fc_->label_count(x)
                                               ? fc_->token(x, l)
                                               : std::string("<out of range>")) +
                               " over " + cat_->object_id(x) + " does not encode a weight");
        return weights_[x][l];
    }

    std::vector<Value> test_values(Mor ctx, int /*max_source*/, int /*max_bundles*/) const {
        std::size_t n = card(ctx);
        std::vector<Value> out;
        Value ones{ctx, std::vector<long long>(n, 1)};
        out.push_back(ones);
        if (n > 0) {
            Value ramp{ctx, {}};
            Value alt{ctx, {}};
            for (std::size_t i = 0; i < n; ++i) {
                ramp.values.push_back(static_cast<long long>(i) + 1);
                alt.values.push_back(i % 2 == 0 ? 1 : -1);
            }
            out.push_back(std::move(ramp));
            out.push_back(std::move(alt));
        }
        return out;
    }

  private:
    std::size_t card(Mor ctx) const { return cat_->carriers().elems[cat_->src(ctx)].size(); }

    void require_ctx(const Value& a, Mor ctx) const {
        if (a.ctx != ctx)
            throw ContextError("fiberwise values live over different contexts: " +
                               cat_->morphism_id(a.ctx) + " vs " + cat_->morphism_id(ctx));
    }

    void parse_weights() {
        weights_.resize(cat_->object_count());
        parsed_.resize(cat_->object_count());
        for (Obj x = 0; x < cat_->object_count(); ++x) {
            std::size_t arity = cat_->carriers().elems[x].size();
            weights_[x].resize(fc_->label_count(x));
            parsed_[x].assign(fc_->label_count(x), false);
            for (Label l = 0; l < fc_->label_count(x); ++l) {
                const std::string& tok = fc_->token(x, l);
                if (tok.empty() || tok[0] != 'w') continue;
                std::vector<long long> vals;
                std::size_t pos = 1;
                bool ok = true;
                while (pos < tok.size()) {
                    std::size_t next = tok.find('_', pos);
                    std::string part = tok.substr(pos, next == std::string::npos
                                                           ? std::string::npos
                                                           : next - pos);
                    try {
                        std::size_t used = 0;
                        vals.push_back(std::stoll(part, &used));
                        ok = ok && used == part.size() && !part.empty();
                    } catch (...) {
                        ok = false;
                    }
                    if (next == std::string::npos) break;
                    pos = next + 1;
                }
                if (ok && vals.size() == arity) {
                    weights_[x][l] = std::move(vals);
                    parsed_[x][l] = true;
                }
            }
        }
    }

    const Category* cat_;
    const FiberedCategory* fc_;
    std::vector<std::vector<std::vector<long long>>> weights_;  // [obj][label] -> values
    std::vector<std::vector<bool>> parsed_;
};

}  // namespace obt
