#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "obt/errors.hpp"
#include "obt/theory.hpp"
#include "obt/transform.hpp"
#include "obt/universal.hpp"

namespace obt {

// Abstract syntax for the expression language:
//
//   expr   := sum
//   sum    := term ((`+`|`-`) term)*
//   term   := [int `*`] atom
//   atom   := `cyc(` morid `;` labellist `)` [`over` morid]
//           | `unit(` objid `)` | `theta(` morid `)`
//           | `prod(` expr `,` expr `)` | `push(` morid `,` expr `)`
//           | `pull(` morid `,` expr `)` | `orient(` label `,` expr `)`
//           | `gamma(` expr `)` | `gysin_pull(` morid `,` expr `)`
//           | `gysin_push(` morid `,` expr `)` | `ext(` expr `,` expr `)`
//           | `fclass(` objid `)`
//
// Contexts are inferred bottom-up; a cyc leaf defaults to the map to the
// final object, or to the identity when a sibling pins its target, and the
// `over` clause settles anything ambiguous.
struct Expr {
    enum class Kind {
        Sum,
        Cyc,
        Unit,
        Theta,
        Prod,
        Push,
        Pull,
        Orient,
        Gamma,
        GysinPull,
        GysinPush,
        Ext,
        Fclass
    };

    Kind kind;
    std::vector<std::unique_ptr<Expr>> children;
    std::vector<BigInt> coeffs;        // Sum: one per child
    std::string id;                    // morid / objid / label
    std::vector<std::string> labels;   // Cyc bundle list
    std::string over;                  // Cyc: optional context id
};

using ExprPtr = std::unique_ptr<Expr>;

namespace detail {

struct Token {
    enum class Kind { Word, LParen, RParen, Comma, Semi, Star, Plus, Minus, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t p = i_;
        if (i_ >= s_.size()) {
            tok_ = {Token::Kind::End, "", p};
            return;
        }
        char c = s_[i_];
        auto punct = [&](Token::Kind k) {
            ++i_;
            tok_ = {k, std::string(1, c), p};
        };
        switch (c) {
            case '(': return punct(Token::Kind::LParen);
            case ')': return punct(Token::Kind::RParen);
            case ',': return punct(Token::Kind::Comma);
            case ';': return punct(Token::Kind::Semi);
            case '*': return punct(Token::Kind::Star);
            case '+': return punct(Token::Kind::Plus);
            case '-': return punct(Token::Kind::Minus);
            default: break;
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            tok_ = {Token::Kind::Word, s_.substr(i_, j - i_), p};
            i_ = j;
            return;
        }
        throw ParseError("unexpected character `" + std::string(1, c) + "` at position " +
                         std::to_string(p));
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token tok_{Token::Kind::End, "", 0};
};

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : lex_(s) {}

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        expect(Token::Kind::End, "end of input");
        return e;
    }

  private:
    [[noreturn]] void fail(const Token& t, const std::string& expected) {
        throw ParseError("at position " + std::to_string(t.pos) + ": expected " + expected +
                         ", found `" + (t.text.empty() ? "<end>" : t.text) + "`");
    }

    Token expect(Token::Kind k, const std::string& what) {
        if (lex_.peek().kind != k) fail(lex_.peek(), what);
        return lex_.next();
    }

    std::string expect_word(const std::string& what) {
        return expect(Token::Kind::Word, what).text;
    }

    ExprPtr parse_sum() {
        auto sum = std::make_unique<Expr>();
        sum->kind = Expr::Kind::Sum;
        bool neg = false;
        while (true) {
            auto [child, coeff] = parse_term();
            sum->coeffs.push_back(neg ? -coeff : coeff);
            sum->children.push_back(std::move(child));
            if (lex_.peek().kind == Token::Kind::Plus) {
                lex_.next();
                neg = false;
            } else if (lex_.peek().kind == Token::Kind::Minus) {
                lex_.next();
                neg = true;
            } else {
                break;
            }
        }
        if (sum->children.size() == 1 && sum->coeffs[0] == BigInt{1})
            return std::move(sum->children[0]);
        return sum;
    }

    std::pair<ExprPtr, BigInt> parse_term() {
        BigInt coeff{1};
        bool neg = false;
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.next();
            neg = true;
        }
        if (lex_.peek().kind == Token::Kind::Word && all_digits(lex_.peek().text)) {
            // A bare numeral is a coefficient only when `*` follows.
            Token num = lex_.next();
            if (lex_.peek().kind == Token::Kind::Star) {
                lex_.next();
                coeff = BigInt::from_string(num.text);
            } else if (lex_.peek().kind == Token::Kind::LParen) {
                fail(num, "an operation name");
            } else {
                fail(lex_.peek(), "`*` after a coefficient");
            }
        } else if (neg) {
            fail(lex_.peek(), "an integer coefficient after `-`");
        }
        if (neg) coeff = -coeff;
        return {parse_atom(), std::move(coeff)};
    }

    ExprPtr parse_atom() {
        Token head = expect(Token::Kind::Word, "an operation name");
        auto node = std::make_unique<Expr>();
        const std::string& op = head.text;
        auto args_open = [&] { expect(Token::Kind::LParen, "`(`"); };
        auto args_close = [&] { expect(Token::Kind::RParen, "`)`"); };

        if (op == "cyc") {
            node->kind = Expr::Kind::Cyc;
            args_open();
            node->id = expect_word("a morphism id");
            expect(Token::Kind::Semi, "`;`");
            if (lex_.peek().kind == Token::Kind::Word) {
                node->labels.push_back(expect_word("a label"));
                while (lex_.peek().kind == Token::Kind::Comma) {
                    lex_.next();
                    node->labels.push_back(expect_word("a label"));
                }
            }
            args_close();
            if (lex_.peek().kind == Token::Kind::Word && lex_.peek().text == "over") {
                lex_.next();
                node->over = expect_word("a morphism id");
            }
            return node;
        }
        auto unary_id = [&](Expr::Kind k) {
            node->kind = k;
            args_open();
            node->id = expect_word("an id");
            args_close();
            return std::move(node);
        };
        auto id_and_expr = [&](Expr::Kind k) {
            node->kind = k;
            args_open();
            node->id = expect_word("an id");
            expect(Token::Kind::Comma, "`,`");
            node->children.push_back(parse_sum());
            args_close();
            return std::move(node);
        };
        auto two_exprs = [&](Expr::Kind k) {
            node->kind = k;
            args_open();
            node->children.push_back(parse_sum());
            expect(Token::Kind::Comma, "`,`");
            node->children.push_back(parse_sum());
            args_close();
            return std::move(node);
        };
        if (op == "unit") return unary_id(Expr::Kind::Unit);
        if (op == "theta") return unary_id(Expr::Kind::Theta);
        if (op == "fclass") return unary_id(Expr::Kind::Fclass);
        if (op == "prod") return two_exprs(Expr::Kind::Prod);
        if (op == "ext") return two_exprs(Expr::Kind::Ext);
        if (op == "push") return id_and_expr(Expr::Kind::Push);
        if (op == "pull") return id_and_expr(Expr::Kind::Pull);
        if (op == "orient") return id_and_expr(Expr::Kind::Orient);
        if (op == "gysin_pull") return id_and_expr(Expr::Kind::GysinPull);
        if (op == "gysin_push") return id_and_expr(Expr::Kind::GysinPush);
        if (op == "gamma") {
            node->kind = Expr::Kind::Gamma;
            args_open();
            node->children.push_back(parse_sum());
            args_close();
            return node;
        }
        fail(head, "an operation name (cyc, unit, theta, prod, push, pull, orient, gamma, "
                   "gysin_pull, gysin_push, ext, fclass)");
    }

    Lexer lex_;
};

}  // namespace detail

inline ExprPtr parse_expression(const std::string& text) { return detail::Parser(text).parse(); }

// Canonical re-rendering of an expression; parse . render . parse is the
// identity on the AST.
inline std::string render_expression(const Expr& e) {
    auto wrap = [](const std::string& op, std::initializer_list<std::string> args) {
        std::string out = op + "(";
        bool first = true;
        for (const auto& a : args) {
            if (!first) out += ", ";
            out += a;
            first = false;
        }
        return out + ")";
    };
    switch (e.kind) {
        case Expr::Kind::Sum: {
            std::string out;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                const BigInt& c = e.coeffs[i];
                std::string term = render_expression(*e.children[i]);
                if (!(c == BigInt{1})) term = c.str() + "*" + term;
                out += i == 0 ? term : " + " + term;
            }
            return out;
        }
        case Expr::Kind::Cyc: {
            std::string labels;
            for (std::size_t i = 0; i < e.labels.size(); ++i) {
                if (i) labels += ",";
                labels += e.labels[i];
            }
            std::string out = "cyc(" + e.id + ";" + labels + ")";
            if (!e.over.empty()) out += " over " + e.over;
            return out;
        }
        case Expr::Kind::Unit: return wrap("unit", {e.id});
        case Expr::Kind::Theta: return wrap("theta", {e.id});
        case Expr::Kind::Fclass: return wrap("fclass", {e.id});
        case Expr::Kind::Prod:
            return wrap("prod", {render_expression(*e.children[0]),
                                 render_expression(*e.children[1])});
        case Expr::Kind::Ext:
            return wrap("ext", {render_expression(*e.children[0]),
                                render_expression(*e.children[1])});
        case Expr::Kind::Push: return wrap("push", {e.id, render_expression(*e.children[0])});
        case Expr::Kind::Pull: return wrap("pull", {e.id, render_expression(*e.children[0])});
        case Expr::Kind::Orient:
            return wrap("orient", {e.id, render_expression(*e.children[0])});
        case Expr::Kind::GysinPull:
            return wrap("gysin_pull", {e.id, render_expression(*e.children[0])});
        case Expr::Kind::GysinPush:
            return wrap("gysin_push", {e.id, render_expression(*e.children[0])});
        case Expr::Kind::Gamma: return wrap("gamma", {render_expression(*e.children[0])});
    }
    throw EvalError("unreachable expression kind");
}

inline bool is_target_level(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Gamma:
        case Expr::Kind::GysinPull:
        case Expr::Kind::GysinPush:
        case Expr::Kind::Ext:
        case Expr::Kind::Fclass: return true;
        case Expr::Kind::Sum: return is_target_level(*e.children[0]);
        default: return false;
    }
}

// Evaluates expressions against the universal theory, mapping through the
// target theory at gamma/gysin/ext/fclass nodes.
template <Theory T>
class Evaluator {
  public:
    Evaluator(const UniversalTheory& om, const T& target) : om_(om), target_(target) {}

    // Rendered canonical form of the whole expression's value.
    std::string evaluate(const Expr& e) const {
        if (is_target_level(e)) return target_.render(eval_target(e));
        return om_.render(eval_om(e, std::nullopt, std::nullopt));
    }

    OMValue eval_om(const Expr& e, std::optional<Mor> forced_ctx,
                    std::optional<Obj> required_dst) const {
        const Category& cat = om_.category();
        switch (e.kind) {
            case Expr::Kind::Cyc: {
                Mor h = resolve_mor(e.id);
                std::vector<Label> bundles;
                const FiberedCategory* fc = om_.fibered();
                for (const auto& tok : e.labels) {
                    if (!fc)
                        throw ResolveError("label `" + tok + "` used but no fibered layer "
                                           "is loaded");
                    auto l = fc->find_label(cat.src(h), tok);
                    if (!l)
                        throw ResolveError("unknown label `" + tok + "` over " +
                                           cat.object_id(cat.src(h)));
                    bundles.push_back(*l);
                }
                Mor ctx = infer_cycle_ctx(h, e.over, forced_ctx, required_dst);
                return om_.make_cycle(h, std::move(bundles), ctx);
            }
            case Expr::Kind::Unit: return om_.unit(resolve_obj(e.id));
            case Expr::Kind::Theta: return om_.theta(resolve_mor(e.id));
            case Expr::Kind::Prod: {
                OMValue rhs = eval_om(*e.children[1], std::nullopt, required_dst);
                OMValue lhs = eval_om(*e.children[0], std::nullopt, cat.src(rhs.ctx));
                if (cat.dst(lhs.ctx) != cat.src(rhs.ctx))
                    throw ContextError("prod: contexts " + cat.morphism_id(lhs.ctx) + " and " +
                                       cat.morphism_id(rhs.ctx) + " do not compose");
                return om_.product(lhs, rhs);
            }
            case Expr::Kind::Push: {
                Mor f = resolve_mor(e.id);
                OMValue v = eval_om(*e.children[0], std::nullopt, required_dst);
                if (cat.src(v.ctx) != cat.src(f))
                    throw ContextError("push: operand context does not start at src(" +
                                       e.id + ")");
                std::vector<Mor> gs;
                for (Mor g : cat.hom(cat.dst(f), cat.dst(v.ctx)))
                    if (cat.compose(f, g) == v.ctx) gs.push_back(g);
                if (gs.empty())
                    throw ContextError("push: context " + cat.morphism_id(v.ctx) +
                                       " does not factor through " + e.id);
                if (gs.size() > 1)
                    throw ContextError("push: factorization of " + cat.morphism_id(v.ctx) +
                                       " through " + e.id + " is ambiguous");
                return om_.pushforward(f, gs[0], v);
            }
            case Expr::Kind::Pull: {
                Mor g = resolve_mor(e.id);
                OMValue v = eval_om(*e.children[0], std::nullopt, std::nullopt);
                if (cat.dst(g) != cat.dst(v.ctx))
                    throw ContextError("pull: `" + e.id + "` does not share a target with the "
                                       "operand context");
                PullbackData pd = cat.fiber_product(Cospan{v.ctx, g});
                Square sq{pd.proj_left, pd.proj_right, v.ctx, g};
                return om_.pullback(sq, v);
            }
            case Expr::Kind::Orient: {
                OMValue v = eval_om(*e.children[0], forced_ctx, required_dst);
                const FiberedCategory* fc = om_.fibered();
                if (!fc) throw ResolveError("orient: no fibered layer is loaded");
                auto l = fc->find_label(cat.src(v.ctx), e.id);
                if (!l)
                    throw ResolveError("unknown label `" + e.id + "` over " +
                                       cat.object_id(cat.src(v.ctx)));
                return om_.phi(*l, v);
            }
            case Expr::Kind::Sum: {
                OMValue acc = om_.scalar(e.coeffs[0],
                                         eval_om(*e.children[0], forced_ctx, required_dst));
                for (std::size_t i = 1; i < e.children.size(); ++i)
                    acc = om_.add(acc, om_.scalar(e.coeffs[i],
                                                  eval_om(*e.children[i], acc.ctx,
                                                          std::nullopt)));
                return acc;
            }
            default:
                throw ContextError("a target-level expression cannot appear where an element "
                                   "of the universal theory is required");
        }
    }

    typename T::Value eval_target(const Expr& e) const {
        switch (e.kind) {
            case Expr::Kind::Gamma:
                return gamma(om_, target_, eval_om(*e.children[0], std::nullopt, std::nullopt));
            case Expr::Kind::Fclass: return fundamental_class(target_, resolve_obj(e.id));
            case Expr::Kind::GysinPull:
                return gysin_pullback(target_, resolve_mor(e.id), eval_target(*e.children[0]));
            case Expr::Kind::GysinPush:
                return gysin_pushforward(target_, resolve_mor(e.id), eval_target(*e.children[0]));
            case Expr::Kind::Ext:
                return exterior_covariant(target_, eval_target(*e.children[0]),
                                          eval_target(*e.children[1]));
            case Expr::Kind::Sum: {
                typename T::Value acc =
                    target_.scalar(e.coeffs[0], eval_target(*e.children[0]));
                for (std::size_t i = 1; i < e.children.size(); ++i) {
                    typename T::Value next =
                        target_.scalar(e.coeffs[i], eval_target(*e.children[i]));
                    if (next.ctx != acc.ctx)
                        throw ContextError("sum: target values live over different contexts");
                    acc = target_.add(acc, next);
                }
                return acc;
            }
            default:
                throw ContextError("expression of the universal theory used where a target "
                                   "value is required (wrap it in gamma(...))");
        }
    }

  private:
    Mor resolve_mor(const std::string& id) const {
        const Category& cat = om_.category();
        if (auto f = cat.find_morphism(id)) return *f;
        // `id_<object>` resolves to the identity even when the document names
        // identities differently.
        if (id.rfind("id_", 0) == 0) {
            if (auto x = cat.find_object(id.substr(3))) return cat.identity(*x);
        }
        throw ResolveError("unknown morphism id `" + id + "`");
    }

    Obj resolve_obj(const std::string& id) const {
        if (auto x = om_.category().find_object(id)) return *x;
        throw ResolveError("unknown object id `" + id + "`");
    }

    Mor infer_cycle_ctx(Mor h, const std::string& over, std::optional<Mor> forced,
                        std::optional<Obj> required_dst) const {
        const Category& cat = om_.category();
        Obj x = cat.dst(h);
        if (!over.empty()) {
            Mor f = resolve_mor(over);
            if (cat.src(f) != x)
                throw ContextError("`over " + over + "` does not start at " + cat.object_id(x));
            return f;
        }
        if (forced) {
            if (cat.src(*forced) != x)
                throw ContextError("cycle over " + cat.object_id(x) +
                                   " cannot live in the required context");
            return *forced;
        }
        if (required_dst) {
            if (*required_dst == x) return cat.identity(x);
            std::vector<Mor> candidates;
            for (Mor f : cat.hom(x, *required_dst))
                if (cat.specialized(cat.compose(h, f))) candidates.push_back(f);
            if (candidates.size() == 1) return candidates[0];
            throw ContextError(candidates.empty()
                                   ? "no admissible context from " + cat.object_id(x) + " to " +
                                         cat.object_id(*required_dst)
                                   : "ambiguous context from " + cat.object_id(x) + " to " +
                                         cat.object_id(*required_dst) +
                                         "; add an `over` clause");
        }
        return cat.terminal_morphism(x);
    }

    const UniversalTheory& om_;
    const T& target_;
};

}  // namespace obt
