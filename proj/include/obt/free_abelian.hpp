#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "obt/bigint.hpp"

namespace obt {

// Free abelian group over a totally ordered key type, kept in canonical form:
// keys strictly increasing, no zero coefficients. Equal elements therefore
// have identical representations and operator== is structural.
//
// Key requirements: operator<, operator==, and a render() -> std::string used
// by the textual form.
template <typename Key>
class FreeAbelian {
  public:
    using Term = std::pair<Key, BigInt>;

    FreeAbelian() = default;

    static FreeAbelian generator(Key k, BigInt c = BigInt{1}) {
        FreeAbelian e;
        if (!c.is_zero()) e.terms_.emplace_back(std::move(k), std::move(c));
        return e;
    }

    // Sums coefficients of equal keys, drops zeros, sorts keys.
    static FreeAbelian normalize(std::vector<Term> pairs) {
        std::sort(pairs.begin(), pairs.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        FreeAbelian e;
        for (auto& t : pairs) {
            if (!e.terms_.empty() && e.terms_.back().first == t.first) {
                e.terms_.back().second += t.second;
                if (e.terms_.back().second.is_zero()) e.terms_.pop_back();
            } else if (!t.second.is_zero()) {
                e.terms_.push_back(std::move(t));
            }
        }
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    friend FreeAbelian operator+(const FreeAbelian& a, const FreeAbelian& b) {
        FreeAbelian r;
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            if (a.terms_[i].first < b.terms_[j].first) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (b.terms_[j].first < a.terms_[i].first) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                BigInt c = a.terms_[i].second + b.terms_[j].second;
                if (!c.is_zero()) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }

    friend FreeAbelian operator-(const FreeAbelian& a) { return scalar_mul(BigInt{-1}, a); }
    friend FreeAbelian operator-(const FreeAbelian& a, const FreeAbelian& b) { return a + (-b); }

    static FreeAbelian scalar_mul(const BigInt& n, const FreeAbelian& a) {
        FreeAbelian r;
        if (n.is_zero()) return r;
        r.terms_.reserve(a.terms_.size());
        for (const auto& t : a.terms_) r.terms_.emplace_back(t.first, n * t.second);
        return r;
    }

    friend bool operator==(const FreeAbelian& a, const FreeAbelian& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const FreeAbelian& a, const FreeAbelian& b) { return !(a == b); }

    // Canonical textual form: `c1*[key1] + c2*[key2] + ...`, `0` when zero.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) out += " + ";
            out += terms_[i].second.str();
            out += "*";
            out += terms_[i].first.render();
        }
        return out;
    }

  private:
    std::vector<Term> terms_;
};

}  // namespace obt
