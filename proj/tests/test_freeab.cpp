#include <doctest.h>

#include <string>
#include <vector>

#include "obt/free_abelian.hpp"
#include "test_util.hpp"

namespace {

struct Key {
    std::string s;
    bool operator<(const Key& o) const { return s < o.s; }
    bool operator==(const Key& o) const { return s == o.s; }
    std::string render() const { return "[" + s + "]"; }
};

using Elt = obt::FreeAbelian<Key>;
using obt::BigInt;

Elt random_elt(testutil::Rng& rng) {
    std::vector<Elt::Term> terms;
    int n = static_cast<int>(rng.range(0, 4));
    for (int i = 0; i < n; ++i) {
        Key k{std::string(1, static_cast<char>('a' + rng.range(0, 3)))};
        terms.emplace_back(k, BigInt{rng.range(-3, 3)});
    }
    return Elt::normalize(std::move(terms));
}

}  // namespace

TEST_CASE("bigint agrees with native arithmetic on small values") {
    testutil::Rng rng;
    for (int i = 0; i < 2000; ++i) {
        long long a = rng.range(-1000000, 1000000);
        long long b = rng.range(-1000000, 1000000);
        CHECK((BigInt{a} + BigInt{b}).to_ll() == a + b);
        CHECK((BigInt{a} - BigInt{b}).to_ll() == a - b);
        CHECK((BigInt{a} * BigInt{b}).to_ll() == a * b);
        CHECK((BigInt{a} < BigInt{b}) == (a < b));
        CHECK((BigInt{a} == BigInt{b}) == (a == b));
        CHECK(BigInt{a}.str() == std::to_string(a));
        CHECK(BigInt::from_string(std::to_string(a)) == BigInt{a});
    }
}

TEST_CASE("bigint grows past 64 bits without losing exactness") {
    BigInt p{1};
    for (int i = 0; i < 70; ++i) p *= BigInt{2};
    CHECK(p.str() == "1180591620717411303424");  // 2^70
    CHECK((p - p).is_zero());
    CHECK((p * BigInt{-1} + p).is_zero());
    CHECK_THROWS_AS((void)p.to_ll(), obt::Error);
    CHECK(BigInt::from_string("-1180591620717411303424") == -p);
}

TEST_CASE("normalize merges, sorts and drops zeros") {
    Key k{"k"}, j{"j"}, k1{"k1"}, k2{"k2"};
    CHECK(Elt::normalize({{k, BigInt{2}}, {k, BigInt{-2}}}).is_zero());
    Elt sorted = Elt::normalize({{k2, BigInt{1}}, {k1, BigInt{3}}});
    REQUIRE(sorted.term_count() == 2);
    CHECK(sorted.terms()[0].first == k1);
    CHECK(sorted.terms()[1].first == k2);
    Elt merged = Elt::normalize({{k, BigInt{1}}, {k, BigInt{1}}, {j, BigInt{0}}});
    REQUIRE(merged.term_count() == 1);
    CHECK(merged.terms()[0].second == BigInt{2});
}

TEST_CASE("group laws and canonical form") {
    testutil::Rng rng;
    for (int i = 0; i < 500; ++i) {
        Elt x = random_elt(rng), y = random_elt(rng), z = random_elt(rng);
        CHECK(x + Elt{} == x);                       // identity
        CHECK((x + Elt::scalar_mul(BigInt{-1}, x)).is_zero());  // inverses
        CHECK(x + y == y + x);                       // commutativity
        CHECK((x + y) + z == x + (y + z));           // associativity
        long long n = rng.range(-3, 3), m = rng.range(-3, 3);
        CHECK(Elt::scalar_mul(BigInt{n}, x + y) ==
              Elt::scalar_mul(BigInt{n}, x) + Elt::scalar_mul(BigInt{n}, y));
        CHECK(Elt::scalar_mul(BigInt{n + m}, x) ==
              Elt::scalar_mul(BigInt{n}, x) + Elt::scalar_mul(BigInt{m}, x));
        // normalize is idempotent on any canonical element
        std::vector<Elt::Term> terms(x.terms().begin(), x.terms().end());
        CHECK(Elt::normalize(std::move(terms)) == x);
    }
}

TEST_CASE("textual form") {
    CHECK(Elt{}.str() == "0");
    Elt e = Elt::normalize({{Key{"k2"}, BigInt{1}}, {Key{"k1"}, BigInt{3}}});
    CHECK(e.str() == "3*[k1] + 1*[k2]");
    CHECK(Elt::scalar_mul(BigInt{2}, Elt::generator(Key{"k"}, BigInt{3})).str() == "6*[k]");
    CHECK(Elt::normalize({{Key{"k"}, BigInt{-2}}}).str() == "-2*[k]");
}
