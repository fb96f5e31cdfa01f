#include <doctest.h>

#include <map>
#include <vector>

#include "nilcert/catalog.hpp"
#include "nilcert/pcgroup.hpp"

using namespace nilcert;

namespace {

/* Independent model groups: explicit element tuples with hand-written
 * multiplication, mapped onto the pc normal forms.  Every pc product must
 * match the model product under the bijection. */

// cyc9: a^3 = c means normal form a^{e0} c^{e2}... here gens a, b with a^3 = b.
// Model: Z_9 via value e0 + 3 e1.
int cyc9_value(const Element& x) { return x.e[0] + 3 * x.e[1]; }

// ab_9_3: gens a, b, c with a^3 = c: Z9 x Z3 via (a-part, b-part).
std::pair<int, int> ab93_value(const Element& x) {
    return {x.e[0] + 3 * x.e[2], x.e[1]};
}

// heis3: (i, j, k) with (i,j,k)(i',j',k') = (i+i', j+j', k+k'+j*i') — the
// cocycle follows from [b, a] = c, i.e. b a = a b c.
struct H3 {
    int i, j, k;
    bool operator==(const H3& o) const { return i == o.i && j == o.j && k == o.k; }
    bool operator<(const H3& o) const { return std::tie(i, j, k) < std::tie(o.i, o.j, o.k); }
};
H3 h3_mul(H3 x, H3 y) {
    return {(x.i + y.i) % 3, (x.j + y.j) % 3, (x.k + y.k + x.j * y.i) % 3};
}
H3 h3_value(const Element& x) { return {x.e[0], x.e[1], x.e[2]}; }

// mc9: <a> x| <b> of order 81 with a^b = a^4, i.e. b a = a^7 b; elements
// (i, j) in Z9 x Z9 with (i,j)(i',j') = (i + 7^j i' mod 9, j + j' mod 9).
// Normal form a^{e0} b^{e1} c^{e2} d^{e3} with c = a^3, d = b^3.
struct MC9 {
    int i, j;
    bool operator==(const MC9& o) const { return i == o.i && j == o.j; }
};
int pow7mod9(int j) {
    int r = 1;
    for (int t = 0; t < j; ++t) r = (r * 7) % 9;
    return r;
}
MC9 mc9_mul(MC9 x, MC9 y) { return {(x.i + pow7mod9(x.j) * y.i) % 9, (x.j + y.j) % 9}; }
MC9 mc9_value(const Element& x) {
    return {(x.e[0] + 3 * x.e[2]) % 9, (x.e[1] + 3 * x.e[3]) % 9};
}

// m16: <a> x| <b> of order 16 with a^b = a^5, i.e. b a = a^5 b (5 is its own
// inverse mod 8); elements (i, j) in Z8 x Z2.  Normal form
// a^{e0} b^{e1} c^{e2} d^{e3} with c = a^2, d = c^2 = a^4.
struct M16 {
    int i, j;
    bool operator==(const M16& o) const { return i == o.i && j == o.j; }
};
int pow5mod8(int j) { return j % 2 ? 5 : 1; }
M16 m16_mul(M16 x, M16 y) { return {(x.i + pow5mod8(x.j) * y.i) % 8, (x.j + y.j) % 2}; }
M16 m16_value(const Element& x) {
    return {(x.e[0] + 2 * x.e[2] + 4 * x.e[3]) % 8, x.e[1] % 2};
}

} // namespace

TEST_CASE("cyc9 is the cyclic group of order 9") {
    PcGroup G = catalog_group("cyc9");
    CHECK(G.order() == 9);
    std::vector<Element> all = G.all_elements();
    // bijection
    std::vector<bool> seen(9, false);
    for (const Element& x : all) {
        int v = cyc9_value(x);
        CHECK_FALSE(seen[static_cast<size_t>(v)]);
        seen[static_cast<size_t>(v)] = true;
    }
    // homomorphism on all pairs
    for (const Element& x : all)
        for (const Element& y : all)
            CHECK(cyc9_value(G.mul(x, y)) == (cyc9_value(x) + cyc9_value(y)) % 9);
    CHECK(G.element_order(G.generator(0)) == 9);
    CHECK(G.element_order(G.generator(1)) == 3);
}

TEST_CASE("ab_9_3 is Z9 x Z3") {
    PcGroup G = catalog_group("ab_9_3");
    CHECK(G.order() == 27);
    std::vector<Element> all = G.all_elements();
    for (const Element& x : all)
        for (const Element& y : all) {
            auto [xi, xj] = ab93_value(x);
            auto [yi, yj] = ab93_value(y);
            auto [zi, zj] = ab93_value(G.mul(x, y));
            CHECK(zi == (xi + yi) % 9);
            CHECK(zj == (xj + yj) % 3);
        }
}

TEST_CASE("heis3 matches the cocycle model") {
    PcGroup G = catalog_group("heis3");
    CHECK(G.order() == 27);
    std::vector<Element> all = G.all_elements();
    std::map<H3, int> hits;
    for (const Element& x : all) hits[h3_value(x)]++;
    CHECK(hits.size() == 27); // bijection
    for (const Element& x : all)
        for (const Element& y : all)
            CHECK(h3_value(G.mul(x, y)) == h3_mul(h3_value(x), h3_value(y)));

    Element a = G.generator(0), b = G.generator(1), c = G.generator(2);
    CHECK(G.comm(b, a) == c);
    CHECK(G.comm(a, b) == G.pow(c, 2));
    CHECK(G.comm(a, c) == G.identity());
    CHECK(G.element_order(a) == 3);
}

TEST_CASE("mc9 matches the semidirect-product model Z9 x| Z9, multiplier 7") {
    PcGroup G = catalog_group("mc9");
    CHECK(G.order() == 81);
    std::vector<Element> all = G.all_elements();
    for (const Element& x : all)
        for (const Element& y : all) {
            MC9 got = mc9_value(G.mul(x, y));
            MC9 want = mc9_mul(mc9_value(x), mc9_value(y));
            CHECK(got == want);
        }
    Element a = G.generator(0), b = G.generator(1), c = G.generator(2);
    CHECK(G.conj(a, b) == G.mul(a, c));        // a^b = a^4
    CHECK(G.comm(b, a) == G.pow(c, 2));        // [b, a] = c^2
    CHECK(G.element_order(a) == 9);
    CHECK(G.element_order(b) == 9);
}

TEST_CASE("m16 matches the semidirect-product model Z8 x| Z2, multiplier 5") {
    PcGroup G = catalog_group("m16");
    CHECK(G.order() == 16);
    CHECK(G.prime() == 2);
    std::vector<Element> all = G.all_elements();
    for (const Element& x : all)
        for (const Element& y : all) {
            M16 got = m16_value(G.mul(x, y));
            M16 want = m16_mul(m16_value(x), m16_value(y));
            CHECK(got == want);
        }
    Element a = G.generator(0), b = G.generator(1), d = G.generator(3);
    CHECK(G.comm(b, a) == d); // [b, a] = a^4
    CHECK(G.element_order(a) == 8);
    CHECK(G.element_order(b) == 2);
}

TEST_CASE("group axioms and inverse/conjugation identities on samples") {
    for (const char* name : {"cyc9", "ab_9_3", "heis3", "mc9", "m16"}) {
        PcGroup G = catalog_group(name);
        std::vector<Element> all = G.all_elements();
        Element e = G.identity();
        for (const Element& x : all) {
            CHECK(G.mul(x, e) == x);
            CHECK(G.mul(e, x) == x);
            CHECK(G.mul(x, G.inv(x)) == e);
            CHECK(G.is_identity(G.pow(x, G.element_order(x))));
        }
        // x^g = g^-1 x g and [x, y] = x^-1 y^-1 x y... [x,y] = x^-1 x^y
        for (size_t t = 0; t < all.size(); t += 7)
            for (size_t u = 0; u < all.size(); u += 5) {
                const Element &x = all[t], &g = all[u];
                CHECK(G.conj(x, g) == G.mul(G.mul(G.inv(g), x), g));
                CHECK(G.comm(x, g) == G.mul(G.inv(x), G.conj(x, g)));
            }
        // negative powers
        Element a = G.generator(0);
        CHECK(G.pow(a, -1) == G.inv(a));
        CHECK(G.pow(a, Int(-5)) == G.inv(G.pow(a, 5)));
    }
}

TEST_CASE("consistency check validates all catalog groups") {
    for (const char* name : {"cyc9", "ab_9_3", "heis3", "mc9", "m16"}) {
        PcGroup G = catalog_group(name);
        PcGroup::ConsistencyReport rep = G.consistency_check();
        CHECK(rep.ok);
        CHECK(rep.checks > 0);
    }
}

TEST_CASE("inconsistent presentations are rejected at construction") {
    // a^2 = b forces [b, a] = 1, but the presentation claims [b, a] = c.
    PcGroup::Relations rel;
    rel.prime = 2;
    rel.names = {"a", "b", "c"};
    rel.power.resize(3);
    rel.power[0] = {Letter{1, 1}}; // a^2 = b
    rel.power[1] = {Letter{2, 1}}; // b^2 = c
    rel.comm[{1, 0}] = {Letter{2, 1}}; // [b, a] = c (contradiction)
    CHECK_THROWS_AS(PcGroup{rel}, error);
}

TEST_CASE("element indexing is a bijection consistent with evaluation") {
    PcGroup G = catalog_group("heis3");
    for (unsigned long long i = 0; i < G.order(); ++i) {
        Element x = G.element_at(i);
        CHECK(G.index_of(x) == i);
    }
    // evaluate() folds letters left to right
    Element a = G.generator(0), b = G.generator(1);
    CHECK(G.evaluate({Letter{0, 1}, Letter{1, 1}}) == G.mul(a, b));
    CHECK(G.evaluate({Letter{0, 2}, Letter{1, -1}}) == G.mul(G.pow(a, 2), G.inv(b)));
    CHECK(G.evaluate({}) == G.identity());
}

TEST_CASE("collection agrees with the multiplication table when built") {
    // Orders <= 2048 build a table; mul() must agree with mul_collect().
    for (const char* name : {"heis3", "mc9", "m16"}) {
        PcGroup G = catalog_group(name);
        std::vector<Element> all = G.all_elements();
        for (const Element& x : all)
            for (const Element& y : all) CHECK(G.mul(x, y) == G.mul_collect(x, y));
    }
}
