#include <doctest.h>

#include <map>
#include <queue>
#include <set>
#include <vector>

#include "nilcert/catalog.hpp"
#include "nilcert/lawkit.hpp"
#include "nilcert/subgroup.hpp"
#include "nilcert/word.hpp"

using namespace nilcert;

namespace {

/* Independent width oracle: plain BFS with an explicit queue and a map of
 * distances, no shared code with lawkit's frontier sweep. */
int brute_width(const PcGroup& G, const std::vector<Element>& T) {
    std::vector<Element> alph;
    for (const Element& t : T) {
        alph.push_back(t);
        alph.push_back(G.inv(t));
    }
    std::map<std::vector<uint8_t>, int> dist;
    dist[G.identity().e] = 0;
    std::queue<Element> q;
    q.push(G.identity());
    int maxd = 0;
    while (!q.empty()) {
        Element x = q.front();
        q.pop();
        int d = dist[x.e];
        for (const Element& a : alph) {
            Element y = G.mul(x, a);
            if (!dist.count(y.e)) {
                dist[y.e] = d + 1;
                maxd = std::max(maxd, d + 1);
                q.push(y);
            }
        }
    }
    return maxd;
}

} // namespace

TEST_CASE("word parser handles products, powers, commutators, grouping") {
    CHECK(word_str(parse_word("x1 x2^2")) == "x1 x2^2");
    CHECK(word_str(parse_word("[x1, x2]")) == "[x1, x2]");
    CHECK(word_str(parse_word("(a b)^-3")) == "(a b)^-3");
    CHECK(word_str(parse_word("1")) == "1");
    CHECK(word_str(parse_word("[[x1, x2], x1]^2 b")) == "[[x1, x2], x1]^2 b");

    PcGroup G = catalog_group("heis3");
    std::vector<Element> args{G.generator(0), G.generator(1)};
    CHECK(evaluate_word(G, parse_word("[x1, x2]"), args) ==
          G.comm(G.generator(0), G.generator(1)));
    CHECK(evaluate_word(G, parse_word("x1^3"), args) == G.identity());
    CHECK(evaluate_word(G, parse_word("x1^-1 x2 x1"), args) ==
          G.conj(G.generator(1), G.generator(0)));
}

TEST_CASE("word parser reports positioned errors") {
    CHECK_THROWS_WITH_AS(parse_word("x1 ]"),
                         "word parse error at position 4: unexpected trailing text in \"x1 ]\"",
                         error);
    CHECK_THROWS_AS(parse_word("[x1 x2]"), error); // missing comma
    CHECK_THROWS_AS(parse_word("(x1"), error);     // unclosed paren
    CHECK_THROWS_AS(parse_word("x1^"), error);     // missing exponent
    CHECK(word_str(parse_word("")) == "1");        // empty product is the identity
}

TEST_CASE("empty and identity words evaluate to the identity") {
    PcGroup G = catalog_group("cyc9");
    CHECK(evaluate_word(G, Word::identity(), std::vector<Element>{}) == G.identity());
    CHECK(evaluate_word(G, parse_word("1"), std::vector<Element>{}) == G.identity());
}

TEST_CASE("law parsing: positivity, variables, degree") {
    Law comm = parse_positive_law("x1 x2 = x2 x1");
    CHECK(comm.positive);
    CHECK(comm.nvars == 2);
    CHECK(comm.degree == 2);
    CHECK(comm.alpha == std::vector<int>{1, 2});
    CHECK(comm.beta == std::vector<int>{2, 1});

    Law c2 = parse_positive_law("x1 x2^2 x1 = x2 x1^2 x2");
    CHECK(c2.degree == 4);
    CHECK(c2.alpha == std::vector<int>{1, 2, 2, 1});
    CHECK(c2.beta == std::vector<int>{2, 1, 1, 2});

    CHECK_THROWS_AS(parse_positive_law("x1 x2 = x1 x2"), error);   // degenerate
    CHECK_THROWS_AS(parse_positive_law("[x1, x2] = 1"), error);    // not positive
    CHECK_THROWS_AS(parse_positive_law("x1^-1 x2 = x2"), error);   // negative power
}

TEST_CASE("law checking: exhaustive verification and counterexamples") {
    PcGroup h = catalog_group("heis3");
    Law comm = parse_positive_law("x1 x2 = x2 x1");
    std::vector<Element> T{h.generator(0), h.generator(1)};
    LawCheckReport r = check_law_on_subset(h, comm, T);
    CHECK_FALSE(r.holds);
    CHECK(r.exhaustive);
    REQUIRE(r.counterexample.size() == 2);
    CHECK(r.counterexample[0] == h.generator(0));
    CHECK(r.counterexample[1] == h.generator(1));

    // mc9 satisfies the degree-4 law x1 x2^2 x1 = x2 x1^2 x2 on all of G
    PcGroup m = catalog_group("mc9");
    Law c2 = parse_positive_law("x1 x2^2 x1 = x2 x1^2 x2");
    LawCheckReport rm = check_law_on_subset(m, c2, m.all_elements());
    CHECK(rm.holds);
    CHECK(rm.exhaustive);
    CHECK(rm.tuples_checked == 6561); // 81^2

    // independent spot check of the law on random pairs
    for (uint64_t i = 0; i < 81; i += 5)
        for (uint64_t j = 0; j < 81; j += 7) {
            Element x = m.element_at(i), y = m.element_at(j);
            Element lhs = m.mul(m.mul(x, m.pow(y, 2)), x);
            Element rhs = m.mul(m.mul(y, m.pow(x, 2)), y);
            CHECK(lhs == rhs);
        }

    // both sides collect to y^2 x^2 [x,y]^2 in any class-2 group, so heis3
    // (class 2) satisfies the law on all of G as well
    LawCheckReport rh = check_law_on_subset(h, c2, h.all_elements());
    CHECK(rh.holds);
    CHECK(rh.exhaustive);
}

TEST_CASE("width agrees with an independent BFS and known values") {
    PcGroup c9 = catalog_group("cyc9");
    std::vector<Element> Tc{c9.generator(0)};
    WidthReport wc = width(c9, Tc);
    CHECK(wc.width == 4); // farthest point of Z9 under steps of +-1
    CHECK(wc.span == 9);
    CHECK(wc.generates_whole);

    PcGroup h = catalog_group("heis3");
    std::vector<Element> Th{h.generator(0), h.generator(1)};
    WidthReport wh = width(h, Th);
    CHECK(wh.width == 4);
    CHECK(wh.span == 27);
    CHECK(wh.generates_whole);
    CHECK(wh.width == brute_width(h, Th));

    PcGroup m = catalog_group("mc9");
    std::vector<Element> Tm{m.generator(0), m.generator(1)};
    WidthReport wm = width(m, Tm);
    CHECK(wm.width == 6);
    CHECK(wm.generates_whole);
    CHECK(wm.width == brute_width(m, Tm));

    // non-generating subset is reported as such
    WidthReport wp = width(m, {m.generator(2)});
    CHECK_FALSE(wp.generates_whole);
    CHECK(wp.span == 3);

    // property: width == brute width for assorted subsets
    for (uint64_t i = 1; i < m.order(); i += 17)
        for (uint64_t j = i; j < m.order(); j += 23) {
            std::vector<Element> T{m.element_at(i), m.element_at(j)};
            CHECK(width(m, T).width == brute_width(m, T));
        }
}

TEST_CASE("iterated commutator sets T_k") {
    PcGroup h = catalog_group("heis3");
    std::vector<Element> T{h.generator(0), h.generator(1)};
    std::vector<Element> T2 = build_Tk(h, T, 2);
    // {[t, u] : t, u in T} = {1, c, c^2}
    REQUIRE(T2.size() == 3);
    Element c = h.generator(2);
    CHECK(T2[0] == h.identity());
    std::set<Element> got(T2.begin(), T2.end());
    CHECK(got.count(c) == 1);
    CHECK(got.count(h.pow(c, 2)) == 1);
    // third level: [T2, T] = 1 in a class-2 group
    std::vector<Element> T3 = build_Tk(h, T, 3);
    REQUIRE(T3.size() == 1);
    CHECK(T3[0] == h.identity());

    // independent route: T2 must equal the set of commutators [t, u]
    std::set<Element> want;
    for (const Element& t : T2)
        (void)t; // sorted_unique already checked by size
    for (const Element& t : T)
        for (const Element& u : T) want.insert(h.comm(t, u));
    CHECK(want == got);
}

TEST_CASE("minimal generating tuples modulo the Frattini subgroup") {
    PcGroup m = catalog_group("mc9");
    std::vector<Element> T{m.generator(0), m.generator(1)};
    std::vector<Element> B = burnside_generators_from(m, T);
    CHECK(B.size() == 2); // |G : Frattini| = 9 = 3^2
    CHECK(Subgroup::closure(m, B) == Subgroup::whole(m));
    for (const Element& b : B)
        CHECK((b == m.generator(0) || b == m.generator(1))); // chosen from T

    // a redundant pool still yields an independent tuple from the pool
    std::vector<Element> pool{m.generator(0), m.mul(m.generator(0), m.generator(2)),
                              m.generator(1)};
    std::vector<Element> B2 = burnside_generators_from(m, pool);
    CHECK(B2.size() == 2);
    CHECK(Subgroup::closure(m, B2) == Subgroup::whole(m));

    // a non-generating pool is rejected
    CHECK_THROWS_AS(burnside_generators_from(m, {m.generator(2)}), error);
}

TEST_CASE("products over gamma_k factor through T_k with the width bound") {
    PcGroup h = catalog_group("heis3");
    std::vector<Element> Th{h.generator(0), h.generator(1)};
    GammaFactorization fh = express_gamma_k(h, Th, 2, h.generator(2));
    CHECK(fh.bound == 8); // m * d^(k-1) = 4 * 2
    CHECK(fh.factors.size() == 1);
    CHECK(fh.factors.size() <= fh.bound);
    // factors multiply back and lie in T_2 u T_2^{-1}
    std::vector<Element> T2 = build_Tk(h, Th, 2);
    std::set<Element> box(T2.begin(), T2.end());
    for (const Element& t : T2) box.insert(h.inv(t));
    Element prod = h.identity();
    for (const Element& x : fh.factors) {
        CHECK(box.count(x) == 1);
        prod = h.mul(prod, x);
    }
    CHECK(prod == h.generator(2));

    PcGroup m = catalog_group("mc9");
    std::vector<Element> Tm{m.generator(0), m.generator(1)};
    // every element of gamma_2(mc9) = <c> factors within the bound
    std::vector<Subgroup> lcs = lower_central_series(Subgroup::whole(m));
    for (const Element& y : lcs[1].elements()) {
        GammaFactorization f = express_gamma_k(m, Tm, 2, y);
        CHECK(f.bound == 12); // 6 * 2
        CHECK(f.factors.size() <= f.bound);
        std::vector<Element> T2m = build_Tk(m, Tm, 2);
        std::set<Element> boxm(T2m.begin(), T2m.end());
        for (const Element& t : T2m) boxm.insert(m.inv(t));
        Element p = m.identity();
        for (const Element& x : f.factors) {
            CHECK(boxm.count(x) == 1);
            p = m.mul(p, x);
        }
        CHECK(p == y);
    }

    // k = 1 degenerates to plain factorization over T u T^{-1}
    GammaFactorization f1 = express_gamma_k(m, Tm, 1, m.generator(0));
    CHECK(f1.bound == 6);
    CHECK(f1.factors.size() <= 6);
    // y outside gamma_k is rejected
    CHECK_THROWS_AS(express_gamma_k(m, Tm, 2, m.generator(0)), error);
}

TEST_CASE("word value sets and verbal subgroups") {
    PcGroup h = catalog_group("heis3");
    WordValuesReport vh = word_values(h, parse_word("[x1, x2]"));
    CHECK(vh.exhaustive);
    CHECK(vh.values.size() == 3); // {1, c, c^2}, conjugation-closed
    CHECK(is_conjugation_closed(h, vh.values));
    CHECK(verbal_subgroup(h, parse_word("[x1, x2]")).order() == 3);
    CHECK(verbal_subgroup(h, parse_word("x1^3")).order() == 1); // exponent 3

    PcGroup m = catalog_group("mc9");
    CHECK(verbal_subgroup(m, parse_word("x1^3")).order() == 9);
    WordValuesReport vm = word_values(m, parse_word("x1^3"));
    CHECK(vm.exhaustive);
    // independent route: cubes of all elements
    std::set<Element> want;
    for (const Element& x : m.all_elements()) want.insert(m.pow(x, 3));
    std::set<Element> got(vm.values.begin(), vm.values.end());
    CHECK(got == want);
}

TEST_CASE("conjugation closure") {
    PcGroup m = catalog_group("mc9");
    std::vector<Element> cl = conjugation_closure(m, {m.generator(0)});
    CHECK(is_conjugation_closed(m, cl));
    // a^b = a c, a^{b^2} = a c^2: the class of a has 3 elements
    CHECK(cl.size() == 3);
    for (const Element& x : cl)
        for (uint64_t g = 0; g < m.order(); ++g)
            CHECK(std::count(cl.begin(), cl.end(), m.conj(x, m.element_at(g))) == 1);
}

TEST_CASE("law substitution words compose") {
    // composing the commutator law with w = x1^3 yields a law in the cubes
    Law comm = parse_positive_law("x1 x2 = x2 x1");
    Law composed = compose_law(parse_word("x1^3"), comm);
    PcGroup m = catalog_group("mc9");
    // mc9 has abelian G^3 = <c, d>; the composed law must hold on ALL of G
    LawCheckReport r = check_law_on_subset(m, composed, m.all_elements());
    CHECK(r.holds);
    CHECK(r.exhaustive);
    // and on heis3 the cube law composes to the trivial-on-G law as well
    PcGroup h = catalog_group("heis3");
    LawCheckReport rh = check_law_on_subset(h, composed, h.all_elements());
    CHECK(rh.holds); // cubes are trivial, so both sides are 1
}

TEST_CASE("shortest expressions in the generators") {
    PcGroup m = catalog_group("mc9");
    std::vector<Element> T{m.generator(0), m.generator(1)};
    auto expr = shortest_expression(m, T, m.comm(m.generator(1), m.generator(0)));
    REQUIRE(expr.has_value());
    Element prod = m.identity();
    for (const Element& f : *expr) prod = m.mul(prod, f);
    CHECK(prod == m.comm(m.generator(1), m.generator(0)));
    // unreachable target
    PcGroup h = catalog_group("heis3");
    auto none = shortest_expression(h, {h.generator(2)}, h.generator(0));
    CHECK_FALSE(none.has_value());
}
