#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "nilcert/catalog.hpp"
#include "nilcert/pcgroup.hpp"
#include "nilcert/quotient.hpp"
#include "nilcert/subgroup.hpp"

using namespace nilcert;

namespace {

/* Brute-force oracle: the subgroup generated by `gens` as a plain element
 * set, closed under multiplication only (enough in a finite group). */
std::set<uint64_t> brute_closure(const PcGroup& G, std::vector<Element> gens) {
    std::set<uint64_t> S{G.index_of(G.identity())};
    for (const Element& g : gens) S.insert(G.index_of(g));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<uint64_t> snapshot(S.begin(), S.end());
        for (uint64_t x : snapshot)
            for (uint64_t y : snapshot) {
                uint64_t z = G.index_of(G.mul(G.element_at(x), G.element_at(y)));
                if (S.insert(z).second) grew = true;
            }
    }
    return S;
}

std::set<uint64_t> as_index_set(const PcGroup& G, const std::vector<Element>& v) {
    std::set<uint64_t> S;
    for (const Element& x : v) S.insert(G.index_of(x));
    return S;
}

std::vector<Element> all_commutators(const PcGroup& G, const std::vector<Element>& H,
                                     const std::vector<Element>& K) {
    std::vector<Element> out;
    for (const Element& h : H)
        for (const Element& k : K) out.push_back(G.comm(h, k));
    return out;
}

} // namespace

TEST_CASE("closure matches brute-force subgroup generation") {
    for (const char* name : {"heis3", "mc9", "m16"}) {
        PcGroup G = catalog_group(name);
        std::vector<Element> all = G.all_elements();
        // single- and two-generator subgroups over a spread of seeds
        for (size_t t = 0; t < all.size(); t += 3)
            for (size_t u = t; u < all.size(); u += 11) {
                std::vector<Element> gens{all[t], all[u]};
                Subgroup H = Subgroup::closure(G, gens);
                std::set<uint64_t> want = brute_closure(G, gens);
                CHECK(H.order() == want.size());
                CHECK(as_index_set(G, H.elements()) == want);
                for (const Element& x : all)
                    CHECK(H.contains(x) == (want.count(G.index_of(x)) != 0));
            }
    }
}

TEST_CASE("normal closure matches brute force") {
    PcGroup G = catalog_group("mc9");
    std::vector<Element> all = G.all_elements();
    for (size_t t = 1; t < all.size(); t += 13) {
        Subgroup N = Subgroup::normal_closure(G, {all[t]});
        std::vector<Element> conj_gens;
        for (const Element& g : all) conj_gens.push_back(G.conj(all[t], g));
        std::set<uint64_t> want = brute_closure(G, conj_gens);
        CHECK(N.order() == want.size());
        CHECK(as_index_set(G, N.elements()) == want);
        CHECK(N.is_normal());
    }
}

TEST_CASE("commutator subgroup matches the subgroup generated by all commutators") {
    for (const char* name : {"heis3", "mc9", "m16"}) {
        PcGroup G = catalog_group(name);
        Subgroup W = Subgroup::whole(G);
        Subgroup D = derived_subgroup(W);
        std::vector<Element> all = G.all_elements();
        std::set<uint64_t> want = brute_closure(G, all_commutators(G, all, all));
        CHECK(D.order() == want.size());
        CHECK(as_index_set(G, D.elements()) == want);

        // mixed [H, G] with a proper subgroup
        Subgroup H = Subgroup::closure(G, {G.generator(0)});
        Subgroup C = commutator_subgroup(H, W);
        std::set<uint64_t> want2 = brute_closure(G, all_commutators(G, H.elements(), all));
        CHECK(C.order() == want2.size());
        CHECK(as_index_set(G, C.elements()) == want2);
    }
}

TEST_CASE("coset representatives are canonical") {
    PcGroup G = catalog_group("mc9");
    Subgroup N = derived_subgroup(Subgroup::whole(G)); // <c>, order 3
    CHECK(N.order() == 3);
    std::vector<Element> all = G.all_elements();
    for (const Element& x : all)
        for (const Element& y : all) {
            bool same_coset = N.contains(G.mul(G.inv(x), y));
            CHECK((N.coset_rep(x) == N.coset_rep(y)) == same_coset);
        }
    // rep is in the coset, and has zero exponent at every leading index
    for (const Element& x : all) {
        Element r = N.coset_rep(x);
        CHECK(N.contains(G.mul(G.inv(x), r)));
        for (int lead : N.leading_indices()) CHECK(r.e[static_cast<size_t>(lead)] == 0);
    }
}

TEST_CASE("coordinates invert the igs product") {
    PcGroup G = catalog_group("heis3");
    Subgroup H = Subgroup::closure(G, {G.generator(0), G.generator(2)});
    std::vector<Element> igs = H.igs();
    for (const Element& x : H.elements()) {
        std::vector<int> c = H.coordinates(x);
        REQUIRE(c.size() == igs.size());
        Element y = G.identity();
        for (size_t i = 0; i < igs.size(); ++i) y = G.mul(y, G.pow(igs[i], c[i]));
        CHECK(y == x);
    }
}

TEST_CASE("lower central series orders") {
    PcGroup h = catalog_group("heis3");
    std::vector<Subgroup> hs = lower_central_series(Subgroup::whole(h));
    REQUIRE(hs.size() == 3);
    CHECK(hs[0].order() == 27);
    CHECK(hs[1].order() == 3);
    CHECK(hs[2].order() == 1);
    CHECK(nilpotency_class(Subgroup::whole(h)) == 2);

    PcGroup m = catalog_group("mc9");
    std::vector<Subgroup> ms = lower_central_series(Subgroup::whole(m));
    REQUIRE(ms.size() == 3);
    CHECK(ms[0].order() == 81);
    CHECK(ms[1].order() == 3);
    CHECK(ms[2].order() == 1);
    CHECK(nilpotency_class(Subgroup::whole(m)) == 2);

    CHECK(nilpotency_class(Subgroup::whole(catalog_group("cyc9"))) == 1);
    CHECK(derived_length(Subgroup::whole(catalog_group("mc9"))) == 2);
    CHECK(derived_length(Subgroup::whole(catalog_group("ab_9_3"))) == 1);
}

TEST_CASE("power subgroups, exponent, Frattini subgroup") {
    PcGroup h = catalog_group("heis3");
    CHECK(exponent_of(h) == 3);
    CHECK(power_subgroup(h, 3).order() == 1);
    CHECK(frattini_subgroup(h).order() == 3);

    PcGroup m = catalog_group("mc9");
    CHECK(exponent_of(m) == 9);
    Subgroup m3 = power_subgroup(m, 3);
    CHECK(m3.order() == 9);
    CHECK(frattini_subgroup(m).order() == 9);
    // brute: cube every element, close
    std::vector<Element> cubes;
    for (const Element& x : m.all_elements()) cubes.push_back(m.pow(x, 3));
    CHECK(as_index_set(m, m3.elements()) == brute_closure(m, cubes));

    PcGroup s = catalog_group("m16");
    CHECK(exponent_of(s) == 8);
    CHECK(power_subgroup(s, 2).order() == 4);
    CHECK(power_subgroup(s, 4).order() == 2);
}

TEST_CASE("powerful detection") {
    CHECK(is_powerful(catalog_group("cyc9")).powerful);
    CHECK(is_powerful(catalog_group("ab_9_3")).powerful);
    CHECK_FALSE(is_powerful(catalog_group("heis3")).powerful);
    PowerfulReport mr = is_powerful(catalog_group("mc9"));
    CHECK(mr.powerful);
    CHECK_FALSE(mr.p2_variant);
    PowerfulReport sr = is_powerful(catalog_group("m16")); // G' <= G^4 at p = 2
    CHECK(sr.powerful);
    CHECK(sr.p2_variant);
}

TEST_CASE("join and containment") {
    PcGroup G = catalog_group("mc9");
    Subgroup A = Subgroup::closure(G, {G.generator(2)}); // <c>, order 3
    Subgroup B = Subgroup::closure(G, {G.generator(3)}); // <d>, order 3
    Subgroup J = join(A, B);
    CHECK(J.order() == 9);
    CHECK(J.contains(A));
    CHECK(J.contains(B));
    CHECK_FALSE(A.contains(B));
    CHECK(Subgroup::whole(G).contains(J));
    CHECK(Subgroup::trivial(G).order() == 1);
    CHECK(Subgroup::trivial(G).is_trivial());
}

TEST_CASE("quotient group: projection is a surjective homomorphism with the right kernel") {
    PcGroup G = catalog_group("mc9");
    Subgroup N = Subgroup::normal_closure(G, {G.generator(2)}); // <c> normal, order 3
    REQUIRE(N.order() == 3);
    QuotientGroup Q = quotient(G, N);
    CHECK(Q.group->order() == 27);
    std::vector<Element> all = G.all_elements();
    std::set<uint64_t> image;
    for (const Element& x : all) {
        image.insert(Q.group->index_of(Q.project(x)));
        // kernel
        CHECK(Q.group->is_identity(Q.project(x)) == N.contains(x));
        // lift is a section
        CHECK(Q.project(Q.lift(Q.project(x))) == Q.project(x));
    }
    CHECK(image.size() == 27); // surjective
    for (size_t t = 0; t < all.size(); t += 5)
        for (size_t u = 0; u < all.size(); u += 7)
            CHECK(Q.project(G.mul(all[t], all[u])) ==
                  Q.group->mul(Q.project(all[t]), Q.project(all[u])));
}

TEST_CASE("subgroup promoted to a standalone group is isomorphic") {
    PcGroup G = catalog_group("mc9");
    Subgroup H = Subgroup::closure(G, {G.generator(1)}); // <b> = Z9
    IsomorphicCopy C = subgroup_to_group(H);
    CHECK(C.group->order() == 9);
    std::vector<Element> hs = H.elements();
    std::set<uint64_t> image;
    for (const Element& x : hs) {
        Element cx = C.from_parent(x);
        CHECK(C.to_parent(cx) == x); // round trip
        image.insert(C.group->index_of(cx));
    }
    CHECK(image.size() == hs.size());
    for (const Element& x : hs)
        for (const Element& y : hs)
            CHECK(C.from_parent(G.mul(x, y)) ==
                  C.group->mul(C.from_parent(x), C.from_parent(y)));

    // non-abelian subgroup: the whole group round-trips too
    IsomorphicCopy W = subgroup_to_group(Subgroup::whole(G));
    CHECK(W.group->order() == 81);
    for (size_t t = 0; t < 81; t += 7)
        for (size_t u = 0; u < 81; u += 5) {
            Element x = G.element_at(t), y = G.element_at(u);
            CHECK(W.from_parent(G.mul(x, y)) ==
                  W.group->mul(W.from_parent(x), W.from_parent(y)));
        }
}
