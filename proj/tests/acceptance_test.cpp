// Acceptance suite: the toolkit's top-level guarantees, each checked end to end
// with exact arithmetic on explicit groups.  Every criterion prints one timed
// PASS/FAIL line; the binary exits nonzero if any criterion fails its check or
// its time limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nilcert/catalog.hpp"
#include "nilcert/certifier.hpp"
#include "nilcert/instance.hpp"
#include "nilcert/modpoly.hpp"
#include "nilcert/multipoly.hpp"
#include "nilcert/semple.hpp"

using namespace nilcert;

namespace {

// Fails the enclosing criterion body with a message naming the violated condition.
#define NEED(cond, msg)            \
    do {                           \
        if (!(cond)) {             \
            why = (msg);           \
            return false;          \
        }                          \
    } while (0)

struct Harness {
    int failures = 0;

    void criterion(int num, const std::string& title, double limit_s,
                   const std::function<bool(std::string&)>& body) {
        auto t0 = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = body(why);
        } catch (const std::exception& e) {
            ok = false;
            why = std::string("unexpected exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs > limit_s) {
            ok = false;
            why = "time limit exceeded";
        }
        std::printf("[%s] %2d. %s (%.2fs, limit %.0fs)\n", ok ? "PASS" : "FAIL", num,
                    title.c_str(), secs, limit_s);
        if (!ok) {
            std::printf("       -> %s\n", why.empty() ? "no detail" : why.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
};

Law comm_law() { return parse_positive_law("x1 x2 = x2 x1"); }

const std::string& quantity(const Certificate& c, const std::string& key) {
    static const std::string missing = "<missing>";
    for (const auto& [k, v] : c.quantities)
        if (k == key) return v;
    return missing;
}

const CheckRecord* find_check(const Certificate& c, const std::string& name) {
    for (const CheckRecord& r : c.checks)
        if (r.name == name) return &r;
    return nullptr;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// 1. The collection engine agrees with full multiplication tables: table products
//    equal collected products on all pairs, and associativity holds on all triples.
//    Includes a 729-element direct product built from an instance text.
bool c1_engine_vs_tables(std::string& why) {
    std::vector<std::pair<std::string, PcGroup>> groups;
    for (const char* name : {"cyc9", "ab_9_3", "heis3", "mc9", "m16"})
        groups.emplace_back(name, catalog_group(name));
    Instance big = parse_instance(
        "prime 3\ngens a b c d e f\npow a = c\npow b = d\npow e = f\ncomm b a = c^2\n",
        "mc9xZ9");
    groups.emplace_back("mc9 x Z9", PcGroup(big.relations));
    NEED(groups.back().second.order() == 729, "direct product should have order 729");
    for (const auto& [name, G] : groups) {
        PcGroup::ConsistencyReport rep = G.consistency_check();
        NEED(rep.ok, name + ": collected products disagree with the multiplication table");
        NEED(rep.method == "table-all-triples",
             name + ": associativity was not verified on all triples");
        unsigned long long n = G.order();
        NEED(rep.checks >= n * n, name + ": fewer checks than pairs");
    }
    return true;
}

// 2. Powerful structure: gamma_{i+1}(G) <= G^{p^i} for every i until both sides
//    are trivial, on each powerful catalog group.
bool c2_powerful_structure(std::string& why) {
    for (const char* name : {"cyc9", "ab_9_3", "mc9", "m16"}) {
        PcGroup G = catalog_group(name);
        Subgroup whole = Subgroup::whole(G);
        std::vector<Subgroup> lcs = lower_central_series(whole);
        long long p = G.prime();
        long long pi = 1;
        for (int i = 1; i <= 40; ++i) {
            pi *= p;
            Subgroup Pi = power_subgroup(G, pi);
            const Subgroup& gam =
                static_cast<size_t>(i) < lcs.size() ? lcs[static_cast<size_t>(i)] : lcs.back();
            for (const Element& g : gam.igs())
                NEED(Pi.contains(g), std::string(name) + ": gamma_" + std::to_string(i + 1) +
                                         " is not inside G^" + std::to_string(pi));
            if (gam.order() == 1 && Pi.order() == 1) break;
            NEED(i < 40, std::string(name) + ": series did not terminate");
        }
    }
    return true;
}

// 3. Commutator generating sets: with T the conjugation closure of the chosen
//    Burnside generators, <T_k> = gamma_k(G) and width(T_k) <= width(T) * d^(k-1)
//    for every k up to the nilpotency class, widths by exhaustive BFS.
bool c3_tk_width(std::string& why) {
    struct Case {
        const char* name;
        int expected_m;
    };
    for (const Case& cs : {Case{"heis3", 2}, Case{"mc9", 5}}) {
        PcGroup G = catalog_group(cs.name);
        std::vector<Element> burnside = burnside_generators(G);
        int d = static_cast<int>(burnside.size());
        NEED(d == 2, std::string(cs.name) + ": expected Burnside rank 2");
        std::vector<Element> T = conjugation_closure(G, burnside);
        NEED(is_conjugation_closed(G, T), std::string(cs.name) + ": T not conjugation closed");
        WidthReport base = width(G, T);
        NEED(base.generates_whole, std::string(cs.name) + ": T does not generate G");
        NEED(base.width == cs.expected_m, std::string(cs.name) + ": unexpected width of T");
        std::vector<Subgroup> lcs = lower_central_series(Subgroup::whole(G));
        int cls = nilpotency_class(Subgroup::whole(G));
        for (int k = 1; k <= cls; ++k) {
            std::vector<Element> Tk = build_Tk(G, T, k);
            Subgroup span = Subgroup::closure(G, Tk);
            NEED(span == lcs[static_cast<size_t>(k - 1)],
                 std::string(cs.name) + ": <T_" + std::to_string(k) + "> != gamma_" +
                     std::to_string(k));
            WidthReport wk = width(G, Tk);
            long long bound = static_cast<long long>(base.width) * ipow(d, k - 1);
            NEED(wk.width <= bound, std::string(cs.name) + ": width(T_" + std::to_string(k) +
                                        ") exceeds m * d^(k-1)");
        }
    }
    return true;
}

// 4. Product annihilators: for random monic f and m in {2,3}, the one-variable
//    polynomial h = product_annihilator(f, m) satisfies h(X_1...X_m) = 0 modulo
//    (f(X_1), ..., f(X_m)) and has degree exactly (deg f)^m.
bool c4_annihilator_algebra(std::string& why) {
    std::mt19937_64 rng(987654321u);
    std::uniform_int_distribution<int> deg_dist(1, 6);
    std::uniform_int_distribution<long long> coeff_dist(-6, 6);
    for (int it = 0; it < 200; ++it) {
        int deg = deg_dist(rng);
        int m = (it % 2 == 0) ? 2 : 3;
        std::vector<Int> coeffs;
        coeffs.reserve(static_cast<size_t>(deg) + 1);
        for (int i = 0; i < deg; ++i) coeffs.emplace_back(coeff_dist(rng));
        coeffs.emplace_back(1); // monic
        IntPoly f{std::vector<Int>(coeffs)};
        IntPoly h = product_annihilator(f, m);
        NEED(h.is_monic(), "product annihilator is not monic");
        NEED(h.degree() == ipow(deg, m), "degree of h is not (deg f)^m");
        MultiPoly reduced = reduce_mod_powers(substitute_product(h, m), f);
        NEED(reduced.is_zero(), "h(X_1...X_m) does not reduce to zero mod (f(X_i))");
        if (m == 2) {
            long long n = (deg + 1) / 2; // f kills p^n-th powers when deg f <= 2n
            NEED(h.degree() <= 4 * n * n, "degree exceeds the (2n)^2 bound for m = 2");
        }
    }
    return true;
}

// 5. Engel exponents: for random monic h, class c, and prime p, the returned
//    cofactors satisfy u*(X-1)^c + v*h = (X-1)^r in F_p[X], where r is the
//    multiplicity of X-1 in h mod p capped at c.
bool c5_bezout_engel(std::string& why) {
    std::mt19937_64 rng(24680u);
    const long long primes[] = {2, 3, 5, 7};
    std::uniform_int_distribution<int> pick_p(0, 3);
    std::uniform_int_distribution<int> c_dist(1, 6);
    std::uniform_int_distribution<int> deg_dist(1, 8);
    std::uniform_int_distribution<long long> coeff_dist(-9, 9);
    for (int it = 0; it < 500; ++it) {
        long long p = primes[pick_p(rng)];
        int c = c_dist(rng);
        int deg = deg_dist(rng);
        std::vector<Int> coeffs;
        for (int i = 0; i < deg; ++i) coeffs.emplace_back(coeff_dist(rng));
        coeffs.emplace_back(1);
        IntPoly h{std::vector<Int>(coeffs)};
        EngelExponent ee = engel_exponent(h, c, p);
        ModPoly hp = ModPoly::from_int_poly(h, p);
        ModPoly xm1(p, {-1, 1});
        NEED(ee.u * xm1.pow(c) + ee.v * hp == xm1.pow(ee.r),
             "Bezout identity u*(X-1)^c + v*h = (X-1)^r fails");
        int mult = 0;
        ModPoly cur = hp;
        while (mult <= deg) {
            auto [q, r] = ModPoly::divmod(cur, xm1);
            if (!r.is_zero()) break;
            cur = q;
            ++mult;
        }
        NEED(ee.r == std::min(mult, c), "r is not the capped multiplicity of X-1 in h mod p");
    }
    return true;
}

// 6. Separated-power certificates: the default search bounds succeed on five
//    reference polynomials, the witnesses re-expand exactly, and the discovered
//    parameters (l, k, q) match frozen values.
bool c6_semple_certificates(std::string& why) {
    struct Case {
        IntPoly h;
        int l, k;
        long long q;
        const char* label;
    };
    const Case cases[] = {
        {IntPoly{-1, 1}, 1, 1, 1, "X - 1"},      {IntPoly{0, 1}, 1, 1, 1, "X"},
        {IntPoly{-2, 1}, 1, 1, 1, "X - 2"},      {IntPoly{-1, 0, 1}, 1, 2, 1, "X^2 - 1"},
        {IntPoly{-1, -1, 1}, 1, 1, 1, "X^2 - X - 1"},
    };
    for (const Case& cs : cases) {
        SempleOutcome out = semple_search(cs.h);
        NEED(out.result.has_value(), std::string(cs.label) + ": search exhausted default bounds");
        const SempleResult& res = *out.result;
        NEED(res.l == cs.l && res.k == cs.k && res.q == cs.q,
             std::string(cs.label) + ": (l, k, q) differs from the frozen values");
        NEED(verify_membership(cs.h, res.cert),
             std::string(cs.label) + ": certificate does not re-expand to q*X^l*(X^k-1)^l");
    }
    return true;
}

// 7. End-to-end positive certification: mc9 with T = a^G u b^G and the law
//    x1 x2^2 x1 = x2 x1^2 x2 passes every check with observed class 2.
bool c7_general_pipeline(std::string& why) {
    PcGroup G = catalog_group("mc9");
    std::vector<Element> T = conjugation_closure(G, {G.generator(0), G.generator(1)});
    NEED(T.size() == 6, "a^G u b^G should have 6 elements");
    Law law = parse_positive_law("x1 x2^2 x1 = x2 x1^2 x2");
    Certificate c = certify_general(G, "mc9", T, law);
    NEED(c.verdict == Verdict::Passed, "verdict is not a pass");
    NEED(c.exit_code() == 0, "exit code is not 0");
    NEED(c.checks.size() == 13, "expected 13 recorded checks");
    for (const CheckRecord& r : c.checks)
        NEED(r.pass, "check failed: " + r.name);
    NEED(quantity(c, "observed_class") == "2", "observed nilpotency class is not 2");
    NEED(quantity(c, "d") == "2", "Burnside rank is not 2");
    return true;
}

// 8. End-to-end verbal certification: heis3 on w = [x1, x2] has w(G) of order 3,
//    mc9 on w = x1^3 has abelian w(G) of order 9, and in both runs the composed
//    law holds on all of G.
bool c8_verbal_pipeline(std::string& why) {
    PcGroup h = catalog_group("heis3");
    Certificate ch = certify_verbal(h, "heis3", parse_word("[x1, x2]"), comm_law());
    NEED(ch.verdict == Verdict::Passed, "heis3 verbal run did not pass");
    NEED(quantity(ch, "verbal_order") == "3", "w(heis3) should have order 3 (cyclic C_3)");
    NEED(quantity(ch, "observed_class_w") == "1", "w(heis3) should be abelian");

    PcGroup m = catalog_group("mc9");
    Certificate cm = certify_verbal(m, "mc9", parse_word("x1^3"), comm_law());
    NEED(cm.verdict == Verdict::Passed, "mc9 verbal run did not pass");
    NEED(quantity(cm, "verbal_order") == "9", "w(mc9) should have order 9");
    NEED(quantity(cm, "observed_class_w") == "1", "w(mc9) should be abelian");

    for (const Certificate* c : {&ch, &cm}) {
        NEED(c->checks.size() == 19, "expected 19 recorded checks");
        const CheckRecord* composed = find_check(*c, "composed-law-on-G");
        NEED(composed != nullptr, "missing composed-law-on-G check");
        NEED(composed->pass, "composed law does not hold on all of G");
    }
    return true;
}

// 9. Auxiliary pipelines: the powerful-quotient argument on (mc9, G^3) records
//    k = 2 and c = 1; the law-only argument on (heis3, x1^3 = 1) returns k = 2;
//    the Hall-style argument on (heis3, derived subgroup) records (1, 2, 2).
bool c9_lemma_pipelines(std::string& why) {
    PcGroup m = catalog_group("mc9");
    Certificate nbf = nbf_powerful_check(m, "mc9", power_subgroup(m, 3));
    NEED(nbf.verdict == Verdict::Passed, "powerful-quotient run on (mc9, G^3) did not pass");
    NEED(quantity(nbf, "k") == "2", "powerful-quotient k is not 2");
    NEED(quantity(nbf, "c") == "1", "powerful-quotient c is not 1");

    PcGroup h = catalog_group("heis3");
    Law cube = law_from_words(parse_word("x1^3"), parse_word("1"), "x1^3 = 1");
    Certificate black = black_check(h, "heis3", cube);
    NEED(black.verdict == Verdict::Passed, "law-only run on (heis3, x1^3 = 1) did not pass");
    NEED(quantity(black, "k") == "2", "law-only k is not 2");

    Certificate hall = hall_check(h, "heis3", derived_subgroup(Subgroup::whole(h)));
    NEED(hall.verdict == Verdict::Passed, "Hall-style run on (heis3, G') did not pass");
    NEED(quantity(hall, "k") == "1", "Hall-style k is not 1");
    NEED(quantity(hall, "c") == "2", "Hall-style c is not 2");
    NEED(quantity(hall, "observed_class") == "2", "Hall-style observed class is not 2");
    return true;
}

// 10. Negative controls: non-powerful heis3 is refuted at the powerful check, the
//     commutator law on {a, b} in heis3 yields the counterexample (a, b), and a
//     one-sided non-annihilator fails verification with a named witness.
bool c10_negative_controls(std::string& why) {
    PcGroup h = catalog_group("heis3");
    Certificate c =
        certify_general(h, "heis3", {h.generator(0), h.generator(1)},
                        parse_positive_law("x1 x2^2 x1 = x2 x1^2 x2"));
    NEED(c.verdict == Verdict::Refuted, "heis3 should be refuted");
    NEED(c.exit_code() == 1, "refutation exit code is not 1");
    NEED(c.checks.size() == 1, "refutation should halt at the first check");
    NEED(c.checks[0].name == "powerful", "refutation is not at the powerful check");
    NEED(!c.checks[0].witness.empty(), "powerful refutation lacks a witness");

    Law comm = comm_law();
    LawCheckReport rep = check_law_on_subset(h, comm, {h.generator(0), h.generator(1)});
    NEED(!rep.holds, "the commutator law should fail on {a, b} in heis3");
    NEED(rep.counterexample.size() == 2, "counterexample should be a pair");
    NEED(rep.counterexample[0] == h.generator(0) && rep.counterexample[1] == h.generator(1),
         "counterexample is not (a, b)");

    PcGroup m = catalog_group("mc9");
    Subgroup K = Subgroup::normal_closure(m, {m.generator(0)});
    AbelianSection A = AbelianSection::make(m, K, Subgroup::trivial(m));
    SectionCheck chk = verify_annihilation(A, IntPoly{-4, 1}, {m.generator(1)});
    NEED(!chk.pass, "X - 4 should fail two-sided annihilation on the a^G section");
    NEED(!chk.witness.empty(), "failed annihilation lacks a named witness");
    return true;
}

} // namespace

int main() {
    Harness H;
    H.criterion(1, "collection agrees with full multiplication tables (pairs and triples)",
                60.0, c1_engine_vs_tables);
    H.criterion(2, "gamma_{i+1}(G) <= G^{p^i} on the powerful catalog groups", 10.0,
                c2_powerful_structure);
    H.criterion(3, "<T_k> = gamma_k(G) with width(T_k) <= width(T) * d^(k-1)", 120.0,
                c3_tk_width);
    H.criterion(4, "product annihilators vanish mod (f(X_1), ..., f(X_m)) at degree (deg f)^m",
                120.0, c4_annihilator_algebra);
    H.criterion(5, "u*(X-1)^c + v*h = (X-1)^r over F_p with r the gcd multiplicity", 10.0,
                c5_bezout_engel);
    H.criterion(6, "separated-power certificates re-expand exactly under default bounds", 60.0,
                c6_semple_certificates);
    H.criterion(7, "end-to-end certification of mc9 under x1 x2^2 x1 = x2 x1^2 x2", 300.0,
                c7_general_pipeline);
    H.criterion(8, "verbal pipelines on heis3 [x1, x2] and mc9 x1^3", 300.0, c8_verbal_pipeline);
    H.criterion(9, "powerful-quotient, law-only, and Hall-style class bounds", 60.0,
                c9_lemma_pipelines);
    H.criterion(10, "negative controls are refuted with named witnesses", 10.0,
                c10_negative_controls);
    std::printf("acceptance: %d/10 criteria passed\n", 10 - H.failures);
    return H.failures == 0 ? 0 : 1;
}
