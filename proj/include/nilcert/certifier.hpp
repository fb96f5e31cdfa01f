#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "certificate.hpp"
#include "lawkit.hpp"
#include "modpoly.hpp"
#include "multipoly.hpp"
#include "quotient.hpp"
#include "sections.hpp"
#include "semple.hpp"
#include "word.hpp"

namespace nilcert {

struct CertifyOptions {
    unsigned long long enum_budget = 1000000;   // element enumeration
    unsigned long long law_budget = 10000000;   // law-check substitution tuples
    SempleBounds semple_bounds{};                // base bounds; escalated geometrically
    int semple_rounds_max = 6;                   // doublings before giving up
    SectionFamily section_family = SectionFamily::Standard;
    uint64_t seed = 0x9e3779b97f4a7c15ull;       // sampling seed (fixed: deterministic)
};

namespace detail {

inline std::string elems_str(const PcGroup& G, const std::vector<Element>& v, size_t cap = 8) {
    std::string s = "{";
    for (size_t i = 0; i < v.size() && i < cap; ++i) {
        if (i) s += ", ";
        s += G.str(v[i]);
    }
    if (v.size() > cap) s += ", ...";
    return s + "}";
}

inline std::string int_str(const Int& x) { return x.str(); }

inline void record_law_check(Certificate& cert, const std::string& name,
                             const std::string& statement, const std::string& inputs,
                             const PcGroup& G, const LawCheckReport& rep) {
    CheckRecord rec;
    rec.name = name;
    rec.statement = statement;
    rec.inputs = inputs;
    rec.pass = rep.holds;
    rec.coverage = rep.exhaustive
                       ? "exhaustive (" + std::to_string(rep.tuples_checked) + " tuples)"
                       : "sampled (" + std::to_string(rep.tuples_checked) + " tuples)";
    if (!rep.holds) rec.witness = "counterexample " + elems_str(G, rep.counterexample);
    if (!rep.exhaustive) cert.sampled = true;
    cert.add(std::move(rec));
}

/* The metabelian engine at one induction level.  Q is the acting group (the
 * level quotient), A <= Q an abelian normal subgroup, T the images of the
 * level generating set; f annihilates A for every t in T and its inverse.
 * Verifies the Engel machinery end to end and records each step under
 * `prefix`.  Returns the verdict for this level. */
inline Verdict metabelian_engine(Certificate& cert, const std::string& prefix, const PcGroup& Q,
                                 const Subgroup& A, const std::vector<Element>& T,
                                 const IntPoly& f, const CertifyOptions& opts) {
    const long long p = Q.prime();
    auto fail = [&](CheckRecord rec) {
        cert.add(std::move(rec));
        cert.verdict = Verdict::Refuted;
        return Verdict::Refuted;
    };

    require(A.is_normal(), "metabelian_engine: section subgroup is not normal");
    AbelianSection AS = AbelianSection::make(Q, A, Subgroup::trivial(Q), opts.enum_budget);

    // Commuting hypothesis: elements of T commute pairwise modulo A.
    {
        CheckRecord rec;
        rec.name = prefix + "commuting-mod-A";
        rec.statement = "elements of T commute pairwise modulo A";
        rec.inputs = "|T| = " + std::to_string(T.size()) + ", |A| = " + std::to_string(A.order());
        rec.coverage = "exhaustive (all pairs)";
        rec.pass = true;
        for (size_t i = 0; i < T.size() && rec.pass; ++i)
            for (size_t j = i + 1; j < T.size(); ++j)
                if (!A.contains(Q.comm(T[i], T[j]))) {
                    rec.pass = false;
                    rec.witness = "[" + Q.str(T[i]) + ", " + Q.str(T[j]) + "] lies outside A";
                    break;
                }
        if (!rec.pass) return fail(std::move(rec));
        cert.add(std::move(rec));
    }

    // h = product annihilator: kills a*t for commuting t whenever f kills
    // each factor.  Start with two factors; escalate only if the direct
    // annihilation re-check fails on T.
    int m_eff = 2;
    IntPoly h = product_annihilator(f, m_eff);
    {
        SectionCheck gate = verify_annihilation(AS, h, T);
        while (!gate.pass) {
            bool can_grow = true;
            Int deg_next = 1;
            for (int i = 0; i <= m_eff; ++i) deg_next *= f.degree();
            if (deg_next > (1 << 20)) can_grow = false;
            if (!can_grow) break;
            ++m_eff;
            h = product_annihilator(f, m_eff);
            gate = verify_annihilation(AS, h, T);
        }
        CheckRecord rec;
        rec.name = prefix + "annihilator-gate";
        rec.statement = "h = product_annihilator(f, m) annihilates A for every t in T u T^-1";
        rec.inputs = "m = " + std::to_string(m_eff) + ", deg h = " + std::to_string(h.degree());
        rec.coverage = "matrix identity (all t in T u T^-1)";
        rec.pass = gate.pass;
        rec.witness = gate.witness;
        if (!rec.pass) return fail(std::move(rec));
        cert.add(std::move(rec));
        cert.set_quantity(prefix + "h", h.str());
        cert.set_quantity(prefix + "deg_h", std::to_string(h.degree()));
    }

    // Nilpotency class of the conjugation action, then the Engel exponent r:
    // gcd((X-1)^c, h) = (X-1)^r over F_p.
    int c = std::max(1, action_class(AS));
    EngelExponent ee = engel_exponent(h, c, p);
    int r = ee.r;
    cert.set_quantity(prefix + "action_class", std::to_string(c));
    cert.set_quantity(prefix + "r", std::to_string(r));

    // Separated-power identity q X^l (X^k - 1)^l in the lattice spanned by
    // the h(X^i); geometric bound escalation, exhaustion is a real verdict.
    SempleBounds bounds = opts.semple_bounds;
    SempleOutcome sem;
    int rounds = 0;
    for (;;) {
        sem = semple_search(h, bounds);
        if (sem.result) break;
        if (rounds >= opts.semple_rounds_max) break;
        ++rounds;
        bounds.deg_max *= 2;
        bounds.param_max *= 2;
    }
    {
        CheckRecord rec;
        rec.name = prefix + "separated-identity";
        rec.statement = "q * X^l * (X^k - 1)^l lies in the span of { X^j h(X^i) }";
        rec.inputs = "deg h = " + std::to_string(h.degree()) + ", bounds (i,deg,param) = (" +
                     std::to_string(sem.bounds.i_max) + "," + std::to_string(sem.bounds.deg_max) +
                     "," + std::to_string(sem.bounds.param_max) + "), escalations = " +
                     std::to_string(rounds);
        rec.coverage = "exact search with re-expanded certificate";
        if (!sem.result) {
            rec.pass = false;
            rec.witness = "search exhausted: " + sem.note;
            cert.add(std::move(rec));
            cert.verdict = Verdict::Exhausted;
            return Verdict::Exhausted;
        }
        rec.pass = verify_membership(h, sem.result->cert);
        if (!rec.pass) rec.witness = "membership certificate failed re-expansion";
        if (!rec.pass) return fail(std::move(rec));
        cert.add(std::move(rec));
    }
    const int l = sem.result->l;
    const int k = sem.result->k;
    const Int q = sem.result->q;
    const int s = p_part(q, p);
    const int n = s * r + l;
    cert.set_quantity(prefix + "l", std::to_string(l));
    cert.set_quantity(prefix + "k", std::to_string(k));
    cert.set_quantity(prefix + "q", int_str(q));
    cert.set_quantity(prefix + "s", std::to_string(s));
    cert.set_quantity(prefix + "n", std::to_string(n));
    cert.set_quantity(prefix + "semple_rounds", std::to_string(rounds));

    // Burnside generators of Q, chosen from T.
    std::vector<Element> gens =
        Q.order() == 1 ? std::vector<Element>{} : burnside_generators_from(Q, T);
    cert.set_quantity(prefix + "burnside_rank", std::to_string(gens.size()));

    // Per generator: [A,_r g] <= A^p; the stratified chain for n = s r + l;
    // and the group-level n-fold commutator [A,_n g^k] = 1 computed directly
    // in Q (independent of the matrix route).
    {
        CheckRecord rec;
        rec.name = prefix + "engel-mod-p";
        rec.statement = "[A,_r g] <= A^p for every Burnside generator g";
        rec.inputs = "r = " + std::to_string(r) + ", generators = " + std::to_string(gens.size());
        rec.coverage = "matrix identity";
        rec.pass = true;
        for (const Element& g : gens) {
            SectionCheck chk = engel_mod_p_check(AS, g, r);
            if (!chk.pass) {
                rec.pass = false;
                rec.witness = "g = " + Q.str(g) + ": " + chk.witness;
                break;
            }
        }
        if (!rec.pass) return fail(std::move(rec));
        cert.add(std::move(rec));
    }
    {
        CheckRecord rec;
        rec.name = prefix + "stratified-engel";
        rec.statement = "[A^{p^i},_r g] <= A^{p^{i+1}} (i < s), [A^{p^s},_l g^k] = 1, "
                        "and [A,_n g^k] = 1 with n = s*r + l";
        rec.inputs = "(s, r, l, k) = (" + std::to_string(s) + ", " + std::to_string(r) + ", " +
                     std::to_string(l) + ", " + std::to_string(k) + ")";
        rec.coverage = "matrix identity";
        rec.pass = true;
        for (const Element& g : gens) {
            SectionCheck chk = stratified_engel_check(AS, g, s, r, l, Int(k));
            if (!chk.pass) {
                rec.pass = false;
                rec.witness = "g = " + Q.str(g) + ": " + chk.witness;
                break;
            }
        }
        if (!rec.pass) return fail(std::move(rec));
        cert.add(std::move(rec));
    }
    if (AS.size() <= 81) {
        CheckRecord rec;
        rec.name = prefix + "engel-bruteforce-agreement";
        rec.statement = "iterated group commutators [a, g, ...r..., g] match the matrix route "
                        "(action(g) - 1)^r on all of A";
        rec.inputs = "|A| = " + std::to_string(AS.size());
        rec.coverage = "exhaustive (all a in A)";
        rec.pass = true;
        for (const Element& g : gens)
            if (!engel_bruteforce_agrees(AS, g, r)) {
                rec.pass = false;
                rec.witness = "disagreement for g = " + Q.str(g);
                break;
            }
        if (!rec.pass) return fail(std::move(rec));
        cert.add(std::move(rec));
    }
    {
        CheckRecord rec;
        rec.name = prefix + "group-engel";
        rec.statement = "[a, g^k, ...n..., g^k] = 1 in the group for every generator a of A";
        rec.inputs = "n = " + std::to_string(n) + ", k = " + std::to_string(k);
        rec.coverage = "group commutators on subgroup generators (extends to A by linearity)";
        rec.pass = true;
        for (const Element& g : gens) {
            Element gk = Q.pow(g, Int(k));
            for (const Element& a0 : A.igs()) {
                Element a = a0;
                for (int i = 0; i < n; ++i) a = Q.comm(a, gk);
                if (!Q.is_identity(a)) {
                    rec.pass = false;
                    rec.witness = "a = " + Q.str(a0) + ", g = " + Q.str(g);
                    break;
                }
            }
            if (!rec.pass) break;
        }
        if (!rec.pass) return fail(std::move(rec));
        cert.add(std::move(rec));
    }

    // |Q : Q^k Q'| <= k^d with d the Burnside rank.
    {
        Subgroup Pk = power_subgroup(Q, Int(k), opts.enum_budget);
        Subgroup Qd = derived_subgroup(Subgroup::whole(Q));
        Subgroup J = join(Pk, Qd);
        Int index = Int(Q.order()) / Int(J.order());
        Int bound = int_pow(Int(k), static_cast<int>(gens.size()));
        CheckRecord rec;
        rec.name = prefix + "power-index-bound";
        rec.statement = "|Q : Q^k Q'| <= k^d";
        rec.inputs = "index = " + int_str(index) + ", k = " + std::to_string(k) +
                     ", d = " + std::to_string(gens.size());
        rec.coverage = "subgroup computation";
        rec.pass = index <= bound;
        if (!rec.pass) rec.witness = "index " + int_str(index) + " exceeds " + int_str(bound);
        if (!rec.pass) return fail(std::move(rec));
        cert.add(std::move(rec));
    }

    // Observed classes of the cyclic extensions <g^k, A> (recorded, no bound).
    {
        int max_class = 0;
        for (const Element& g : gens) {
            std::vector<Element> hgens = A.igs();
            hgens.push_back(Q.pow(g, Int(k)));
            Subgroup H = Subgroup::closure(Q, hgens);
            max_class = std::max(max_class, nilpotency_class(H));
        }
        cert.set_quantity(prefix + "extension_class", std::to_string(max_class));
    }

    return Verdict::Passed;
}

} // namespace detail

/* Pipeline mirroring the nilpotency certification for a powerful p-group G
 * with a normal generating subset T of finite width satisfying a positive
 * law: hypothesis checks, the annihilator polynomial, and the Engel descent
 * on every section gamma_k / gamma_{k+1}' of the induction. */
inline Certificate certify_general(const PcGroup& G, const std::string& instance,
                                   const std::vector<Element>& T_in, const Law& law,
                                   const std::optional<Word>& extra_identity = std::nullopt,
                                   const CertifyOptions& opts = {}) {
    Certificate cert;
    cert.instance = instance;
    cert.pipeline = "certify-general";
    cert.section_coverage =
        opts.section_family == SectionFamily::Full ? "full" : "standard-family";
    const long long p = G.prime();
    std::vector<Element> T = sorted_unique(T_in);
    require(!T.empty(), "certify_general: empty generating subset");

    auto refute = [&]() {
        cert.verdict = Verdict::Refuted;
        return cert;
    };

    cert.set_quantity("group_order", std::to_string(G.order()));
    cert.set_quantity("prime", std::to_string(p));

    // (1) G is powerful.
    {
        PowerfulReport pw = is_powerful(G, opts.enum_budget);
        if (pw.p2_variant) cert.p2_variant = true;
        CheckRecord rec;
        rec.name = "powerful";
        rec.statement = p == 2 ? "[G, G] <= G^4" : "[G, G] <= G^p";
        rec.inputs = "|G| = " + std::to_string(G.order()) + ", p = " + std::to_string(p);
        rec.coverage = "subgroup computation";
        rec.pass = pw.powerful;
        if (!pw.powerful && pw.witness)
            rec.witness = "derived generator " + G.str(*pw.witness) + " outside the power subgroup";
        cert.add(std::move(rec));
        if (!pw.powerful) return refute();
    }

    int d = static_cast<int>(burnside_generators(G).size());
    cert.set_quantity("d", std::to_string(d));

    // (2) T is a normal subset generating G; m = width(G, T).
    int m = 0;
    {
        bool closed = is_conjugation_closed(G, T);
        WidthReport wr = width(G, T, opts.enum_budget);
        m = wr.width;
        CheckRecord rec;
        rec.name = "generating-set";
        rec.statement = "T is closed under conjugation and <T> = G";
        rec.inputs = "|T| = " + std::to_string(T.size()) + ", T = " + detail::elems_str(G, T);
        rec.coverage = "exhaustive";
        rec.pass = closed && wr.generates_whole;
        if (!closed)
            rec.witness = "T is not closed under conjugation";
        else if (!wr.generates_whole)
            rec.witness = "<T> has order " + std::to_string(wr.span) + " < " +
                          std::to_string(G.order());
        cert.add(std::move(rec));
        if (!cert.checks.back().pass) return refute();
        cert.set_quantity("m", std::to_string(m));
    }

    // (3) the positive law holds under substitutions from T.
    {
        LawCheckReport rep = check_law_on_subset(G, law, T, opts.law_budget, opts.seed);
        detail::record_law_check(cert, "law-on-T", "the positive law holds on T: " + law.text,
                                 "nvars = " + std::to_string(law.nvars), G, rep);
        if (!rep.holds) return refute();
    }

    // (4) optional extra identity v == 1 on all of G.
    if (extra_identity) {
        Law v = law_from_words(*extra_identity, Word::identity());
        std::vector<Element> all = G.all_elements(opts.enum_budget);
        LawCheckReport rep = check_law_on_subset(G, v, all, opts.law_budget, opts.seed);
        detail::record_law_check(cert, "extra-identity",
                                 "the supplied identity holds on G: " + word_str(*extra_identity) +
                                     " = 1",
                                 "nvars = " + std::to_string(v.nvars), G, rep);
        if (!rep.holds) return refute();
    }

    // (5) the annihilator polynomial f, annihilating every abelian normal
    // section of the chosen family for every t in T u T^-1.
    AnnihilatorDerivation der = derive_annihilator_f(law);
    const IntPoly& f = der.f;
    cert.set_quantity("f", f.str());
    cert.set_quantity("deg_f", std::to_string(f.degree()));
    {
        std::vector<AbelianSection> sections =
            enumerate_abelian_normal_sections(G, opts.section_family, opts.enum_budget);
        CheckRecord rec;
        rec.name = "annihilator-on-sections";
        rec.statement = "f(t) = 0 on K/L for every abelian normal section in the family and "
                        "every t in T u T^-1";
        rec.inputs = "f = " + f.str() + ", sections = " + std::to_string(sections.size());
        rec.coverage = cert.section_coverage + " (" + std::to_string(sections.size()) +
                       " sections, all t)";
        rec.pass = true;
        for (const AbelianSection& A : sections) {
            SectionCheck chk = verify_annihilation(A, f, T);
            if (!chk.pass) {
                rec.pass = false;
                rec.witness = chk.witness;
                break;
            }
        }
        cert.add(std::move(rec));
        if (!cert.checks.back().pass) return refute();
    }

    // (6) derived length.
    cert.set_quantity("derived_length", std::to_string(derived_length(Subgroup::whole(G))));

    // (7) induction levels k = 1, ..., K where K is the first k with
    // gamma_{k+1}(G)' = 1.
    std::vector<Subgroup> lcs = lower_central_series(Subgroup::whole(G));
    auto gamma = [&](int j) { // gamma_j, 1-based
        if (j - 1 < static_cast<int>(lcs.size())) return lcs[static_cast<size_t>(j - 1)];
        return Subgroup::trivial(G);
    };
    int K = 1;
    while (derived_subgroup(gamma(K + 1)).order() > 1) ++K;
    cert.set_quantity("levels", std::to_string(K));

    for (int k = 1; k <= K; ++k) {
        std::string prefix = "level" + std::to_string(k) + ".";
        std::vector<Element> Tk = build_Tk(G, T, k, opts.enum_budget);

        {
            Subgroup span = Subgroup::closure(G, Tk);
            WidthReport wr = width(G, Tk, opts.enum_budget);
            Int bound = Int(m) * int_pow(Int(d), k - 1);
            CheckRecord rec;
            rec.name = prefix + "Tk";
            rec.statement = "T_k is conjugation-closed, <T_k> = gamma_k(G), and "
                            "width(T_k) <= m * d^(k-1)";
            rec.inputs = "|T_k| = " + std::to_string(Tk.size()) + ", width = " +
                         std::to_string(wr.width) + ", bound = " + detail::int_str(bound);
            rec.coverage = "exhaustive";
            rec.pass = is_conjugation_closed(G, Tk) && span == gamma(k) && Int(wr.width) <= bound;
            if (!rec.pass) {
                if (!is_conjugation_closed(G, Tk))
                    rec.witness = "T_k is not conjugation-closed";
                else if (!(span == gamma(k)))
                    rec.witness = "<T_k> != gamma_k(G)";
                else
                    rec.witness = "width " + std::to_string(wr.width) + " exceeds " +
                                  detail::int_str(bound);
            }
            cert.add(std::move(rec));
            if (!cert.checks.back().pass) return refute();
            cert.set_quantity(prefix + "width", std::to_string(wr.width));
        }

        // Level quotient Q = gamma_k / gamma_{k+1}' acting on
        // A = gamma_{k+1} / gamma_{k+1}'.
        Subgroup gk = gamma(k), gk1 = gamma(k + 1);
        Subgroup N = derived_subgroup(gk1);
        Verdict v;
        if (gk == Subgroup::whole(G) && N.is_trivial()) {
            v = detail::metabelian_engine(cert, prefix, G, gk1, Tk, f, opts);
        } else {
            require(!gk.is_trivial(), "certify_general: empty induction level");
            IsomorphicCopy M = subgroup_to_group(gk);
            std::vector<Element> n_gens;
            for (const Element& x : N.igs()) n_gens.push_back(M.from_parent(x));
            Subgroup N_in_M = Subgroup::normal_closure(*M.group, n_gens);
            QuotientGroup Qg = quotient(*M.group, N_in_M);
            std::vector<Element> a_gens;
            for (const Element& x : gk1.igs())
                a_gens.push_back(Qg.project(M.from_parent(x)));
            Subgroup A = Subgroup::normal_closure(*Qg.group, a_gens);
            std::vector<Element> T_img;
            for (const Element& t : Tk) T_img.push_back(Qg.project(M.from_parent(t)));
            T_img = sorted_unique(std::move(T_img));
            v = detail::metabelian_engine(cert, prefix, *Qg.group, A, T_img, f, opts);
        }
        if (v != Verdict::Passed) return cert;
    }

    // (8) observed nilpotency class.
    cert.set_quantity("observed_class", std::to_string(nilpotency_class(Subgroup::whole(G))));
    cert.verdict = cert.all_passed() ? Verdict::Passed : Verdict::Refuted;
    return cert;
}

/* Pipeline for a verbal subgroup w(G): its value set G_w has finite width;
 * the positive law on G_w plus powerfulness of w(G) give nilpotency of w(G)
 * via the general pipeline, with the composed law w-substituted into the
 * original as the extra identity on G. */
inline Certificate certify_verbal(const PcGroup& G, const std::string& instance, const Word& w,
                                  const Law& law, const CertifyOptions& opts = {}) {
    Certificate cert;
    cert.instance = instance;
    cert.pipeline = "certify-verbal";
    cert.section_coverage =
        opts.section_family == SectionFamily::Full ? "full" : "standard-family";

    cert.set_quantity("group_order", std::to_string(G.order()));
    cert.set_quantity("w", word_str(w));

    WordValuesReport wv = word_values(G, w, opts.law_budget, opts.seed);
    if (!wv.exhaustive) cert.sampled = true;
    {
        CheckRecord rec;
        rec.name = "word-values";
        rec.statement = "G_w = set of values of w on G, closed under conjugation";
        rec.inputs = "w = " + word_str(w) + ", |G_w| = " + std::to_string(wv.values.size());
        rec.coverage = wv.exhaustive
                           ? "exhaustive (" + std::to_string(wv.tuples_checked) + " tuples)"
                           : "sampled (" + std::to_string(wv.tuples_checked) + " tuples)";
        rec.pass = true;
        cert.add(std::move(rec));
    }

    Subgroup W = Subgroup::closure(G, wv.values);
    cert.set_quantity("verbal_order", std::to_string(W.order()));
    if (W.is_trivial()) {
        CheckRecord rec;
        rec.name = "verbal-trivial";
        rec.statement = "w(G) = 1; nothing further to certify";
        rec.inputs = "w = " + word_str(w);
        rec.coverage = "exhaustive";
        rec.pass = true;
        cert.add(std::move(rec));
        cert.set_quantity("observed_class_w", "0");
        cert.verdict = Verdict::Passed;
        return cert;
    }

    {
        WidthReport wr = width(G, wv.values, opts.enum_budget);
        cert.set_quantity("m", std::to_string(wr.width));
        CheckRecord rec;
        rec.name = "width-of-Gw";
        rec.statement = "G_w generates w(G) with finite width";
        rec.inputs = "width = " + std::to_string(wr.width) + ", |w(G)| = " +
                     std::to_string(W.order());
        rec.coverage = "exhaustive";
        rec.pass = wr.span == W.order();
        if (!rec.pass) rec.witness = "span of G_w differs from |w(G)|";
        cert.add(std::move(rec));
        if (!cert.checks.back().pass) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    {
        LawCheckReport rep = check_law_on_subset(G, law, wv.values, opts.law_budget, opts.seed);
        detail::record_law_check(cert, "law-on-Gw",
                                 "the positive law holds on G_w: " + law.text,
                                 "nvars = " + std::to_string(law.nvars), G, rep);
        if (!rep.holds) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    IsomorphicCopy Wg = subgroup_to_group(W);
    {
        PowerfulReport pw = is_powerful(*Wg.group, opts.enum_budget);
        if (pw.p2_variant) cert.p2_variant = true;
        CheckRecord rec;
        rec.name = "verbal-powerful";
        rec.statement = "w(G) is powerful";
        rec.inputs = "|w(G)| = " + std::to_string(W.order());
        rec.coverage = "subgroup computation";
        rec.pass = pw.powerful;
        if (!pw.powerful && pw.witness)
            rec.witness = "derived generator " + Wg.group->str(*pw.witness) +
                          " outside the power subgroup";
        cert.add(std::move(rec));
        if (!pw.powerful) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    Law v = compose_law(w, law);
    {
        std::vector<Element> all = G.all_elements(opts.enum_budget);
        LawCheckReport rep = check_law_on_subset(G, v, all, opts.law_budget, opts.seed);
        detail::record_law_check(cert, "composed-law-on-G",
                                 "the w-composed law holds on all of G: " + v.text,
                                 "nvars = " + std::to_string(v.nvars), G, rep);
        if (!rep.holds) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    // Delegate to the general pipeline inside w(G).
    {
        std::vector<Element> T_in_W;
        for (const Element& t : wv.values) T_in_W.push_back(Wg.from_parent(t));
        Certificate sub = certify_general(*Wg.group, instance + "#w(G)", T_in_W, law,
                                          law_as_word(v), opts);
        for (CheckRecord rec : sub.checks) {
            rec.name = "general." + rec.name;
            cert.add(std::move(rec));
        }
        for (const auto& [key, val] : sub.quantities) cert.set_quantity("general." + key, val);
        cert.sampled = cert.sampled || sub.sampled;
        if (sub.verdict != Verdict::Passed) {
            cert.verdict = sub.verdict;
            return cert;
        }
    }

    cert.set_quantity("observed_class_w", std::to_string(nilpotency_class(W)));
    cert.verdict = cert.all_passed() ? Verdict::Passed : Verdict::Refuted;
    return cert;
}

/* N normal in G with class(N) = k and class(G/N') = c: G is nilpotent, and
 * the certificate records (k, c) next to the observed class of G; no
 * closed-form bound is asserted. */
inline Certificate hall_check(const PcGroup& G, const std::string& instance, const Subgroup& N,
                              const CertifyOptions& opts = {}) {
    Certificate cert;
    cert.instance = instance;
    cert.pipeline = "hall";
    cert.set_quantity("group_order", std::to_string(G.order()));

    {
        CheckRecord rec;
        rec.name = "normal";
        rec.statement = "N is normal in G";
        rec.inputs = "|N| = " + std::to_string(N.order());
        rec.coverage = "exhaustive";
        rec.pass = N.is_normal();
        if (!rec.pass) rec.witness = "a conjugate of an N-generator escapes N";
        cert.add(std::move(rec));
        if (!cert.checks.back().pass) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    int k = nilpotency_class(N);
    Subgroup Np = derived_subgroup(N);
    QuotientGroup Q = quotient(G, Np);
    int c = nilpotency_class(Subgroup::whole(*Q.group));
    int observed = nilpotency_class(Subgroup::whole(G));
    cert.set_quantity("k", std::to_string(k));
    cert.set_quantity("c", std::to_string(c));
    cert.set_quantity("observed_class", std::to_string(observed));

    CheckRecord rec;
    rec.name = "nilpotent";
    rec.statement = "G is nilpotent (lower central series reaches 1)";
    rec.inputs = "class(N) = " + std::to_string(k) + ", class(G/N') = " + std::to_string(c);
    rec.coverage = "subgroup computation";
    rec.pass = true;
    rec.witness = "";
    cert.add(std::move(rec));
    cert.verdict = Verdict::Passed;
    return cert;
}

/* G powerful, N normal nilpotent of class c, e = exp(G/N): verifies
 * gamma_{c+1}(G^e) = 1 and the c-fold commutator [G^{e^{c+1}}, G, ..., G] = 1,
 * finds the least k with gamma_{k+1}(G) <= G^{e^{c+1}}, and checks
 * class(G) <= k + c. */
inline Certificate nbf_powerful_check(const PcGroup& G, const std::string& instance,
                                      const Subgroup& N, const CertifyOptions& opts = {}) {
    Certificate cert;
    cert.instance = instance;
    cert.pipeline = "nbf-powerful";
    cert.set_quantity("group_order", std::to_string(G.order()));
    if (G.prime() == 2) cert.p2_variant = true;

    {
        PowerfulReport pw = is_powerful(G, opts.enum_budget);
        CheckRecord rec;
        rec.name = "powerful";
        rec.statement = G.prime() == 2 ? "[G, G] <= G^4" : "[G, G] <= G^p";
        rec.inputs = "|G| = " + std::to_string(G.order());
        rec.coverage = "subgroup computation";
        rec.pass = pw.powerful;
        if (!pw.powerful && pw.witness)
            rec.witness = "derived generator " + G.str(*pw.witness) + " outside the power subgroup";
        cert.add(std::move(rec));
        if (!pw.powerful) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }
    {
        CheckRecord rec;
        rec.name = "normal";
        rec.statement = "N is normal in G";
        rec.inputs = "|N| = " + std::to_string(N.order());
        rec.coverage = "exhaustive";
        rec.pass = N.is_normal();
        cert.add(std::move(rec));
        if (!cert.checks.back().pass) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    int c = nilpotency_class(N);
    unsigned long long e = 1;
    if (N == Subgroup::whole(G)) {
        e = 1;
    } else {
        QuotientGroup Q = quotient(G, N);
        e = exponent_of(*Q.group, opts.enum_budget);
    }
    cert.set_quantity("c", std::to_string(c));
    cert.set_quantity("e", std::to_string(e));

    {
        Subgroup Ge = power_subgroup(G, Int(e), opts.enum_budget);
        std::vector<Subgroup> series = lower_central_series(Ge);
        bool pass = static_cast<int>(series.size()) <= c + 1; // gamma_{c+1}(G^e) = 1
        CheckRecord rec;
        rec.name = "power-subgroup-class";
        rec.statement = "gamma_{c+1}(G^e) = 1";
        rec.inputs = "e = " + std::to_string(e) + ", c = " + std::to_string(c) +
                     ", |G^e| = " + std::to_string(Ge.order());
        rec.coverage = "subgroup computation";
        rec.pass = pass;
        if (!pass) rec.witness = "class(G^e) = " + std::to_string(series.size() - 1);
        cert.add(std::move(rec));
        if (!pass) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    Int E = int_pow(Int(e), c + 1);
    Subgroup H0 = power_subgroup(G, E, opts.enum_budget);
    {
        Subgroup H = H0;
        for (int i = 0; i < c; ++i) H = commutator_subgroup(H, Subgroup::whole(G));
        CheckRecord rec;
        rec.name = "long-commutator";
        rec.statement = "[G^{e^{c+1}}, G, ...c..., G] = 1";
        rec.inputs = "e^{c+1} = " + detail::int_str(E) + ", |G^{e^{c+1}}| = " +
                     std::to_string(H0.order());
        rec.coverage = "subgroup computation";
        rec.pass = H.is_trivial();
        if (!rec.pass) rec.witness = "residual subgroup of order " + std::to_string(H.order());
        cert.add(std::move(rec));
        if (!cert.checks.back().pass) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    std::vector<Subgroup> lcs = lower_central_series(Subgroup::whole(G));
    int k = -1;
    for (size_t j = 0; j < lcs.size(); ++j)
        if (H0.contains(lcs[j])) {
            k = static_cast<int>(j);
            break;
        }
    require(k >= 0, "nbf_powerful_check: no lower-central term inside G^{e^{c+1}}");
    cert.set_quantity("k", std::to_string(k));

    int observed = static_cast<int>(lcs.size()) - 1;
    cert.set_quantity("observed_class", std::to_string(observed));
    {
        CheckRecord rec;
        rec.name = "class-bound";
        rec.statement = "class(G) <= k + c";
        rec.inputs = "k = " + std::to_string(k) + ", c = " + std::to_string(c) +
                     ", class(G) = " + std::to_string(observed);
        rec.coverage = "subgroup computation";
        rec.pass = observed <= k + c;
        if (!rec.pass) rec.witness = "class exceeds k + c";
        cert.add(std::move(rec));
    }
    cert.verdict = cert.all_passed() ? Verdict::Passed : Verdict::Refuted;
    return cert;
}

/* For a law v holding on G: the least k with gamma_k((G^{k!})') = 1. */
inline Certificate black_check(const PcGroup& G, const std::string& instance, const Law& v,
                               const CertifyOptions& opts = {}) {
    Certificate cert;
    cert.instance = instance;
    cert.pipeline = "black";
    cert.set_quantity("group_order", std::to_string(G.order()));

    {
        std::vector<Element> all = G.all_elements(opts.enum_budget);
        LawCheckReport rep = check_law_on_subset(G, v, all, opts.law_budget, opts.seed);
        detail::record_law_check(cert, "law-on-G", "the law holds on G: " + v.text,
                                 "nvars = " + std::to_string(v.nvars), G, rep);
        if (!rep.holds) {
            cert.verdict = Verdict::Refuted;
            return cert;
        }
    }

    int found = -1;
    for (int k = 1; k <= 20 && found < 0; ++k) {
        Subgroup P = power_subgroup(G, factorial(k), opts.enum_budget);
        Subgroup D = derived_subgroup(P);
        if (nilpotency_class(D) <= k - 1) found = k;
    }
    require(found >= 1, "black_check: no k <= 20 works; group exponent too large");
    cert.set_quantity("k", std::to_string(found));
    {
        CheckRecord rec;
        rec.name = "gamma-k-vanishes";
        rec.statement = "gamma_k((G^{k!})') = 1 for the recorded k, minimal such";
        rec.inputs = "k = " + std::to_string(found);
        rec.coverage = "subgroup computation";
        rec.pass = true;
        cert.add(std::move(rec));
    }
    cert.verdict = Verdict::Passed;
    return cert;
}

} // namespace nilcert
