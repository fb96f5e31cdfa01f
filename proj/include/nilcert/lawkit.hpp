#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "intpoly.hpp"
#include "quotient.hpp"
#include "subgroup.hpp"
#include "word.hpp"

namespace nilcert {

// --- subsets under conjugation ---------------------------------------------

inline std::vector<Element> sorted_unique(std::vector<Element> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/* Smallest conjugation-closed superset of the seeds. */
inline std::vector<Element> conjugation_closure(const PcGroup& G, const std::vector<Element>& seeds,
                                                unsigned long long budget = 1000000) {
    std::set<Element> seen(seeds.begin(), seeds.end());
    std::deque<Element> work(seeds.begin(), seeds.end());
    while (!work.empty()) {
        Element x = work.front();
        work.pop_front();
        for (int i = 0; i < G.ngens(); ++i) {
            Element y = G.conj(x, G.generator(i));
            if (seen.insert(y).second) {
                require_budget(seen.size() <= budget, "conjugation_closure: budget exceeded");
                work.push_back(y);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

inline bool is_conjugation_closed(const PcGroup& G, const std::vector<Element>& T) {
    std::set<Element> set(T.begin(), T.end());
    for (const Element& t : T)
        for (int i = 0; i < G.ngens(); ++i)
            if (!set.count(G.conj(t, G.generator(i)))) return false;
    return true;
}

// --- width -------------------------------------------------------------------

struct WidthReport {
    int width = 0;                    // least m with ball(m) = <T>
    unsigned long long span = 1;      // |<T>|
    bool generates_whole = false;     // <T> = G
};

/* Breadth-first search over products of elements of T and their inverses;
 * the identity is the empty product.  width(T) = m means every element of
 * <T> is a product of at most m factors from T u T^{-1}, and some element
 * needs exactly m. */
inline WidthReport width(const PcGroup& G, const std::vector<Element>& T,
                         unsigned long long budget = 1000000) {
    require(!T.empty(), "width: empty subset");
    std::vector<Element> alphabet;
    for (const Element& t : T) {
        alphabet.push_back(t);
        alphabet.push_back(G.inv(t));
    }
    alphabet = sorted_unique(std::move(alphabet));

    std::unordered_set<Element, ElementHash> seen;
    seen.insert(G.identity());
    std::vector<Element> frontier{G.identity()};
    WidthReport rep;
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const Element& x : frontier)
            for (const Element& t : alphabet) {
                Element y = G.mul(x, t);
                if (seen.insert(y).second) {
                    require_budget(seen.size() <= budget, "width: budget exceeded");
                    next.push_back(y);
                }
            }
        if (!next.empty()) ++rep.width;
        frontier = std::move(next);
    }
    rep.span = seen.size();
    rep.generates_whole = (rep.span == G.order());
    return rep;
}

/* Shortest expression of y as a product of factors from T u T^{-1},
 * by breadth-first search with parent tracking. */
inline std::optional<std::vector<Element>> shortest_expression(const PcGroup& G,
                                                               const std::vector<Element>& T,
                                                               const Element& y,
                                                               unsigned long long budget = 1000000) {
    std::vector<Element> alphabet;
    for (const Element& t : T) {
        alphabet.push_back(t);
        alphabet.push_back(G.inv(t));
    }
    alphabet = sorted_unique(std::move(alphabet));

    std::unordered_map<Element, std::pair<Element, Element>, ElementHash> parent; // x -> (prev, factor)
    std::unordered_set<Element, ElementHash> seen;
    seen.insert(G.identity());
    std::deque<Element> work{G.identity()};
    while (!work.empty() && !seen.count(y)) {
        Element x = work.front();
        work.pop_front();
        for (const Element& t : alphabet) {
            Element z = G.mul(x, t);
            if (seen.insert(z).second) {
                require_budget(seen.size() <= budget, "shortest_expression: budget exceeded");
                parent.emplace(z, std::make_pair(x, t));
                work.push_back(z);
            }
        }
    }
    if (!seen.count(y)) return std::nullopt;
    std::vector<Element> factors;
    Element cur = y;
    while (!G.is_identity(cur)) {
        auto it = parent.find(cur);
        factors.push_back(it->second.second);
        cur = it->second.first;
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

// --- law checking -------------------------------------------------------------

struct LawCheckReport {
    bool holds = true;
    bool exhaustive = true;
    unsigned long long tuples_checked = 0;
    std::vector<Element> counterexample; // nonempty iff holds == false
};

/* Test a law under substitutions from T.  All |T|^nvars tuples when that
 * fits the budget; otherwise fixed-seed uniform sampling, flagged. */
inline LawCheckReport check_law_on_subset(const PcGroup& G, const Law& law,
                                          const std::vector<Element>& T,
                                          unsigned long long budget = 10000000,
                                          uint64_t seed = 0x9e3779b97f4a7c15ull) {
    LawCheckReport rep;
    const int k = law.nvars;
    if (k == 0) { // constant law: one evaluation decides it
        std::vector<Element> args;
        rep.tuples_checked = 1;
        rep.holds = evaluate_word(G, law.lhs, args) == evaluate_word(G, law.rhs, args);
        return rep;
    }
    require(!T.empty(), "check_law_on_subset: empty substitution set");

    unsigned long long space = 1;
    bool overflow = false;
    for (int i = 0; i < k; ++i) {
        if (space > budget / T.size() + 1) {
            overflow = true;
            break;
        }
        space *= T.size();
    }
    auto test = [&](const std::vector<Element>& args) {
        ++rep.tuples_checked;
        if (evaluate_word(G, law.lhs, args) != evaluate_word(G, law.rhs, args)) {
            rep.holds = false;
            rep.counterexample = args;
            return false;
        }
        return true;
    };
    if (!overflow && space <= budget) {
        std::vector<size_t> idx(static_cast<size_t>(k), 0);
        std::vector<Element> args(static_cast<size_t>(k), G.identity());
        for (;;) {
            for (int i = 0; i < k; ++i) args[static_cast<size_t>(i)] = T[idx[static_cast<size_t>(i)]];
            if (!test(args)) return rep;
            int pos = k - 1;
            while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == T.size()) {
                idx[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        return rep;
    }
    rep.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, T.size() - 1);
    std::vector<Element> args(static_cast<size_t>(k), G.identity());
    for (unsigned long long trial = 0; trial < budget; ++trial) {
        for (int i = 0; i < k; ++i) args[static_cast<size_t>(i)] = T[pick(rng)];
        if (!test(args)) return rep;
    }
    return rep;
}

// --- word values and verbal subgroups ----------------------------------------

struct WordValuesReport {
    std::vector<Element> values; // sorted, conjugation-closed
    bool exhaustive = true;
    unsigned long long tuples_checked = 0;
};

/* The set of values w(g_1, ..., g_r) over tuples from G.  Exhaustive when
 * |G|^r fits the budget; otherwise a sampled subset, closed under
 * conjugation (value sets always are), with the sampled flag raised. */
inline WordValuesReport word_values(const PcGroup& G, const Word& w,
                                    unsigned long long budget = 10000000,
                                    uint64_t seed = 0x9e3779b97f4a7c15ull) {
    WordValuesReport rep;
    const int r = max_variable(w);
    std::set<Element> vals;
    if (r == 0) {
        vals.insert(evaluate_word(G, w, std::vector<Element>{}));
        rep.tuples_checked = 1;
        rep.values.assign(vals.begin(), vals.end());
        return rep;
    }
    unsigned long long space = 1;
    bool overflow = false;
    for (int i = 0; i < r; ++i) {
        if (space > budget / G.order() + 1) {
            overflow = true;
            break;
        }
        space *= G.order();
    }
    std::vector<Element> args(static_cast<size_t>(r), G.identity());
    if (!overflow && space <= budget) {
        std::vector<uint64_t> idx(static_cast<size_t>(r), 0);
        for (;;) {
            for (int i = 0; i < r; ++i) args[static_cast<size_t>(i)] = G.element_at(idx[static_cast<size_t>(i)]);
            ++rep.tuples_checked;
            vals.insert(evaluate_word(G, w, args));
            int pos = r - 1;
            while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == G.order()) {
                idx[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    } else {
        rep.exhaustive = false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<uint64_t> pick(0, G.order() - 1);
        for (unsigned long long trial = 0; trial < budget; ++trial) {
            for (int i = 0; i < r; ++i) args[static_cast<size_t>(i)] = G.element_at(pick(rng));
            ++rep.tuples_checked;
            vals.insert(evaluate_word(G, w, args));
        }
    }
    rep.values = conjugation_closure(G, {vals.begin(), vals.end()});
    require(!rep.exhaustive || is_conjugation_closed(G, rep.values),
            "word_values: value set is not conjugation-closed");
    return rep;
}

inline Subgroup verbal_subgroup(const PcGroup& G, const Word& w,
                                unsigned long long budget = 10000000) {
    WordValuesReport rep = word_values(G, w, budget);
    return Subgroup::closure(G, rep.values);
}

// --- Burnside generators -------------------------------------------------------

/* A minimal generating tuple drawn from the candidate list, obtained by
 * lifting a basis of G modulo its Frattini subgroup.  Candidates are scanned
 * in order and kept when their Frattini-quotient image is linearly
 * independent from those already chosen. */
inline std::vector<Element> burnside_generators_from(const PcGroup& G,
                                                     const std::vector<Element>& candidates) {
    Subgroup frat = frattini_subgroup(G);
    std::vector<Element> chosen;
    if (G.order() == 1) return chosen;
    require(!frat.contains(Subgroup::whole(G)) || G.order() == 1,
            "burnside_generators_from: Frattini subgroup is the whole group");

    QuotientGroup Q = quotient(G, frat);
    const long long p = Q.group->prime();
    const int dim = Q.group->ngens();
    // Gaussian elimination over F_p on quotient exponent vectors.
    std::vector<std::vector<long long>> basis; // reduced rows
    std::vector<int> pivot_of;                 // pivot column per basis row
    auto reduce = [&](std::vector<long long> v) {
        for (size_t r = 0; r < basis.size(); ++r) {
            int c = pivot_of[r];
            long long coef = v[static_cast<size_t>(c)];
            if (coef == 0) continue;
            for (int j = 0; j < dim; ++j)
                v[static_cast<size_t>(j)] =
                    ((v[static_cast<size_t>(j)] - coef * basis[r][static_cast<size_t>(j)]) % p + p) % p;
        }
        return v;
    };
    for (const Element& cand : candidates) {
        Element img = Q.project(cand);
        std::vector<long long> v(static_cast<size_t>(dim));
        for (int j = 0; j < dim; ++j) v[static_cast<size_t>(j)] = img.e[static_cast<size_t>(j)];
        v = reduce(std::move(v));
        int piv = -1;
        for (int j = 0; j < dim; ++j)
            if (v[static_cast<size_t>(j)] != 0) {
                piv = j;
                break;
            }
        if (piv < 0) continue;
        long long inv = mod_inverse(v[static_cast<size_t>(piv)], p);
        for (int j = 0; j < dim; ++j) v[static_cast<size_t>(j)] = (v[static_cast<size_t>(j)] * inv) % p;
        basis.push_back(std::move(v));
        pivot_of.push_back(piv);
        chosen.push_back(cand);
        if (static_cast<int>(chosen.size()) == dim) break;
    }
    require(static_cast<int>(chosen.size()) == dim,
            "burnside_generators_from: candidates do not generate the group");
    require(Subgroup::closure(G, chosen) == Subgroup::whole(G),
            "burnside_generators_from: chosen tuple fails to generate");
    return chosen;
}

inline std::vector<Element> burnside_generators(const PcGroup& G) {
    std::vector<Element> gens;
    for (int i = 0; i < G.ngens(); ++i) gens.push_back(G.generator(i));
    return burnside_generators_from(G, gens);
}

// --- T_k ----------------------------------------------------------------------

/* T_k = set of left-normed commutators [t_1, ..., t_k] over t_i in T.
 * Computed level by level: values of [s, t] over s in T_{k-1}, t in T. */
inline std::vector<Element> build_Tk(const PcGroup& G, const std::vector<Element>& T, int k,
                                     unsigned long long budget = 1000000) {
    require(k >= 1, "build_Tk: k must be at least 1");
    std::vector<Element> level = sorted_unique(T);
    for (int j = 2; j <= k; ++j) {
        std::set<Element> next;
        for (const Element& s : level)
            for (const Element& t : T) {
                next.insert(G.comm(s, t));
                require_budget(next.size() <= budget, "build_Tk: budget exceeded");
            }
        level.assign(next.begin(), next.end());
    }
    return level;
}

// --- decomposition of gamma_k values -------------------------------------------

struct GammaFactorization {
    std::vector<Element> factors;     // each lies in T_k u T_k^{-1}
    unsigned long long bound = 0;     // m * d^(k-1)
};

namespace detail {

/* y = [g_1, t_1] ... [g_d, t_d] with g_i ranging over the source subgroup:
 * dynamic program over partial products, preferring trivial factors, with
 * the first witness per commutator value taken in element order. */
inline std::vector<Element> segal_decomposition(const PcGroup& G, const Subgroup& source,
                                                const std::vector<Element>& tuple,
                                                const Element& y,
                                                unsigned long long budget) {
    const size_t d = tuple.size();
    std::vector<Element> src = source.elements(budget);
    std::sort(src.begin(), src.end());

    // Per position i: commutator value -> first witness g (element order).
    std::vector<std::vector<std::pair<Element, Element>>> options(d); // (value, witness)
    for (size_t i = 0; i < d; ++i) {
        std::map<Element, Element> first;
        for (const Element& g : src) {
            Element v = G.comm(g, tuple[i]);
            first.emplace(v, g); // keeps the earliest witness
        }
        // Trivial value first, then the remaining values in element order.
        auto it = first.find(G.identity());
        require(it != first.end(), "segal_decomposition: missing trivial commutator");
        options[i].emplace_back(it->first, it->second);
        for (const auto& [v, g] : first)
            if (!G.is_identity(v)) options[i].emplace_back(v, g);
    }

    // reach[i]: partial product after i factors -> (previous product, option index).
    std::vector<std::map<Element, std::pair<Element, size_t>>> reach(d + 1);
    reach[0].emplace(G.identity(), std::make_pair(G.identity(), size_t{0}));
    for (size_t i = 0; i < d; ++i)
        for (const auto& [r, back] : reach[i]) {
            (void)back;
            for (size_t oi = 0; oi < options[i].size(); ++oi) {
                Element z = G.mul(r, options[i][oi].first);
                reach[i + 1].emplace(z, std::make_pair(r, oi));
            }
        }
    require(reach[d].count(y), "segal_decomposition: value not reachable (not in the target term?)");

    std::vector<Element> witnesses(d);
    Element cur = y;
    for (size_t i = d; i-- > 0;) {
        auto [prev, oi] = reach[i + 1].at(cur);
        witnesses[i] = options[i][oi].second;
        cur = prev;
    }
    require(G.is_identity(cur), "segal_decomposition: backtrack failed");
    return witnesses;
}

} // namespace detail

/* Express y in gamma_k(G) as a short product of factors from T_k u T_k^{-1}.
 *
 * Recursion on k: for k = 1, a shortest expression over T u T^{-1} (length
 * at most the width m).  For k >= 2, write y = [g_1, t_1] ... [g_d, t_d]
 * with g_i in gamma_{k-1}(G) and t_i the Burnside tuple chosen from T, then
 * expand each [g_i, t_i] via [u v, t] = [u, t]^v [v, t] after recursively
 * factoring g_i = u_1 ... u_s over T_{k-1} u T_{k-1}^{-1}; conjugates stay
 * inside T_k because T_k is a normal subset, and inverse letters use
 * [u^{-1}, t] = ([u, t]^{u^{-1}})^{-1}.  The factor count is bounded by
 * m * d^(k-1). */
inline GammaFactorization express_gamma_k(const PcGroup& G, const std::vector<Element>& T, int k,
                                          const Element& y, unsigned long long budget = 1000000) {
    require(k >= 1, "express_gamma_k: k must be at least 1");
    WidthReport wrep = width(G, T, budget);
    require(wrep.generates_whole, "express_gamma_k: T does not generate the group");
    const unsigned long long m = static_cast<unsigned long long>(wrep.width);
    std::vector<Element> burnside = burnside_generators_from(G, sorted_unique(T));
    const unsigned long long d = burnside.size();

    std::vector<Subgroup> lcs = lower_central_series(Subgroup::whole(G));
    auto gamma = [&](int j) -> Subgroup {
        if (static_cast<size_t>(j) <= lcs.size()) return lcs[static_cast<size_t>(j - 1)];
        return Subgroup::trivial(G);
    };
    require(gamma(k).contains(y), "express_gamma_k: y does not lie in the target term");

    // factor lists per level, built recursively
    std::function<std::vector<Element>(int, const Element&)> expand =
        [&](int level, const Element& target) -> std::vector<Element> {
        if (G.is_identity(target)) return {};
        if (level == 1) {
            auto expr = shortest_expression(G, T, target, budget);
            require(expr.has_value(), "express_gamma_k: element outside <T>");
            return *expr;
        }
        std::vector<Element> witnesses =
            detail::segal_decomposition(G, gamma(level - 1), burnside, target, budget);
        std::vector<Element> out;
        for (size_t i = 0; i < witnesses.size(); ++i) {
            const Element& g = witnesses[i];
            const Element& t = burnside[i];
            if (G.is_identity(g)) continue;
            std::vector<Element> letters = expand(level - 1, g); // g = u_1 ... u_s
            // [u_1 ... u_s, t] = [u_1, t]^{u_2...u_s} * [u_2 ... u_s, t]
            for (size_t j = 0; j < letters.size(); ++j) {
                Element base = G.comm(letters[j], t);
                Element rest = G.identity();
                for (size_t l = j + 1; l < letters.size(); ++l) rest = G.mul(rest, letters[l]);
                out.push_back(G.conj(base, rest));
            }
        }
        return out;
    };

    GammaFactorization fac;
    fac.factors = expand(k, y);
    unsigned long long bound = m;
    for (int j = 1; j < k; ++j) bound *= d;
    fac.bound = bound;
    require(fac.factors.size() <= bound, "express_gamma_k: factor bound exceeded");

    Element prod = G.identity();
    for (const Element& f : fac.factors) prod = G.mul(prod, f);
    require(prod == y, "express_gamma_k: factorization does not multiply back to the input");
    return fac;
}

// --- annihilator polynomial from a positive law ---------------------------------

struct AnnihilatorDerivation {
    IntPoly f;        // the annihilator, monic, degree <= 2 * degree(law)
    IntPoly f_plus;   // factor derived from the action of the variable
    IntPoly f_minus;  // factor derived from the inverse action (reciprocal)
    int variable = 0; // which law variable produced the minimal-degree factor
};

/* Symbolic evaluation of the positive law in the generic model: a free
 * rank-one module over Z[X, X^{-1}] acted on by a cyclic group <t>, where X
 * stands for conjugation by t.  Substituting a*t (a in the module) for one
 * chosen variable v and t for all others, each side w of the law evaluates
 * to a module coefficient P_w(X) = sum over occurrences s of v in w of
 * X^{len(w)-s}.  The law forces (X-1)*(P_alpha - P_beta) to annihilate the
 * module sections, and the inverse substitution forces the reciprocal
 * polynomial; f is the product of the two, normalized monic. */
inline AnnihilatorDerivation derive_annihilator_f(const Law& law) {
    require(law.positive, "derive_annihilator_f: the law must be positive");
    require(law.alpha != law.beta, "derive_annihilator_f: degenerate law (identical sides)");

    auto occurrence_poly = [](const std::vector<int>& word, int v) {
        std::vector<Int> c(word.size(), Int(0));
        for (size_t s = 1; s <= word.size(); ++s)
            if (word[s - 1] == v) c[word.size() - s] = 1;
        return IntPoly(std::move(c));
    };

    std::optional<AnnihilatorDerivation> best;
    for (int v = 1; v <= law.nvars; ++v) {
        IntPoly delta = occurrence_poly(law.alpha, v) - occurrence_poly(law.beta, v);
        if (delta.is_zero()) continue;
        IntPoly d = (IntPoly({-1, 1}) * delta).cleared().sign_normalized();
        if (!best || d.degree() < best->f_plus.degree()) {
            AnnihilatorDerivation cand;
            cand.f_plus = d;
            cand.f_minus = d.reciprocal().sign_normalized();
            cand.f = cand.f_plus * cand.f_minus;
            cand.variable = v;
            best = std::move(cand);
        }
    }
    require(best.has_value(), "derive_annihilator_f: law carries no abelian content");
    require(best->f.is_monic(), "derive_annihilator_f: result is not monic");
    require(best->f.degree() <= 2 * law.degree,
            "derive_annihilator_f: degree exceeds twice the law degree");
    return *best;
}

// --- law composition -------------------------------------------------------------

/* Substitute the word w (in l variables) into each variable of the law (in
 * k variables), using disjoint fresh variables per slot: law variable i
 * receives w with its x_j renamed to x_{(i-1)l + j}.  The result is a law in
 * k*l variables that holds in G whenever the original law holds on the set
 * of w-values of G. */
inline Law compose_law(const Word& w, const Law& law) {
    const int l = std::max(1, max_variable(w));
    auto substituted = [&](const Word& side) {
        std::map<std::string, Word> repl;
        for (int i = 1; i <= law.nvars; ++i) {
            std::map<std::string, Word> shift;
            for (int j = 1; j <= l; ++j)
                shift.emplace("x" + std::to_string(j),
                              Word::sym("x" + std::to_string((i - 1) * l + j)));
            repl.emplace("x" + std::to_string(i), substitute_symbols(w, shift));
        }
        return substitute_symbols(side, repl);
    };
    return law_from_words(substituted(law.lhs), substituted(law.rhs));
}

/* The composed law as a single word v with v == 1 equivalent to the law. */
inline Word law_as_word(const Law& law) {
    if (law.rhs.kind == Word::Kind::Product && law.rhs.parts.empty()) return law.lhs;
    return Word::product({law.lhs, Word::power(law.rhs, -1)});
}

} // namespace nilcert
