#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

#include "bigint.hpp"
#include "common.hpp"
#include "pcgroup.hpp"

namespace nilcert {

/* Subgroup of a PcGroup held as a canonical induced generating sequence:
 * one generator per occupied leading index, leading exponent 1, fully reduced
 * (zero exponents at every other occupied leading index).  Two Subgroup
 * objects represent the same subgroup iff their slot vectors are equal. */
class Subgroup {
public:
    static Subgroup trivial(const PcGroup& G) { return Subgroup(G); }

    static Subgroup closure(const PcGroup& G, const std::vector<Element>& gens) {
        Subgroup H(G);
        H.close_over(gens, {});
        return H;
    }

    /* Closure of gens that is additionally stable under conjugation by each
     * element of `conjugators` (it suffices to conjugate the installed
     * generators: conjugation distributes over products and inverses). */
    static Subgroup closure_normalized_by(const PcGroup& G, const std::vector<Element>& gens,
                                          const std::vector<Element>& conjugators) {
        Subgroup H(G);
        H.close_over(gens, conjugators);
        return H;
    }

    /* Smallest subgroup containing gens and closed under conjugation by the
     * ambient pc generators; since those generate G and the result is finite,
     * this is the normal closure. */
    static Subgroup normal_closure(const PcGroup& G, const std::vector<Element>& gens) {
        std::vector<Element> conj;
        for (int i = 0; i < G.ngens(); ++i) conj.push_back(G.generator(i));
        Subgroup H(G);
        H.close_over(gens, conj);
        return H;
    }

    static Subgroup whole(const PcGroup& G) {
        std::vector<Element> gens;
        for (int i = 0; i < G.ngens(); ++i) gens.push_back(G.generator(i));
        return closure(G, gens);
    }

    const PcGroup& group() const { return *G_; }

    int rank() const { return static_cast<int>(leads_.size()); }

    unsigned long long order() const {
        unsigned long long o = 1;
        for (size_t i = 0; i < leads_.size(); ++i) o *= static_cast<unsigned long long>(G_->prime());
        return o;
    }

    bool is_trivial() const { return leads_.empty(); }

    const std::vector<int>& leading_indices() const { return leads_; }

    std::vector<Element> igs() const {
        std::vector<Element> out;
        for (int i : leads_) out.push_back(*slot_[static_cast<size_t>(i)]);
        return out;
    }

    bool contains(const Element& x) const { return G_->is_identity(sift(x)); }

    bool contains(const Subgroup& other) const {
        for (const Element& g : other.igs())
            if (!contains(g)) return false;
        return true;
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.G_ == b.G_ && a.leads_ == b.leads_ && a.slots_equal(b);
    }
    friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

    bool is_normal() const {
        for (const Element& x : igs())
            for (int g = 0; g < G_->ngens(); ++g)
                if (!contains(G_->conj(x, G_->generator(g)))) return false;
        return true;
    }

    /* Unique right-coset representative with zero exponents at the leading
     * indices: multiply on the right by slot powers, lowest lead first. */
    Element coset_rep(const Element& x) const {
        Element r = x;
        const long long p = G_->prime();
        for (int i : leads_) {
            int e = r.e[static_cast<size_t>(i)];
            if (e)
                r = G_->mul(r, G_->pow(*slot_[static_cast<size_t>(i)], p - e));
        }
        return r;
    }

    /* Exponents (c_1, ..., c_r) with x = s_1^{c_1} * ... * s_r^{c_r} over the
     * canonical generators in lead order; error if x lies outside. */
    std::vector<int> coordinates(const Element& x) const {
        std::vector<int> c(leads_.size(), 0);
        Element r = x;
        for (size_t t = 0; t < leads_.size(); ++t) {
            int i = leads_[t];
            int e = r.e[static_cast<size_t>(i)];
            c[t] = e;
            // Strip with a true inverse power: s^{p-e} only equals s^{-e} when
            // s^p = 1, and canonical generators can have order p^2 or more.
            if (e)
                r = G_->mul(G_->pow(*slot_[static_cast<size_t>(i)], Int(-e)), r);
        }
        require(G_->is_identity(r), "coordinates: element lies outside the subgroup");
        return c;
    }

    std::vector<Element> elements(unsigned long long budget = 1000000) const {
        require_budget(order() <= budget, "elements: subgroup order exceeds enumeration budget");
        std::vector<Element> out{G_->identity()};
        for (int i = static_cast<int>(leads_.size()) - 1; i >= 0; --i) {
            const Element& s = *slot_[static_cast<size_t>(leads_[static_cast<size_t>(i)])];
            std::vector<Element> next;
            next.reserve(out.size() * static_cast<size_t>(G_->prime()));
            Element power = G_->identity();
            for (long long e = 0; e < G_->prime(); ++e) {
                for (const Element& tail : out) next.push_back(G_->mul(power, tail));
                power = G_->mul(power, s);
            }
            out = std::move(next);
        }
        return out;
    }

private:
    explicit Subgroup(const PcGroup& G) : G_(&G), slot_(static_cast<size_t>(G.ngens())) {}

    bool slots_equal(const Subgroup& b) const {
        for (int i : leads_)
            if (*slot_[static_cast<size_t>(i)] != *b.slot_[static_cast<size_t>(i)]) return false;
        return true;
    }

    static int lead(const Element& x) {
        for (size_t i = 0; i < x.e.size(); ++i)
            if (x.e[i]) return static_cast<int>(i);
        return -1;
    }

    Element sift(const Element& x) const {
        Element r = x;
        const long long p = G_->prime();
        while (true) {
            int i = lead(r);
            if (i < 0) return r;
            const auto& s = slot_[static_cast<size_t>(i)];
            if (!s) return r;
            int e = r.e[static_cast<size_t>(i)];
            r = G_->mul(G_->pow(*s, p - e), r);
        }
    }

    void close_over(const std::vector<Element>& gens, const std::vector<Element>& conjugators) {
        std::deque<Element> work(gens.begin(), gens.end());
        const long long p = G_->prime();
        while (!work.empty()) {
            Element x = sift(work.front());
            work.pop_front();
            int i = lead(x);
            if (i < 0) continue;
            // Normalize the leading exponent to 1, then install the new slot.
            int e = x.e[static_cast<size_t>(i)];
            if (e != 1) x = G_->pow(x, mod_inverse(e, p));
            slot_[static_cast<size_t>(i)] = x;
            leads_.insert(std::lower_bound(leads_.begin(), leads_.end(), i), i);
            // Closure obligations: p-th power, commutators with existing slots,
            // and conjugates under the requested conjugating set.
            work.push_back(G_->pow(x, p));
            for (int j : leads_)
                if (j != i) work.push_back(G_->comm(x, *slot_[static_cast<size_t>(j)]));
            for (const Element& c : conjugators) work.push_back(G_->conj(x, c));
        }
        reduce_slots();
    }

    /* Full reduction: clear every other occupied lead position from each slot,
     * ascending above the slot's own lead, giving the canonical form. */
    void reduce_slots() {
        const long long p = G_->prime();
        for (int idx = static_cast<int>(leads_.size()) - 1; idx >= 0; --idx) {
            int i = leads_[static_cast<size_t>(idx)];
            Element& s = *slot_[static_cast<size_t>(i)];
            for (size_t t = static_cast<size_t>(idx) + 1; t < leads_.size(); ++t) {
                int j = leads_[t];
                int e = s.e[static_cast<size_t>(j)];
                if (e)
                    s = G_->mul(s, G_->pow(*slot_[static_cast<size_t>(j)], p - e));
            }
        }
    }

    const PcGroup* G_;
    std::vector<std::optional<Element>> slot_;
    std::vector<int> leads_; // sorted occupied leading indices
};

/* Join <A, B>. */
inline Subgroup join(const Subgroup& A, const Subgroup& B) {
    std::vector<Element> gens = A.igs();
    for (const Element& g : B.igs()) gens.push_back(g);
    return Subgroup::closure(A.group(), gens);
}

/* Commutator subgroup [H, K]: the closure of the generator-pair commutators,
 * normalized by the generators of both H and K. */
inline Subgroup commutator_subgroup(const Subgroup& H, const Subgroup& K) {
    const PcGroup& G = H.group();
    std::vector<Element> gens;
    for (const Element& h : H.igs())
        for (const Element& k : K.igs()) gens.push_back(G.comm(h, k));
    std::vector<Element> conj = H.igs();
    for (const Element& k : K.igs()) conj.push_back(k);
    return Subgroup::closure_normalized_by(G, gens, conj);
}

inline Subgroup derived_subgroup(const Subgroup& H) { return commutator_subgroup(H, H); }

/* Lower central series of H (inside its ambient group): gamma_1 = H,
 * gamma_{i+1} = [gamma_i, H], until trivial. */
inline std::vector<Subgroup> lower_central_series(const Subgroup& H) {
    std::vector<Subgroup> series{H};
    while (!series.back().is_trivial()) {
        Subgroup next = commutator_subgroup(series.back(), H);
        require(next != series.back(), "lower_central_series: series stabilized above the identity");
        series.push_back(next);
    }
    return series;
}

inline int nilpotency_class(const Subgroup& H) {
    return static_cast<int>(lower_central_series(H).size()) - 1;
}

inline std::vector<Subgroup> derived_series(const Subgroup& H) {
    std::vector<Subgroup> series{H};
    while (!series.back().is_trivial()) {
        Subgroup next = derived_subgroup(series.back());
        require(next != series.back(), "derived_series: series stabilized above the identity");
        series.push_back(next);
    }
    return series;
}

inline int derived_length(const Subgroup& H) {
    return static_cast<int>(derived_series(H).size()) - 1;
}

/* G^k = <x^k : x in G>.  The generating set of k-th powers is closed under
 * conjugation, so the subgroup it generates is normal. */
inline Subgroup power_subgroup(const PcGroup& G, const Int& k,
                               unsigned long long budget = 1000000) {
    require(k >= 1, "power_subgroup: exponent must be positive");
    require_budget(G.order() <= budget, "power_subgroup: group order exceeds enumeration budget");
    std::vector<Element> gens;
    std::unordered_set<Element, ElementHash> seen;
    for (uint64_t i = 0; i < G.order(); ++i) {
        Element v = G.pow(G.element_at(i), k);
        if (seen.insert(v).second) gens.push_back(v);
    }
    return Subgroup::closure(G, gens);
}

inline Subgroup frattini_subgroup(const PcGroup& G, unsigned long long budget = 1000000) {
    return join(power_subgroup(G, G.prime(), budget), derived_subgroup(Subgroup::whole(G)));
}

struct PowerfulReport {
    bool powerful = false;
    bool p2_variant = false;       // p = 2 uses G' <= G^4
    std::optional<Element> witness; // derived generator outside the power subgroup
};

inline PowerfulReport is_powerful(const PcGroup& G, unsigned long long budget = 1000000) {
    PowerfulReport rep;
    rep.p2_variant = (G.prime() == 2);
    Subgroup target = power_subgroup(G, rep.p2_variant ? Int(4) : Int(G.prime()), budget);
    Subgroup derived = derived_subgroup(Subgroup::whole(G));
    rep.powerful = true;
    for (const Element& x : derived.igs())
        if (!target.contains(x)) {
            rep.powerful = false;
            rep.witness = x;
            break;
        }
    return rep;
}

inline unsigned long long exponent_of(const PcGroup& G, unsigned long long budget = 1000000) {
    require_budget(G.order() <= budget, "exponent_of: group order exceeds enumeration budget");
    unsigned long long e = 1;
    for (uint64_t i = 0; i < G.order(); ++i) e = std::max(e, G.element_order(G.element_at(i)));
    return e;
}

} // namespace nilcert
