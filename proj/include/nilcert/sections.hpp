#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "intpoly.hpp"
#include "quotient.hpp"
#include "subgroup.hpp"

namespace nilcert {

/* Endomorphism of a finite abelian p-group given by a cyclic decomposition
 * with component orders p^{e_1} >= ... >= p^{e_r}.  Column j holds the
 * coordinates of the image of the j-th basis element; entry (i, j) is kept
 * reduced modulo p^{e_i}.  Well-definedness demands
 *   entry(i, j) == 0  (mod p^{max(e_i - e_j, 0)}),
 * since the j-th basis element has order p^{e_j}. */
class SectionEndomorphism {
public:
    SectionEndomorphism(long long p, std::vector<int> exps, std::vector<std::vector<Int>> entries)
        : p_(p), exps_(std::move(exps)), m_(std::move(entries)) {
        const size_t r = exps_.size();
        require(m_.size() == r, "SectionEndomorphism: row count mismatch");
        for (auto& row : m_) require(row.size() == r, "SectionEndomorphism: column count mismatch");
        normalize();
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                if (exps_[i] > exps_[j])
                    require(m_[i][j] % int_pow(Int(p_), exps_[i] - exps_[j]) == 0,
                            "SectionEndomorphism: entries violate the order congruences");
    }

    static SectionEndomorphism zero(long long p, std::vector<int> exps) {
        size_t r = exps.size();
        return SectionEndomorphism(p, std::move(exps),
                                   std::vector<std::vector<Int>>(r, std::vector<Int>(r, 0)));
    }

    static SectionEndomorphism identity(long long p, std::vector<int> exps) {
        size_t r = exps.size();
        std::vector<std::vector<Int>> m(r, std::vector<Int>(r, 0));
        for (size_t i = 0; i < r; ++i) m[i][i] = 1;
        return SectionEndomorphism(p, std::move(exps), std::move(m));
    }

    long long prime() const { return p_; }
    int rank() const { return static_cast<int>(exps_.size()); }
    const std::vector<int>& exponents() const { return exps_; }
    const Int& entry(int i, int j) const {
        return m_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }

    friend SectionEndomorphism operator+(const SectionEndomorphism& a, const SectionEndomorphism& b) {
        SectionEndomorphism r = a;
        for (size_t i = 0; i < r.m_.size(); ++i)
            for (size_t j = 0; j < r.m_.size(); ++j) r.m_[i][j] += b.m_[i][j];
        r.normalize();
        return r;
    }

    friend SectionEndomorphism operator-(const SectionEndomorphism& a, const SectionEndomorphism& b) {
        SectionEndomorphism r = a;
        for (size_t i = 0; i < r.m_.size(); ++i)
            for (size_t j = 0; j < r.m_.size(); ++j) r.m_[i][j] -= b.m_[i][j];
        r.normalize();
        return r;
    }

    friend SectionEndomorphism operator*(const Int& s, const SectionEndomorphism& a) {
        SectionEndomorphism r = a;
        for (auto& row : r.m_)
            for (auto& x : row) x *= s;
        r.normalize();
        return r;
    }

    /* Composition "a then b" for maps written on the left of column vectors:
     * (b * a) applied to v is b(a(v)). */
    friend SectionEndomorphism operator*(const SectionEndomorphism& b, const SectionEndomorphism& a) {
        const size_t r = b.m_.size();
        require(a.m_.size() == r && a.p_ == b.p_ && a.exps_ == b.exps_,
                "SectionEndomorphism: size mismatch in composition");
        std::vector<std::vector<Int>> m(r, std::vector<Int>(r, 0));
        for (size_t i = 0; i < r; ++i)
            for (size_t k = 0; k < r; ++k) {
                if (b.m_[i][k] == 0) continue;
                for (size_t j = 0; j < r; ++j) m[i][j] += b.m_[i][k] * a.m_[k][j];
            }
        return SectionEndomorphism(b.p_, b.exps_, std::move(m));
    }

    SectionEndomorphism pow(int e) const {
        require(e >= 0, "SectionEndomorphism::pow: negative exponent");
        SectionEndomorphism r = identity(p_, exps_), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e > 0) b = b * b;
        }
        return r;
    }

    friend bool operator==(const SectionEndomorphism& a, const SectionEndomorphism& b) {
        return a.p_ == b.p_ && a.exps_ == b.exps_ && a.m_ == b.m_;
    }

    bool is_zero() const {
        for (const auto& row : m_)
            for (const Int& x : row)
                if (x != 0) return false;
        return true;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        const size_t r = m_.size();
        require(v.size() == r, "SectionEndomorphism::apply: coordinate length mismatch");
        std::vector<Int> out(r, 0);
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < r; ++j) out[i] += m_[i][j] * v[j];
            Int mod = int_pow(Int(p_), exps_[i]);
            out[i] %= mod;
            if (out[i] < 0) out[i] += mod;
        }
        return out;
    }

private:
    void normalize() {
        for (size_t i = 0; i < m_.size(); ++i) {
            Int mod = int_pow(Int(p_), exps_[i]);
            for (auto& x : m_[i]) {
                x %= mod;
                if (x < 0) x += mod;
            }
        }
    }

    long long p_;
    std::vector<int> exps_;
    std::vector<std::vector<Int>> m_;
};

/* Abelian normal section A = K/L of a finite p-group: K, L normal in G,
 * L <= K, and K/L abelian.  Elements of A are canonical right-coset
 * representatives; a basis realizing the cyclic decomposition
 * A = C_{p^{e_1}} x ... x C_{p^{e_r}} (e_1 >= ... >= e_r) is computed at
 * construction and validated by checking that the coordinate box maps
 * bijectively onto A.  G acts by conjugation; in additive notation a * g
 * means a^g, so [a, g] = a^{g-1} corresponds to the endomorphism
 * action_of(g) - 1. */
class AbelianSection {
public:
    static AbelianSection make(const PcGroup& G, Subgroup K, Subgroup L,
                               unsigned long long budget = 1000000) {
        require(&K.group() == &G && &L.group() == &G,
                "AbelianSection: subgroups belong to a different group");
        require(K.is_normal(), "AbelianSection: K is not normal");
        require(L.is_normal(), "AbelianSection: L is not normal");
        require(K.contains(L), "AbelianSection: L is not contained in K");
        require(L.contains(commutator_subgroup(K, K)), "AbelianSection: K/L is not abelian");
        return AbelianSection(G, std::move(K), std::move(L), budget);
    }

    const PcGroup& group() const { return *G_; }
    const Subgroup& upper() const { return K_; }
    const Subgroup& lower() const { return L_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<int>& exponents() const { return exps_; }
    const std::vector<Element>& basis() const { return basis_; }
    unsigned long long size() const { return K_.order() / L_.order(); }

    /* Canonical representative of the coset xL. */
    Element reduce(const Element& x) const { return L_.coset_rep(x); }

    /* Coordinates of xL in the basis; requires x in K. */
    std::vector<Int> dlog(const Element& x) const {
        require(K_.contains(x), "AbelianSection::dlog: element outside K");
        auto it = dlog_.find(reduce(x));
        require(it != dlog_.end(), "AbelianSection::dlog: representative not indexed");
        std::vector<Int> out(it->second.size());
        for (size_t i = 0; i < out.size(); ++i) out[i] = it->second[i];
        return out;
    }

    /* The element b_1^{c_1} ... b_r^{c_r}, reduced to its representative. */
    Element from_coords(const std::vector<Int>& c) const {
        require(c.size() == basis_.size(), "AbelianSection::from_coords: length mismatch");
        Element x = G_->identity();
        for (size_t i = 0; i < basis_.size(); ++i) x = G_->mul(x, G_->pow(basis_[i], c[i]));
        return reduce(x);
    }

    /* Is the coset of x in A^{p^j}?  Coordinates must vanish mod p^{min(j, e_i)}. */
    bool in_power_layer(const Element& x, int j) const {
        std::vector<Int> c = dlog(x);
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] % int_pow(Int(G_->prime()), std::min(j, exps_[i])) != 0) return false;
        return true;
    }

    /* The conjugation action of g as an endomorphism (an automorphism). */
    SectionEndomorphism action_of(const Element& g) const {
        const size_t r = basis_.size();
        std::vector<std::vector<Int>> m(r, std::vector<Int>(r, 0));
        for (size_t j = 0; j < r; ++j) {
            Element img = G_->conj(basis_[j], g);
            require(K_.contains(img), "AbelianSection::action_of: K is not invariant");
            std::vector<Int> c = dlog(img);
            for (size_t i = 0; i < r; ++i) m[i][j] = c[i];
        }
        return SectionEndomorphism(G_->prime(), exps_, std::move(m));
    }

    std::string describe() const {
        auto gens_str = [&](const Subgroup& H) {
            std::string s;
            bool first = true;
            for (const Element& g : H.igs()) {
                if (!first) s += ", ";
                s += G_->str(g);
                first = false;
            }
            return s.empty() ? std::string("1") : s;
        };
        return "(" + gens_str(K_) + " | " + gens_str(L_) + ")";
    }

private:
    AbelianSection(const PcGroup& G, Subgroup K, Subgroup L, unsigned long long budget)
        : G_(&G), K_(std::move(K)), L_(std::move(L)) {
        require_budget(size() <= budget, "AbelianSection: section size exceeds budget");

        // All canonical representatives.
        std::vector<Element> reps;
        {
            std::set<Element> seen;
            for (const Element& x : K_.elements(budget)) seen.insert(reduce(x));
            reps.assign(seen.begin(), seen.end());
        }
        require(reps.size() == size(), "AbelianSection: representative count mismatch");

        decompose(reps);

        // Validate: the coordinate box maps bijectively onto the representatives.
        unsigned long long box = 1;
        for (int e : exps_) box *= static_cast<unsigned long long>(int_pow(Int(G_->prime()), e));
        require(box == size(), "AbelianSection: decomposition does not match the section size");
        std::vector<Int> c(basis_.size(), 0);
        const long long p = G_->prime();
        for (;;) {
            Element x = G_->identity();
            for (size_t i = 0; i < basis_.size(); ++i) x = G_->mul(x, G_->pow(basis_[i], c[i]));
            Element rep = reduce(x);
            std::vector<long long> cc(c.size());
            for (size_t i = 0; i < c.size(); ++i) cc[i] = static_cast<long long>(c[i]);
            bool fresh = dlog_.emplace(rep, std::move(cc)).second;
            require(fresh, "AbelianSection: decomposition is not direct");
            int pos = static_cast<int>(c.size()) - 1;
            while (pos >= 0) {
                c[static_cast<size_t>(pos)] += 1;
                if (c[static_cast<size_t>(pos)] < int_pow(Int(p), exps_[static_cast<size_t>(pos)]))
                    break;
                c[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        require(dlog_.size() == reps.size(), "AbelianSection: coordinate box misses representatives");
    }

    /* Cyclic decomposition of the abelian group of representatives:
     * pick x of maximal order, form the quotient by <x> via canonical coset
     * minima, recurse, then lift each quotient basis element y (of coset
     * order o) to an element with y^o = 1 by dividing out the <x>-part:
     * y^o = x^c with o | c, replace y by y * x^{-c/o}. */
    void decompose(const std::vector<Element>& reps) {
        if (reps.size() == 1) return;

        auto mul = [&](const Element& a, const Element& b) { return reduce(G_->mul(a, b)); };
        auto order_of = [&](const Element& a) {
            unsigned long long o = 1;
            Element x = a;
            while (!G_->is_identity(x)) {
                Element y = x;
                for (long long i = 1; i < G_->prime(); ++i) y = mul(y, x);
                x = y; // x^(p)
                o *= static_cast<unsigned long long>(G_->prime());
            }
            return o;
        };

        Element best = reps.front();
        unsigned long long best_order = 1;
        for (const Element& x : reps) {
            unsigned long long o = order_of(x);
            if (o > best_order) {
                best = x;
                best_order = o;
            }
        }
        int e = 0;
        for (unsigned long long o = best_order; o > 1; o /= static_cast<unsigned long long>(G_->prime())) ++e;

        // Cosets modulo <best>: canonical form = minimum of y * best^t.
        std::vector<Element> powers{reduce(G_->identity())};
        for (unsigned long long t = 1; t < best_order; ++t) powers.push_back(mul(powers.back(), best));
        auto canon = [&](const Element& y) {
            Element m = y;
            Element cur = y;
            for (size_t t = 1; t < powers.size(); ++t) {
                cur = mul(cur, best);
                if (cur < m) m = cur;
            }
            return m;
        };

        std::set<Element> quotient_set;
        for (const Element& y : reps) quotient_set.insert(canon(y));
        std::vector<Element> quotient(quotient_set.begin(), quotient_set.end());

        // Recurse on the quotient: same object, but orders/canonicalization
        // are relative to <best>.  Implemented iteratively by re-running the
        // same procedure with the canonical-form multiplication.
        std::vector<Element> sub_basis;
        std::vector<int> sub_exps;
        decompose_relative(quotient, canon, mul, sub_basis, sub_exps);

        basis_.push_back(best);
        exps_.push_back(e);
        for (size_t i = 0; i < sub_basis.size(); ++i) {
            Element y = sub_basis[i];
            unsigned long long o = int_pow_ull(G_->prime(), sub_exps[i]);
            // y^o lies in <best>; find c with y^o = best^c and o | c.
            Element yo = reduce(G_->identity());
            for (unsigned long long t = 0; t < o; ++t) yo = mul(yo, y);
            unsigned long long c = 0;
            while (c < best_order && powers[c] != yo) ++c;
            require(c < best_order, "AbelianSection: lift target escaped the cyclic part");
            require(c % o == 0, "AbelianSection: lift divisibility failed");
            Element lift = mul(y, G_->pow(G_->inv(best), static_cast<long long>(c / o)));
            basis_.push_back(reduce(lift));
            exps_.push_back(sub_exps[i]);
        }
    }

    /* The same maximal-order peeling, but with element identity given by a
     * canonicalization function (cosets of the part already split off). */
    void decompose_relative(std::vector<Element> reps,
                            std::function<Element(const Element&)> canon,
                            std::function<Element(const Element&, const Element&)> mul,
                            std::vector<Element>& out_basis, std::vector<int>& out_exps) {
        if (reps.size() <= 1) return;
        Element id = canon(reduce(G_->identity()));

        auto order_of = [&](const Element& a) {
            unsigned long long o = 1;
            Element x = canon(a);
            while (x != id) {
                Element y = x;
                for (long long i = 1; i < G_->prime(); ++i) y = canon(mul(y, x));
                x = y;
                o *= static_cast<unsigned long long>(G_->prime());
            }
            return o;
        };

        Element best = reps.front();
        unsigned long long best_order = 1;
        for (const Element& x : reps) {
            unsigned long long o = order_of(x);
            if (o > best_order) {
                best = x;
                best_order = o;
            }
        }
        if (best_order == 1) return;
        int e = 0;
        for (unsigned long long o = best_order; o > 1; o /= static_cast<unsigned long long>(G_->prime())) ++e;

        auto canon2 = [&, best](const Element& y) {
            Element m = canon(y);
            Element cur = canon(y);
            for (unsigned long long t = 1; t < best_order; ++t) {
                cur = canon(mul(cur, best));
                if (cur < m) m = cur;
            }
            return m;
        };
        std::set<Element> q;
        for (const Element& y : reps) q.insert(canon2(y));

        std::vector<Element> sub_basis;
        std::vector<int> sub_exps;
        decompose_relative(std::vector<Element>(q.begin(), q.end()), canon2, mul, sub_basis,
                           sub_exps);

        out_basis.push_back(best);
        out_exps.push_back(e);
        for (size_t i = 0; i < sub_basis.size(); ++i) {
            Element y = sub_basis[i];
            unsigned long long o = int_pow_ull(G_->prime(), sub_exps[i]);
            Element yo = canon(reduce(G_->identity()));
            for (unsigned long long t = 0; t < o; ++t) yo = canon(mul(yo, y));
            // yo lies in the <best>-coset structure: find c with yo = canon(best^c), o | c.
            Element cur = id;
            unsigned long long c = 0;
            while (c < best_order && cur != yo) {
                cur = canon(mul(cur, best));
                ++c;
            }
            require(c < best_order || cur == yo, "AbelianSection: relative lift escaped");
            require(c % o == 0, "AbelianSection: relative lift divisibility failed");
            Element lift = canon(mul(y, G_->pow(G_->inv(best), static_cast<long long>(c / o))));
            out_basis.push_back(lift);
            out_exps.push_back(sub_exps[i]);
        }
    }

    static unsigned long long int_pow_ull(long long b, int e) {
        unsigned long long r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<unsigned long long>(b);
        return r;
    }

    const PcGroup* G_;
    Subgroup K_, L_;
    std::vector<Element> basis_;
    std::vector<int> exps_;
    std::unordered_map<Element, std::vector<long long>, ElementHash> dlog_;
};

// --- polynomial action and Engel checks ------------------------------------------

/* sum_i P_i * action(g)^i, by Horner evaluation. */
inline SectionEndomorphism apply_poly(const AbelianSection& A, const IntPoly& P, const Element& g) {
    SectionEndomorphism M = A.action_of(g);
    SectionEndomorphism acc = SectionEndomorphism::zero(M.prime(), M.exponents());
    for (int i = P.degree(); i >= 0; --i) {
        acc = acc * M;
        acc = acc + P[i] * SectionEndomorphism::identity(M.prime(), M.exponents());
    }
    return acc;
}

struct SectionCheck {
    bool pass = true;
    std::string witness; // empty iff pass
};

/* f(t) must vanish on A for every t in S and every inverse. */
inline SectionCheck verify_annihilation(const AbelianSection& A, const IntPoly& f,
                                        const std::vector<Element>& S) {
    for (const Element& t : S)
        for (const Element& u : {t, A.group().inv(t)}) {
            if (A.rank() == 0) continue;
            if (!apply_poly(A, f, u).is_zero())
                return {false, "f(t) nonzero on section " + A.describe() + " for t = " +
                                   A.group().str(u)};
        }
    return {};
}

/* Image of A^{p^i} under (action(g) - 1)^r lies in A^{p^m}: per basis column
 * j, the vector p^{min(i, e_j)} * column_j must vanish mod p^{min(m, e_row)}. */
inline SectionCheck power_layer_engel_step(const AbelianSection& A, const Element& g, int i, int r,
                                           int m) {
    if (A.rank() == 0) return {};
    const long long p = A.group().prime();
    SectionEndomorphism M = A.action_of(g);
    SectionEndomorphism N =
        (M - SectionEndomorphism::identity(p, M.exponents())).pow(r);
    for (int j = 0; j < A.rank(); ++j) {
        Int scale = int_pow(Int(p), std::min(i, A.exponents()[static_cast<size_t>(j)]));
        for (int row = 0; row < A.rank(); ++row) {
            Int v = scale * N.entry(row, j);
            Int mod = int_pow(Int(p), std::min(m, A.exponents()[static_cast<size_t>(row)]));
            if (v % mod != 0)
                return {false, "[A^{p^" + std::to_string(i) + "},_" + std::to_string(r) +
                                   " g] escapes A^{p^" + std::to_string(m) + "} at basis column " +
                                   std::to_string(j)};
        }
    }
    return {};
}

/* [A,_r g] <= A^p. */
inline SectionCheck engel_mod_p_check(const AbelianSection& A, const Element& g, int r) {
    require(r >= 0, "engel_mod_p_check: r must be nonnegative");
    return power_layer_engel_step(A, g, 0, r, 1);
}

/* [A,_n g^k] = 1, i.e. (action(g^k) - 1)^n = 0. */
inline SectionCheck engel_power_check(const AbelianSection& A, const Element& g, int n,
                                      const Int& k) {
    require(n >= 0 && k >= 1, "engel_power_check: need n >= 0 and k >= 1");
    if (A.rank() == 0) return {};
    const long long p = A.group().prime();
    Element gk = A.group().pow(g, k);
    SectionEndomorphism M = A.action_of(gk);
    SectionEndomorphism N = (M - SectionEndomorphism::identity(p, M.exponents())).pow(n);
    if (!N.is_zero())
        return {false, "(g^k - 1)^n nonzero on " + A.describe() + " for g = " + A.group().str(g)};
    return {};
}

/* The three-step chain behind [A,_n g^k] = 1 with n = s*r + l:
 *   (1) [A^{p^i},_r g] <= A^{p^{i+1}} for 0 <= i < s,
 *   (2) [A^{p^s}, g^k, ...l..., g^k] = 1,
 *   (3) the conclusion [A,_n g^k] = 1, re-checked directly. */
inline SectionCheck stratified_engel_check(const AbelianSection& A, const Element& g, int s, int r,
                                           int l, const Int& k) {
    require(s >= 0 && r >= 0 && l >= 0 && k >= 1, "stratified_engel_check: bad parameters");
    for (int i = 0; i < s; ++i) {
        SectionCheck step = power_layer_engel_step(A, g, i, r, i + 1);
        if (!step.pass) return {false, "step 1 (descent): " + step.witness};
    }
    if (A.rank() > 0) {
        const long long p = A.group().prime();
        Element gk = A.group().pow(g, k);
        SectionEndomorphism M = A.action_of(gk);
        SectionEndomorphism N = (M - SectionEndomorphism::identity(p, M.exponents())).pow(l);
        // (2): N must kill A^{p^s}: p^{min(s, e_j)} * column_j == 0.
        for (int j = 0; j < A.rank(); ++j) {
            Int scale = int_pow(Int(p), std::min(s, A.exponents()[static_cast<size_t>(j)]));
            for (int row = 0; row < A.rank(); ++row) {
                Int v = scale * N.entry(row, j);
                Int mod = int_pow(Int(p), A.exponents()[static_cast<size_t>(row)]);
                if (v % mod != 0)
                    return {false, "step 2 (top layer): [A^{p^s},_l g^k] != 1 at basis column " +
                                       std::to_string(j)};
            }
        }
    }
    SectionCheck final_check = engel_power_check(A, g, s * r + l, k);
    if (!final_check.pass) return {false, "step 3 (conclusion): " + final_check.witness};
    return {};
}

/* Nilpotency class of the conjugation action on A: least c >= 0 with the
 * chain K_0 = K, K_{j+1} = [K_j, G] * L reaching L.  Always finite for a
 * finite p-group. */
inline int action_class(const AbelianSection& A) {
    const PcGroup& G = A.group();
    Subgroup cur = A.upper();
    int c = 0;
    while (cur != A.lower()) {
        cur = join(commutator_subgroup(cur, Subgroup::whole(G)), A.lower());
        ++c;
        require(c <= 2 * G.ngens() + 2, "action_class: chain fails to stabilize");
    }
    return c;
}

/* Element-level cross-check: the coset of the iterated group commutator
 * [a, g, ...r..., g] equals the module image (action(g) - 1)^r a, for every
 * a in A.  Feasible for small sections. */
inline bool engel_bruteforce_agrees(const AbelianSection& A, const Element& g, int r,
                                    unsigned long long budget = 100000) {
    const PcGroup& G = A.group();
    if (A.rank() == 0) return true;
    require_budget(A.size() <= budget, "engel_bruteforce_agrees: section too large");
    SectionEndomorphism M = A.action_of(g);
    SectionEndomorphism N =
        (M - SectionEndomorphism::identity(M.prime(), M.exponents())).pow(r);
    // Enumerate representatives via the coordinate box.
    std::vector<Int> c(static_cast<size_t>(A.rank()), 0);
    const long long p = G.prime();
    for (;;) {
        Element a = A.from_coords(c);
        Element it = a;
        for (int i = 0; i < r; ++i) it = G.comm(it, g);
        if (A.reduce(it) != A.from_coords(N.apply(c))) return false;
        int pos = A.rank() - 1;
        while (pos >= 0) {
            c[static_cast<size_t>(pos)] += 1;
            if (c[static_cast<size_t>(pos)] < int_pow(Int(p), A.exponents()[static_cast<size_t>(pos)]))
                break;
            c[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return true;
}

// --- enumeration -------------------------------------------------------------------

/* All normal subgroups: the join-closure of the normal closures of single
 * elements (every normal subgroup is the join of the normal closures of its
 * members).  Feasible only for small groups. */
inline std::vector<Subgroup> all_normal_subgroups(const PcGroup& G,
                                                  unsigned long long budget = 1000000) {
    require_budget(G.order() <= budget, "all_normal_subgroups: group too large");
    std::set<std::vector<int>> seen; // keyed by sorted element indices of the igs... use leads+igs
    std::vector<Subgroup> out;
    auto key_of = [&](const Subgroup& H) {
        std::vector<int> key;
        for (const Element& x : H.igs())
            key.push_back(static_cast<int>(G.index_of(x)));
        return key;
    };
    auto add = [&](const Subgroup& H) {
        if (seen.insert(key_of(H)).second) {
            out.push_back(H);
            return true;
        }
        return false;
    };
    add(Subgroup::trivial(G));
    for (const Element& x : G.all_elements(budget)) add(Subgroup::normal_closure(G, {x}));
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < i; ++j) add(join(out[i], out[j])); // out grows; loop re-runs on new entries
    // Note: the loop above visits pairs (i, j) with j < i as `out` grows, so
    // it closes under binary joins.
    return out;
}

enum class SectionFamily { Standard, Full };

/* Abelian normal sections of G.  Standard family: consecutive terms of the
 * lower central and derived series, plus gamma_j / gamma_j' for every j.
 * Full: every pair (K, L) of normal subgroups with L <= K and K/L abelian
 * (small groups only). */
inline std::vector<AbelianSection> enumerate_abelian_normal_sections(
    const PcGroup& G, SectionFamily family = SectionFamily::Standard,
    unsigned long long budget = 1000000) {
    std::vector<std::pair<Subgroup, Subgroup>> pairs;
    auto push = [&](const Subgroup& K, const Subgroup& L) {
        if (K == L) return; // skip rank-0 sections in enumeration
        for (const auto& [K0, L0] : pairs)
            if (K0 == K && L0 == L) return;
        pairs.emplace_back(K, L);
    };

    if (family == SectionFamily::Full) {
        std::vector<Subgroup> normals = all_normal_subgroups(G, budget);
        for (const Subgroup& K : normals)
            for (const Subgroup& L : normals) {
                if (!K.contains(L) || K == L) continue;
                if (!L.contains(commutator_subgroup(K, K))) continue;
                push(K, L);
            }
    } else {
        std::vector<Subgroup> lcs = lower_central_series(Subgroup::whole(G));
        for (size_t i = 0; i + 1 < lcs.size(); ++i) push(lcs[i], lcs[i + 1]);
        std::vector<Subgroup> der = derived_series(Subgroup::whole(G));
        for (size_t i = 0; i + 1 < der.size(); ++i) push(der[i], der[i + 1]);
        for (const Subgroup& g : lcs) {
            Subgroup gp = derived_subgroup(g);
            if (g != gp) push(g, gp);
        }
    }

    std::vector<AbelianSection> out;
    for (auto& [K, L] : pairs) out.push_back(AbelianSection::make(G, K, L, budget));
    return out;
}

} // namespace nilcert
