#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "common.hpp"

namespace nilcert {

/* One syllable of a word in the polycyclic generators. */
struct Letter {
    int gen = 0;
    long long exp = 0;
};

/* Group element in normal form: exponent vector with entries in [0, p). */
struct Element {
    std::vector<uint8_t> e;
    friend bool operator==(const Element& a, const Element& b) { return a.e == b.e; }
    friend bool operator!=(const Element& a, const Element& b) { return a.e != b.e; }
    friend bool operator<(const Element& a, const Element& b) { return a.e < b.e; }
};

struct ElementHash {
    size_t operator()(const Element& x) const {
        size_t h = 1469598103934665603ull;
        for (uint8_t v : x.e) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/* Finite p-group given by a consistent polycyclic presentation:
 * generators g_0..g_{n-1}, relations g_i^p = w_i (supported on indices > i)
 * and [g_j, g_i] = w_{ji} for j > i (supported on indices > j).
 * Every element has the unique normal form g_0^{e_0} ... g_{n-1}^{e_{n-1}},
 * 0 <= e_i < p, and the order is p^n.
 *
 * The index restrictions make the descending chain G_i = <g_i, ..., g_{n-1}>
 * central-by-stages: [G_i, G] <= G_{i+1} and G_i^p <= G_{i+1}.  In particular
 * the i-th exponent is additive on products x*y whenever y lies in G_i. */
class PcGroup {
public:
    struct Relations {
        long long prime = 0;
        std::vector<std::string> names;                     // empty -> g1..gn
        std::vector<std::vector<Letter>> power;             // power[i]: word for g_i^p
        std::map<std::pair<int, int>, std::vector<Letter>> comm; // (j,i), j > i: word for [g_j, g_i]
    };

    struct Options {
        unsigned long long table_limit = 2048; // build the full multiplication table up to this order
        bool overlap_check = true;             // verify rewriting confluence at construction
    };

    struct ConsistencyReport {
        bool ok = true;
        std::string method;
        unsigned long long checks = 0;
        std::string detail;
    };

    explicit PcGroup(Relations rel) : PcGroup(std::move(rel), Options{}) {}

    PcGroup(Relations rel, Options opt) : rel_(std::move(rel)), opt_(opt) {
        validate_relations();
        order_ = 1;
        for (int i = 0; i < ngens(); ++i) {
            require(order_ <= (1ull << 62) / static_cast<unsigned long long>(rel_.prime),
                    "PcGroup: order exceeds 2^62");
            order_ *= static_cast<unsigned long long>(rel_.prime);
        }
        if (opt_.overlap_check) {
            ConsistencyReport rep = overlap_consistency();
            require(rep.ok, "PcGroup: inconsistent presentation: " + rep.detail);
        }
        if (order_ <= opt_.table_limit) build_table();
    }

    long long prime() const { return rel_.prime; }
    int ngens() const { return static_cast<int>(rel_.power.size()); }
    unsigned long long order() const { return order_; }
    const std::vector<std::string>& names() const { return rel_.names; }
    const Relations& relations() const { return rel_; }

    Element identity() const { return Element{std::vector<uint8_t>(static_cast<size_t>(ngens()), 0)}; }

    bool is_identity(const Element& x) const {
        for (uint8_t v : x.e) if (v) return false;
        return true;
    }

    Element generator(int i) const {
        require(i >= 0 && i < ngens(), "generator: index out of range");
        Element x = identity();
        x.e[static_cast<size_t>(i)] = 1;
        return x;
    }

    std::optional<int> generator_index(const std::string& name) const {
        for (int i = 0; i < ngens(); ++i)
            if (rel_.names[static_cast<size_t>(i)] == name) return i;
        return std::nullopt;
    }

    std::vector<Letter> letters(const Element& x) const {
        std::vector<Letter> w;
        for (int i = 0; i < ngens(); ++i)
            if (x.e[static_cast<size_t>(i)]) w.push_back({i, x.e[static_cast<size_t>(i)]});
        return w;
    }

    /* Product via the multiplication table when present, else by collection. */
    Element mul(const Element& a, const Element& b) const {
        check_element(a); check_element(b);
        if (has_table()) return element_at(table_mul(index_of(a), index_of(b)));
        return mul_collect(a, b);
    }

    /* Product by direct collection of the concatenated normal forms; this is
     * the independent route the table is validated against. */
    Element mul_collect(const Element& a, const Element& b) const {
        std::vector<Letter> tape = letters(a);
        std::vector<Letter> lb = letters(b);
        tape.insert(tape.end(), lb.begin(), lb.end());
        return collect_normal_tape(std::move(tape));
    }

    Element pow(const Element& a, const Int& e) const {
        if (e < 0) return pow(inv(a), -e);
        Element r = identity(), b = a;
        Int k = e;
        while (k > 0) {
            if ((k & 1) != 0) r = mul(r, b);
            k >>= 1;
            if (k > 0) b = mul(b, b);
        }
        return r;
    }

    unsigned long long element_order(const Element& a) const {
        Element x = a;
        unsigned long long ord = 1;
        while (!is_identity(x)) {
            x = pow(x, rel_.prime);
            ord *= static_cast<unsigned long long>(rel_.prime);
            require(ord <= order_, "element_order: runaway order (inconsistent presentation)");
        }
        return ord;
    }

    Element inv(const Element& a) const {
        if (has_table()) return element_at(inv_table_[index_of(a)]);
        return pow(a, Int(element_order(a)) - 1);
    }

    Element conj(const Element& x, const Element& g) const { return mul(mul(inv(g), x), g); }

    Element comm(const Element& x, const Element& y) const {
        return mul(mul(inv(x), inv(y)), mul(x, y));
    }

    /* Evaluate an arbitrary word in the pc generators (any integer exponents). */
    Element evaluate(const std::vector<Letter>& word) const {
        Element r = identity();
        for (const Letter& l : word) {
            require(l.gen >= 0 && l.gen < ngens(), "evaluate: generator index out of range");
            r = mul(r, pow(generator(l.gen), l.exp));
        }
        return r;
    }

    // --- enumeration -------------------------------------------------------

    uint64_t index_of(const Element& x) const {
        uint64_t idx = 0;
        for (int i = 0; i < ngens(); ++i)
            idx = idx * static_cast<uint64_t>(rel_.prime) + x.e[static_cast<size_t>(i)];
        return idx;
    }

    Element element_at(uint64_t idx) const {
        Element x = identity();
        for (int i = ngens() - 1; i >= 0; --i) {
            x.e[static_cast<size_t>(i)] = static_cast<uint8_t>(idx % static_cast<uint64_t>(rel_.prime));
            idx /= static_cast<uint64_t>(rel_.prime);
        }
        require(idx == 0, "element_at: index out of range");
        return x;
    }

    std::vector<Element> all_elements(unsigned long long budget = 1000000) const {
        require_budget(order_ <= budget, "all_elements: group order exceeds enumeration budget");
        std::vector<Element> out;
        out.reserve(order_);
        for (uint64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
        return out;
    }

    bool has_table() const { return !table_.empty(); }

    uint32_t table_mul(uint64_t ix, uint64_t iy) const {
        return table_[static_cast<size_t>(ix) * order_ + iy];
    }

    // --- consistency -------------------------------------------------------

    /* Overlap (confluence) conditions: for k > j > i the two collections of
     * g_k g_j g_i, and the power/commutator overlaps
     *   (g_j^p) g_i     = g_j^{p-1} (g_j g_i)
     *   g_j (g_i^p)     = (g_j g_i) g_i^{p-1}
     *   (g_i^p) g_i     = g_i (g_i^p)
     * must agree.  For a presentation of this shape these conditions hold iff
     * normal forms are unique, i.e. the group has order exactly p^n. */
    ConsistencyReport overlap_consistency() const {
        ConsistencyReport rep;
        rep.method = "overlap";
        const long long p = rel_.prime;
        auto fail = [&](const std::string& what) {
            rep.ok = false;
            rep.detail = what;
        };
        for (int k = 0; k < ngens() && rep.ok; ++k)
            for (int j = 0; j < k && rep.ok; ++j)
                for (int i = 0; i < j && rep.ok; ++i) {
                    Element lhs = mul_collect(generator(k), mul_collect(generator(j), generator(i)));
                    Element rhs = mul_collect(mul_collect(generator(k), generator(j)), generator(i));
                    ++rep.checks;
                    if (lhs != rhs)
                        fail("associativity overlap (g" + std::to_string(k + 1) + ", g" +
                             std::to_string(j + 1) + ", g" + std::to_string(i + 1) + ")");
                }
        for (int j = 0; j < ngens() && rep.ok; ++j) {
            Element pj = collect_word(rel_.power[static_cast<size_t>(j)]);
            for (int i = 0; i < j && rep.ok; ++i) {
                Element lhs = mul_collect(pj, generator(i));
                Element rhs = mul_collect(pow_collect(generator(j), p - 1), mul_collect(generator(j), generator(i)));
                ++rep.checks;
                if (lhs != rhs) { fail("power overlap (g" + std::to_string(j + 1) + "^p) g" + std::to_string(i + 1)); continue; }
                Element pi = collect_word(rel_.power[static_cast<size_t>(i)]);
                lhs = mul_collect(generator(j), pi);
                rhs = mul_collect(mul_collect(generator(j), generator(i)), pow_collect(generator(i), p - 1));
                ++rep.checks;
                if (lhs != rhs) fail("power overlap g" + std::to_string(j + 1) + " (g" + std::to_string(i + 1) + "^p)");
            }
            Element lhs = mul_collect(pj, generator(j));
            Element rhs = mul_collect(generator(j), pj);
            ++rep.checks;
            if (lhs != rhs) fail("power overlap (g" + std::to_string(j + 1) + "^p) g" + std::to_string(j + 1));
        }
        return rep;
    }

    /* Strong consistency oracle.  With a multiplication table this verifies
     * associativity literally: on every triple when the order allows,
     * otherwise via Light's test on generator triples (x, g, y), which is
     * equivalent for a generating set.  The table itself is validated against
     * direct collection on all pairs.  Without a table this re-runs the
     * overlap conditions. */
    ConsistencyReport consistency_check(unsigned long long triple_budget = 2000000000ull) const {
        if (!has_table()) return overlap_consistency();
        ConsistencyReport rep;
        const uint64_t N = order_;
        for (uint64_t x = 0; x < N; ++x)
            for (uint64_t y = 0; y < N; ++y) {
                ++rep.checks;
                if (index_of(mul_collect(element_at(x), element_at(y))) != table_mul(x, y)) {
                    rep.ok = false;
                    rep.detail = "table disagrees with collection at pair (" + std::to_string(x) + ", " + std::to_string(y) + ")";
                    return rep;
                }
            }
        if (N * N * N <= triple_budget) {
            rep.method = "table-all-triples";
            for (uint64_t x = 0; x < N; ++x)
                for (uint64_t y = 0; y < N; ++y) {
                    const uint32_t xy = table_mul(x, y);
                    for (uint64_t z = 0; z < N; ++z) {
                        ++rep.checks;
                        if (table_mul(xy, z) != table_mul(x, table_mul(y, z))) {
                            rep.ok = false;
                            rep.detail = "associativity fails at (" + std::to_string(x) + ", " +
                                         std::to_string(y) + ", " + std::to_string(z) + ")";
                            return rep;
                        }
                    }
                }
        } else {
            rep.method = "table-light-test";
            for (int g = 0; g < ngens(); ++g) {
                const uint64_t s = index_of(generator(g));
                for (uint64_t x = 0; x < N; ++x) {
                    const uint32_t xs = table_mul(x, s);
                    for (uint64_t y = 0; y < N; ++y) {
                        ++rep.checks;
                        if (table_mul(xs, y) != table_mul(x, table_mul(s, y))) {
                            rep.ok = false;
                            rep.detail = "Light test fails at (" + std::to_string(x) + ", g" +
                                         std::to_string(g + 1) + ", " + std::to_string(y) + ")";
                            return rep;
                        }
                    }
                }
            }
        }
        return rep;
    }

    std::string str(const Element& x) const {
        check_element(x);
        if (is_identity(x)) return "1";
        std::ostringstream out;
        bool first = true;
        for (int i = 0; i < ngens(); ++i) {
            int e = x.e[static_cast<size_t>(i)];
            if (!e) continue;
            if (!first) out << " ";
            first = false;
            out << rel_.names[static_cast<size_t>(i)];
            if (e > 1) out << "^" << e;
        }
        return out.str();
    }

private:
    void validate_relations() {
        require(is_prime(rel_.prime), "PcGroup: modulus is not prime");
        const int n = static_cast<int>(rel_.power.size());
        require(n >= 1 && n <= 40, "PcGroup: generator count out of range");
        require(rel_.prime < 256, "PcGroup: prime too large for exponent storage");
        if (rel_.names.empty())
            for (int i = 0; i < n; ++i) rel_.names.push_back("g" + std::to_string(i + 1));
        require(static_cast<int>(rel_.names.size()) == n, "PcGroup: name count mismatch");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                require(rel_.names[static_cast<size_t>(i)] != rel_.names[static_cast<size_t>(j)],
                        "PcGroup: duplicate generator name '" + rel_.names[static_cast<size_t>(i)] + "'");
        for (int i = 0; i < n; ++i)
            check_normal_word(rel_.power[static_cast<size_t>(i)], i,
                              "power relation for " + rel_.names[static_cast<size_t>(i)]);
        for (const auto& [key, word] : rel_.comm) {
            auto [j, i] = key;
            require(0 <= i && i < j && j < n, "PcGroup: commutator relation indices out of range");
            check_normal_word(word, j, "commutator relation [" + rel_.names[static_cast<size_t>(j)] +
                                           ", " + rel_.names[static_cast<size_t>(i)] + "]");
        }
    }

    void check_normal_word(const std::vector<Letter>& w, int above, const std::string& what) const {
        int last = above;
        for (const Letter& l : w) {
            require(l.gen > above && l.gen < static_cast<int>(rel_.power.size()),
                    "PcGroup: " + what + " uses generator index outside the allowed range");
            require(l.gen > last, "PcGroup: " + what + " is not in normal form");
            require(l.exp >= 1 && l.exp < rel_.prime, "PcGroup: " + what + " has exponent outside [1, p)");
            last = l.gen;
        }
    }

    void check_element(const Element& x) const {
        require(static_cast<int>(x.e.size()) == ngens(), "element has wrong length");
    }

    const std::vector<Letter>& comm_word(int j, int i) const {
        static const std::vector<Letter> empty;
        auto it = rel_.comm.find({j, i});
        return it == rel_.comm.end() ? empty : it->second;
    }

    /* Collection: repeatedly fix the leftmost violation of normal form.
     * Tape exponents stay below 2p throughout. */
    Element collect_normal_tape(std::vector<Letter> tape) const {
        const long long p = rel_.prime;
        size_t pos = 1;
        unsigned long long steps = 0;
        while (pos < tape.size()) {
            require(++steps < 100000000ull, "collection did not terminate (inconsistent presentation?)");
            if (tape[pos].exp == 0) { tape.erase(tape.begin() + static_cast<long>(pos)); continue; }
            if (pos == 0) { pos = 1; continue; }
            if (tape[pos - 1].exp == 0) {
                tape.erase(tape.begin() + static_cast<long>(pos - 1));
                if (pos > 1) --pos;
                continue;
            }
            Letter& prev = tape[pos - 1];
            Letter& cur = tape[pos];
            if (cur.gen == prev.gen) {
                prev.exp += cur.exp;
                tape.erase(tape.begin() + static_cast<long>(pos));
                if (prev.exp >= p) {
                    prev.exp -= p;
                    // g^p commutes with g, so the power word may be inserted after.
                    const auto& pw = rel_.power[static_cast<size_t>(prev.gen)];
                    tape.insert(tape.begin() + static_cast<long>(pos), pw.begin(), pw.end());
                }
                pos = pos > 1 ? pos - 1 : 1;
            } else if (cur.gen > prev.gen) {
                ++pos;
            } else {
                // Move a single g_i of cur leftwards past a single g_j of prev:
                //   g_j^{ej} g_i^{ei} = g_j^{ej-1} g_i g_j [g_j, g_i] g_i^{ei-1}
                const int j = prev.gen, i = cur.gen;
                const long long ej = prev.exp, ei = cur.exp;
                const auto& cw = comm_word(j, i);
                std::vector<Letter> repl;
                repl.reserve(3 + cw.size());
                if (ej > 1) repl.push_back({j, ej - 1});
                repl.push_back({i, 1});
                repl.push_back({j, 1});
                repl.insert(repl.end(), cw.begin(), cw.end());
                if (ei > 1) repl.push_back({i, ei - 1});
                const size_t at = pos - 1;
                tape.erase(tape.begin() + static_cast<long>(at), tape.begin() + static_cast<long>(pos + 1));
                tape.insert(tape.begin() + static_cast<long>(at), repl.begin(), repl.end());
                pos = at + (ej > 1 ? 1 : 0);
                if (pos == 0) pos = 1;
            }
        }
        Element x = identity();
        int last = -1;
        for (const Letter& l : tape) {
            if (l.exp == 0) continue;
            require(l.gen > last && l.exp >= 1 && l.exp < p, "collection produced a non-normal word");
            x.e[static_cast<size_t>(l.gen)] = static_cast<uint8_t>(l.exp);
            last = l.gen;
        }
        return x;
    }

    Element collect_word(const std::vector<Letter>& w) const {
        return collect_normal_tape(w);
    }

    Element pow_collect(const Element& a, long long e) const {
        Element r = identity();
        for (long long t = 0; t < e; ++t) r = mul_collect(r, a);
        return r;
    }

    void build_table() {
        const uint64_t N = order_;
        const int n = ngens();
        // Right multiplication by each generator, from collection.
        std::vector<std::vector<uint32_t>> rmul(static_cast<size_t>(n), std::vector<uint32_t>(N));
        for (int g = 0; g < n; ++g) {
            Element gg = generator(g);
            for (uint64_t x = 0; x < N; ++x)
                rmul[static_cast<size_t>(g)][x] = static_cast<uint32_t>(index_of(mul_collect(element_at(x), gg)));
        }
        std::vector<Element> decoded;
        decoded.reserve(N);
        for (uint64_t y = 0; y < N; ++y) decoded.push_back(element_at(y));
        table_.assign(static_cast<size_t>(N) * N, 0);
        inv_table_.assign(N, 0);
        for (uint64_t x = 0; x < N; ++x) {
            for (uint64_t y = 0; y < N; ++y) {
                // Fold y's normal form through the generator actions.
                uint64_t acc = x;
                for (int g = 0; g < n; ++g)
                    for (int t = 0; t < decoded[y].e[static_cast<size_t>(g)]; ++t)
                        acc = rmul[static_cast<size_t>(g)][acc];
                table_[static_cast<size_t>(x) * N + y] = static_cast<uint32_t>(acc);
                if (acc == 0) inv_table_[x] = static_cast<uint32_t>(y);
            }
        }
    }

    Relations rel_;
    Options opt_;
    unsigned long long order_ = 1;
    std::vector<uint32_t> table_;
    std::vector<uint32_t> inv_table_;
};

} // namespace nilcert
