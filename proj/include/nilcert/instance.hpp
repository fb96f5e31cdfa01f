#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "lawkit.hpp"
#include "pcgroup.hpp"
#include "subgroup.hpp"
#include "word.hpp"

namespace nilcert {

/* A parsed instance file: the group presentation plus optional subset, law,
 * and word blocks.  Line-oriented format:
 *
 *     # comment
 *     prime 3
 *     gens a b c
 *     pow a = c            (meaning a^p = c)
 *     comm b a = c^2       (meaning [b, a] = c^2; left generator later)
 *     subset conj-closure a, b
 *     law x1 x2 x2 x1 = x2 x1 x1 x2
 *     word x1^3
 */
struct Instance {
    std::string name;
    PcGroup::Relations relations;
    std::optional<std::string> subset_spec;
    std::optional<std::string> law_text;
    std::optional<std::string> word_text;
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

/* A relation right-hand side: a positive product of generator names with
 * optional positive exponents, over generators with index strictly greater
 * than `min_index`.  Returns collected letters. */
inline std::vector<Letter> parse_relation_rhs(const std::string& text, int lineno,
                                              const std::vector<std::string>& names,
                                              int min_index) {
    auto fail = [&](const std::string& why) {
        throw error("line " + std::to_string(lineno) + ": " + why);
    };
    auto index_of = [&](const std::string& name) -> int {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        fail("unknown generator '" + name + "'");
        return -1;
    };

    std::vector<Letter> letters;
    if (trim(text) == "1") return letters; // explicit identity
    Word w;
    try {
        w = parse_word(text);
    } catch (const error& e) {
        fail(std::string("bad relation word: ") + e.what());
    }
    // Flatten: only products of (possibly powered) symbols are allowed here.
    std::function<void(const Word&, long long)> flatten = [&](const Word& node, long long mult) {
        switch (node.kind) {
        case Word::Kind::Symbol: {
            int idx = index_of(node.symbol);
            if (idx <= min_index)
                fail("relation must be supported on generators after '" +
                     names[static_cast<size_t>(min_index)] + "', found '" + node.symbol + "'");
            if (mult <= 0) fail("relation exponents must be positive");
            letters.push_back(Letter{idx, mult});
            return;
        }
        case Word::Kind::Product:
            for (const Word& part : node.parts) flatten(part, mult);
            return;
        case Word::Kind::Power:
            flatten(node.parts[0], mult * node.exponent);
            return;
        case Word::Kind::Commutator:
            fail("commutators are not allowed in relation right-hand sides");
        }
    };
    flatten(w, 1);
    return letters;
}

} // namespace detail

/* Parse instance text.  Diagnostics carry 1-based line numbers. */
inline Instance parse_instance(const std::string& text, const std::string& name = "instance") {
    Instance inst;
    inst.name = name;
    PcGroup::Relations& rel = inst.relations;
    rel.prime = 0;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::pair<int, std::string>> pow_lines, comm_lines;

    auto fail = [&](const std::string& why) {
        throw error("line " + std::to_string(lineno) + ": " + why);
    };

    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest = detail::trim(line.substr(key.size()));

        if (key == "prime") {
            if (rel.prime != 0) fail("duplicate 'prime'");
            try {
                rel.prime = std::stoll(rest);
            } catch (...) {
                fail("bad prime '" + rest + "'");
            }
            if (rel.prime < 2) fail("prime must be at least 2");
        } else if (key == "gens") {
            if (!rel.names.empty()) fail("duplicate 'gens'");
            rel.names = detail::split_ws(rest);
            if (rel.names.empty()) fail("'gens' needs at least one name");
            for (const std::string& n : rel.names) {
                if (n == "1") fail("generator name '1' is reserved");
                for (char ch : n)
                    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
                        fail("bad generator name '" + n + "'");
                if (std::isdigit(static_cast<unsigned char>(n[0])))
                    fail("generator name must not start with a digit: '" + n + "'");
            }
            for (size_t i = 0; i < rel.names.size(); ++i)
                for (size_t j = i + 1; j < rel.names.size(); ++j)
                    if (rel.names[i] == rel.names[j])
                        fail("repeated generator name '" + rel.names[i] + "'");
            rel.power.assign(rel.names.size(), {});
        } else if (key == "pow" || key == "comm") {
            if (rel.names.empty()) fail("'" + key + "' before 'gens'");
            size_t eq = rest.find('=');
            if (eq == std::string::npos) fail("'" + key + "' needs '='");
            std::string lhs = detail::trim(rest.substr(0, eq));
            std::string rhs = detail::trim(rest.substr(eq + 1));
            std::vector<std::string> lhs_toks = detail::split_ws(lhs);
            auto index_of = [&](const std::string& n) -> int {
                for (size_t i = 0; i < rel.names.size(); ++i)
                    if (rel.names[i] == n) return static_cast<int>(i);
                fail("unknown generator '" + n + "'");
                return -1;
            };
            if (key == "pow") {
                if (lhs_toks.size() != 1) fail("'pow' takes one generator before '='");
                int i = index_of(lhs_toks[0]);
                if (!rel.power[static_cast<size_t>(i)].empty())
                    fail("duplicate 'pow " + lhs_toks[0] + "'");
                rel.power[static_cast<size_t>(i)] =
                    detail::parse_relation_rhs(rhs, lineno, rel.names, i);
                if (rel.power[static_cast<size_t>(i)].empty() && detail::trim(rhs) != "1")
                    fail("empty power relation; write '= 1' for a trivial one");
            } else {
                if (lhs_toks.size() != 2) fail("'comm' takes two generators before '='");
                int j = index_of(lhs_toks[0]);
                int i = index_of(lhs_toks[1]);
                if (j <= i) fail("'comm b a' requires b to come after a in 'gens'");
                if (rel.comm.count({j, i})) fail("duplicate 'comm' relation");
                rel.comm[{j, i}] = detail::parse_relation_rhs(rhs, lineno, rel.names, j);
            }
        } else if (key == "subset") {
            if (inst.subset_spec) fail("duplicate 'subset'");
            inst.subset_spec = rest;
        } else if (key == "law") {
            if (inst.law_text) fail("duplicate 'law'");
            inst.law_text = rest;
        } else if (key == "word") {
            if (inst.word_text) fail("duplicate 'word'");
            inst.word_text = rest;
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    lineno = 0; // end-of-file diagnostics
    if (rel.prime == 0) throw error("instance: missing 'prime'");
    if (rel.names.empty()) throw error("instance: missing 'gens'");
    return inst;
}

/* Canonical text form; parse(emit(i)) reproduces i. */
inline std::string emit_instance(const Instance& inst) {
    const PcGroup::Relations& rel = inst.relations;
    std::ostringstream out;
    out << "prime " << rel.prime << "\n";
    out << "gens";
    for (const std::string& n : rel.names) out << " " << n;
    out << "\n";
    auto word_of = [&](const std::vector<Letter>& ls) {
        if (ls.empty()) return std::string("1");
        std::string s;
        for (size_t t = 0; t < ls.size(); ++t) {
            if (t) s += " ";
            s += rel.names[static_cast<size_t>(ls[t].gen)];
            if (ls[t].exp != 1) s += "^" + std::to_string(ls[t].exp);
        }
        return s;
    };
    for (size_t i = 0; i < rel.names.size(); ++i)
        if (!rel.power[i].empty())
            out << "pow " << rel.names[i] << " = " << word_of(rel.power[i]) << "\n";
    for (const auto& [pair, rhs] : rel.comm)
        if (!rhs.empty())
            out << "comm " << rel.names[static_cast<size_t>(pair.first)] << " "
                << rel.names[static_cast<size_t>(pair.second)] << " = " << word_of(rhs) << "\n";
    if (inst.subset_spec) out << "subset " << *inst.subset_spec << "\n";
    if (inst.law_text) out << "law " << *inst.law_text << "\n";
    if (inst.word_text) out << "word " << *inst.word_text << "\n";
    return out.str();
}

/* "catalog:<name>" or a path to an instance file. */
inline Instance load_instance(const std::string& source) {
    const std::string prefix = "catalog:";
    if (source.rfind(prefix, 0) == 0) {
        std::string name = source.substr(prefix.size());
        const CatalogEntry* entry = catalog_find(name);
        require(entry != nullptr, "unknown catalog group '" + name + "'");
        Instance inst;
        inst.name = name;
        inst.relations = entry->relations;
        return inst;
    }
    std::ifstream in(source);
    require(static_cast<bool>(in), "cannot open instance file '" + source + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string name = source;
    size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return parse_instance(buf.str(), name);
}

/* An element given as a word over generator names, e.g. "a b^2". */
inline Element parse_element(const PcGroup& G, const std::string& text) {
    Word w = parse_word(text);
    return evaluate_word(G, w, [&](const std::string& name) -> Element {
        for (int i = 0; i < G.ngens(); ++i)
            if (G.names()[static_cast<size_t>(i)] == name) return G.generator(i);
        throw error("unknown generator '" + name + "' in element '" + text + "'");
    });
}

/* Subset specifications:
 *   "conj-closure a, b"  — conjugation closure of the listed elements
 *   "word-values x1 x2 x1"  — the value set of a word in variables x1, x2, ...
 *   "a, b^2, c"          — the listed elements themselves
 */
inline std::vector<Element> parse_subset_spec(const PcGroup& G, const std::string& spec,
                                              unsigned long long budget = 1000000) {
    std::string s = detail::trim(spec);
    require(!s.empty(), "empty subset specification");
    const std::string cc = "conj-closure";
    const std::string wv = "word-values";
    if (s.rfind(cc, 0) == 0) {
        std::vector<Element> seeds;
        for (const std::string& tok : detail::split_commas(s.substr(cc.size())))
            seeds.push_back(parse_element(G, tok));
        return conjugation_closure(G, seeds, budget);
    }
    if (s.rfind(wv, 0) == 0) {
        Word w = parse_word(s.substr(wv.size()));
        require(max_variable(w) > 0, "word-values: the word must use variables x1, x2, ...");
        return word_values(G, w, budget).values;
    }
    std::vector<Element> out;
    for (const std::string& tok : detail::split_commas(s)) out.push_back(parse_element(G, tok));
    return sorted_unique(std::move(out));
}

/* Normal-subgroup specifications:
 *   "power k"  — the subgroup generated by all k-th powers
 *   "derived"  — the derived subgroup
 *   "gamma k"  — the k-th lower central term (gamma_1 = G)
 *   "a, b"     — normal closure of the listed elements
 */
inline Subgroup parse_normal_spec(const PcGroup& G, const std::string& spec,
                                  unsigned long long budget = 1000000) {
    std::string s = detail::trim(spec);
    require(!s.empty(), "empty normal-subgroup specification");
    std::vector<std::string> toks = detail::split_ws(s);
    if (toks[0] == "power") {
        require(toks.size() == 2, "'power' takes one integer");
        return power_subgroup(G, Int(std::stoll(toks[1])), budget);
    }
    if (toks[0] == "derived") {
        require(toks.size() == 1, "'derived' takes no arguments");
        return derived_subgroup(Subgroup::whole(G));
    }
    if (toks[0] == "gamma") {
        require(toks.size() == 2, "'gamma' takes one integer");
        int k = std::stoi(toks[1]);
        require(k >= 1, "'gamma' index must be at least 1");
        std::vector<Subgroup> lcs = lower_central_series(Subgroup::whole(G));
        if (k - 1 < static_cast<int>(lcs.size())) return lcs[static_cast<size_t>(k - 1)];
        return Subgroup::trivial(G);
    }
    std::vector<Element> elems;
    for (const std::string& tok : detail::split_commas(s)) elems.push_back(parse_element(G, tok));
    return Subgroup::normal_closure(G, elems);
}

} // namespace nilcert
