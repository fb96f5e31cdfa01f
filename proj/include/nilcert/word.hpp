#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "pcgroup.hpp"

namespace nilcert {

/* Group word over named symbols.  Symbols of the form x1, x2, ... act as
 * variables in laws; any other name refers to a concrete group element
 * (resolved at evaluation time).  Syntax accepted by the parser:
 *   word   := factor*                 juxtaposition is the product
 *   factor := atom ('^' integer)?
 *   atom   := name | '[' word ',' word ']' | '(' word ')' | '1'
 * Whitespace separates adjacent names. */
struct Word {
    enum class Kind { Symbol, Product, Commutator, Power };
    Kind kind = Kind::Product;
    std::string symbol;      // Symbol
    std::vector<Word> parts; // Product: any number; Commutator: two; Power: one
    long long exponent = 1;  // Power

    static Word sym(std::string name) {
        Word w;
        w.kind = Kind::Symbol;
        w.symbol = std::move(name);
        return w;
    }
    static Word product(std::vector<Word> factors) {
        if (factors.size() == 1) return std::move(factors.front());
        Word w;
        w.kind = Kind::Product;
        w.parts = std::move(factors);
        return w;
    }
    static Word identity() { return Word{}; }
    static Word commutator(Word u, Word v) {
        Word w;
        w.kind = Kind::Commutator;
        w.parts.push_back(std::move(u));
        w.parts.push_back(std::move(v));
        return w;
    }
    static Word power(Word base, long long e) {
        if (e == 1) return base;
        Word w;
        w.kind = Kind::Power;
        w.parts.push_back(std::move(base));
        w.exponent = e;
        return w;
    }
};

namespace detail {

class WordParser {
public:
    explicit WordParser(const std::string& text) : s_(text) {}

    Word parse_full() {
        Word w = parse_word();
        skip_ws();
        require(pos_ == s_.size(), here("unexpected trailing text"));
        return w;
    }

    Word parse_word() {
        std::vector<Word> factors;
        for (;;) {
            skip_ws();
            if (pos_ == s_.size()) break;
            char c = s_[pos_];
            if (c == ',' || c == ']' || c == ')' || c == '=') break;
            factors.push_back(parse_factor());
        }
        return Word::product(std::move(factors));
    }

private:
    Word parse_factor() {
        Word atom = parse_atom();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            long long e = parse_int();
            return Word::power(std::move(atom), e);
        }
        return atom;
    }

    Word parse_atom() {
        skip_ws();
        require(pos_ < s_.size(), here("expected a word atom"));
        char c = s_[pos_];
        if (c == '[') {
            ++pos_;
            Word u = parse_word();
            expect(',');
            Word v = parse_word();
            expect(']');
            return Word::commutator(std::move(u), std::move(v));
        }
        if (c == '(') {
            ++pos_;
            Word w = parse_word();
            expect(')');
            return w;
        }
        if (c == '1' && !(pos_ + 1 < s_.size() && is_name_char(s_[pos_ + 1]))) {
            ++pos_;
            return Word::identity();
        }
        require(std::isalpha(static_cast<unsigned char>(c)) || c == '_',
                here("expected a name, '[', '(' or '1'"));
        size_t start = pos_;
        while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
        return Word::sym(s_.substr(start, pos_ - start));
    }

    long long parse_int() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        require(pos_ > digits, here("expected an integer exponent"));
        return std::stoll(s_.substr(start, pos_ - start));
    }

    void expect(char c) {
        skip_ws();
        require(pos_ < s_.size() && s_[pos_] == c,
                here(std::string("expected '") + c + "'"));
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string here(const std::string& msg) const {
        return "word parse error at position " + std::to_string(pos_ + 1) + ": " + msg +
               " in \"" + s_ + "\"";
    }

    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace detail

inline Word parse_word(const std::string& text) { return detail::WordParser(text).parse_full(); }

inline std::string word_str(const Word& w) {
    switch (w.kind) {
    case Word::Kind::Symbol:
        return w.symbol;
    case Word::Kind::Commutator:
        return "[" + word_str(w.parts[0]) + ", " + word_str(w.parts[1]) + "]";
    case Word::Kind::Power: {
        const Word& b = w.parts[0];
        std::string base = word_str(b);
        if (b.kind == Word::Kind::Product) base = "(" + base + ")";
        return base + "^" + std::to_string(w.exponent);
    }
    case Word::Kind::Product: {
        if (w.parts.empty()) return "1";
        std::string out;
        for (size_t i = 0; i < w.parts.size(); ++i) {
            if (i) out += " ";
            const Word& f = w.parts[i];
            if (f.kind == Word::Kind::Product)
                out += "(" + word_str(f) + ")";
            else
                out += word_str(f);
        }
        return out;
    }
    }
    return {};
}

inline void collect_symbols(const Word& w, std::set<std::string>& out) {
    if (w.kind == Word::Kind::Symbol) {
        out.insert(w.symbol);
        return;
    }
    for (const Word& p : w.parts) collect_symbols(p, out);
}

/* "x7" -> 7; anything else -> nullopt.  Variables are 1-based. */
inline std::optional<int> variable_index(const std::string& symbol) {
    if (symbol.size() < 2 || symbol[0] != 'x') return std::nullopt;
    for (size_t i = 1; i < symbol.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(symbol[i]))) return std::nullopt;
    if (symbol[1] == '0') return std::nullopt;
    return std::stoi(symbol.substr(1));
}

inline int max_variable(const Word& w) {
    if (w.kind == Word::Kind::Symbol) {
        auto v = variable_index(w.symbol);
        return v ? *v : 0;
    }
    int m = 0;
    for (const Word& p : w.parts) m = std::max(m, max_variable(p));
    return m;
}

/* A positive word is a product of symbols with positive exponents only. */
inline bool is_positive_word(const Word& w) {
    switch (w.kind) {
    case Word::Kind::Symbol:
        return true;
    case Word::Kind::Commutator:
        return false;
    case Word::Kind::Power:
        return w.exponent >= 1 && is_positive_word(w.parts[0]);
    case Word::Kind::Product:
        for (const Word& p : w.parts)
            if (!is_positive_word(p)) return false;
        return true;
    }
    return false;
}

/* Flatten a positive word into its letter sequence, expanding exponents. */
inline void positive_letters(const Word& w, std::vector<std::string>& out) {
    switch (w.kind) {
    case Word::Kind::Symbol:
        out.push_back(w.symbol);
        return;
    case Word::Kind::Power: {
        require(w.exponent >= 1, "positive_letters: negative exponent in a positive word");
        std::vector<std::string> base;
        positive_letters(w.parts[0], base);
        for (long long i = 0; i < w.exponent; ++i) out.insert(out.end(), base.begin(), base.end());
        return;
    }
    case Word::Kind::Product:
        for (const Word& p : w.parts) positive_letters(p, out);
        return;
    case Word::Kind::Commutator:
        throw error("positive_letters: commutator in a positive word");
    }
}

inline std::vector<std::string> positive_letters(const Word& w) {
    std::vector<std::string> out;
    positive_letters(w, out);
    return out;
}

inline Word substitute_symbols(const Word& w, const std::map<std::string, Word>& repl) {
    if (w.kind == Word::Kind::Symbol) {
        auto it = repl.find(w.symbol);
        return it != repl.end() ? it->second : w;
    }
    Word out = w;
    for (Word& p : out.parts) p = substitute_symbols(p, repl);
    return out;
}

inline Element evaluate_word(const PcGroup& G, const Word& w,
                             const std::function<Element(const std::string&)>& resolve) {
    switch (w.kind) {
    case Word::Kind::Symbol:
        return resolve(w.symbol);
    case Word::Kind::Commutator:
        return G.comm(evaluate_word(G, w.parts[0], resolve),
                      evaluate_word(G, w.parts[1], resolve));
    case Word::Kind::Power:
        return G.pow(evaluate_word(G, w.parts[0], resolve), w.exponent);
    case Word::Kind::Product: {
        Element r = G.identity();
        for (const Word& p : w.parts) r = G.mul(r, evaluate_word(G, p, resolve));
        return r;
    }
    }
    return G.identity();
}

/* Evaluate a word whose symbols are all variables x1..xN on a value tuple. */
inline Element evaluate_word(const PcGroup& G, const Word& w, const std::vector<Element>& args) {
    return evaluate_word(G, w, [&](const std::string& name) -> Element {
        auto v = variable_index(name);
        require(v.has_value(), "evaluate_word: unbound symbol " + name);
        require(*v >= 1 && static_cast<size_t>(*v) <= args.size(),
                "evaluate_word: variable " + name + " exceeds the argument tuple");
        return args[static_cast<size_t>(*v - 1)];
    });
}

/* A law lhs == rhs in variables x1..xN (rhs may be the empty word). */
struct Law {
    Word lhs;
    Word rhs;
    int nvars = 0;
    bool positive = false;         // both sides are nonempty positive words
    std::vector<int> alpha, beta;  // letter sequences (variable indices) when positive
    int degree = 0;                // max of the two side lengths when positive
    std::string text;
};

inline Law law_from_words(Word lhs, Word rhs, std::string text = {}) {
    Law law;
    law.lhs = std::move(lhs);
    law.rhs = std::move(rhs);
    law.text = std::move(text);
    if (law.text.empty()) law.text = word_str(law.lhs) + " = " + word_str(law.rhs);
    std::set<std::string> syms;
    collect_symbols(law.lhs, syms);
    collect_symbols(law.rhs, syms);
    for (const std::string& s : syms)
        require(variable_index(s).has_value(),
                "law: symbol " + s + " is not a variable (use x1, x2, ...)");
    law.nvars = std::max(max_variable(law.lhs), max_variable(law.rhs));
    auto nonempty = [](const Word& w) {
        return !(w.kind == Word::Kind::Product && w.parts.empty());
    };
    if (is_positive_word(law.lhs) && is_positive_word(law.rhs) && nonempty(law.lhs) &&
        nonempty(law.rhs)) {
        law.positive = true;
        for (const std::string& s : positive_letters(law.lhs))
            law.alpha.push_back(*variable_index(s));
        for (const std::string& s : positive_letters(law.rhs))
            law.beta.push_back(*variable_index(s));
        law.degree = static_cast<int>(std::max(law.alpha.size(), law.beta.size()));
    }
    return law;
}

/* Parse "lhs = rhs", or a bare word w meaning w == 1. */
inline Law parse_law(const std::string& text) {
    size_t eq = text.find('=');
    if (eq == std::string::npos) return law_from_words(parse_word(text), Word::identity(), text);
    require(text.find('=', eq + 1) == std::string::npos, "law: more than one '='");
    return law_from_words(parse_word(text.substr(0, eq)), parse_word(text.substr(eq + 1)), text);
}

inline Law parse_positive_law(const std::string& text) {
    Law law = parse_law(text);
    require(law.positive, "expected a positive law (both sides nonempty products of variables)");
    require(law.alpha != law.beta, "degenerate law: the two sides are the same word");
    return law;
}

} // namespace nilcert
