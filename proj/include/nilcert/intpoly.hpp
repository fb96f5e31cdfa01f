#pragma once

#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "common.hpp"

namespace nilcert {

/* Dense univariate polynomial over arbitrary-precision integers.
 * Coefficients are stored lowest degree first; the zero polynomial stores nothing. */
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<Int> coeffs) : c_(coeffs) { trim(); }

    static IntPoly constant(Int v) { return IntPoly{std::move(v)}; }

    static IntPoly x_power(int d) {
        require(d >= 0, "x_power: negative exponent");
        std::vector<Int> c(static_cast<size_t>(d) + 1, 0);
        c.back() = 1;
        return IntPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    const Int& operator[](int i) const {
        static const Int zero = 0;
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(i)];
    }

    const std::vector<Int>& coeffs() const { return c_; }

    Int leading() const {
        require(!c_.empty(), "leading: zero polynomial");
        return c_.back();
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return IntPoly(std::move(c));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return IntPoly(std::move(c));
    }

    friend IntPoly operator-(const IntPoly& a) {
        std::vector<Int> c = a.c_;
        for (auto& x : c) x = -x;
        return IntPoly(std::move(c));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<Int> c(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(c));
    }

    friend IntPoly operator*(const Int& s, const IntPoly& a) {
        std::vector<Int> c = a.c_;
        for (auto& x : c) x *= s;
        return IntPoly(std::move(c));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    IntPoly pow(int e) const {
        require(e >= 0, "IntPoly::pow: negative exponent");
        IntPoly r = constant(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    Int eval(const Int& x) const {
        Int r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    /* p(X) -> p(X^k). */
    IntPoly substitute_power(int k) const {
        require(k >= 1, "substitute_power: exponent must be positive");
        if (is_zero()) return IntPoly();
        std::vector<Int> c(static_cast<size_t>(degree()) * k + 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
        return IntPoly(std::move(c));
    }

    /* X^deg * p(1/X): coefficient vector reversed (leading trailing zeros dropped). */
    IntPoly reciprocal() const {
        std::vector<Int> c(c_.rbegin(), c_.rend());
        return IntPoly(std::move(c));
    }

    /* Quotient and remainder by a monic divisor; exact over the integers. */
    static std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& b) {
        require(b.is_monic(), "divmod_monic: divisor must be monic");
        std::vector<Int> rem = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {IntPoly(), a};
        std::vector<Int> quo(static_cast<size_t>(a.degree() - db) + 1, 0);
        for (int i = a.degree(); i >= db; --i) {
            Int q = rem[static_cast<size_t>(i)];
            if (q == 0) continue;
            quo[static_cast<size_t>(i - db)] = q;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<size_t>(i - db + j)] -= q * b.c_[static_cast<size_t>(j)];
        }
        return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
    }

    static bool divides_monic(const IntPoly& divisor, const IntPoly& a) {
        return divmod_monic(a, divisor).second.is_zero();
    }

    /* Multiplicity of `root` as a zero of the polynomial (0 if not a root). */
    int multiplicity_at(const Int& root) const {
        require(!is_zero(), "multiplicity_at: zero polynomial");
        if (root == 0) {
            int m = 0;
            while (m < static_cast<int>(c_.size()) && c_[static_cast<size_t>(m)] == 0) ++m;
            return m;
        }
        IntPoly cur = *this;
        IntPoly lin{-root, Int(1)};
        int m = 0;
        while (cur.eval(root) == 0) {
            auto [q, r] = divmod_monic(cur, lin);
            cur = std::move(q);
            ++m;
        }
        return m;
    }

    /* Same polynomial up to sign, with positive leading coefficient. */
    IntPoly sign_normalized() const {
        if (is_zero() || c_.back() > 0) return *this;
        return -*this;
    }

    /* Divide out the largest power of X (makes the constant term nonzero). */
    IntPoly cleared() const {
        if (is_zero()) return *this;
        size_t v = 0;
        while (c_[v] == 0) ++v;
        return IntPoly(std::vector<Int>(c_.begin() + static_cast<long>(v), c_.end()));
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Int& c = (*this)[i];
            if (c == 0) continue;
            Int a = abs(c);
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (i == 0) {
                out << a;
            } else {
                if (a != 1) out << a << "*";
                out << "X";
                if (i > 1) out << "^" << i;
            }
        }
        return out.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPoly& p) { return os << p.str(); }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Int> c_;
};

/* (X - 1)^e, used throughout the Engel machinery. */
inline IntPoly x_minus_one_power(int e) {
    return IntPoly{-1, 1}.pow(e);
}

} // namespace nilcert
