#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "common.hpp"
#include "intpoly.hpp"

namespace nilcert {

/* Dense univariate polynomial over the prime field F_p.
 * Coefficients stored lowest degree first, reduced into [0, p). */
class ModPoly {
public:
    explicit ModPoly(long long p) : p_(check_prime(p)) {}

    ModPoly(long long p, std::vector<long long> coeffs) : p_(check_prime(p)), c_(std::move(coeffs)) {
        for (auto& x : c_) x = ((x % p_) + p_) % p_;
        trim();
    }

    static ModPoly from_int_poly(const IntPoly& f, long long p) {
        ModPoly r(p);
        r.c_.reserve(f.coeffs().size());
        for (const Int& c : f.coeffs()) {
            Int m = c % p;
            if (m < 0) m += p;
            r.c_.push_back(static_cast<long long>(m));
        }
        r.trim();
        return r;
    }

    long long prime() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    long long operator[](int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
        return c_[static_cast<size_t>(i)];
    }

    const std::vector<long long>& coeffs() const { return c_; }

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
        a.check_same_field(b);
        ModPoly r(a.p_);
        r.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = (a[static_cast<int>(i)] + b[static_cast<int>(i)]) % a.p_;
        r.trim();
        return r;
    }

    friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
        a.check_same_field(b);
        ModPoly r(a.p_);
        r.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = ((a[static_cast<int>(i)] - b[static_cast<int>(i)]) % a.p_ + a.p_) % a.p_;
        r.trim();
        return r;
    }

    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
        a.check_same_field(b);
        ModPoly r(a.p_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = (r.c_[i + j] + a.c_[i] * b.c_[j]) % a.p_;
        }
        r.trim();
        return r;
    }

    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const ModPoly& a, const ModPoly& b) { return !(a == b); }

    ModPoly scaled(long long s) const {
        ModPoly r(p_);
        s = ((s % p_) + p_) % p_;
        r.c_ = c_;
        for (auto& x : r.c_) x = x * s % p_;
        r.trim();
        return r;
    }

    ModPoly monic() const {
        require(!is_zero(), "monic: zero polynomial");
        return scaled(mod_inverse(c_.back(), p_));
    }

    static std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
        a.check_same_field(b);
        require(!b.is_zero(), "divmod: division by zero polynomial");
        long long p = a.p_;
        long long lead_inv = mod_inverse(b.c_.back(), p);
        std::vector<long long> rem = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {ModPoly(p), a};
        std::vector<long long> quo(static_cast<size_t>(a.degree() - db) + 1, 0);
        for (int i = a.degree(); i >= db; --i) {
            long long q = rem[static_cast<size_t>(i)] * lead_inv % p;
            if (q == 0) continue;
            quo[static_cast<size_t>(i - db)] = q;
            for (int j = 0; j <= db; ++j) {
                auto& r = rem[static_cast<size_t>(i - db + j)];
                r = ((r - q * b.c_[static_cast<size_t>(j)]) % p + p) % p;
            }
        }
        return {ModPoly(p, std::move(quo)), ModPoly(p, std::move(rem))};
    }

    ModPoly pow(int e) const {
        require(e >= 0, "ModPoly::pow: negative exponent");
        ModPoly r(p_, {1}), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            long long c = (*this)[i];
            if (c == 0) continue;
            if (!first) out << " + ";
            first = false;
            if (i == 0) {
                out << c;
            } else {
                if (c != 1) out << c << "*";
                out << "X";
                if (i > 1) out << "^" << i;
            }
        }
        return out.str();
    }

private:
    static long long check_prime(long long p) {
        require(is_prime(p), "ModPoly: modulus must be prime");
        return p;
    }

    void check_same_field(const ModPoly& other) const {
        require(p_ == other.p_, "ModPoly: mixed moduli");
    }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    long long p_;
    std::vector<long long> c_;
};

/* Extended Euclid in F_p[X]: g = gcd(a, b) monic (zero if a = b = 0), with u*a + v*b = g. */
struct BezoutResult {
    ModPoly g, u, v;
};

inline BezoutResult gcd_bezout(const ModPoly& a, const ModPoly& b) {
    require(a.prime() == b.prime(), "gcd_bezout: mixed moduli");
    long long p = a.prime();
    ModPoly r0 = a, r1 = b;
    ModPoly u0(p, {1}), u1(p);
    ModPoly v0(p), v1(p, {1});
    while (!r1.is_zero()) {
        auto [q, r2] = ModPoly::divmod(r0, r1);
        ModPoly u2 = u0 - q * u1;
        ModPoly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    long long s = mod_inverse(r0.coeffs().back(), p);
    return {r0.scaled(s), u0.scaled(s), v0.scaled(s)};
}

/* Engel exponent of a monic integer polynomial h at class c over F_p:
 * gcd((X-1)^c, h mod p) is a power (X-1)^r; returns r with Bezout cofactors
 * u*(X-1)^c + v*h = (X-1)^r over F_p. */
struct EngelExponent {
    int r = 0;
    ModPoly u, v;
};

inline EngelExponent engel_exponent(const IntPoly& h, int c, long long p) {
    require(h.is_monic(), "engel_exponent: h must be monic");
    require(c >= 1, "engel_exponent: class must be at least 1");
    ModPoly hp = ModPoly::from_int_poly(h, p);
    ModPoly xm1(p, {-1, 1});
    ModPoly a = xm1.pow(c);
    BezoutResult bz = gcd_bezout(a, hp);
    // gcd divides (X-1)^c, so it must itself be a power of (X-1); verify literally.
    int r = bz.g.degree();
    require(bz.g == xm1.pow(r), "engel_exponent: gcd is not a power of X-1");
    require(bz.u * a + bz.v * hp == bz.g, "engel_exponent: Bezout identity failed");
    return {r, bz.u, bz.v};
}

} // namespace nilcert
