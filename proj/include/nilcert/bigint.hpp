#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "common.hpp"

namespace nilcert {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(const Int& base, unsigned long long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/* Largest s with p^s dividing q.  q must be nonzero, p >= 2. */
inline int p_part(const Int& q, long long p) {
    require(q != 0, "p_part: q must be nonzero");
    require(p >= 2, "p_part: p must be at least 2");
    Int r = abs(q);
    int s = 0;
    while (r % p == 0) {
        r /= p;
        ++s;
    }
    return s;
}

inline Int factorial(int n) {
    require(n >= 0, "factorial: negative argument");
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/* x^{-1} mod m for small moduli, via extended Euclid. */
inline long long mod_inverse(long long x, long long m) {
    long long a = ((x % m) + m) % m, b = m;
    long long u0 = 1, u1 = 0;
    while (b) {
        long long q = a / b;
        long long t = a - q * b; a = b; b = t;
        t = u0 - q * u1; u0 = u1; u1 = t;
    }
    require(a == 1, "mod_inverse: arguments not coprime");
    return ((u0 % m) + m) % m;
}

} // namespace nilcert
