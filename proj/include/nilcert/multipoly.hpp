#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "common.hpp"
#include "intpoly.hpp"

namespace nilcert {

/* Sparse multivariate polynomial over the integers: exponent vector -> coefficient.
 * Zero coefficients are never stored. */
class MultiPoly {
public:
    explicit MultiPoly(int nvars) : nvars_(nvars) { require(nvars >= 1, "MultiPoly: need at least one variable"); }

    static MultiPoly constant(int nvars, Int v) {
        MultiPoly r(nvars);
        if (v != 0) r.terms_[std::vector<int>(static_cast<size_t>(nvars), 0)] = std::move(v);
        return r;
    }

    static MultiPoly variable(int nvars, int i) {
        require(i >= 0 && i < nvars, "MultiPoly::variable: index out of range");
        MultiPoly r(nvars);
        std::vector<int> e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(i)] = 1;
        r.terms_[std::move(e)] = 1;
        return r;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<std::vector<int>, Int>& terms() const { return terms_; }

    void add_term(std::vector<int> exps, const Int& coeff) {
        require(static_cast<int>(exps.size()) == nvars_, "add_term: wrong arity");
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            if (coeff != 0) terms_.emplace(std::move(exps), coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        require(a.nvars_ == b.nvars_, "MultiPoly: mixed arity");
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        require(a.nvars_ == b.nvars_, "MultiPoly: mixed arity");
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        require(a.nvars_ == b.nvars_, "MultiPoly: mixed arity");
        MultiPoly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                std::vector<int> e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    int nvars_;
    std::map<std::vector<int>, Int> terms_;
};

/* h(X_1 * X_2 * ... * X_m) viewed as a polynomial in m variables. */
inline MultiPoly substitute_product(const IntPoly& h, int m) {
    MultiPoly r(m);
    for (int k = 0; k <= h.degree(); ++k) {
        if (h[k] == 0) continue;
        r.add_term(std::vector<int>(static_cast<size_t>(m), k), h[k]);
    }
    return r;
}

/* Normal form of P modulo the ideal (f(X_1), ..., f(X_m)), f monic.
 * Because each ideal generator involves a single variable, the normal form is
 * obtained by reducing every variable's exponent independently: X^e mod f,
 * then expanding the product of the per-variable remainders. */
inline MultiPoly reduce_mod_powers(const MultiPoly& P, const IntPoly& f) {
    require(f.is_monic(), "reduce_mod_powers: f must be monic");
    require(f.degree() >= 1, "reduce_mod_powers: f must be nonconstant");
    int m = P.nvars();
    std::vector<IntPoly> rem_cache;  // rem_cache[e] = X^e mod f
    rem_cache.push_back(IntPoly::constant(1));
    auto x_power_mod = [&](int e) -> const IntPoly& {
        while (static_cast<int>(rem_cache.size()) <= e) {
            IntPoly next = rem_cache.back() * IntPoly::x_power(1);
            rem_cache.push_back(IntPoly::divmod_monic(next, f).second);
        }
        return rem_cache[static_cast<size_t>(e)];
    };

    MultiPoly out(m);
    for (const auto& [exps, coeff] : P.terms()) {
        // Tensor-expand the product of univariate remainders across the m variables.
        std::vector<std::pair<std::vector<int>, Int>> partial{{std::vector<int>(static_cast<size_t>(m), 0), coeff}};
        for (int v = 0; v < m; ++v) {
            const IntPoly& rem = x_power_mod(exps[static_cast<size_t>(v)]);
            std::vector<std::pair<std::vector<int>, Int>> next;
            next.reserve(partial.size() * static_cast<size_t>(rem.degree() + 1));
            for (const auto& [e, c] : partial)
                for (int d = 0; d <= rem.degree(); ++d) {
                    if (rem[d] == 0) continue;
                    std::vector<int> e2 = e;
                    e2[static_cast<size_t>(v)] = d;
                    next.emplace_back(std::move(e2), c * rem[d]);
                }
            partial = std::move(next);
        }
        for (auto& [e, c] : partial) out.add_term(std::move(e), c);
    }
    return out;
}

/* Characteristic polynomial of multiplication by X_1*...*X_m on the quotient
 * ring Z[X_1,...,X_m]/(f(X_1),...,f(X_m)), f monic of degree D.  The operator
 * is the m-fold tensor power of the companion matrix of f, so its k-th power
 * trace is t_k^m where t_k is the k-th power sum of the roots of f.  Power
 * sums come from the coefficients by Newton's identities, and the elementary
 * symmetric functions of the tensor operator come back the same way.
 * Monic of degree exactly D^m; for m = 1 this returns f itself. */
inline IntPoly product_annihilator(const IntPoly& f, int m) {
    require(f.is_monic(), "product_annihilator: f must be monic");
    require(f.degree() >= 1, "product_annihilator: f must be nonconstant");
    require(m >= 1, "product_annihilator: m must be at least 1");
    const int D = f.degree();
    long long N = 1;
    for (int i = 0; i < m; ++i) {
        N *= D;
        require(N <= (1LL << 20), "product_annihilator: degree D^m too large");
    }

    // Power sums t_0..t_N of the roots of f via Newton's identities.
    // Writing f = X^D + a_{D-1} X^{D-1} + ... + a_0:
    //   t_k = -k*a_{D-k} - sum_{i=1}^{k-1} a_{D-i} * t_{k-i}         (k <= D)
    //   t_k = -sum_{i=1}^{D} a_{D-i} * t_{k-i}                       (k >  D)
    std::vector<Int> t(static_cast<size_t>(N) + 1);
    t[0] = D;
    for (long long k = 1; k <= N; ++k) {
        Int s = 0;
        if (k <= D) s = -Int(k) * f[static_cast<int>(D - k)];
        for (long long i = 1; i < k && i <= D; ++i)
            s -= f[static_cast<int>(D - i)] * t[static_cast<size_t>(k - i)];
        t[static_cast<size_t>(k)] = s;
    }

    // Traces of the k-th power of the tensor operator, then Newton back to the
    // elementary symmetric functions e_k of its eigenvalues:
    //   k*e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} * T_i
    std::vector<Int> e(static_cast<size_t>(N) + 1);
    e[0] = 1;
    for (long long k = 1; k <= N; ++k) {
        Int s = 0;
        for (long long i = 1; i <= k; ++i) {
            Int term = e[static_cast<size_t>(k - i)] * int_pow(t[static_cast<size_t>(i)], static_cast<unsigned long long>(m));
            if (i % 2 == 0) s -= term; else s += term;
        }
        require(s % k == 0, "product_annihilator: Newton division not exact");
        e[static_cast<size_t>(k)] = s / k;
    }

    // chi(X) = sum_k (-1)^k e_k X^{N-k}
    std::vector<Int> c(static_cast<size_t>(N) + 1);
    for (long long k = 0; k <= N; ++k)
        c[static_cast<size_t>(N - k)] = (k % 2 == 0) ? e[static_cast<size_t>(k)] : -e[static_cast<size_t>(k)];
    IntPoly chi{std::move(c)};
    require(chi.is_monic() && chi.degree() == N, "product_annihilator: result malformed");
    return chi;
}

} // namespace nilcert
