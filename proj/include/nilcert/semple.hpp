#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "common.hpp"
#include "intpoly.hpp"

namespace nilcert {

/* Bounds for the separated-power identity search. */
struct SempleBounds {
    int i_max = 8;     // substitution exponents i in h(X^i), 1 <= i <= i_max
    int deg_max = 32;  // maximal cofactor degree
    int param_max = 8; // maximal l and k in the target q * X^l * (X^k - 1)^l
};

/* Witness for q * X^l * (X^k - 1)^l = sum_i c_i(X) * h(X^{i_idx}). */
struct MembershipCertificate {
    int l = 0, k = 0;
    Int q = 0;
    std::vector<int> indices;       // substitution exponents, parallel to cofactors
    std::vector<IntPoly> cofactors;
};

inline IntPoly separated_power_target(int l, int k, const Int& q) {
    IntPoly xk_minus_1 = IntPoly::x_power(k) - IntPoly::constant(1);
    return q * (IntPoly::x_power(l) * xk_minus_1.pow(l));
}

/* Exact re-expansion check of a membership certificate. */
inline bool verify_membership(const IntPoly& h, const MembershipCertificate& cert) {
    if (cert.l < 1 || cert.k < 1 || cert.q < 1) return false;
    if (cert.indices.size() != cert.cofactors.size()) return false;
    IntPoly sum;
    for (size_t t = 0; t < cert.indices.size(); ++t) {
        if (cert.indices[t] < 1) return false;
        sum = sum + cert.cofactors[t] * h.substitute_power(cert.indices[t]);
    }
    return sum == separated_power_target(cert.l, cert.k, cert.q);
}

struct SempleResult {
    int l = 0, k = 0;
    Int q = 0;
    MembershipCertificate cert;
};

struct SempleOutcome {
    std::optional<SempleResult> result;
    bool exhausted = false; // bounds or matrix budget hit before the search could decide
    std::string note;
    SempleBounds bounds;
};

namespace detail {

/* Column echelon form of A by unimodular column operations, with transform U
 * such that A_original * U = H.  Returns pivot columns as (row, col) pairs;
 * pivot columns occupy a prefix of H and have zeros above their pivot row. */
struct ColumnEchelon {
    std::vector<std::vector<Int>> H; // R x C, mutated copy of A
    std::vector<std::vector<Int>> U; // C x C
    std::vector<std::pair<int, int>> pivots;
};

inline ColumnEchelon column_echelon(std::vector<std::vector<Int>> A) {
    const int R = static_cast<int>(A.size());
    const int C = R > 0 ? static_cast<int>(A[0].size()) : 0;
    ColumnEchelon out;
    out.U.assign(static_cast<size_t>(C), std::vector<Int>(static_cast<size_t>(C), 0));
    for (int c = 0; c < C; ++c) out.U[static_cast<size_t>(c)][static_cast<size_t>(c)] = 1;

    auto col_axpy = [&](int dst, int src, const Int& k) { // col_dst -= k * col_src
        if (k == 0) return;
        for (int r = 0; r < R; ++r) A[static_cast<size_t>(r)][static_cast<size_t>(dst)] -= k * A[static_cast<size_t>(r)][static_cast<size_t>(src)];
        for (int r = 0; r < C; ++r) out.U[static_cast<size_t>(r)][static_cast<size_t>(dst)] -= k * out.U[static_cast<size_t>(r)][static_cast<size_t>(src)];
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int r = 0; r < R; ++r) std::swap(A[static_cast<size_t>(r)][static_cast<size_t>(a)], A[static_cast<size_t>(r)][static_cast<size_t>(b)]);
        for (int r = 0; r < C; ++r) std::swap(out.U[static_cast<size_t>(r)][static_cast<size_t>(a)], out.U[static_cast<size_t>(r)][static_cast<size_t>(b)]);
    };
    auto col_negate = [&](int c) {
        for (int r = 0; r < R; ++r) A[static_cast<size_t>(r)][static_cast<size_t>(c)] = -A[static_cast<size_t>(r)][static_cast<size_t>(c)];
        for (int r = 0; r < C; ++r) out.U[static_cast<size_t>(r)][static_cast<size_t>(c)] = -out.U[static_cast<size_t>(r)][static_cast<size_t>(c)];
    };

    int next = 0; // first column not yet fixed as a pivot
    for (int row = 0; row < R && next < C; ++row) {
        // Reduce all active columns at this row to a single nonzero via gcd steps.
        while (true) {
            int best = -1;
            for (int c = next; c < C; ++c) {
                const Int& v = A[static_cast<size_t>(row)][static_cast<size_t>(c)];
                if (v != 0 && (best < 0 || abs(v) < abs(A[static_cast<size_t>(row)][static_cast<size_t>(best)])))
                    best = c;
            }
            if (best < 0) break; // row identically zero on active columns
            bool others = false;
            const Int pivot_val = A[static_cast<size_t>(row)][static_cast<size_t>(best)];
            for (int c = next; c < C; ++c) {
                if (c == best) continue;
                const Int& v = A[static_cast<size_t>(row)][static_cast<size_t>(c)];
                if (v == 0) continue;
                col_axpy(c, best, v / pivot_val); // remainder has smaller absolute value
                if (A[static_cast<size_t>(row)][static_cast<size_t>(c)] != 0) others = true;
            }
            if (!others) {
                col_swap(next, best);
                if (A[static_cast<size_t>(row)][static_cast<size_t>(next)] < 0) col_negate(next);
                out.pivots.emplace_back(row, next);
                ++next;
                break;
            }
        }
    }
    out.H = std::move(A);
    return out;
}

} // namespace detail

/* Finds the lexicographically least (l, k, q) with
 *   q * X^l * (X^k - 1)^l = sum over i of c_i(X) * h(X^i),
 * deg c_i <= deg_max, 1 <= i <= i_max, 1 <= l, k <= param_max.
 * h must be monic of positive degree.  Never returns a wrong triple: if a
 * candidate (l, k) cannot be decided within the matrix budget the search
 * reports exhaustion instead of skipping it. */
inline SempleOutcome semple_search(const IntPoly& h, SempleBounds bounds = {},
                                   long long matrix_cell_budget = 400000) {
    require(h.is_monic(), "semple_search: h must be monic");
    require(h.degree() >= 1, "semple_search: h must be nonconstant");
    require(bounds.i_max >= 1 && bounds.deg_max >= 0 && bounds.param_max >= 1,
            "semple_search: bounds must be positive");

    SempleOutcome out;
    out.bounds = bounds;
    const int D = h.degree();
    const int mult1 = h.multiplicity_at(1);
    const int mult_neg1 = h.multiplicity_at(-1);
    const int mult0 = h.multiplicity_at(0);
    // Common factor of every generator h(X^i): at X = -1 the substitution has
    // multiplicity mult1 for even i and mult_neg1 for odd i.
    const int common_neg1 = bounds.i_max >= 2 ? std::min(mult1, mult_neg1) : mult_neg1;

    for (int l = 1; l <= bounds.param_max; ++l) {
        if (mult1 > l || mult0 > l) continue; // (X-1)^mult1 and X^mult0 divide every generator
        for (int k = 1; k <= bounds.param_max; ++k) {
            if (common_neg1 > (k % 2 == 0 ? l : 0)) continue; // common (X+1) power must divide the target
            IntPoly target = separated_power_target(l, k, 1);
            const int deg_t = target.degree();

            // Single-generator shortcut: exact division gives q = 1, which is minimal.
            bool solved = false;
            for (int i = 1; i <= bounds.i_max && !solved; ++i) {
                if (deg_t < i * D || deg_t - i * D > bounds.deg_max) continue;
                auto [quo, rem] = IntPoly::divmod_monic(target, h.substitute_power(i));
                if (!rem.is_zero()) continue;
                MembershipCertificate cert{l, k, 1, {i}, {quo}};
                require(verify_membership(h, cert), "semple_search: certificate re-check failed");
                out.result = SempleResult{l, k, 1, std::move(cert)};
                solved = true;
            }
            if (solved) return out;

            // Full lattice membership: columns X^j * h(X^i).
            std::vector<std::pair<int, int>> cols; // (i, j)
            int max_deg = deg_t;
            for (int i = 1; i <= bounds.i_max; ++i)
                for (int j = 0; j <= bounds.deg_max; ++j) {
                    cols.emplace_back(i, j);
                    max_deg = std::max(max_deg, i * D + j);
                }
            const int R = max_deg + 1;
            const long long cells = static_cast<long long>(R) * static_cast<long long>(cols.size());
            if (cells > matrix_cell_budget) {
                out.exhausted = true;
                out.note = "candidate (l=" + std::to_string(l) + ", k=" + std::to_string(k) +
                           ") needs a " + std::to_string(R) + "x" + std::to_string(cols.size()) +
                           " lattice exceeding the matrix budget";
                return out;
            }

            std::vector<std::vector<Int>> A(static_cast<size_t>(R), std::vector<Int>(cols.size(), 0));
            for (size_t c = 0; c < cols.size(); ++c) {
                auto [i, j] = cols[c];
                IntPoly g = IntPoly::x_power(j) * h.substitute_power(i);
                for (int d = 0; d <= g.degree(); ++d) A[static_cast<size_t>(d)][c] = g[d];
            }

            detail::ColumnEchelon ech = detail::column_echelon(std::move(A));

            // Solve H y = t over the rationals by forward substitution down the staircase.
            std::vector<Rat> residual(static_cast<size_t>(R));
            for (int r = 0; r < R; ++r) residual[static_cast<size_t>(r)] = Rat(target[r]);
            std::vector<Rat> y(ech.pivots.size());
            bool feasible = true;
            size_t s = 0;
            for (int r = 0; r < R && feasible; ++r) {
                if (s < ech.pivots.size() && ech.pivots[s].first == r) {
                    const int pc = ech.pivots[s].second;
                    Rat ys = residual[static_cast<size_t>(r)] / Rat(ech.H[static_cast<size_t>(r)][static_cast<size_t>(pc)]);
                    y[s] = ys;
                    if (ys != 0)
                        for (int r2 = r; r2 < R; ++r2)
                            residual[static_cast<size_t>(r2)] -= ys * Rat(ech.H[static_cast<size_t>(r2)][static_cast<size_t>(pc)]);
                    ++s;
                } else if (residual[static_cast<size_t>(r)] != 0) {
                    feasible = false; // infeasible for every q: scaling q rescales y uniformly
                }
            }
            if (!feasible) continue;

            // Minimal q: the multiples q with q*t in the lattice form the ideal
            // generated by the lcm of the denominators of the basis solution.
            Int q = 1;
            for (const Rat& ys : y) q = lcm(q, denominator(ys));

            std::vector<Int> yi(y.size());
            for (size_t t = 0; t < y.size(); ++t) {
                Rat scaled = Rat(q) * y[t];
                require(denominator(scaled) == 1, "semple_search: scaled solution not integral");
                yi[t] = numerator(scaled);
            }
            // Map back through the column transform: x = U * y placed at pivot columns.
            std::vector<Int> x(cols.size(), 0);
            for (size_t c = 0; c < cols.size(); ++c) {
                Int acc = 0;
                for (size_t t = 0; t < yi.size(); ++t)
                    acc += ech.U[c][static_cast<size_t>(ech.pivots[t].second)] * yi[t];
                x[c] = acc;
            }

            MembershipCertificate cert;
            cert.l = l; cert.k = k; cert.q = q;
            std::vector<IntPoly> by_index(static_cast<size_t>(bounds.i_max) + 1);
            for (size_t c = 0; c < cols.size(); ++c) {
                if (x[c] == 0) continue;
                auto [i, j] = cols[c];
                by_index[static_cast<size_t>(i)] = by_index[static_cast<size_t>(i)] + x[c] * IntPoly::x_power(j);
            }
            for (int i = 1; i <= bounds.i_max; ++i) {
                if (by_index[static_cast<size_t>(i)].is_zero()) continue;
                cert.indices.push_back(i);
                cert.cofactors.push_back(by_index[static_cast<size_t>(i)]);
            }
            require(verify_membership(h, cert), "semple_search: certificate re-check failed");
            out.result = SempleResult{l, k, q, std::move(cert)};
            return out;
        }
    }
    out.exhausted = true;
    out.note = "no identity within bounds (i_max=" + std::to_string(bounds.i_max) +
               ", deg_max=" + std::to_string(bounds.deg_max) +
               ", param_max=" + std::to_string(bounds.param_max) + ")";
    return out;
}

} // namespace nilcert
