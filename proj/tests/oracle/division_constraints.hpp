#pragma once

// Reference construction of D(A, mu) in one degree, independent of the
// library's constraint builder and elimination. A derivation of degree d is
// a vector of 2(d+1) unknowns; theta(alpha) is a polynomial whose
// coefficients are linear in the unknowns. Dividing it by alpha mu_H times,
// each remainder must vanish, which gives one linear condition per step.

#include "mlat/field.hpp"

#include <utility>
#include <vector>

namespace oracle {

using mlat::Scalar;
using Row = std::vector<Scalar>;
/// Polynomial with coefficient k of x^k y^(e-k) given as a row over the unknowns.
using LinPoly = std::vector<Row>;

struct Form {
    Scalar a, b;
};

inline Row zero_row(std::size_t n) { return Row(n, Scalar(0)); }

inline void axpy(Row& y, const Scalar& c, const Row& x)
{
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += c * x[i];
}

/// Unknowns: P_0..P_d then Q_0..Q_d, P_i the coefficient of x^i y^(d-i).
inline LinPoly apply_form(const Form& f, int d)
{
    const std::size_t n = 2 * static_cast<std::size_t>(d + 1);
    LinPoly out(static_cast<std::size_t>(d + 1), zero_row(n));
    for (int k = 0; k <= d; ++k) {
        out[k][k] = f.a;
        out[k][d + 1 + k] = f.b;
    }
    return out;
}

/// Remainder and quotient of g by the form, by Horner's scheme on the
/// dehomogenized polynomial. For f = a x + b y with a != 0 the root is
/// x/y = -b/a; for f = y the remainder is the x^e coefficient.
inline std::pair<Row, LinPoly> divide(const LinPoly& g, const Form& f)
{
    const std::size_t n = g.front().size();
    const int e = static_cast<int>(g.size()) - 1;
    if (f.a.is_zero()) {
        // g = y q + c x^e.
        LinPoly q(g.begin(), g.end() - 1);
        Row r = g.back();
        const Scalar inv = f.b.inverse();
        for (auto& row : q)
            for (auto& c : row)
                c *= inv;
        return {r, q};
    }
    // In t = x/y: g = sum g_k t^k, divide by (t - t0), then rescale by 1/a.
    const Scalar t0 = -f.b / f.a;
    LinPoly q(static_cast<std::size_t>(e), zero_row(n));
    Row acc = zero_row(n);
    for (int k = e; k >= 0; --k) {
        Row next = g[static_cast<std::size_t>(k)];
        axpy(next, t0, acc);
        if (k > 0)
            q[static_cast<std::size_t>(k - 1)] = next;
        acc = std::move(next);
    }
    const Scalar inv = f.a.inverse();
    for (auto& row : q)
        for (auto& c : row)
            c *= inv;
    return {acc, q};
}

/// All remainder conditions for degree d.
inline std::vector<Row> constraints(const std::vector<Form>& forms, const std::vector<int>& mu, int d)
{
    std::vector<Row> rows;
    for (std::size_t h = 0; h < forms.size(); ++h) {
        LinPoly g = apply_form(forms[h], d);
        for (int step = 0; step < mu[h]; ++step) {
            if (g.empty())
                break;
            auto [r, q] = divide(g, forms[h]);
            rows.push_back(std::move(r));
            // After d + 1 steps theta(alpha) = 0 is already stated.
            if (q.empty())
                break;
            g = std::move(q);
        }
    }
    return rows;
}

/// Rank by Gauss-Jordan with division.
inline std::size_t rank(std::vector<Row> m)
{
    if (m.empty())
        return 0;
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c].is_zero())
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[r], m[piv]);
        const Scalar inv = m[r][c].inverse();
        for (auto& x : m[r])
            x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero())
                continue;
            const Scalar f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline int graded_dimension(const std::vector<Form>& forms, const std::vector<int>& mu, int d)
{
    if (d < 0)
        return 0;
    const auto rows = constraints(forms, mu, d);
    return 2 * (d + 1) - static_cast<int>(rank(rows));
}

/// Exponents from the first nonzero graded piece.
inline std::pair<int, int> exponents(const std::vector<Form>& forms, const std::vector<int>& mu)
{
    int total = 0;
    for (int m : mu)
        total += m;
    for (int d = 0;; ++d) {
        const int dim = graded_dimension(forms, mu, d);
        if (dim == 0)
            continue;
        return dim >= 2 ? std::pair{d, d} : std::pair{d, total - d};
    }
}

} // namespace oracle
