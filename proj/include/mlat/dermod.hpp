#pragma once

// Graded pieces, exponents and bases of the derivation module D(A, mu)
// of a 2-multiarrangement.

#include "mlat/lattice.hpp"
#include "mlat/linalg.hpp"
#include "mlat/poly.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mlat {

namespace detail {

template <class F>
F binomial(int n, int k)
{
    long long acc = 1;
    for (int i = 0; i < k; ++i)
        acc = acc * (n - i) / (i + 1);
    return F(static_cast<long>(acc));
}

} // namespace detail

/// Unknown layout for a degree-d derivation: P's coefficients from x^d down to
/// y^d, then Q's in the same order. Index of the x^j coefficient of P is d - j.
inline std::size_t p_unknown(int d, int x_power) { return static_cast<std::size_t>(d - x_power); }
inline std::size_t q_unknown(int d, int x_power) { return static_cast<std::size_t>(2 * d + 1 - x_power); }

/// Linear conditions on the 2(d+1) coefficients of a degree-d derivation
/// expressing alpha^m | theta(alpha), with m = min(mu_H, d+1).
///
/// theta(alpha) is expanded in the basis alpha^i beta^(d-i), beta = y unless
/// alpha is proportional to y (then beta = x), and the coefficients of
/// alpha^i for i < m are required to vanish.
template <class F>
void append_form_constraints(Matrix<F>& m, const BasicLinearForm<F>& alpha, int mult, int d)
{
    const int rows = std::min(mult, d + 1);
    const std::size_t cols = static_cast<std::size_t>(2 * (d + 1));
    if (alpha.a().is_zero()) {
        // alpha = y, beta = x: coefficient of y^i x^(d-i) in Q is the x^(d-i) term.
        for (int i = 0; i < rows; ++i) {
            std::vector<F> row(cols, F(0));
            row[q_unknown(d, d - i)] = alpha.b();
            m.append_row(std::move(row));
        }
        return;
    }
    // alpha = x + b y: substitute x = alpha - b beta into sum_j f_j x^j beta^(d-j);
    // the alpha^i coefficient is sum_{j >= i} f_j C(j, i) (-b)^(j-i), f_j = P_j + b Q_j.
    const F& b = alpha.b();
    std::vector<F> neg_b_pow(static_cast<std::size_t>(d + 1), F(1));
    for (int e = 1; e <= d; ++e)
        neg_b_pow[static_cast<std::size_t>(e)] = neg_b_pow[static_cast<std::size_t>(e - 1)] * (-b);
    for (int i = 0; i < rows; ++i) {
        std::vector<F> row(cols, F(0));
        for (int j = i; j <= d; ++j) {
            F w = detail::binomial<F>(j, i) * neg_b_pow[static_cast<std::size_t>(j - i)];
            if (w.is_zero())
                continue;
            row[p_unknown(d, j)] += w;
            if (!b.is_zero())
                row[q_unknown(d, j)] += w * b;
        }
        m.append_row(std::move(row));
    }
}

template <class F>
Matrix<F> constraint_matrix(std::span<const BasicLinearForm<F>> forms, std::span<const int> mu, int d)
{
    Matrix<F> m(static_cast<std::size_t>(2 * (d + 1)));
    for (std::size_t h = 0; h < forms.size(); ++h) {
        if (mu[h] > 0)
            append_form_constraints(m, forms[h], mu[h], d);
    }
    return m;
}

template <class F>
BasicDerivation<F> derivation_from_unknowns(const std::vector<F>& x, int d)
{
    std::vector<F> p(static_cast<std::size_t>(d + 1), F(0)), q(static_cast<std::size_t>(d + 1), F(0));
    for (int j = 0; j <= d; ++j) {
        p[static_cast<std::size_t>(j)] = x[p_unknown(d, j)];
        q[static_cast<std::size_t>(j)] = x[q_unknown(d, j)];
    }
    return BasicDerivation<F>::from_coeffs(std::move(p), std::move(q));
}

/// Canonical K-basis of the degree-d piece of D(A, mu).
template <class F>
std::vector<BasicDerivation<F>> derivation_space(std::span<const BasicLinearForm<F>> forms, std::span<const int> mu,
                                                 int d)
{
    std::vector<BasicDerivation<F>> out;
    for (const auto& v : nullspace(constraint_matrix(forms, mu, d)))
        out.push_back(derivation_from_unknowns(v, d).canonical());
    return out;
}

template <class F>
int graded_dimension(std::span<const BasicLinearForm<F>> forms, std::span<const int> mu, int d)
{
    const auto m = constraint_matrix(forms, mu, d);
    return static_cast<int>(m.cols() - rank(m));
}

template <class F>
struct BasicExponentResult {
    int d1 = 0;
    int d2 = 0;
    int delta = 0;
    BasicDerivation<F> theta_min; // canonical generator of degree d1
    bool non_unique = false;      // delta == 0: theta_min is one choice among a pencil
};

using ExponentResult = BasicExponentResult<Scalar>;

/// Exponents of (A, mu). Only two graded pieces are solved: since D(A, mu) is
/// free with exponents d1 <= d2, the piece of the largest degree t < |mu|/2
/// has dimension t - d1 + 1 (or 0 when d1 = |mu|/2), which pins d1; the piece
/// of degree d1 then supplies theta_min and a consistency check.
template <class F>
BasicExponentResult<F> solve_exponents(std::span<const BasicLinearForm<F>> forms, std::span<const int> mu,
                                       std::vector<BasicDerivation<F>>* space_out = nullptr)
{
    int total = 0;
    int max_entry = 0;
    for (int v : mu) {
        total += v;
        max_entry = std::max(max_entry, v);
    }
    BasicExponentResult<F> r;
    int d1 = 0;
    if (total > 0) {
        const int t = (total + 1) / 2 - 1;
        const int dim = graded_dimension(forms, mu, t);
        if (dim == 0) {
            if (total % 2 != 0)
                throw Error(Errc::InternalInconsistency, "no derivation below |mu|/2 for odd |mu|");
            d1 = total / 2;
        } else {
            d1 = t + 1 - dim;
        }
    }
    if (d1 < 0 || d1 > total - max_entry)
        throw Error(Errc::InternalInconsistency,
                    "d1 = " + std::to_string(d1) + " outside [0, |mu| - max mu_H] = [0, " +
                        std::to_string(total - max_entry) + "]");
    auto space = derivation_space(forms, mu, d1);
    const int d2 = total - d1;
    const std::size_t expected = d1 == d2 ? 2 : 1;
    if (space.size() != expected)
        throw Error(Errc::InternalInconsistency, "degree-" + std::to_string(d1) + " piece has dimension " +
                                                     std::to_string(space.size()) + ", expected " +
                                                     std::to_string(expected));
    r.d1 = d1;
    r.d2 = d2;
    r.delta = d2 - d1;
    r.theta_min = space.front();
    r.non_unique = r.delta == 0;
    if (space_out)
        *space_out = std::move(space);
    return r;
}

/// Smallest d in [0, |mu|/2] with a nonzero degree-d piece, found by plain
/// search without appeal to freeness.
template <class F>
std::optional<int> first_nonzero_degree(std::span<const BasicLinearForm<F>> forms, std::span<const int> mu)
{
    int total = 0;
    for (int v : mu)
        total += v;
    for (int d = 0; d <= total / 2; ++d) {
        if (graded_dimension(forms, mu, d) > 0)
            return d;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Characteristic-0 entry points.

int graded_dimension(const Arrangement& arr, const Multiplicity& mu, int d);
std::vector<Derivation> derivation_space(const Arrangement& arr, const Multiplicity& mu, int d);

/// Throws LengthMismatch or InternalInconsistency.
ExponentResult exponents(const Arrangement& arr, const Multiplicity& mu);
int delta(const Arrangement& arr, const Multiplicity& mu);

/// Exponents by scanning d = 0, 1, ... up to |mu|/2 for the first nonzero piece.
ExponentResult exponents_by_search(const Arrangement& arr, const Multiplicity& mu);

/// Homogeneous basis (theta_min, theta_2) of degrees (d1, d2).
std::pair<Derivation, Derivation> full_basis(const Arrangement& arr, const Multiplicity& mu);

/// Membership theta in D(A, mu) via linear_form_multiplicity.
bool in_module(const Arrangement& arr, const Multiplicity& mu, const Derivation& theta);

struct SaitoVerdict {
    enum class Clause { None, Membership, Dependent, DegreeSum, Determinant };

    bool accepted = false;
    Clause failed = Clause::None;
    std::string detail;

    explicit operator bool() const { return accepted; }
};

std::string to_string(SaitoVerdict::Clause clause);

/// Accepts iff both lie in D(A, mu), they are independent, their degrees sum
/// to |mu| and the determinant is a nonzero multiple of prod alpha_H^mu_H.
SaitoVerdict verify_saito(const Arrangement& arr, const Multiplicity& mu, const Derivation& t1, const Derivation& t2);

// ---------------------------------------------------------------------------
// Prime-field mode. Heuristic only; results must be confirmed in characteristic 0.

/// Forms reduced mod p and renormalized. Throws BadReduction if a coefficient
/// does not reduce or two lines collide.
std::vector<BasicLinearForm<ModP>> reduce_forms(const Arrangement& arr, std::uint64_t p);
/// (d1, d2) over F_p.
std::pair<int, int> exponents_mod_p(const Arrangement& arr, const Multiplicity& mu, std::uint64_t p);

// ---------------------------------------------------------------------------

/// Persistent store for solver results, keyed by arrangement hash and mu.
/// Implementations must tolerate concurrent identical writes.
class ResultStore {
public:
    virtual ~ResultStore() = default;
    virtual std::optional<ExponentResult> find(const std::string& arrangement_hash, const Multiplicity& mu) = 0;
    virtual void put(const std::string& arrangement_hash, const Multiplicity& mu, const ExponentResult& r) = 0;
};

/// Memoizing solver for one arrangement; safe to share between threads.
class Solver {
public:
    explicit Solver(Arrangement arr, ResultStore* store = nullptr);

    const Arrangement& arrangement() const { return arr_; }
    const std::string& arrangement_hash() const { return hash_; }

    ExponentResult exponents(const Multiplicity& mu) const;
    int delta(const Multiplicity& mu) const { return exponents(mu).delta; }
    /// theta_mu; throws PreconditionViolated where it is not unique (delta = 0).
    Derivation theta(const Multiplicity& mu) const;

    std::size_t memo_size() const;

private:
    Arrangement arr_;
    std::string hash_;
    ResultStore* store_;
    mutable std::shared_mutex mu_;
    mutable std::unordered_map<Multiplicity, ExponentResult, MultiplicityHash> memo_;
};

} // namespace mlat
