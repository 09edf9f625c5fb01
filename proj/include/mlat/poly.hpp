#pragma once

// Homogeneous polynomials in K[x, y], linear forms, derivations
// P d/dx + Q d/dy, and the arrangements built from them.

#include "mlat/error.hpp"
#include "mlat/field.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mlat {

namespace detail {
inline bool prints_negative(const Scalar& s) { return s.is_rational() && sgn(s.rational_part()) < 0; }
inline bool prints_negative(const ModP&) { return false; }
inline bool needs_parens(const Scalar& s) { return !s.is_rational(); }
inline bool needs_parens(const ModP&) { return false; }
} // namespace detail

/// A homogeneous polynomial sum_i c_i x^i y^(d-i). The zero polynomial has no
/// degree and is represented by an empty coefficient vector.
template <class F>
class BasicHomogPoly {
public:
    BasicHomogPoly() = default;

    /// coeffs[i] multiplies x^i y^(d-i), d = coeffs.size() - 1.
    explicit BasicHomogPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static BasicHomogPoly constant(F c) { return BasicHomogPoly(std::vector<F>{std::move(c)}); }
    static BasicHomogPoly one() { return constant(F(1)); }
    static BasicHomogPoly monomial(int degree, int x_power, F c = F(1))
    {
        std::vector<F> v(static_cast<std::size_t>(degree + 1), F(0));
        v[static_cast<std::size_t>(x_power)] = std::move(c);
        return BasicHomogPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<F>& coeffs() const { return c_; }
    const F& coeff(int x_power) const { return c_[static_cast<std::size_t>(x_power)]; }

    BasicHomogPoly operator-() const
    {
        auto r = *this;
        for (auto& c : r.c_)
            c = -c;
        return r;
    }

    BasicHomogPoly& operator+=(const BasicHomogPoly& o)
    {
        if (o.is_zero())
            return *this;
        if (is_zero())
            return *this = o;
        if (degree() != o.degree())
            throw Error(Errc::PreconditionViolated, "sum of homogeneous polynomials of different degrees");
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    BasicHomogPoly& operator-=(const BasicHomogPoly& o) { return *this += -o; }

    friend BasicHomogPoly operator+(BasicHomogPoly l, const BasicHomogPoly& r) { return l += r; }
    friend BasicHomogPoly operator-(BasicHomogPoly l, const BasicHomogPoly& r) { return l -= r; }

    friend BasicHomogPoly operator*(const BasicHomogPoly& f, const BasicHomogPoly& g)
    {
        if (f.is_zero() || g.is_zero())
            return {};
        std::vector<F> out(f.c_.size() + g.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < f.c_.size(); ++i) {
            if (f.c_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < g.c_.size(); ++j) {
                if (!g.c_[j].is_zero())
                    out[i + j] += f.c_[i] * g.c_[j];
            }
        }
        return BasicHomogPoly(std::move(out));
    }

    friend BasicHomogPoly operator*(const F& s, BasicHomogPoly f)
    {
        if (s.is_zero())
            return {};
        for (auto& c : f.c_)
            c *= s;
        return f;
    }

    friend bool operator==(const BasicHomogPoly& l, const BasicHomogPoly& r) { return l.c_ == r.c_; }

    /// First nonzero coefficient, scanning from the highest power of x.
    const F& leading() const
    {
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (!c_[i].is_zero())
                return c_[i];
        }
        throw Error(Errc::ZeroPolynomial, "leading coefficient of zero");
    }

    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::string out;
        const int d = degree();
        for (int i = d; i >= 0; --i) {
            const F& c = c_[static_cast<std::size_t>(i)];
            if (c.is_zero())
                continue;
            std::string mono;
            auto var = [&](const char* name, int e) {
                if (e == 0)
                    return;
                if (!mono.empty())
                    mono += "*";
                mono += name;
                if (e > 1)
                    mono += "^" + std::to_string(e);
            };
            var("x", i);
            var("y", d - i);
            bool neg = detail::prints_negative(c);
            F mag = neg ? -c : c;
            std::string coef;
            if (!mag.is_one() || mono.empty())
                coef = detail::needs_parens(mag) ? "(" + mag.to_string() + ")" : mag.to_string();
            std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
            if (out.empty())
                out = neg ? "-" + term : term;
            else
                out += (neg ? " - " : " + ") + term;
        }
        return out;
    }

private:
    void trim()
    {
        for (const auto& c : c_) {
            if (!c.is_zero())
                return;
        }
        c_.clear();
    }

    std::vector<F> c_;
};

/// alpha = a x + b y, normalized so that the first nonzero of (a, b) is 1.
template <class F>
class BasicLinearForm {
public:
    /// Throws InvalidForm for (0, 0).
    BasicLinearForm(F a, F b)
    {
        if (a.is_zero() && b.is_zero())
            throw Error(Errc::InvalidForm, "linear form (0, 0)");
        F lead = a.is_zero() ? b : a;
        a_ = a / lead;
        b_ = b / lead;
    }

    const F& a() const { return a_; }
    const F& b() const { return b_; }

    BasicHomogPoly<F> as_poly() const { return BasicHomogPoly<F>(std::vector<F>{b_, a_}); }

    /// Normalized forms are proportional iff equal.
    friend bool operator==(const BasicLinearForm& l, const BasicLinearForm& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

    std::string to_string() const { return as_poly().to_string(); }

private:
    F a_;
    F b_;
};

/// theta = P d/dx + Q d/dy with P, Q homogeneous of a common degree.
template <class F>
class BasicDerivation {
public:
    using Poly = BasicHomogPoly<F>;

    BasicDerivation() = default;

    /// Either component may be zero; nonzero components must share a degree.
    BasicDerivation(Poly p, Poly q)
    {
        if (!p.is_zero() && !q.is_zero() && p.degree() != q.degree())
            throw Error(Errc::PreconditionViolated, "derivation components of different degrees");
        deg_ = p.is_zero() ? q.degree() : p.degree();
        p_ = std::move(p);
        q_ = std::move(q);
    }

    /// From coefficient vectors of length d+1 in the layout of Poly.
    static BasicDerivation from_coeffs(std::vector<F> p, std::vector<F> q)
    {
        const int d = static_cast<int>(p.size()) - 1;
        BasicDerivation r(Poly(std::move(p)), Poly(std::move(q)));
        if (!r.is_zero())
            r.deg_ = d;
        return r;
    }

    static BasicDerivation euler() { return BasicDerivation(Poly::monomial(1, 1), Poly::monomial(1, 0)); }

    bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
    /// -1 for the zero derivation.
    int degree() const { return deg_; }
    const Poly& p() const { return p_; }
    const Poly& q() const { return q_; }

    /// theta(alpha) = a P + b Q.
    Poly apply(const BasicLinearForm<F>& alpha) const
    {
        Poly out = alpha.a() * p_;
        out += alpha.b() * q_;
        return out;
    }

    friend BasicDerivation operator*(const Poly& f, const BasicDerivation& t)
    {
        if (f.is_zero() || t.is_zero())
            return {};
        BasicDerivation r(f * t.p_, f * t.q_);
        r.deg_ = f.degree() + t.deg_;
        return r;
    }

    friend BasicDerivation operator*(const F& s, const BasicDerivation& t)
    {
        if (s.is_zero() || t.is_zero())
            return {};
        BasicDerivation r = t;
        r.p_ = s * r.p_;
        r.q_ = s * r.q_;
        return r;
    }

    friend BasicDerivation operator+(const BasicDerivation& l, const BasicDerivation& r)
    {
        if (l.is_zero())
            return r;
        if (r.is_zero())
            return l;
        if (l.deg_ != r.deg_)
            throw Error(Errc::PreconditionViolated, "sum of derivations of different degrees");
        BasicDerivation s(l.p_ + r.p_, l.q_ + r.q_);
        if (!s.is_zero())
            s.deg_ = l.deg_;
        return s;
    }

    friend bool operator==(const BasicDerivation& l, const BasicDerivation& r)
    {
        return l.deg_ == r.deg_ && l.p_ == r.p_ && l.q_ == r.q_;
    }

    /// Coefficients of P from the highest power of x down, then those of Q.
    std::vector<F> flat_coeffs() const
    {
        std::vector<F> out;
        if (is_zero())
            return out;
        auto push = [&](const Poly& f) {
            for (int i = deg_; i >= 0; --i)
                out.push_back(f.is_zero() ? F(0) : f.coeff(i));
        };
        push(p_);
        push(q_);
        return out;
    }

    /// Scaled so that the first nonzero entry of flat_coeffs() is 1.
    BasicDerivation canonical() const
    {
        if (is_zero())
            return *this;
        for (const auto& c : flat_coeffs()) {
            if (!c.is_zero())
                return c.inverse() * *this;
        }
        return *this;
    }

    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::string out;
        if (!p_.is_zero())
            out = "(" + p_.to_string() + ")*Dx";
        if (!q_.is_zero())
            out += (out.empty() ? "" : " + ") + ("(" + q_.to_string() + ")*Dy");
        return out;
    }

private:
    int deg_ = -1;
    Poly p_;
    Poly q_;
};

using HomogPoly = BasicHomogPoly<Scalar>;
using LinearForm = BasicLinearForm<Scalar>;
using Derivation = BasicDerivation<Scalar>;

/// Quotient of f by alpha when alpha divides f exactly.
template <class F>
std::optional<BasicHomogPoly<F>> divide_exact(const BasicHomogPoly<F>& f, const BasicLinearForm<F>& alpha)
{
    if (f.is_zero())
        return BasicHomogPoly<F>{};
    const int d = f.degree();
    if (d == 0)
        return std::nullopt;
    const auto& c = f.coeffs();
    std::vector<F> q(static_cast<std::size_t>(d), F(0));
    if (alpha.a().is_zero()) {
        // alpha = y: divisible iff the x^d coefficient vanishes.
        if (!c[static_cast<std::size_t>(d)].is_zero())
            return std::nullopt;
        for (int i = 0; i < d; ++i)
            q[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
        return BasicHomogPoly<F>(std::move(q));
    }
    // alpha = x + b y; synthetic division of sum c_i t^i by (t + b), t = x/y.
    const F& b = alpha.b();
    q[static_cast<std::size_t>(d - 1)] = c[static_cast<std::size_t>(d)];
    for (int i = d - 1; i >= 1; --i)
        q[static_cast<std::size_t>(i - 1)] = c[static_cast<std::size_t>(i)] - b * q[static_cast<std::size_t>(i)];
    F rem = c[0] - b * q[0];
    if (!rem.is_zero())
        return std::nullopt;
    return BasicHomogPoly<F>(std::move(q));
}

/// Largest m with alpha^m | f. Throws ZeroPolynomial for f = 0.
template <class F>
int linear_form_multiplicity(const BasicHomogPoly<F>& f, const BasicLinearForm<F>& alpha)
{
    if (f.is_zero())
        throw Error(Errc::ZeroPolynomial, "multiplicity of a linear form in the zero polynomial is infinite");
    int m = 0;
    BasicHomogPoly<F> cur = f;
    while (auto q = divide_exact(cur, alpha)) {
        cur = std::move(*q);
        ++m;
    }
    return m;
}

/// P1 Q2 - P2 Q1; nonzero iff theta1, theta2 are independent over K[x, y].
template <class F>
BasicHomogPoly<F> saito_determinant(const BasicDerivation<F>& t1, const BasicDerivation<F>& t2)
{
    return t1.p() * t2.q() - t2.p() * t1.q();
}

template <class F>
bool are_dependent(const BasicDerivation<F>& t1, const BasicDerivation<F>& t2)
{
    return saito_determinant(t1, t2).is_zero();
}

/// True iff t2 = c t1 for a nonzero scalar c (both nonzero, same degree).
template <class F>
bool proportional(const BasicDerivation<F>& t1, const BasicDerivation<F>& t2)
{
    if (t1.is_zero() || t2.is_zero())
        return t1.is_zero() && t2.is_zero();
    return t1.degree() == t2.degree() && t1.canonical() == t2.canonical();
}

/// g = c f for a nonzero scalar c.
template <class F>
bool proportional(const BasicHomogPoly<F>& f, const BasicHomogPoly<F>& g)
{
    if (f.is_zero() || g.is_zero())
        return f.is_zero() && g.is_zero();
    return f.degree() == g.degree() && f.leading() * g == g.leading() * f;
}

template <class F>
BasicHomogPoly<F> power(const BasicHomogPoly<F>& f, int e)
{
    BasicHomogPoly<F> r = BasicHomogPoly<F>::one();
    for (int i = 0; i < e; ++i)
        r = r * f;
    return r;
}

/// Lines through the origin in K^2, given by pairwise non-proportional forms.
class Arrangement {
public:
    /// Throws InvalidField, FieldMismatch, ProportionalForms or InvalidForm.
    Arrangement(FieldSpec field, std::vector<LinearForm> forms, std::vector<std::string> names = {});

    const FieldSpec& field() const { return field_; }
    std::size_t size() const { return forms_.size(); }
    std::span<const LinearForm> forms() const { return forms_; }
    const LinearForm& operator[](std::size_t i) const { return forms_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    /// names()[i] if set, else the form's text.
    std::string label(std::size_t i) const;

    /// Canonical text of the field and normalized forms; stable across runs.
    std::string canonical_text() const;
    /// 64-bit FNV-1a of canonical_text(), as 16 hex digits.
    std::string hash() const;

private:
    FieldSpec field_;
    std::vector<LinearForm> forms_;
    std::vector<std::string> names_;
};

/// prod_H alpha_H^mu_H.
HomogPoly defining_polynomial(const Arrangement& arr, std::span<const int> mu);

} // namespace mlat
