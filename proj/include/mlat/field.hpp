#pragma once

// Exact scalars for the three coefficient domains: Q, Q(sqrt d) and F_p.

#include "mlat/error.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace mlat {

/// The coefficient field of an arrangement.
struct FieldSpec {
    enum class Kind { Rational, Quadratic, Prime };

    Kind kind = Kind::Rational;
    long d = 0;          // radicand, Quadratic only
    std::uint64_t p = 0; // modulus, Prime only

    static FieldSpec rational() { return {}; }
    /// Throws InvalidField unless d > 1 is squarefree.
    static FieldSpec quadratic(long d);
    /// Throws InvalidField unless p is a prime above 2^31.
    static FieldSpec prime(std::uint64_t p);

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

std::string to_string(const FieldSpec& field);

bool is_squarefree(long n);
bool is_prime(std::uint64_t n);

/// An element a + b*sqrt(d) of Q or Q(sqrt d). A radicand of 0 marks a plain
/// rational; such a value mixes freely with elements of any Q(sqrt d).
/// Always stored in canonical form, so == is value equality.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : a_(v) {} // NOLINT(google-explicit-constructor)
    explicit Scalar(mpq_class a) : a_(std::move(a)) { a_.canonicalize(); }
    Scalar(mpq_class a, mpq_class b, long d);

    /// num/den reduced; throws ZeroDenominator when den == 0.
    static Scalar fraction(const mpz_class& num, const mpz_class& den);
    /// Parses "p", "-p" or "p/q". Throws ParseError / ZeroDenominator.
    static Scalar parse_rational(const std::string& text);
    static Scalar sqrt(long d);

    const mpq_class& rational_part() const { return a_; }
    const mpq_class& irrational_part() const { return b_; }
    long radicand() const { return d_; }
    bool is_rational() const { return sgn(b_) == 0; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_one() const { return a_ == 1 && sgn(b_) == 0; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
    friend Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
    friend Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }
    friend Scalar operator/(Scalar l, const Scalar& r) { return l /= r; }

    friend bool operator==(const Scalar& l, const Scalar& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

    /// Throws DivisionByZero for 0.
    Scalar inverse() const;

    /// Value as a double; diagnostics only.
    double approx() const;

    /// "p/q" for rationals, "a+b*sqrt(d)" otherwise.
    std::string to_string() const;

private:
    long merged_radicand(const Scalar& o) const;
    void normalize();

    mpq_class a_;
    mpq_class b_;
    long d_ = 0;
};

/// Canonical form of s; identity on already-canonical values.
Scalar reduce(const Scalar& s);
/// Multiplicative inverse; throws DivisionByZero.
Scalar invert(const Scalar& s);

/// Residue modulo a prime p. A value with modulus 0 is an unbound integer
/// constant (as produced by ModP(long)); it binds to the modulus of whatever
/// it is combined with, which lets generic code write F(0), F(1), F(k).
class ModP {
public:
    ModP() = default;
    ModP(long k) : k_(k) {} // NOLINT(google-explicit-constructor)
    ModP(std::uint64_t residue, std::uint64_t p) : p_(p), v_(residue % p) {}

    std::uint64_t modulus() const { return p_; }
    /// Residue in [0, p). Requires a bound modulus.
    std::uint64_t residue() const { return v_; }

    bool is_zero() const { return p_ == 0 ? k_ == 0 : v_ == 0; }
    bool is_one() const { return p_ == 0 ? k_ == 1 : v_ == 1; }

    ModP operator-() const;
    ModP& operator+=(const ModP& o);
    ModP& operator-=(const ModP& o) { return *this += -o; }
    ModP& operator*=(const ModP& o);
    ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

    friend ModP operator+(ModP l, const ModP& r) { return l += r; }
    friend ModP operator-(ModP l, const ModP& r) { return l -= r; }
    friend ModP operator*(ModP l, const ModP& r) { return l *= r; }
    friend ModP operator/(ModP l, const ModP& r) { return l /= r; }

    friend bool operator==(const ModP& l, const ModP& r);

    ModP inverse() const;
    ModP bound_to(std::uint64_t p) const;
    std::string to_string() const;

private:
    std::uint64_t p_ = 0;
    std::int64_t k_ = 0;
    std::uint64_t v_ = 0;
};

ModP invert(const ModP& s);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
/// Smaller square root of n mod p, if n is a quadratic residue.
bool sqrt_mod(std::uint64_t n, std::uint64_t p, std::uint64_t& root);

/// Image of a rational / quadratic scalar in F_p. sqrt(d) maps to the smaller
/// square root of d. Throws BadReduction if a denominator vanishes mod p or
/// d is not a residue.
ModP reduce_mod(const Scalar& s, std::uint64_t p);

} // namespace mlat
