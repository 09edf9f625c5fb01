#include "mlat/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace mlat {

std::string_view errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidField: return "InvalidField";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotComparable: return "NotComparable";
    case Errc::ProportionalForms: return "ProportionalForms";
    case Errc::InvalidForm: return "InvalidForm";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::ParseError: return "ParseError";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::NotArrangementPreserving: return "NotArrangementPreserving";
    case Errc::OffsetTooLarge: return "OffsetTooLarge";
    case Errc::PointNotInComponent: return "PointNotInComponent";
    case Errc::NotUnimodal: return "NotUnimodal";
    case Errc::NoCenterPairFound: return "NoCenterPairFound";
    case Errc::BadReduction: return "BadReduction";
    case Errc::Usage: return "Usage";
    }
    return "Unknown";
}

bool is_squarefree(long n)
{
    if (n < 1)
        return false;
    for (long f = 2; f * f <= n; ++f) {
        if (n % (f * f) == 0)
            return false;
    }
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (n % b == 0)
            return n == b;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    for (auto b : bases) {
        std::uint64_t x = powmod(b, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

FieldSpec FieldSpec::quadratic(long d)
{
    if (d <= 1 || !is_squarefree(d))
        throw Error(Errc::InvalidField, "quadratic radicand must be a squarefree integer > 1, got " + std::to_string(d));
    return {Kind::Quadratic, d, 0};
}

FieldSpec FieldSpec::prime(std::uint64_t p)
{
    if (p <= (std::uint64_t{1} << 31) || !is_prime(p))
        throw Error(Errc::InvalidField, "prime field modulus must be a prime above 2^31, got " + std::to_string(p));
    return {Kind::Prime, 0, p};
}

std::string to_string(const FieldSpec& field)
{
    switch (field.kind) {
    case FieldSpec::Kind::Rational: return "Q";
    case FieldSpec::Kind::Quadratic: return "Q(sqrt(" + std::to_string(field.d) + "))";
    case FieldSpec::Kind::Prime: return "F_" + std::to_string(field.p);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d)
{
    a_.canonicalize();
    b_.canonicalize();
    if (sgn(b_) != 0 && (d <= 1 || !is_squarefree(d)))
        throw Error(Errc::InvalidField, "quadratic radicand must be a squarefree integer > 1, got " + std::to_string(d));
    normalize();
}

Scalar Scalar::fraction(const mpz_class& num, const mpz_class& den)
{
    if (sgn(den) == 0)
        throw Error(Errc::ZeroDenominator, num.get_str() + "/0");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) {
        mpz_class z;
        if (s.empty() || z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
            throw Error(Errc::ParseError, "not a rational number: '" + text + "'");
        return z;
    };
    if (slash == std::string::npos)
        return Scalar(mpq_class(parse_int(text)));
    return fraction(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Scalar Scalar::sqrt(long d) { return Scalar(0, 1, d); }

void Scalar::normalize()
{
    if (sgn(b_) == 0)
        d_ = 0;
}

long Scalar::merged_radicand(const Scalar& o) const
{
    if (d_ == 0)
        return o.d_;
    if (o.d_ == 0 || o.d_ == d_)
        return d_;
    throw Error(Errc::FieldMismatch, "cannot combine elements of Q(sqrt(" + std::to_string(d_) + ")) and Q(sqrt(" +
                                         std::to_string(o.d_) + "))");
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    d_ = merged_radicand(o);
    a_ += o.a_;
    if (sgn(o.b_) != 0 || sgn(b_) != 0)
        b_ += o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    d_ = merged_radicand(o);
    a_ -= o.a_;
    if (sgn(o.b_) != 0 || sgn(b_) != 0)
        b_ -= o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    long d = merged_radicand(o);
    if (sgn(b_) == 0 && sgn(o.b_) == 0) {
        a_ *= o.a_;
        return *this;
    }
    // (a + b r)(c + e r) = (ac + be d) + (ae + bc) r
    mpq_class a = a_ * o.a_ + b_ * o.b_ * d;
    mpq_class b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw Error(Errc::DivisionByZero, "inverse of zero");
    if (sgn(b_) == 0)
        return Scalar(1 / a_);
    // 1/(a + b r) = (a - b r) / (a^2 - d b^2); the norm is nonzero because d is not a square.
    mpq_class norm = a_ * a_ - b_ * b_ * d_;
    return Scalar(a_ / norm, -b_ / norm, d_);
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw Error(Errc::DivisionByZero, to_string() + " / 0");
    if (sgn(b_) == 0 && sgn(o.b_) == 0) {
        a_ /= o.a_;
        return *this;
    }
    return *this *= o.inverse();
}

double Scalar::approx() const
{
    double v = a_.get_d();
    if (d_ != 0)
        v += b_.get_d() * std::sqrt(static_cast<double>(d_));
    return v;
}

std::string Scalar::to_string() const
{
    if (sgn(b_) == 0)
        return a_.get_str();
    std::ostringstream os;
    if (sgn(a_) != 0)
        os << a_.get_str() << (sgn(b_) > 0 ? "+" : "");
    if (b_ == -1)
        os << "-";
    else if (b_ != 1)
        os << b_.get_str() << "*";
    os << "sqrt(" << d_ << ")";
    return os.str();
}

Scalar reduce(const Scalar& s)
{
    Scalar r(s.rational_part(), s.irrational_part(), s.radicand());
    return r;
}

Scalar invert(const Scalar& s) { return s.inverse(); }

// ---------------------------------------------------------------------------
// ModP

namespace {

std::uint64_t residue_of(std::int64_t k, std::uint64_t p)
{
    auto m = static_cast<std::int64_t>(k % static_cast<std::int64_t>(p));
    return m < 0 ? static_cast<std::uint64_t>(m + static_cast<std::int64_t>(p)) : static_cast<std::uint64_t>(m);
}

std::uint64_t common_modulus(std::uint64_t p, std::uint64_t q)
{
    if (p == 0)
        return q;
    if (q == 0 || p == q)
        return p;
    throw Error(Errc::FieldMismatch, "residues modulo " + std::to_string(p) + " and " + std::to_string(q));
}

} // namespace

ModP ModP::bound_to(std::uint64_t p) const
{
    if (p_ != 0) {
        common_modulus(p_, p);
        return *this;
    }
    return ModP(residue_of(k_, p), p);
}

ModP ModP::operator-() const
{
    if (p_ == 0)
        return ModP(-k_);
    return ModP(v_ == 0 ? 0 : p_ - v_, p_);
}

ModP& ModP::operator+=(const ModP& o)
{
    std::uint64_t p = common_modulus(p_, o.p_);
    if (p == 0) {
        if (__builtin_add_overflow(k_, o.k_, &k_))
            throw Error(Errc::InternalInconsistency, "unbound ModP constant overflow");
        return *this;
    }
    auto a = bound_to(p);
    auto b = o.bound_to(p);
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p || s < a.v_)
        s -= p;
    *this = ModP(s, p);
    return *this;
}

ModP& ModP::operator*=(const ModP& o)
{
    std::uint64_t p = common_modulus(p_, o.p_);
    if (p == 0) {
        if (__builtin_mul_overflow(k_, o.k_, &k_))
            throw Error(Errc::InternalInconsistency, "unbound ModP constant overflow");
        return *this;
    }
    *this = ModP(mulmod(bound_to(p).v_, o.bound_to(p).v_, p), p);
    return *this;
}

ModP ModP::inverse() const
{
    if (is_zero())
        throw Error(Errc::DivisionByZero, "inverse of zero mod p");
    if (p_ == 0) {
        if (k_ == 1 || k_ == -1)
            return *this;
        throw Error(Errc::InternalInconsistency, "inverse of an unbound ModP constant");
    }
    return ModP(powmod(v_, p_ - 2, p_), p_);
}

bool operator==(const ModP& l, const ModP& r)
{
    std::uint64_t p = common_modulus(l.p_, r.p_);
    if (p == 0)
        return l.k_ == r.k_;
    return l.bound_to(p).v_ == r.bound_to(p).v_;
}

std::string ModP::to_string() const { return p_ == 0 ? std::to_string(k_) : std::to_string(v_); }

ModP invert(const ModP& s) { return s.inverse(); }

bool sqrt_mod(std::uint64_t n, std::uint64_t p, std::uint64_t& root)
{
    n %= p;
    if (n == 0) {
        root = 0;
        return true;
    }
    if (p == 2) {
        root = n;
        return true;
    }
    if (powmod(n, (p - 1) / 2, p) != 1)
        return false;
    // Tonelli-Shanks
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t r = powmod(n, (q + 1) / 2, p);
    std::uint64_t t = powmod(n, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    root = std::min(r, p - r);
    return true;
}

namespace {

ModP rational_mod(const mpq_class& q, std::uint64_t p)
{
    mpz_class pz;
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    mpz_class num = q.get_num() % pz;
    mpz_class den = q.get_den() % pz;
    if (num < 0)
        num += pz;
    if (sgn(den) == 0)
        throw Error(Errc::BadReduction, "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
    auto to_u64 = [](const mpz_class& z) {
        std::uint64_t v = 0;
        mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, z.get_mpz_t());
        return v;
    };
    return ModP(to_u64(num), p) / ModP(to_u64(den), p);
}

} // namespace

ModP reduce_mod(const Scalar& s, std::uint64_t p)
{
    ModP r = rational_mod(s.rational_part(), p);
    if (s.is_rational())
        return r;
    std::uint64_t root = 0;
    if (!sqrt_mod(static_cast<std::uint64_t>(s.radicand()), p, root))
        throw Error(Errc::BadReduction, std::to_string(s.radicand()) + " is not a square mod " + std::to_string(p));
    return r + rational_mod(s.irrational_part(), p) * ModP(root, p);
}

} // namespace mlat
