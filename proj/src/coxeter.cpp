#include "mlat/coxeter.hpp"

#include "mlat/parallel.hpp"

#include <algorithm>
#include <cctype>

namespace mlat {

std::string to_string(CoxeterType t)
{
    switch (t) {
    case CoxeterType::A1A1: return "A1A1";
    case CoxeterType::A2: return "A2";
    case CoxeterType::B2: return "B2";
    case CoxeterType::G2: return "G2";
    }
    return "?";
}

CoxeterType parse_coxeter_type(const std::string& s)
{
    std::string u;
    for (char c : s)
        u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (auto t : {CoxeterType::A1A1, CoxeterType::A2, CoxeterType::B2, CoxeterType::G2}) {
        if (u == to_string(t))
            return t;
    }
    throw Error(Errc::ParseError, "unknown Coxeter type '" + s + "' (expected A1A1, A2, B2 or G2)");
}

CoxeterSpec CoxeterSpec::standard(CoxeterType type)
{
    return {type, type == CoxeterType::G2 ? FieldSpec::quadratic(3) : FieldSpec::rational()};
}

Arrangement coxeter_arrangement(const CoxeterSpec& spec)
{
    std::vector<LinearForm> forms;
    switch (spec.type) {
    case CoxeterType::A1A1:
        forms = {LinearForm(1, 0), LinearForm(0, 1)};
        break;
    case CoxeterType::A2:
        forms = {LinearForm(1, 0), LinearForm(0, 1), LinearForm(1, 1)};
        break;
    case CoxeterType::B2:
        forms = {LinearForm(1, 0), LinearForm(0, 1), LinearForm(1, 1), LinearForm(1, -1)};
        break;
    case CoxeterType::G2: {
        if (spec.field.kind != FieldSpec::Kind::Quadratic || spec.field.d != 3)
            throw Error(Errc::FieldMismatch, "G2 needs sqrt(3); field is " + to_string(spec.field));
        const Scalar r = Scalar::sqrt(3);
        forms = {LinearForm(1, 0), LinearForm(1, r), LinearForm(1, -r),
                 LinearForm(0, 1), LinearForm(r, 1), LinearForm(r, -1)};
        break;
    }
    }
    return Arrangement(spec.field, std::move(forms));
}

GroupElement::GroupElement(const Arrangement& arr, Mat m, std::string name) : m_(std::move(m)), name_(std::move(name))
{
    const Scalar det = m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0];
    if (det.is_zero())
        throw Error(Errc::NotArrangementPreserving, "singular matrix " + name_);
    const Scalar inv = det.inverse();
    // (a, b) M^-1 with M^-1 = adj(M) / det.
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const Scalar a = arr[i].a(), b = arr[i].b();
        const Scalar na = (a * m_[1][1] - b * m_[1][0]) * inv;
        const Scalar nb = (b * m_[0][0] - a * m_[0][1]) * inv;
        LinearForm image(na, nb);
        std::size_t j = 0;
        while (j < arr.size() && !(arr[j] == image))
            ++j;
        if (j == arr.size())
            throw Error(Errc::NotArrangementPreserving, (name_.empty() ? "matrix" : name_) + " sends " +
                                                            arr.label(i) + " to " + image.to_string() +
                                                            ", which is not a line of the arrangement");
        perm_.push_back(j);
    }
}

Multiplicity act(const GroupElement& g, const Multiplicity& mu)
{
    const auto& p = g.perm();
    if (mu.dim() != p.size())
        throw Error(Errc::LengthMismatch, "multiplicity of length " + std::to_string(mu.dim()) + " for " +
                                              std::to_string(p.size()) + " lines");
    std::vector<int> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[p[i]] = mu[i];
    return Multiplicity(std::move(out));
}

std::vector<GroupElement> weyl_generators(CoxeterType type, const Arrangement& arr)
{
    using M = GroupElement::Mat;
    const Scalar o(1), z(0), m(-1);
    switch (type) {
    case CoxeterType::A1A1:
        return {GroupElement(arr, M{{{m, z}, {z, o}}}, "s_x"), GroupElement(arr, M{{{o, z}, {z, m}}}, "s_y")};
    case CoxeterType::A2:
        return {GroupElement(arr, M{{{z, o}, {o, z}}}, "swap"), GroupElement(arr, M{{{m, z}, {o, o}}}, "s_x")};
    case CoxeterType::B2:
        return {GroupElement(arr, M{{{o, z}, {z, m}}}, "s_y"), GroupElement(arr, M{{{z, o}, {o, z}}}, "swap")};
    case CoxeterType::G2: {
        const Scalar h = Scalar::fraction(1, 2);
        const Scalar r = Scalar::sqrt(3) * h;
        return {GroupElement(arr, M{{{m, z}, {z, o}}}, "s_x"), GroupElement(arr, M{{{-h, r}, {r, h}}}, "s_alpha")};
    }
    }
    return {};
}

Verdict check_delta_invariance(const Solver& solver, const std::vector<GroupElement>& gens,
                               const std::vector<Multiplicity>& window, unsigned jobs)
{
    Verdict v;
    v.check = "invariance";
    v.property = "delta is constant on orbits of the reflection group";
    std::vector<Multiplicity> all = window;
    for (const auto& g : gens) {
        for (const auto& m : window)
            all.push_back(act(g, m));
    }
    parallel_for(all.size(), jobs, [&](std::size_t i) { solver.exponents(all[i]); });
    for (const auto& g : gens) {
        for (const auto& m : window) {
            ++v.cases;
            auto gm = act(g, m);
            const int a = solver.delta(m), b = solver.delta(gm);
            if (a != b && v.witnesses.size() < 20)
                v.fail(g.name() + ": delta(" + m.to_string() + ") = " + std::to_string(a) + ", delta(" +
                       gm.to_string() + ") = " + std::to_string(b));
        }
    }
    v.reason = std::to_string(gens.size()) + " generators, " + std::to_string(window.size()) + " points";
    return v;
}

Verdict symmetric_peak_certificate(const Solver& solver, const std::vector<GroupElement>& gens, const Multiplicity& mu,
                                   const Multiplicity& nu, const Multiplicity& kappa, const PeakOptions& opts)
{
    auto violated = [](const std::string& clause, const std::string& what) {
        throw Error(Errc::HypothesisViolated, clause + ": " + what);
    };
    const auto& arr = solver.arrangement();
    if (mu.dim() != arr.size() || nu.dim() != arr.size() || kappa.dim() != arr.size())
        throw Error(Errc::LengthMismatch, "multiplicities must have one entry per line");
    for (std::size_t h = 0; h < arr.size(); ++h) {
        bool moved = std::any_of(gens.begin(), gens.end(), [&](const GroupElement& g) { return !g.fixes_line(h); });
        if (!moved)
            violated("no fixed lines", "line " + arr.label(h) + " is fixed by every generator");
    }
    for (const auto& g : gens) {
        if (act(g, mu) != mu)
            violated("invariance", "(" + mu.to_string() + ") is moved by " + g.name());
    }
    for (std::size_t h = 0; h < mu.dim(); ++h) {
        if (!leq(mu.shifted(h, 1), nu))
            violated("upper point", "(" + nu.to_string() + ") does not contain the cover (" +
                                        mu.shifted(h, 1).to_string() + ")");
        if (mu[h] > 0 && !leq(kappa, mu.shifted(h, -1)))
            violated("lower point", "(" + kappa.to_string() + ") is not contained in (" +
                                        mu.shifted(h, -1).to_string() + ")");
    }
    const int dm = solver.delta(mu), dn = solver.delta(nu), dk = solver.delta(kappa);
    if (dm == 0)
        violated("support", "delta(" + mu.to_string() + ") = 0");
    const int d_mn = distance(mu, nu);
    if (!(dm - dn > d_mn - 4))
        violated("upper inequality", std::to_string(dm) + " - " + std::to_string(dn) + " <= " + std::to_string(d_mn) +
                                         " - 4");
    if (opts.printed_kappa_form) {
        const int d_kn = distance(kappa, nu);
        if (!(dk - dn > d_kn - 4))
            violated("lower inequality (printed form)", std::to_string(dk) + " - " + std::to_string(dn) +
                                                            " <= " + std::to_string(d_kn) + " - 4");
    } else {
        const int d_mk = distance(mu, kappa);
        if (!(dm - dk > d_mk - 4))
            violated("lower inequality", std::to_string(dm) + " - " + std::to_string(dk) + " <= " +
                                             std::to_string(d_mk) + " - 4");
    }
    Verdict v = verify_ball_locally(solver, mu, opts.jobs);
    v.check = "symmetric-peak";
    v.property = "a W-invariant point beating its comparison points is a center";
    v.reason = "(" + mu.to_string() + ") is a center with radius " + std::to_string(dm) + "; local check: " + v.reason;
    return v;
}

int constant_delta(CoxeterType type)
{
    switch (type) {
    case CoxeterType::B2: return 2;
    case CoxeterType::G2: return 4;
    default:
        throw Error(Errc::PreconditionViolated, "near-constant formulas cover B2 and G2 only, not " + to_string(type));
    }
}

NearConstantResult near_constant_exponents(const Solver& solver, CoxeterType type, int k,
                                           const std::vector<int>& offset)
{
    const int dc = constant_delta(type);
    const auto n = solver.arrangement().size();
    if (offset.size() != n)
        throw Error(Errc::LengthMismatch, "offset of length " + std::to_string(offset.size()) + " for " +
                                              std::to_string(n) + " lines");
    if (k < 0)
        throw Error(Errc::PreconditionViolated, "k must be nonnegative");
    NearConstantResult out;
    std::vector<int> nu(n);
    for (std::size_t h = 0; h < n; ++h) {
        out.offset_sum += std::abs(offset[h]);
        nu[h] = 2 * k + 1 + offset[h];
        if (nu[h] < 0)
            throw Error(Errc::PreconditionViolated, "offset makes entry " + std::to_string(h) + " negative");
    }
    if (out.offset_sum >= static_cast<int>(n))
        throw Error(Errc::OffsetTooLarge, "sum |i_H| = " + std::to_string(out.offset_sum) + " must be below " +
                                              std::to_string(n));
    out.nu = Multiplicity(std::move(nu));
    const int total = out.nu.total();
    const int dp = std::abs(dc - out.offset_sum);
    out.predicted = {(total - dp) / 2, (total + dp) / 2};
    const int c = static_cast<int>(n);
    out.printed = {c * k + 1 + out.offset_sum, c * k + c - 1};
    auto sorted = [](std::pair<int, int> p) { return p.first <= p.second ? p : std::pair{p.second, p.first}; };
    out.printed_matches = sorted(out.printed) == out.predicted;
    auto r = solver.exponents(out.nu);
    out.computed = {r.d1, r.d2};
    out.verdict.check = "near-constant";
    out.verdict.property = "delta(nu) = |delta_c - d(c, nu)| around the constant multiplicity";
    out.verdict.cases = 1;
    const std::string tag = to_string(type) + " k=" + std::to_string(k) + " nu=(" + out.nu.to_string() + ")";
    auto pair_text = [](std::pair<int, int> p) {
        return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
    };
    out.verdict.reason = tag + " computed " + pair_text(out.computed) + " predicted " + pair_text(out.predicted) +
                         " printed " + pair_text(out.printed) + (out.printed_matches ? "" : " (printed differs)");
    if (out.computed != out.predicted)
        out.verdict.fail(out.verdict.reason);
    return out;
}

std::vector<std::vector<int>> offsets_up_to(std::size_t n, int max_sum, bool signed_entries)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int v = signed_entries ? -left : 0; v <= left; ++v) {
            cur[i] = v;
            self(self, i + 1, left - std::abs(v));
        }
        cur[i] = 0;
    };
    rec(rec, 0, max_sum);
    return out;
}

} // namespace mlat
