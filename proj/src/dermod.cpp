#include "mlat/dermod.hpp"

namespace mlat {

namespace {

void check_indexed(const Arrangement& arr, const Multiplicity& mu)
{
    if (mu.dim() != arr.size())
        throw Error(Errc::LengthMismatch, "multiplicity " + mu.to_string() + " for an arrangement of " +
                                              std::to_string(arr.size()) + " lines");
}

} // namespace

int graded_dimension(const Arrangement& arr, const Multiplicity& mu, int d)
{
    check_indexed(arr, mu);
    return graded_dimension(arr.forms(), mu.entries(), d);
}

std::vector<Derivation> derivation_space(const Arrangement& arr, const Multiplicity& mu, int d)
{
    check_indexed(arr, mu);
    return derivation_space(arr.forms(), mu.entries(), d);
}

ExponentResult exponents(const Arrangement& arr, const Multiplicity& mu)
{
    check_indexed(arr, mu);
    return solve_exponents(arr.forms(), mu.entries());
}

int delta(const Arrangement& arr, const Multiplicity& mu) { return exponents(arr, mu).delta; }

ExponentResult exponents_by_search(const Arrangement& arr, const Multiplicity& mu)
{
    check_indexed(arr, mu);
    auto d1 = first_nonzero_degree(arr.forms(), mu.entries());
    if (!d1)
        throw Error(Errc::InternalInconsistency, "no nonzero graded piece up to |mu|/2 for " + mu.to_string());
    auto space = derivation_space(arr, mu, *d1);
    ExponentResult r;
    r.d1 = *d1;
    r.d2 = mu.total() - *d1;
    r.delta = r.d2 - r.d1;
    r.theta_min = space.front();
    r.non_unique = r.delta == 0;
    return r;
}

std::pair<Derivation, Derivation> full_basis(const Arrangement& arr, const Multiplicity& mu)
{
    check_indexed(arr, mu);
    std::vector<Derivation> low;
    auto r = solve_exponents(arr.forms(), mu.entries(), &low);
    if (r.delta == 0)
        return {low[0], low[1]};
    for (const auto& cand : derivation_space(arr, mu, r.d2)) {
        if (!are_dependent(r.theta_min, cand))
            return {r.theta_min, cand};
    }
    throw Error(Errc::InternalInconsistency, "no degree-" + std::to_string(r.d2) + " partner independent of theta_min for " +
                                                 mu.to_string());
}

bool in_module(const Arrangement& arr, const Multiplicity& mu, const Derivation& theta)
{
    check_indexed(arr, mu);
    for (std::size_t h = 0; h < arr.size(); ++h) {
        auto img = theta.apply(arr[h]);
        if (!img.is_zero() && linear_form_multiplicity(img, arr[h]) < mu[h])
            return false;
    }
    return true;
}

std::string to_string(SaitoVerdict::Clause clause)
{
    switch (clause) {
    case SaitoVerdict::Clause::None: return "none";
    case SaitoVerdict::Clause::Membership: return "membership";
    case SaitoVerdict::Clause::Dependent: return "dependent";
    case SaitoVerdict::Clause::DegreeSum: return "degree-sum";
    case SaitoVerdict::Clause::Determinant: return "determinant";
    }
    return "?";
}

SaitoVerdict verify_saito(const Arrangement& arr, const Multiplicity& mu, const Derivation& t1, const Derivation& t2)
{
    check_indexed(arr, mu);
    using C = SaitoVerdict::Clause;
    const Derivation* pair[2] = {&t1, &t2};
    for (int k = 0; k < 2; ++k) {
        const auto& t = *pair[k];
        for (std::size_t h = 0; h < arr.size(); ++h) {
            auto img = t.apply(arr[h]);
            if (img.is_zero())
                continue;
            int m = linear_form_multiplicity(img, arr[h]);
            if (m < mu[h])
                return {false, C::Membership,
                        "theta" + std::to_string(k + 1) + "(" + arr.label(h) + ") = " + img.to_string() +
                            " is divisible by its form only to power " + std::to_string(m) + " < " +
                            std::to_string(mu[h])};
        }
    }
    auto det = saito_determinant(t1, t2);
    if (det.is_zero())
        return {false, C::Dependent, "determinant vanishes"};
    if (t1.degree() + t2.degree() != mu.total())
        return {false, C::DegreeSum, "degrees " + std::to_string(t1.degree()) + " + " + std::to_string(t2.degree()) +
                                         " != |mu| = " + std::to_string(mu.total())};
    auto q = defining_polynomial(arr, mu.entries());
    // det = c q with c != 0  <=>  lead(q) det = lead(det) q
    if (det.degree() != q.degree() || q.leading() * det != det.leading() * q)
        return {false, C::Determinant, "determinant " + det.to_string() + " is not a multiple of " + q.to_string()};
    return {true, C::None, "determinant = (" + (det.leading() / q.leading()).to_string() + ") * " + q.to_string()};
}

// ---------------------------------------------------------------------------

std::vector<BasicLinearForm<ModP>> reduce_forms(const Arrangement& arr, std::uint64_t p)
{
    std::vector<BasicLinearForm<ModP>> out;
    for (std::size_t h = 0; h < arr.size(); ++h) {
        ModP a = reduce_mod(arr[h].a(), p);
        ModP b = reduce_mod(arr[h].b(), p);
        if (a.is_zero() && b.is_zero())
            throw Error(Errc::BadReduction, "form " + arr.label(h) + " vanishes mod " + std::to_string(p));
        BasicLinearForm<ModP> f(a, b);
        for (const auto& g : out) {
            if (g == f)
                throw Error(Errc::BadReduction, "two lines collide mod " + std::to_string(p));
        }
        out.push_back(f);
    }
    return out;
}

std::pair<int, int> exponents_mod_p(const Arrangement& arr, const Multiplicity& mu, std::uint64_t p)
{
    check_indexed(arr, mu);
    auto forms = reduce_forms(arr, p);
    auto r = solve_exponents<ModP>(forms, mu.entries());
    return {r.d1, r.d2};
}

// ---------------------------------------------------------------------------

Solver::Solver(Arrangement arr, ResultStore* store) : arr_(std::move(arr)), hash_(arr_.hash()), store_(store) {}

ExponentResult Solver::exponents(const Multiplicity& mu) const
{
    {
        std::shared_lock lock(mu_);
        auto it = memo_.find(mu);
        if (it != memo_.end())
            return it->second;
    }
    std::optional<ExponentResult> r;
    if (store_)
        r = store_->find(hash_, mu);
    if (!r) {
        r = mlat::exponents(arr_, mu);
        if (store_)
            store_->put(hash_, mu, *r);
    }
    std::unique_lock lock(mu_);
    // Identical results may race in; either copy is correct.
    memo_.emplace(mu, *r);
    return *r;
}

Derivation Solver::theta(const Multiplicity& mu) const
{
    auto r = exponents(mu);
    if (r.non_unique)
        throw Error(Errc::PreconditionViolated, "theta is not unique at " + mu.to_string() + " (delta = 0)");
    return r.theta_min;
}

std::size_t Solver::memo_size() const
{
    std::shared_lock lock(mu_);
    return memo_.size();
}

} // namespace mlat
