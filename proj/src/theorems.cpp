#include "mlat/theorems.hpp"

#include "mlat/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace mlat {

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    }
    return "?";
}

Verdict Verdict::skipped(std::string check, std::string property, std::string reason)
{
    Verdict v;
    v.check = std::move(check);
    v.property = std::move(property);
    v.status = Status::Skipped;
    v.reason = std::move(reason);
    return v;
}

void Verdict::fail(std::string witness)
{
    status = Status::Fail;
    witnesses.push_back(std::move(witness));
}

Status aggregate(const std::vector<Verdict>& verdicts)
{
    bool any_pass = false;
    for (const auto& v : verdicts) {
        if (v.status == Status::Fail)
            return Status::Fail;
        any_pass = any_pass || v.status == Status::Pass;
    }
    return any_pass || verdicts.empty() ? Status::Pass : Status::Skipped;
}

namespace {

Verdict make_verdict(std::string check, std::string property)
{
    Verdict v;
    v.check = std::move(check);
    v.property = std::move(property);
    return v;
}

void add_witness(Verdict& v, const CheckOptions& opts, std::string w)
{
    v.status = Status::Fail;
    if (v.witnesses.size() < opts.max_witnesses)
        v.witnesses.push_back(std::move(w));
    else if (v.witnesses.size() == opts.max_witnesses)
        v.witnesses.push_back("...");
}

std::string point_text(const ScanResult& scan, const Multiplicity& m)
{
    return "(" + m.to_string() + ") delta=" + std::to_string(scan.delta(m));
}

/// Indices to visit out of n: all of them, or a seeded sample of max_pairs.
std::vector<std::size_t> sample_indices(std::size_t n, const CheckOptions& opts, std::string& note)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    if (n <= opts.max_pairs) {
        note = "exhaustive over " + std::to_string(n) + " cases";
        return idx;
    }
    std::mt19937_64 rng(opts.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(opts.max_pairs);
    std::sort(idx.begin(), idx.end());
    note = "sampled " + std::to_string(opts.max_pairs) + " of " + std::to_string(n) + " cases, seed " +
           std::to_string(opts.seed);
    return idx;
}

/// Solves all points on the pool so later serial lookups hit the memo.
void warm(const Solver& solver, const std::vector<Multiplicity>& pts, unsigned jobs)
{
    parallel_for(pts.size(), jobs, [&](std::size_t i) { solver.exponents(pts[i]); });
}

int set_distance(const std::vector<Multiplicity>& a, const std::vector<Multiplicity>& b)
{
    int best = -1;
    for (const auto& x : a) {
        for (const auto& y : b) {
            int d = distance(x, y);
            if (best < 0 || d < best)
                best = d;
        }
    }
    return best;
}

} // namespace

// ---------------------------------------------------------------------------

Verdict check_covering_steps(const ScanResult& scan, const CheckOptions& opts)
{
    auto v = make_verdict("covering", "adjacent points differ in delta by exactly one");
    const Box& box = scan.box();
    for (std::size_t i = 0; i < box.point_count(); ++i) {
        const auto& a = scan.points()[i];
        if (a.estimated)
            continue;
        for (std::size_t h = 0; h < box.dim(); ++h) {
            if (a.mu[h] >= box.upper()[h])
                continue;
            const auto& b = scan.at(a.mu.shifted(h, 1));
            if (b.estimated)
                continue;
            ++v.cases;
            if (std::abs(a.delta - b.delta) != 1) {
                add_witness(v, opts, point_text(scan, a.mu) + " -> " + point_text(scan, b.mu) +
                                         (a.delta == 0 && b.delta == 0 ? " (adjacent zeros)" : ""));
            }
        }
    }
    v.reason = std::to_string(v.cases) + " covering pairs";
    return v;
}

Verdict check_ball_structure(const ScanResult& scan, const ComponentIndex& index, const CheckOptions& opts)
{
    auto v = make_verdict("ball", "finite components are strict balls of radius delta(center) with linear decay");
    const Box& box = scan.box();
    std::size_t balls = 0;
    for (const auto& c : index.components) {
        if (c.kind != ComponentKind::CertifiedFiniteBall)
            continue;
        ++balls;
        const std::string tag = "component " + std::to_string(c.id) + " center (" + c.center->to_string() + ")";
        if (c.maximizers.size() != 1) {
            std::string w = tag + ": " + std::to_string(c.maximizers.size()) + " maximizers";
            for (const auto& m : c.maximizers)
                w += " (" + m.to_string() + ")";
            add_witness(v, opts, w);
            continue;
        }
        const Multiplicity& center = *c.center;
        const int r = scan.delta(center);
        auto expected = ball(center, r, box);
        std::sort(expected.begin(), expected.end());
        auto members = c.members;
        std::sort(members.begin(), members.end());
        if (expected != members) {
            add_witness(v, opts, tag + ": component has " + std::to_string(members.size()) +
                                     " points, strict ball of radius " + std::to_string(r) + " has " +
                                     std::to_string(expected.size()));
        }
        for (const auto& nu : ball(center, r + 2, box)) {
            ++v.cases;
            const int d = distance(center, nu);
            if (scan.at(nu).estimated)
                continue;
            if (scan.delta(nu) != std::abs(r - d))
                add_witness(v, opts, tag + ": " + point_text(scan, nu) + " at distance " + std::to_string(d) +
                                         ", expected delta " + std::to_string(std::abs(r - d)));
        }
    }
    v.reason = std::to_string(balls) + " certified balls, " + std::to_string(v.cases) + " points checked";
    if (balls == 0 && v.status == Status::Pass)
        v.status = Status::Skipped, v.reason = "no certified finite components in the box";
    return v;
}

Verdict verify_ball_locally(const Solver& solver, const Multiplicity& center, unsigned jobs)
{
    auto v = make_verdict("local-ball", "delta(v) = |delta(c) - d(c, v)| for d(c, v) < delta(c) + 2");
    const int r = solver.delta(center);
    if (r == 0) {
        v.fail("(" + center.to_string() + ") has delta 0 and is not in the support");
        return v;
    }
    auto pts = ball(center, r + 2);
    warm(solver, pts, jobs);
    for (const auto& nu : pts) {
        ++v.cases;
        const int d = distance(center, nu);
        const int got = solver.delta(nu);
        if (got != std::abs(r - d))
            v.fail("(" + nu.to_string() + ") delta=" + std::to_string(got) + " at distance " + std::to_string(d));
    }
    v.reason = "center (" + center.to_string() + ") radius " + std::to_string(r) + ", " + std::to_string(v.cases) +
               " points";
    return v;
}

Verdict check_basis_step_and_path(const ScanResult& scan, const ComponentIndex& index, const Solver& solver,
                                  const CheckOptions& opts)
{
    auto v = make_verdict("basis-path", "theta propagates along covers and chains by the descent forms");
    const auto& arr = scan.arrangement();
    const Box& box = scan.box();
    auto comp_of = [&](const Multiplicity& m) { return index.component_of[box.index_of(m)]; };

    // Single covers.
    std::size_t covers = 0;
    for (const auto& c : index.components) {
        for (const auto& mu : c.members) {
            if (scan.at(mu).estimated)
                continue;
            for (std::size_t h = 0; h < mu.dim(); ++h) {
                if (mu[h] >= box.upper()[h])
                    continue;
                auto nu = mu.shifted(h, 1);
                if (comp_of(nu) != c.id || scan.at(nu).estimated)
                    continue;
                ++covers;
                auto tmu = solver.theta(mu);
                auto tnu = solver.theta(nu);
                const bool ascent = scan.delta(mu) < scan.delta(nu);
                auto expected = ascent ? tmu : arr[h].as_poly() * tmu;
                if (!proportional(tnu, expected))
                    add_witness(v, opts, point_text(scan, mu) + " -> " + point_text(scan, nu) + ": theta " +
                                             tnu.to_string() + " not proportional to " + expected.to_string());
            }
        }
    }

    // Comparable pairs inside one component.
    std::vector<std::pair<Multiplicity, Multiplicity>> pairs;
    for (const auto& c : index.components) {
        for (const auto& a : c.members) {
            if (scan.at(a).estimated)
                continue;
            for (const auto& b : c.members) {
                if (a != b && leq(a, b) && !scan.at(b).estimated)
                    pairs.emplace_back(a, b);
            }
        }
    }
    std::string note;
    auto picks = sample_indices(pairs.size(), opts, note);
    std::size_t chains = 0, alternates = 0;
    auto chain_inside = [&](const Chain& ch, int id) {
        return std::all_of(ch.points().begin(), ch.points().end(), [&](const Multiplicity& m) { return comp_of(m) == id; });
    };
    auto chain_deltas = [&](const Chain& ch) {
        std::vector<int> d;
        for (const auto& m : ch.points())
            d.push_back(scan.delta(m));
        return d;
    };
    for (auto k : picks) {
        const auto& [a, b] = pairs[k];
        const int id = comp_of(a);
        auto ch = saturated_chain(a, b);
        if (!chain_inside(ch, id))
            continue;
        ++chains;
        auto factor = downalpha(arr, ch, chain_deltas(ch));
        auto ta = solver.theta(a);
        auto tb = solver.theta(b);
        if (!proportional(tb, factor * ta))
            add_witness(v, opts, "(" + a.to_string() + ") -> (" + b.to_string() + "): theta not proportional to (" +
                                     factor.to_string() + ") * theta");
        auto alt = saturated_chain_reversed(a, b);
        if (alt.points() == ch.points() || !chain_inside(alt, id))
            continue;
        ++alternates;
        auto alt_factor = downalpha(arr, alt, chain_deltas(alt));
        if (!proportional(alt_factor, factor))
            add_witness(v, opts, "(" + a.to_string() + ") -> (" + b.to_string() + "): chain factors " +
                                     factor.to_string() + " and " + alt_factor.to_string() + " differ");
    }
    v.cases = covers + chains + alternates;
    v.reason = std::to_string(covers) + " covers, " + std::to_string(chains) + " chains, " +
               std::to_string(alternates) + " alternate chains; pairs " + note;
    return v;
}

Verdict check_independency(const ScanResult& scan, const ComponentIndex& index, const Solver& solver,
                           const CheckOptions& opts)
{
    auto v = make_verdict("independency",
                          "theta's of certified balls at distance 2 are independent, within a component dependent");
    struct Task {
        Multiplicity a, b;
        bool expect_independent;
    };
    std::vector<Task> tasks;
    std::vector<const Component*> balls;
    for (const auto& c : index.components) {
        if (c.kind == ComponentKind::CertifiedFiniteBall)
            balls.push_back(&c);
    }
    std::size_t near_pairs = 0;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            if (component_distance(*balls[i], *balls[j]) != 2)
                continue;
            ++near_pairs;
            for (const auto& a : balls[i]->members) {
                for (const auto& b : balls[j]->members)
                    tasks.push_back({a, b, true});
            }
        }
    }
    for (const auto& c : index.components) {
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            if (scan.at(c.members[i]).estimated)
                continue;
            for (std::size_t j = i + 1; j < c.members.size(); ++j) {
                if (!scan.at(c.members[j]).estimated)
                    tasks.push_back({c.members[i], c.members[j], false});
            }
        }
    }
    std::string note;
    for (auto k : sample_indices(tasks.size(), opts, note)) {
        const auto& t = tasks[k];
        ++v.cases;
        const bool dependent = are_dependent(solver.theta(t.a), solver.theta(t.b));
        if (dependent == t.expect_independent)
            add_witness(v, opts, point_text(scan, t.a) + " vs " + point_text(scan, t.b) + ": " +
                                     (dependent ? "dependent across components" : "independent within a component"));
    }
    v.reason = std::to_string(near_pairs) + " ball pairs at distance 2; " + note;
    return v;
}

Verdict check_sections(const ScanResult& scan, const ComponentIndex& index)
{
    auto v = make_verdict("sections", "delta is unimodal on every section of a finite component");
    CheckOptions opts;
    for (const auto& c : index.components) {
        if (c.kind != ComponentKind::CertifiedFiniteBall)
            continue;
        for (const auto& mu : c.members) {
            for (std::size_t h = 0; h < mu.dim(); ++h) {
                auto sec = section(c, mu, h);
                if (sec.front() != mu)
                    continue;
                ++v.cases;
                std::vector<int> d;
                for (const auto& m : sec)
                    d.push_back(scan.delta(m));
                try {
                    peak_element(sec, d);
                } catch (const Error& e) {
                    add_witness(v, opts, "section through (" + mu.to_string() + ") along line " + std::to_string(h) +
                                             ": " + e.what());
                }
            }
        }
    }
    v.reason = std::to_string(v.cases) + " sections";
    return v;
}

// ---------------------------------------------------------------------------

HomogPoly multiplier_between(const Arrangement& arr, const Multiplicity& mu, const Multiplicity& kappa)
{
    HomogPoly r = HomogPoly::one();
    for (std::size_t h = 0; h < arr.size(); ++h)
        r = r * power(arr[h].as_poly(), std::max(kappa[h] - mu[h], 0));
    return r;
}

BasisResult construct_basis_between(const Solver& solver, const Multiplicity& mu, const Multiplicity& nu,
                                    const Multiplicity& kappa, const Derivation& theta_mu, const Derivation& theta_nu,
                                    std::optional<bool> same_component)
{
    const auto& arr = solver.arrangement();
    const int dmu = solver.delta(mu);
    const int dnu = solver.delta(nu);
    if (dmu == 0 || dnu == 0)
        throw Error(Errc::PreconditionViolated, "support: delta(" + mu.to_string() + ") = " + std::to_string(dmu) +
                                                    ", delta(" + nu.to_string() + ") = " + std::to_string(dnu));
    if (dmu + dnu != distance(mu, nu))
        throw Error(Errc::PreconditionViolated, "distance: delta sum " + std::to_string(dmu + dnu) +
                                                    " != d(mu, nu) = " + std::to_string(distance(mu, nu)));
    auto [lo, hi] = meet_join(mu, nu);
    if (!leq(lo, kappa) || !leq(kappa, hi))
        throw Error(Errc::PreconditionViolated,
                    "interval: kappa (" + kappa.to_string() + ") not between (" + lo.to_string() + ") and (" +
                        hi.to_string() + ")");
    if (same_component.value_or(false))
        throw Error(Errc::PreconditionViolated, "components: mu and nu lie in the same component");

    BasisResult out{mu, nu, {}, {}, multiplier_between(arr, mu, kappa), multiplier_between(arr, nu, kappa), {}};
    out.first = out.alpha_mu * theta_mu;
    out.second = out.alpha_nu * theta_nu;
    out.saito = verify_saito(arr, kappa, out.first, out.second);
    if (!out.saito)
        throw Error(Errc::VerificationFailed, "basis for (" + kappa.to_string() + ") from (" + mu.to_string() +
                                                  ") and (" + nu.to_string() + ") rejected: " +
                                                  to_string(out.saito.failed) + ": " + out.saito.detail);
    return out;
}

std::vector<CenterEntry> center_index(const ScanResult& scan, const ComponentIndex& index)
{
    std::vector<CenterEntry> out;
    for (const auto& rep : centers(scan, index)) {
        if (rep.error.empty())
            out.push_back({rep.center, rep.delta, rep.component});
    }
    return out;
}

std::vector<CenterEntry> support_index(const ScanResult& scan, const ComponentIndex& index)
{
    std::vector<CenterEntry> out;
    for (const auto& rec : scan.points()) {
        if (rec.delta > 0 && !rec.estimated)
            out.push_back({rec.mu, rec.delta, index.component_of[scan.box().index_of(rec.mu)]});
    }
    return out;
}

namespace {

using PairKey = std::tuple<int, int, std::size_t, std::size_t>;

/// Feasible pairs around kappa, nearest first.
std::vector<PairKey> feasible_pairs(const Multiplicity& kappa, const std::vector<CenterEntry>& pts)
{
    std::vector<PairKey> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& a = pts[i];
        const int da = distance(a.center, kappa);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto& b = pts[j];
            if (a.component == b.component || a.delta + b.delta != distance(a.center, b.center))
                continue;
            auto [lo, hi] = meet_join(a.center, b.center);
            if (!leq(lo, kappa) || !leq(kappa, hi))
                continue;
            const int db = distance(b.center, kappa);
            out.emplace_back(std::max(da, db), da + db, i, j);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

BasisResult basis_for(const Solver& solver, const Multiplicity& kappa, const std::vector<CenterEntry>& centers,
                      const std::vector<CenterEntry>* fallback)
{
    if (!classify_point(kappa).balanced())
        throw Error(Errc::PreconditionViolated, "(" + kappa.to_string() + ") is not balanced");
    auto pairs = feasible_pairs(kappa, centers);
    if (!pairs.empty()) {
        const auto& a = centers[std::get<2>(pairs.front())];
        const auto& b = centers[std::get<3>(pairs.front())];
        return construct_basis_between(solver, a.center, b.center, kappa, solver.theta(a.center),
                                       solver.theta(b.center), false);
    }
    if (fallback) {
        for (const auto& key : feasible_pairs(kappa, *fallback)) {
            const auto& a = (*fallback)[std::get<2>(key)];
            const auto& b = (*fallback)[std::get<3>(key)];
            auto ta = solver.theta(a.center);
            auto tb = solver.theta(b.center);
            if (!are_dependent(ta, tb))
                return construct_basis_between(solver, a.center, b.center, kappa, ta, tb, false);
        }
    }
    throw Error(Errc::NoCenterPairFound, "no feasible pair of centers around (" + kappa.to_string() + ") among " +
                                             std::to_string(centers.size()) + " centers; enlarge the scan");
}

// ---------------------------------------------------------------------------

bool CandidateMap::add(const Multiplicity& mu, const Derivation& theta)
{
    if (theta.is_zero() || !in_module(*arr_, mu, theta)) {
        rejected_.push_back(mu);
        return false;
    }
    entries_.insert_or_assign(mu, theta);
    return true;
}

int CandidateMap::delta_prime(const Multiplicity& mu) const { return mu.total() - 2 * at(mu).degree(); }

std::vector<Multiplicity> balanced_window(const Box& box)
{
    std::vector<Multiplicity> out;
    for (std::size_t i = 0; i < box.point_count(); ++i) {
        auto m = box.point_at(i);
        if (classify_point(m).balanced())
            out.push_back(std::move(m));
    }
    return out;
}

std::vector<std::vector<Multiplicity>> induced_components(const std::vector<Multiplicity>& points)
{
    std::unordered_map<Multiplicity, int, MultiplicityHash> id;
    for (const auto& p : points)
        id.emplace(p, -1);
    std::vector<std::vector<Multiplicity>> out;
    for (const auto& p : points) {
        if (id[p] >= 0)
            continue;
        const int cid = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<Multiplicity> stack{p};
        id[p] = cid;
        while (!stack.empty()) {
            auto cur = stack.back();
            stack.pop_back();
            out.back().push_back(cur);
            for (std::size_t h = 0; h < cur.dim(); ++h) {
                for (int s : {-1, 1}) {
                    if (cur[h] + s < 0)
                        continue;
                    auto nb = cur.shifted(h, s);
                    auto it = id.find(nb);
                    if (it != id.end() && it->second < 0) {
                        it->second = cid;
                        stack.push_back(nb);
                    }
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

namespace {

void require_no_connected_pairs(const std::vector<Multiplicity>& rest, const std::string& what)
{
    for (const auto& comp : induced_components(rest)) {
        if (comp.size() > 1)
            throw Error(Errc::HypothesisViolated, what + " has a connected component of size " +
                                                      std::to_string(comp.size()) + " containing (" +
                                                      comp.front().to_string() + ") and (" + comp[1].to_string() + ")");
    }
}

} // namespace

CriterionResult certify_support(const Solver& solver, const CandidateMap& candidate,
                                const std::vector<Multiplicity>& window, const ScanResult* trusted,
                                const CheckOptions& opts)
{
    CriterionResult out;
    out.verdict = make_verdict("criterion-support", "independence across nearby components characterizes the support");
    out.verdict.reason = "components of N taken in the N-induced covering graph";
    if (!candidate.rejected().empty()) {
        out.verdict.status = Status::Skipped;
        out.verdict.reason = "candidate has " + std::to_string(candidate.rejected().size()) +
                             " entries outside the derivation module, e.g. (" + candidate.rejected().front().to_string() +
                             ")";
        return out;
    }
    std::set<Multiplicity> win(window.begin(), window.end());
    std::vector<Multiplicity> dom;
    for (const auto& [mu, theta] : candidate.entries()) {
        if (!win.count(mu) || !classify_point(mu).balanced())
            throw Error(Errc::HypothesisViolated, "(" + mu.to_string() + ") is not a balanced window point");
        if (2 * theta.degree() >= mu.total())
            throw Error(Errc::HypothesisViolated, "deg vartheta(" + mu.to_string() + ") = " +
                                                      std::to_string(theta.degree()) + " is not below |mu|/2");
        dom.push_back(mu);
    }
    std::vector<Multiplicity> rest;
    for (const auto& m : window) {
        if (!candidate.contains(m))
            rest.push_back(m);
    }
    require_no_connected_pairs(rest, "window minus N");

    auto comps = induced_components(dom);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (std::size_t j = i + 1; j < comps.size(); ++j) {
            if (set_distance(comps[i], comps[j]) != 2)
                continue;
            for (const auto& a : comps[i]) {
                for (const auto& b : comps[j]) {
                    ++out.verdict.cases;
                    if (are_dependent(candidate.at(a), candidate.at(b)))
                        add_witness(out.verdict, opts,
                                    "(" + a.to_string() + ") and (" + b.to_string() +
                                        ") lie in N-components at distance 2 but are dependent");
                }
            }
        }
    }
    out.verdict.reason += "; " + std::to_string(comps.size()) + " components, " + std::to_string(out.verdict.cases) +
                          " cross pairs";
    if (trusted) {
        bool covered = true;
        std::set<Multiplicity> truth;
        for (const auto& m : window) {
            if (!trusted->contains(m)) {
                covered = false;
                break;
            }
            if (trusted->delta(m) > 0)
                truth.insert(m);
        }
        if (covered) {
            std::set<Multiplicity> got(dom.begin(), dom.end());
            out.agrees_with_scan = out.verdict.passed() == (got == truth);
        }
    }
    (void)solver;
    return out;
}

CriterionResult certify_centers(const Solver& solver, const CandidateMap& candidate,
                                const std::vector<Multiplicity>& window, const ScanResult* trusted,
                                const ComponentIndex* index)
{
    CriterionResult out;
    out.verdict = make_verdict("criterion-centers", "independence at complementary distances characterizes the centers");
    CheckOptions opts;
    if (!candidate.rejected().empty()) {
        out.verdict.status = Status::Skipped;
        out.verdict.reason = "candidate has entries outside the derivation module, e.g. (" +
                             candidate.rejected().front().to_string() + ")";
        return out;
    }
    std::vector<std::pair<Multiplicity, int>> dom;
    for (const auto& [mu, theta] : candidate.entries()) {
        if (!classify_point(mu).balanced())
            throw Error(Errc::HypothesisViolated, "(" + mu.to_string() + ") is not balanced");
        const int dp = candidate.delta_prime(mu);
        if (dp <= 0)
            throw Error(Errc::HypothesisViolated,
                        "delta'(" + mu.to_string() + ") = " + std::to_string(dp) + " is not positive");
        dom.emplace_back(mu, dp);
    }
    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = i + 1; j < dom.size(); ++j) {
            // Strict balls of radii a, b meet iff the centers are at distance <= a + b - 2.
            if (distance(dom[i].first, dom[j].first) <= dom[i].second + dom[j].second - 2)
                throw Error(Errc::HypothesisViolated, "balls around (" + dom[i].first.to_string() + ") and (" +
                                                          dom[j].first.to_string() + ") overlap");
        }
    }
    std::vector<Multiplicity> rest;
    for (const auto& m : window) {
        bool inside = std::any_of(dom.begin(), dom.end(),
                                  [&](const auto& e) { return distance(e.first, m) < e.second; });
        if (!inside)
            rest.push_back(m);
    }
    require_no_connected_pairs(rest, "window minus the balls");

    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = i + 1; j < dom.size(); ++j) {
            if (dom[i].second + dom[j].second != distance(dom[i].first, dom[j].first))
                continue;
            ++out.verdict.cases;
            if (are_dependent(candidate.at(dom[i].first), candidate.at(dom[j].first)))
                add_witness(out.verdict, opts,
                            "(" + dom[i].first.to_string() + ") and (" + dom[j].first.to_string() +
                                ") at complementary distance are dependent");
        }
    }
    out.verdict.reason = std::to_string(dom.size()) + " candidate centers, " + std::to_string(out.verdict.cases) +
                         " pairs at complementary distance";
    if (trusted && index) {
        std::set<Multiplicity> truth;
        bool determined = true;
        std::set<int> touched;
        for (const auto& m : window) {
            if (!trusted->contains(m)) {
                determined = false;
                break;
            }
            if (const Component* c = index->find(trusted->box(), m))
                touched.insert(c->id);
        }
        for (int id : touched) {
            const auto& c = index->components[static_cast<std::size_t>(id)];
            if (c.kind != ComponentKind::CertifiedFiniteBall || c.maximizers.size() != 1)
                determined = false;
            else
                truth.insert(*c.center);
        }
        if (determined) {
            std::set<Multiplicity> got;
            bool thetas = true;
            for (const auto& [mu, dp] : dom) {
                got.insert(mu);
                auto r = solver.exponents(mu);
                thetas = thetas && !r.non_unique && proportional(r.theta_min, candidate.at(mu));
            }
            out.agrees_with_scan = out.verdict.passed() == (got == truth && thetas);
        }
    }
    return out;
}

Reconstruction reconstruct_components(const Solver& solver, const std::vector<Multiplicity>& window,
                                      const ScanResult& trusted, const ComponentIndex& index)
{
    Reconstruction out;
    out.verdict = make_verdict("reconstruction", "dependence at distance 2 recovers the finite components");
    CheckOptions opts;
    std::vector<Multiplicity> odd;
    for (const auto& m : window) {
        if (m.total() % 2 == 1 && classify_point(m).balanced())
            odd.push_back(m);
    }
    std::sort(odd.begin(), odd.end());
    std::unordered_map<Multiplicity, std::size_t, MultiplicityHash> pos;
    for (std::size_t i = 0; i < odd.size(); ++i)
        pos.emplace(odd[i], i);
    std::vector<std::size_t> parent(odd.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < odd.size(); ++i) {
        const auto& a = odd[i];
        for (std::size_t j = i + 1; j < odd.size(); ++j) {
            const auto& b = odd[j];
            if (distance(a, b) != 2)
                continue;
            ++out.verdict.cases;
            if (are_dependent(solver.theta(a), solver.theta(b)))
                parent[find(j)] = find(i);
        }
    }
    std::map<std::size_t, std::vector<Multiplicity>> classes;
    for (std::size_t i = 0; i < odd.size(); ++i)
        classes[find(i)].push_back(odd[i]);
    std::map<int, std::size_t> comp_to_class;
    for (const auto& [root, members] : classes) {
        std::set<int> ids;
        for (const auto& m : members) {
            if (!trusted.contains(m)) {
                out.verdict = Verdict::skipped(out.verdict.check, out.verdict.property,
                                               "window point (" + m.to_string() + ") outside the trusted scan");
                return out;
            }
            const Component* c = index.find(trusted.box(), m);
            ids.insert(c ? c->id : -1);
        }
        if (ids.size() != 1)
            add_witness(out.verdict, opts, "class of (" + members.front().to_string() + ") spans " +
                                               std::to_string(ids.size()) + " components");
        for (int id : ids) {
            auto [it, fresh] = comp_to_class.emplace(id, root);
            if (!fresh && it->second != root)
                add_witness(out.verdict, opts, "component " + std::to_string(id) + " split across classes, e.g. (" +
                                                   members.front().to_string() + ")");
        }
        out.classes.push_back(members);
    }
    out.verdict.reason = std::to_string(odd.size()) + " odd balanced points, " + std::to_string(out.classes.size()) +
                         " classes";
    return out;
}

} // namespace mlat

namespace mlat {

Verdict check_saito_bases(const Solver& solver, const ScanResult& scan, const ComponentIndex& index, const Box& window,
                          unsigned jobs)
{
    auto v = make_verdict("saito", "constructed bases satisfy Saito's criterion");
    CheckOptions opts;
    const auto& arr = solver.arrangement();
    std::vector<Multiplicity> pts;
    for (std::size_t i = 0; i < window.point_count(); ++i)
        pts.push_back(window.point_at(i));
    std::vector<std::string> errors(pts.size());
    parallel_for(pts.size(), jobs, [&](std::size_t i) {
        auto [a, b] = full_basis(arr, pts[i]);
        auto s = verify_saito(arr, pts[i], a, b);
        if (!s)
            errors[i] = "full basis at (" + pts[i].to_string() + "): " + to_string(s.failed) + ": " + s.detail;
    });
    std::size_t full = pts.size(), via_centers = 0, between = 0;
    auto centers_list = center_index(scan, index);
    auto support = support_index(scan, index);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!errors[i].empty())
            add_witness(v, opts, errors[i]);
        if (!classify_point(pts[i]).balanced())
            continue;
        ++via_centers;
        try {
            basis_for(solver, pts[i], centers_list, &support);
        } catch (const Error& e) {
            add_witness(v, opts, "basis_for (" + pts[i].to_string() + "): " + e.what());
        }
    }
    for (std::size_t i = 0; i < centers_list.size(); ++i) {
        const auto& a = centers_list[i];
        if (!window.contains(a.center))
            continue;
        for (std::size_t j = i + 1; j < centers_list.size(); ++j) {
            const auto& b = centers_list[j];
            if (!window.contains(b.center) || a.delta + b.delta != distance(a.center, b.center))
                continue;
            auto [lo, hi] = meet_join(a.center, b.center);
            std::vector<int> span;
            for (std::size_t h = 0; h < lo.dim(); ++h)
                span.push_back(hi[h] - lo[h]);
            Box interval(span);
            for (std::size_t k = 0; k < interval.point_count(); ++k) {
                auto off = interval.point_at(k);
                std::vector<int> kap(lo.dim());
                for (std::size_t h = 0; h < lo.dim(); ++h)
                    kap[h] = lo[h] + off[h];
                ++between;
                try {
                    construct_basis_between(solver, a.center, b.center, Multiplicity(kap), solver.theta(a.center),
                                            solver.theta(b.center), false);
                } catch (const Error& e) {
                    add_witness(v, opts, std::string("between (") + a.center.to_string() + ") and (" +
                                             b.center.to_string() + "): " + e.what());
                }
            }
        }
    }
    v.cases = full + via_centers + between;
    v.reason = std::to_string(full) + " full bases, " + std::to_string(via_centers) + " from centers, " +
               std::to_string(between) + " between center pairs";
    return v;
}

std::vector<Verdict> check_criteria(const Solver& solver, const ScanResult& scan, const ComponentIndex& index,
                                    const Box& window)
{
    std::vector<Verdict> out;
    const auto& arr = solver.arrangement();
    auto win = balanced_window(window);
    auto finish = [&](CriterionResult r) {
        if (r.verdict.passed() && r.agrees_with_scan != true)
            r.verdict.fail("ground truth input does not agree with the scan");
        out.push_back(std::move(r.verdict));
    };

    CandidateMap support(arr);
    for (const auto& m : win) {
        if (scan.in_support(m))
            support.add(m, solver.theta(m));
    }
    try {
        finish(certify_support(solver, support, win, &scan));
    } catch (const Error& e) {
        Verdict v = make_verdict("criterion-support", "independence across nearby components characterizes the support");
        v.fail(e.what());
        out.push_back(v);
    }

    const auto uncertified = std::find_if(win.begin(), win.end(), [&](const Multiplicity& m) {
        const Component* c = scan.in_support(m) ? index.find(scan.box(), m) : nullptr;
        return c && c->kind != ComponentKind::CertifiedFiniteBall;
    });
    if (uncertified != win.end()) {
        out.push_back(Verdict::skipped("criterion-centers", "independence at complementary distances characterizes the centers",
                                       "support point " + uncertified->to_string() +
                                           " lies in a component not certified in this box; enlarge the box"));
        out.push_back(reconstruct_components(solver, win, scan, index).verdict);
        return out;
    }

    CandidateMap centers_map(arr);
    for (const auto& c : center_index(scan, index)) {
        bool meets = std::any_of(win.begin(), win.end(), [&](const Multiplicity& m) { return distance(m, c.center) < c.delta; });
        if (meets)
            centers_map.add(c.center, solver.theta(c.center));
    }
    try {
        finish(certify_centers(solver, centers_map, win, &scan, &index));
    } catch (const Error& e) {
        Verdict v = make_verdict("criterion-centers", "independence at complementary distances characterizes the centers");
        v.fail(e.what());
        out.push_back(v);
    }

    out.push_back(reconstruct_components(solver, win, scan, index).verdict);
    return out;
}

} // namespace mlat
