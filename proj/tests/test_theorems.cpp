#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <memory>

using namespace mlat;
using fx::x;
using fx::y;

namespace {

const Derivation kEuler = Derivation::euler();

struct B2Data {
    Solver solver{fx::b2()};
    Box box = Box::cube(4, 5);
    ScanResult scan_result = scan(solver, box, {4, false});
    ComponentIndex index = components(scan_result);
    Box window = Box::cube(4, 3);
};

const B2Data& b2data()
{
    static const B2Data data;
    return data;
}

CandidateMap truth_support(const B2Data& d)
{
    CandidateMap cm(d.solver.arrangement());
    for (const auto& m : balanced_window(d.window))
        if (d.scan_result.in_support(m))
            cm.add(m, d.solver.theta(m));
    return cm;
}

CandidateMap truth_centers(const B2Data& d)
{
    CandidateMap cm(d.solver.arrangement());
    const auto win = balanced_window(d.window);
    for (const auto& c : center_index(d.scan_result, d.index)) {
        if (std::any_of(win.begin(), win.end(), [&](const Multiplicity& m) { return distance(m, c.center) < c.delta; }))
            cm.add(c.center, d.solver.theta(c.center));
    }
    return cm;
}

Errc code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Usage;
}

} // namespace

TEST(Theorems, CoveringSteps)
{
    const auto& d = b2data();
    EXPECT_EQ(check_covering_steps(d.scan_result).status, Status::Pass);

    Solver sb(fx::boolean());
    EXPECT_EQ(check_covering_steps(scan(sb, Box({4, 4}))).status, Status::Pass);

    auto pts = scan(sb, Box({1, 1})).points();
    pts[1].delta = 0; // (0,1) next to (0,0)
    pts[1].d1 = pts[1].d2 = 0;
    const ScanResult bad(fx::boolean(), Box({1, 1}), pts);
    const auto v = check_covering_steps(bad);
    EXPECT_EQ(v.status, Status::Fail);
    EXPECT_FALSE(v.witnesses.empty());
}

TEST(Theorems, BallStructure)
{
    const auto& d = b2data();
    EXPECT_EQ(check_ball_structure(d.scan_result, d.index).status, Status::Pass);

    Solver g(fx::g2());
    EXPECT_EQ(verify_ball_locally(g, Multiplicity::constant(6, 1), 4).status, Status::Pass);

    Solver s(fx::b2());
    const Box box = Box::cube(4, 3);
    auto pts = scan(s, box).points();
    auto& p = pts[box.index_of({2, 1, 1, 1})];
    p.delta = 0;
    p.d1 = p.d2 = 5;
    const ScanResult bad(fx::b2(), box, pts);
    const auto v = check_ball_structure(bad, components(bad));
    EXPECT_EQ(v.status, Status::Fail);
    EXPECT_FALSE(v.witnesses.empty());

    Solver sb(fx::boolean());
    const auto bs = scan(sb, Box({3, 3}));
    EXPECT_EQ(check_ball_structure(bs, components(bs)).status, Status::Skipped);
}

TEST(Theorems, BasisStepAndPath)
{
    const auto& d = b2data();
    EXPECT_EQ(check_basis_step_and_path(d.scan_result, d.index, d.solver).status, Status::Pass);
    EXPECT_TRUE(proportional(d.solver.theta({2, 1, 1, 1}), x() * kEuler));
    EXPECT_EQ(d.solver.exponents({0, 1, 1, 1}).d1, 1);
    EXPECT_TRUE(proportional(d.solver.theta({0, 1, 1, 1}), d.solver.theta({1, 1, 1, 1})));

    const Multiplicity lo{1, 1, 1, 1}, hi{2, 2, 1, 1};
    for (const auto& chain : {saturated_chain(lo, hi), saturated_chain_reversed(lo, hi)}) {
        std::vector<int> deltas;
        for (const auto& m : chain.points())
            deltas.push_back(d.scan_result.delta(m));
        EXPECT_EQ(downalpha(d.solver.arrangement(), chain, deltas), x() * y());
    }
    EXPECT_EQ(d.scan_result.delta(hi), 0);
    EXPECT_TRUE(in_module(d.solver.arrangement(), hi, x() * y() * kEuler));
}

TEST(Theorems, Independency)
{
    const auto& d = b2data();
    EXPECT_EQ(check_independency(d.scan_result, d.index, d.solver).status, Status::Pass);
    EXPECT_FALSE(are_dependent(d.solver.theta({1, 1, 1, 1}), d.solver.theta({2, 2, 2, 1})));
    EXPECT_TRUE(are_dependent(d.solver.theta({1, 1, 1, 1}), d.solver.theta({2, 1, 1, 1})));
    Solver sb(fx::boolean());
    EXPECT_FALSE(are_dependent(sb.theta({3, 1}), sb.theta({1, 3})));
}

TEST(Theorems, Sections)
{
    const auto& d = b2data();
    EXPECT_EQ(check_sections(d.scan_result, d.index).status, Status::Pass);
}

TEST(Theorems, ConstructBasisBetween)
{
    const auto& d = b2data();
    const auto& s = d.solver;
    const Multiplicity mu{1, 1, 1, 1}, nu{2, 2, 2, 1};
    const auto tmu = s.theta(mu), tnu = s.theta(nu);

    const auto r = construct_basis_between(s, mu, nu, {2, 1, 1, 1}, tmu, tnu);
    EXPECT_EQ(r.alpha_mu, x());
    EXPECT_EQ(r.alpha_nu, HomogPoly::one());
    EXPECT_EQ(r.first, x() * tmu);
    EXPECT_EQ(r.second, tnu);
    EXPECT_EQ(r.first.degree() + r.second.degree(), 5);
    EXPECT_TRUE(r.saito.accepted);

    const auto at_mu = construct_basis_between(s, mu, nu, mu, tmu, tnu);
    EXPECT_EQ(at_mu.alpha_mu, HomogPoly::one());
    EXPECT_TRUE(at_mu.saito.accepted);

    const Multiplicity join{2, 2, 2, 1};
    const auto at_join = construct_basis_between(s, mu, nu, join, tmu, tnu);
    EXPECT_TRUE(at_join.saito.accepted);

    // Degree identity over the whole interval.
    auto [lo, hi] = meet_join(mu, nu);
    for (std::size_t i = 0; i < Box(std::vector<int>(hi.entries().begin(), hi.entries().end())).point_count(); ++i) {
        const Multiplicity k = Box(std::vector<int>(hi.entries().begin(), hi.entries().end())).point_at(i);
        if (!leq(lo, k))
            continue;
        const auto b = construct_basis_between(s, mu, nu, k, tmu, tnu);
        EXPECT_EQ(b.alpha_mu.degree() + b.alpha_nu.degree(), distance(k, lo));
        EXPECT_TRUE(b.saito.accepted);
    }

    EXPECT_EQ(code_of([&] { construct_basis_between(s, mu, nu, {3, 1, 1, 1}, tmu, tnu); }), Errc::PreconditionViolated);
    EXPECT_EQ(code_of([&] { construct_basis_between(s, mu, {2, 1, 1, 1}, mu, tmu, s.theta({2, 1, 1, 1})); }),
              Errc::PreconditionViolated);
    EXPECT_EQ(code_of([&] { construct_basis_between(s, mu, nu, mu, tmu, tnu, true); }), Errc::PreconditionViolated);
}

TEST(Theorems, BasisFor)
{
    const auto& d = b2data();
    const auto cs = center_index(d.scan_result, d.index);
    const auto sp = support_index(d.scan_result, d.index);

    const auto r = basis_for(d.solver, {2, 2, 1, 1}, cs, &sp);
    EXPECT_TRUE(r.saito.accepted);
    EXPECT_EQ(r.first.degree() + r.second.degree(), 6);

    const Multiplicity c{1, 1, 1, 1};
    const auto rc = basis_for(d.solver, c, cs, &sp);
    EXPECT_TRUE(rc.saito.accepted);
    std::vector<int> degs{rc.first.degree(), rc.second.degree()};
    std::sort(degs.begin(), degs.end());
    EXPECT_EQ(degs, (std::vector{1, 3}));

    const auto r0 = basis_for(d.solver, {2, 2, 2, 2}, cs, &sp);
    EXPECT_TRUE(r0.saito.accepted);
    EXPECT_EQ(std::pair(r0.first.degree(), r0.second.degree()), std::pair(4, 4));

    for (const auto& k : balanced_window(d.window))
        EXPECT_TRUE(basis_for(d.solver, k, cs, &sp).saito.accepted) << k.to_string();

    EXPECT_EQ(code_of([&] { basis_for(d.solver, {2, 2, 1, 1}, {}); }), Errc::NoCenterPairFound);
}

TEST(Theorems, SaitoBases)
{
    const auto& d = b2data();
    EXPECT_EQ(check_saito_bases(d.solver, d.scan_result, d.index, Box::cube(4, 2), 4).status, Status::Pass);
}

TEST(Theorems, CriterionSupport)
{
    const auto& d = b2data();
    const auto win = balanced_window(d.window);
    const auto truth = certify_support(d.solver, truth_support(d), win, &d.scan_result);
    EXPECT_EQ(truth.verdict.status, Status::Pass);
    EXPECT_EQ(truth.agrees_with_scan, std::optional(true));

    CandidateMap missing(d.solver.arrangement());
    const auto truth_map = truth_support(d);
    for (const auto& [m, t] : truth_map.entries())
        if (m != Multiplicity{2, 2, 2, 1})
            missing.add(m, t);
    try {
        const auto r = certify_support(d.solver, missing, win, &d.scan_result);
        EXPECT_NE(r.verdict.status, Status::Pass);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::HypothesisViolated);
    }

    CandidateMap extra = truth_support(d);
    EXPECT_FALSE(extra.add({2, 2, 2, 2}, x() * kEuler));
    EXPECT_EQ(extra.rejected(), std::vector{Multiplicity({2, 2, 2, 2})});
    EXPECT_EQ(certify_support(d.solver, extra, win, &d.scan_result).verdict.status, Status::Skipped);
}

TEST(Theorems, CriterionCenters)
{
    const auto& d = b2data();
    const auto win = balanced_window(d.window);
    const auto truth = certify_centers(d.solver, truth_centers(d), win, &d.scan_result, &d.index);
    EXPECT_EQ(truth.verdict.status, Status::Pass);
    EXPECT_EQ(truth.agrees_with_scan, std::optional(true));

    CandidateMap wrong(d.solver.arrangement());
    const auto truth_map = truth_centers(d);
    for (const auto& [m, t] : truth_map.entries())
        wrong.add(m, m == Multiplicity{1, 1, 1, 1} ? x() * kEuler : t);
    EXPECT_EQ(code_of([&] { certify_centers(d.solver, wrong, win, &d.scan_result, &d.index); }),
              Errc::HypothesisViolated);

    CandidateMap overlap(d.solver.arrangement());
    overlap.add({1, 1, 1, 1}, kEuler);
    overlap.add({2, 1, 1, 1}, x() * kEuler);
    EXPECT_EQ(code_of([&] { certify_centers(d.solver, overlap, win); }), Errc::HypothesisViolated);
}

TEST(Theorems, ReconstructComponents)
{
    const auto& d = b2data();
    const auto rec = reconstruct_components(d.solver, balanced_window(d.window), d.scan_result, d.index);
    EXPECT_EQ(rec.verdict.status, Status::Pass);
    auto class_of = [&](const Multiplicity& m) {
        for (std::size_t i = 0; i < rec.classes.size(); ++i)
            if (std::find(rec.classes[i].begin(), rec.classes[i].end(), m) != rec.classes[i].end())
                return static_cast<int>(i);
        return -1;
    };
    EXPECT_NE(class_of({2, 1, 1, 1}), -1);
    EXPECT_EQ(class_of({2, 1, 1, 1}), class_of({1, 2, 1, 1}));
    EXPECT_NE(class_of({2, 1, 1, 1}), class_of({2, 2, 2, 1}));
}

TEST(Theorems, CheckCriteria)
{
    const auto& d = b2data();
    for (const auto& v : check_criteria(d.solver, d.scan_result, d.index, d.window))
        EXPECT_EQ(v.status, Status::Pass) << v.check << ": " << v.reason;
}

TEST(Theorems, Aggregate)
{
    Verdict pass{"a", "", Status::Pass, "", {}, 1};
    Verdict skip = Verdict::skipped("b", "", "nothing");
    Verdict fail{"c", "", Status::Pass, "", {}, 1};
    fail.fail("w");
    EXPECT_EQ(fail.status, Status::Fail);
    EXPECT_EQ(aggregate({pass, skip}), Status::Pass);
    EXPECT_EQ(aggregate({skip}), Status::Skipped);
    EXPECT_EQ(aggregate({pass, fail, skip}), Status::Fail);
}

TEST(Theorems, InducedComponents)
{
    const std::vector<Multiplicity> pts{{0, 0}, {0, 1}, {2, 2}, {1, 1}};
    auto comps = induced_components(pts);
    EXPECT_EQ(comps.size(), 2u);
    EXPECT_EQ(balanced_window(Box({1, 1})).size(), 2u); // (0,0), (1,1)
}
