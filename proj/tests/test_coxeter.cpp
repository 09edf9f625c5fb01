#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mlat;

namespace {

Errc code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Usage;
}

Multiplicity random_point(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> e(0, 5);
    std::vector<int> v(n);
    for (auto& k : v)
        k = e(rng);
    return Multiplicity(v);
}

} // namespace

TEST(Coxeter, Arrangements)
{
    const auto b2 = fx::b2();
    ASSERT_EQ(b2.size(), 4u);
    EXPECT_EQ(b2.field(), FieldSpec::rational());
    EXPECT_EQ(b2[0], LinearForm(1, 0));
    EXPECT_EQ(b2[1], LinearForm(0, 1));
    EXPECT_EQ(b2[2], LinearForm(1, 1));
    EXPECT_EQ(b2[3], LinearForm(1, -1));

    const auto g2 = fx::g2();
    ASSERT_EQ(g2.size(), 6u);
    EXPECT_EQ(g2.field(), FieldSpec::quadratic(3));
    const Scalar r = Scalar::sqrt(3);
    EXPECT_EQ(g2[1], LinearForm(1, r));
    EXPECT_EQ(g2[2], LinearForm(1, -r));
    EXPECT_EQ(g2[4], LinearForm(r, 1));
    EXPECT_EQ(g2[5], LinearForm(r, -1));

    const auto a2 = fx::a2();
    ASSERT_EQ(a2.size(), 3u);
    EXPECT_EQ(a2[2], LinearForm(1, 1));

    EXPECT_EQ(code_of([] { coxeter_arrangement({CoxeterType::G2, FieldSpec::rational()}); }), Errc::FieldMismatch);
    EXPECT_EQ(parse_coxeter_type("b2"), CoxeterType::B2);
    EXPECT_EQ(code_of([] { parse_coxeter_type("H3"); }), Errc::ParseError);
}

TEST(Coxeter, Act)
{
    const auto b2 = fx::b2();
    const GroupElement swap(b2, {{{0, 1}, {1, 0}}}, "swap");
    EXPECT_EQ(act(swap, {2, 1, 1, 1}), (Multiplicity{1, 2, 1, 1}));
    const GroupElement id(b2, {{{1, 0}, {0, 1}}}, "id");
    EXPECT_EQ(act(id, {3, 1, 4, 1}), (Multiplicity{3, 1, 4, 1}));
    EXPECT_EQ(code_of([&] { act(swap, {1, 1}); }), Errc::LengthMismatch);
    for (const auto& type : {CoxeterType::A1A1, CoxeterType::A2, CoxeterType::B2, CoxeterType::G2}) {
        const auto arr = coxeter_arrangement(CoxeterSpec::standard(type));
        for (const auto& g : weyl_generators(type, arr)) {
            const Multiplicity mu = Multiplicity::constant(arr.size(), 0).shifted(0, 3).shifted(arr.size() - 1, 1);
            EXPECT_EQ(act(g, act(g, mu)), mu) << to_string(type) << " " << g.name();
        }
    }
}

TEST(Coxeter, NotArrangementPreserving)
{
    const auto b2 = fx::b2();
    EXPECT_EQ(code_of([&] { GroupElement(b2, {{{1, 1}, {0, 1}}}); }), Errc::NotArrangementPreserving);
    EXPECT_EQ(code_of([&] { GroupElement(b2, {{{1, 1}, {1, 1}}}); }), Errc::NotArrangementPreserving);
    EXPECT_EQ(code_of([&] { GroupElement(b2, {{{2, 0}, {0, 1}}}); }), Errc::NotArrangementPreserving);
}

TEST(CoxeterProperty, ActIsLatticeAutomorphism)
{
    std::mt19937_64 rng(41);
    for (const auto& type : {CoxeterType::B2, CoxeterType::G2, CoxeterType::A2}) {
        const auto arr = coxeter_arrangement(CoxeterSpec::standard(type));
        for (const auto& g : weyl_generators(type, arr)) {
            for (int i = 0; i < 100; ++i) {
                const auto a = random_point(rng, arr.size()), b = random_point(rng, arr.size());
                EXPECT_EQ(act(g, a).total(), a.total());
                EXPECT_EQ(distance(act(g, a), act(g, b)), distance(a, b));
                auto [lo, hi] = meet_join(a, b);
                EXPECT_EQ(meet_join(act(g, a), act(g, b)), std::pair(act(g, lo), act(g, hi)));
            }
        }
    }
}

TEST(Coxeter, DeltaInvariance)
{
    Solver b(fx::b2());
    const auto gb = weyl_generators(CoxeterType::B2, b.arrangement());
    std::vector<Multiplicity> win;
    for (std::size_t i = 0; i < Box::cube(4, 2).point_count(); ++i)
        win.push_back(Box::cube(4, 2).point_at(i));
    EXPECT_EQ(check_delta_invariance(b, gb, win, 4).status, Status::Pass);

    Solver g(fx::g2());
    const auto gg = weyl_generators(CoxeterType::G2, g.arrangement());
    std::vector<Multiplicity> gwin;
    for (std::size_t i = 0; i < Box::cube(6, 1).point_count(); ++i)
        gwin.push_back(Box::cube(6, 1).point_at(i));
    EXPECT_EQ(check_delta_invariance(g, gg, gwin, 4).status, Status::Pass);
}

TEST(Coxeter, SymmetricPeak)
{
    Solver b(fx::b2());
    const auto gb = weyl_generators(CoxeterType::B2, b.arrangement());
    const auto vb = symmetric_peak_certificate(b, gb, Multiplicity::constant(4, 1), Multiplicity::constant(4, 2),
                                               Multiplicity::zero(4), {false, 4});
    EXPECT_EQ(vb.status, Status::Pass);

    Solver g(fx::g2());
    const auto gg = weyl_generators(CoxeterType::G2, g.arrangement());
    const auto vg = symmetric_peak_certificate(g, gg, Multiplicity::constant(6, 1), Multiplicity::constant(6, 2),
                                               Multiplicity::zero(6), {false, 4});
    EXPECT_EQ(vg.status, Status::Pass);

    EXPECT_EQ(code_of([&] {
                  symmetric_peak_certificate(b, gb, Multiplicity::constant(4, 2), Multiplicity::constant(4, 3),
                                             Multiplicity::constant(4, 1));
              }),
              Errc::HypothesisViolated);
    // The printed lower inequality rejects the constant B2 point.
    EXPECT_EQ(code_of([&] {
                  symmetric_peak_certificate(b, gb, Multiplicity::constant(4, 1), Multiplicity::constant(4, 2),
                                             Multiplicity::zero(4), {true, 1});
              }),
              Errc::HypothesisViolated);
    EXPECT_EQ(code_of([&] {
                  symmetric_peak_certificate(b, gb, {2, 1, 1, 1}, Multiplicity::constant(4, 2), Multiplicity::zero(4));
              }),
              Errc::HypothesisViolated);
}

TEST(Coxeter, NearConstant)
{
    Solver b(fx::b2());
    const auto r = near_constant_exponents(b, CoxeterType::B2, 0, {1, 0, 0, 0});
    EXPECT_EQ(r.predicted, std::pair(2, 3));
    EXPECT_EQ(r.printed, std::pair(2, 3));
    EXPECT_TRUE(r.printed_matches);
    EXPECT_EQ(r.computed, std::pair(2, 3));
    EXPECT_EQ(r.verdict.status, Status::Pass);

    Solver g(fx::g2());
    const auto rg = near_constant_exponents(g, CoxeterType::G2, 1, std::vector<int>(6, 0));
    EXPECT_EQ(rg.computed, std::pair(7, 11));
    EXPECT_EQ(rg.predicted, std::pair(7, 11));

    const auto mixed = near_constant_exponents(b, CoxeterType::B2, 1, {1, -1, 0, 0});
    EXPECT_EQ(mixed.nu.total(), 12);
    EXPECT_EQ(mixed.predicted, std::pair(6, 6));
    EXPECT_EQ(mixed.computed, std::pair(6, 6));
    EXPECT_EQ(mixed.printed, std::pair(7, 7));
    EXPECT_FALSE(mixed.printed_matches);
    EXPECT_EQ(mixed.verdict.status, Status::Pass);

    EXPECT_EQ(code_of([&] { near_constant_exponents(b, CoxeterType::B2, 0, {2, 2, 0, 0}); }), Errc::OffsetTooLarge);
    EXPECT_EQ(code_of([&] { near_constant_exponents(b, CoxeterType::B2, 0, {-2, 0, 0, 0}); }),
              Errc::PreconditionViolated);
    EXPECT_EQ(code_of([] { constant_delta(CoxeterType::A2); }), Errc::PreconditionViolated);
    EXPECT_EQ(constant_delta(CoxeterType::B2), 2);
    EXPECT_EQ(constant_delta(CoxeterType::G2), 4);
}

TEST(CoxeterProperty, PrintedEqualsDistanceFormulaForNonnegativeOffsets)
{
    for (const auto& [type, n, c] : {std::tuple{CoxeterType::B2, 4, 2}, std::tuple{CoxeterType::G2, 6, 4}}) {
        for (int k = 0; k < 6; ++k) {
            for (const auto& off : offsets_up_to(static_cast<std::size_t>(n), n - 1, false)) {
                int s = 0;
                for (int v : off)
                    s += v;
                const int size = n * (2 * k + 1) + s;
                const int dp = std::abs(c - s);
                std::pair<int, int> predicted{(size - dp) / 2, (size + dp) / 2};
                std::pair<int, int> printed{n * k + 1 + s, n * k + n - 1};
                if (printed.first > printed.second)
                    std::swap(printed.first, printed.second);
                EXPECT_EQ(predicted, printed) << to_string(type) << " k=" << k << " s=" << s;
            }
        }
    }
    EXPECT_EQ(offsets_up_to(4, 3, false).size(), 35u);
    EXPECT_EQ(offsets_up_to(6, 5, false).size(), 462u);
}
