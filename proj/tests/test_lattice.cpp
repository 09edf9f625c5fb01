#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace mlat;

namespace {

Multiplicity m(std::vector<int> v) { return Multiplicity(std::move(v)); }

Multiplicity random_point(std::mt19937_64& rng, std::size_t n, int hi)
{
    std::uniform_int_distribution<int> e(0, hi);
    std::vector<int> v(n);
    for (auto& x : v)
        x = e(rng);
    return Multiplicity(v);
}

} // namespace

TEST(Lattice, Distance)
{
    EXPECT_EQ(distance(m({1, 1, 1, 1}), m({2, 2, 2, 1})), 3);
    EXPECT_EQ(distance(m({3, 0, 2}), m({3, 0, 2})), 0);
    EXPECT_EQ(distance(m({0, 5}), m({5, 0})), 10);
    try {
        distance(m({1}), m({1, 2}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::LengthMismatch);
    }
}

TEST(Lattice, MeetJoin)
{
    EXPECT_EQ(meet_join(m({1, 1, 1, 1}), m({2, 2, 2, 1})), std::pair(m({1, 1, 1, 1}), m({2, 2, 2, 1})));
    EXPECT_EQ(meet_join(m({2, 0}), m({0, 2})), std::pair(m({0, 0}), m({2, 2})));
    EXPECT_EQ(meet_join(m({1, 2, 3}), m({3, 2, 1})), std::pair(m({1, 2, 1}), m({3, 2, 3})));
    EXPECT_THROW(meet_join(m({1}), m({1, 2})), Error);
}

TEST(Lattice, MultiplicityValidation)
{
    EXPECT_THROW(m({1, -1}), Error);
    EXPECT_EQ(Multiplicity::parse("1,2,0"), m({1, 2, 0}));
    EXPECT_THROW(Multiplicity::parse("1,,2"), Error);
    EXPECT_EQ(m({1, 2, 0}).to_string(), "1,2,0");
    EXPECT_EQ(m({1, 2, 3}).total(), 6);
}

TEST(Lattice, CoveringNeighbors)
{
    auto n = covering_neighbors(m({0, 0}), Box({1, 1}));
    ASSERT_EQ(n.size(), 2u);
    std::vector<Multiplicity> pts;
    for (const auto& nb : n) {
        EXPECT_EQ(nb.direction, Direction::Up);
        pts.push_back(nb.point);
    }
    std::sort(pts.begin(), pts.end());
    EXPECT_EQ(pts, (std::vector{m({0, 1}), m({1, 0})}));

    EXPECT_EQ(covering_neighbors(m({2, 2, 2, 2}), Box::cube(4, 5)).size(), 8u);

    auto corner = covering_neighbors(m({3, 3, 3}), Box::cube(3, 3));
    EXPECT_EQ(corner.size(), 3u);
    for (const auto& nb : corner)
        EXPECT_EQ(nb.direction, Direction::Down);
}

TEST(Lattice, Classify)
{
    EXPECT_EQ(classify_point(m({4, 1, 1, 1})).cone_line, std::optional<std::size_t>(0));
    EXPECT_TRUE(classify_point(m({3, 1, 1, 1})).balanced());
    for (int k = 0; k < 5; ++k)
        EXPECT_TRUE(classify_point(Multiplicity::constant(6, 2 * k + 1)).balanced());
    EXPECT_TRUE(classify_point(Multiplicity::zero(4)).balanced());
    EXPECT_EQ(classify_point(m({0, 1})).cone_line, std::optional<std::size_t>(1));
}

TEST(Lattice, Ball)
{
    EXPECT_TRUE(ball(m({1, 1}), 0).empty());
    EXPECT_EQ(ball(m({1, 1}), 1), std::vector{m({1, 1})});
    auto b = ball(m({1, 1, 1, 1}), 2);
    EXPECT_EQ(b.size(), 9u);
    for (const auto& p : b)
        EXPECT_LE(distance(p, m({1, 1, 1, 1})), 1);
    // Truncation at 0 and at the box.
    EXPECT_EQ(ball(m({0, 0}), 2).size(), 3u);
    EXPECT_EQ(ball(m({1, 1}), 2, Box({1, 1})).size(), 3u);
}

TEST(Lattice, Box)
{
    Box box({2, 1, 3});
    EXPECT_EQ(box.point_count(), 24u);
    for (std::size_t i = 0; i < box.point_count(); ++i)
        EXPECT_EQ(box.index_of(box.point_at(i)), i);
    EXPECT_EQ(box.point_at(1), m({0, 0, 1}));
    EXPECT_FALSE(box.contains(m({3, 0, 0})));
    EXPECT_THROW(Box({-1}), Error);
}

TEST(Lattice, SaturatedChain)
{
    EXPECT_EQ(saturated_chain(m({1, 1}), m({2, 2})).points(), (std::vector{m({1, 1}), m({2, 1}), m({2, 2})}));
    EXPECT_EQ(saturated_chain(m({1, 3}), m({1, 3})).points(), std::vector{m({1, 3})});
    EXPECT_EQ(saturated_chain(m({0, 0, 0}), m({1, 0, 1})).points(),
              (std::vector{m({0, 0, 0}), m({1, 0, 0}), m({1, 0, 1})}));
    EXPECT_EQ(saturated_chain_reversed(m({0, 0, 0}), m({1, 0, 1})).points(),
              (std::vector{m({0, 0, 0}), m({0, 0, 1}), m({1, 0, 1})}));
    try {
        saturated_chain(m({1, 0}), m({0, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotComparable);
    }
    EXPECT_THROW(Chain({m({0, 0}), m({1, 1})}), Error);
}

TEST(Lattice, Downalpha)
{
    const auto arr = fx::b2();
    const auto c1 = saturated_chain(m({1, 1, 1, 1}), m({2, 1, 1, 1}));
    std::vector<int> d1{2, 1};
    EXPECT_EQ(downalpha(arr, c1, d1), fx::x());
    const auto c2 = saturated_chain(Multiplicity::zero(4), m({1, 0, 0, 0}));
    std::vector<int> d2{0, 1};
    EXPECT_EQ(downalpha(arr, c2, d2), HomogPoly::one());
    const auto c3 = saturated_chain(m({1, 1, 1, 1}), m({2, 2, 1, 1}));
    std::vector<int> d3{2, 1, 0};
    EXPECT_EQ(downalpha(arr, c3, d3), fx::x() * fx::y());
    std::vector<int> wrong{2, 1};
    try {
        downalpha(arr, c3, wrong);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::LengthMismatch);
    }
}

TEST(LatticeProperty, MetricAndLatticeIdentities)
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + i % 6;
        auto a = random_point(rng, n, 6), b = random_point(rng, n, 6), c = random_point(rng, n, 6);
        EXPECT_EQ(distance(a, b), distance(b, a));
        EXPECT_LE(distance(a, c), distance(a, b) + distance(b, c));
        auto [lo, hi] = meet_join(a, b);
        EXPECT_EQ(lo.total() + hi.total(), a.total() + b.total());
        EXPECT_TRUE(leq(lo, a) && leq(lo, b) && leq(a, hi) && leq(b, hi));
        int cones = 0;
        for (std::size_t h = 0; h < n; ++h)
            cones += 2 * a[h] > a.total();
        EXPECT_LE(cones, 1);
        EXPECT_EQ(cones == 1, !classify_point(a).balanced());
        if (leq(lo, hi)) {
            auto ch = saturated_chain(lo, hi);
            EXPECT_EQ(static_cast<int>(ch.size()) - 1, distance(lo, hi));
            std::vector<int> deltas;
            std::uniform_int_distribution<int> coin(0, 1);
            int d = 10, descents = 0;
            deltas.push_back(d);
            for (std::size_t k = 1; k < ch.size(); ++k) {
                const bool down = coin(rng);
                d += down ? -1 : 1;
                descents += down;
                deltas.push_back(d);
            }
            const auto arr = Arrangement(FieldSpec::rational(), [&] {
                std::vector<LinearForm> f;
                for (std::size_t h = 0; h < n; ++h)
                    f.emplace_back(Scalar(1), Scalar(static_cast<long>(h)));
                return f;
            }());
            const int ascents = static_cast<int>(ch.size()) - 1 - descents;
            EXPECT_EQ(downalpha(arr, ch, deltas).degree() + ascents, static_cast<int>(ch.size()) - 1);
        }
    }
}
