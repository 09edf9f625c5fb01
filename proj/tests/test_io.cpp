#include "fixtures.hpp"
#include "mlat/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace mlat;
namespace fs = std::filesystem;

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

fs::path fresh_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("mlat-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST(Io, Fixtures)
{
    const auto b2 = load_arrangement(fx::data("b2.json"));
    EXPECT_EQ(b2.size(), 4u);
    EXPECT_EQ(b2.field(), FieldSpec::rational());
    EXPECT_EQ(b2.hash(), fx::b2().hash());

    const auto g2 = load_arrangement(fx::data("g2.json"));
    EXPECT_EQ(g2.size(), 6u);
    EXPECT_EQ(g2.field(), FieldSpec::quadratic(3));
    EXPECT_EQ(g2.hash(), fx::g2().hash());

    EXPECT_EQ(load_arrangement(fx::data("bool.json")).hash(), fx::boolean().hash());
    EXPECT_EQ(load_arrangement(fx::data("a2.json")).hash(), fx::a2().hash());
}

TEST(Io, ParseErrors)
{
    EXPECT_EQ(code_of([] { parse_arrangement(R"({"version":1,"field":{"type":"rational"},"forms":[["1","0"],["2","0"]]})"); }),
              Errc::ProportionalForms);
    EXPECT_EQ(code_of([] { parse_arrangement("{"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { parse_arrangement(R"({"version":1,"field":{"type":"rational"}})"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { parse_arrangement(R"({"version":1,"field":{"type":"rational"},"forms":[["1/0","1"]]})"); }),
              Errc::ZeroDenominator);
    EXPECT_EQ(code_of([] {
                  parse_arrangement(R"({"version":1,"field":{"type":"rational"},"forms":[["1",{"a":"0","b":"1"}]]})");
              }),
              Errc::FieldMismatch);
    EXPECT_EQ(code_of([] { load_arrangement("/nonexistent/file.json"); }), Errc::ParseError);
}

TEST(Io, ArrangementRoundTrip)
{
    for (const char* name : {"b2.json", "g2.json", "bool.json", "a2.json"}) {
        const auto text = dump_arrangement(load_arrangement(fx::data(name)));
        EXPECT_EQ(dump_arrangement(parse_arrangement(text)), text) << name;
    }
    const Arrangement odd(FieldSpec::quadratic(5),
                          {LinearForm(Scalar::fraction(3, 7), Scalar(mpq_class(1, 3), mpq_class(-2, 9), 5)),
                           LinearForm(0, 1)});
    const auto text = dump_arrangement(odd);
    const auto back = parse_arrangement(text);
    EXPECT_EQ(back.hash(), odd.hash());
    EXPECT_EQ(back[0], odd[0]);
    EXPECT_EQ(dump_arrangement(back), text);
}

TEST(Io, ScalarsAndDerivations)
{
    const auto q3 = FieldSpec::quadratic(3);
    const Scalar s(mpq_class(-1, 2), mpq_class(5, 3), 3);
    EXPECT_EQ(scalar_from_json(scalar_to_json(s), q3), s);
    EXPECT_EQ(scalar_to_json(Scalar::fraction(6, 4)), json("3/2"));
    EXPECT_EQ(scalar_from_json(json(7), FieldSpec::rational()), Scalar(7));

    const Derivation t(fx::x() * fx::x(), Scalar::sqrt(3) * fx::x() * fx::y());
    EXPECT_EQ(derivation_from_json(derivation_to_json(t), q3), t);
    const auto rep = derivation_report(Derivation::euler());
    EXPECT_EQ(rep["P"], "x");
    EXPECT_EQ(rep["degree"], 1);
    EXPECT_EQ(multiplicity_from_json(multiplicity_to_json({1, 2, 3})), (Multiplicity{1, 2, 3}));
}

TEST(Io, ScanRoundTrip)
{
    Solver s(fx::b2());
    const auto sc = scan(s, Box::cube(4, 2), {2, false});
    const auto text = dump_scan(sc);
    const auto back = scan_from_json(json::parse(text));
    EXPECT_EQ(back.points(), sc.points());
    EXPECT_EQ(back.box(), sc.box());
    EXPECT_EQ(dump_scan(back), text);

    auto j = json::parse(text);
    j["arrangement_hash"] = "0000000000000000";
    EXPECT_EQ(code_of([&] { scan_from_json(j); }), Errc::ParseError);

    const auto idx = components(sc);
    const auto csv = components_csv(sc, idx);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "mu,d1,d2,delta,component,classification");
    const auto dot = components_dot(sc, idx);
    EXPECT_EQ(dot.rfind("graph", 0), 0u);
}

TEST(Io, CacheHitIsIdentical)
{
    const auto dir = fresh_dir("cache");
    std::string cold_text;
    {
        JsonlCache cache(dir);
        Solver s(fx::g2(), &cache);
        cold_text = dump_scan(scan(s, Box::cube(6, 1), {2, false}));
        EXPECT_EQ(cache.size(), 64u);
    }
    {
        JsonlCache cache(dir);
        EXPECT_EQ(cache.size(), 64u);
        const auto hit = cache.find(fx::g2().hash(), Multiplicity::constant(6, 1));
        ASSERT_TRUE(hit.has_value());
        EXPECT_EQ(hit->delta, 4);
        EXPECT_EQ(hit->theta_min, Derivation::euler());
        Solver s(fx::g2(), &cache);
        EXPECT_EQ(dump_scan(scan(s, Box::cube(6, 1), {4, false})), cold_text);
        EXPECT_EQ(cache.size(), 64u);
        EXPECT_EQ(cache.summary().at(fx::g2().hash()), 64u);
        cache.clear();
        EXPECT_EQ(cache.size(), 0u);
        EXPECT_FALSE(fs::exists(cache.file()));
    }
    fs::remove_all(dir);
}

TEST(Io, VerdictReport)
{
    Verdict v{"covering-steps", "", Status::Pass, "", {}, 3};
    v.fail("(0,0)-(0,1)");
    const auto j = report_to_json({v});
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["verdicts"][0]["witnesses"][0], "(0,0)-(0,1)");
}
