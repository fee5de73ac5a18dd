#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chainlift/error.hpp"
#include "chainlift/space.hpp"

using namespace chainlift;

namespace {

std::size_t degree(const ScaleGraph& g, PointId p)
{
    return g.neighbors(p).size();
}

}   // namespace

TEST_CASE("csv of collinear points gives arithmetic distances")
{
    std::istringstream in("# x\n0\n1\n2\n");
    LoadedCloud cloud = loadPointCloud(in, CloudFormat::Csv);
    REQUIRE(cloud.space.size() == 3);
    CHECK(cloud.space.distance(0, 2) == 2.0);
    CHECK(cloud.space.distance(0, 1) == 1.0);
    CHECK(cloud.space.kind() == MetricKind::EuclideanFromCoordinates);
    CHECK(cloud.basepoint == 0);
}

TEST_CASE("empty input is rejected")
{
    std::istringstream in("");
    CHECK_THROWS_WITH(loadPointCloud(in, CloudFormat::Csv), Catch::Matchers::ContainsSubstring("no points"));
    std::istringstream only_header("# header\n\n");
    CHECK_THROWS_AS(loadPointCloud(only_header, CloudFormat::Csv), ParseError);
}

TEST_CASE("malformed rows report their line")
{
    std::istringstream in("0,0\n1,x\n");
    try
    {
        loadPointCloud(in, CloudFormat::Csv);
        FAIL("expected a parse error");
    }
    catch (const ParseError& e)
    {
        CHECK(e.line() == 2);
    }
    std::istringstream ragged("0,0\n1\n");
    CHECK_THROWS_AS(loadPointCloud(ragged, CloudFormat::Csv), ParseError);
}

TEST_CASE("duplicate points are rejected with their indices")
{
    std::istringstream in("0,0\n1,0\n0,0\n");
    CHECK_THROWS_WITH(loadPointCloud(in, CloudFormat::Csv),
                      Catch::Matchers::ContainsSubstring("0") && Catch::Matchers::ContainsSubstring("2"));
}

TEST_CASE("circle sample survives a csv round trip bit for bit")
{
    FiniteMetricSpace circle = sampleCircle(12);
    std::ostringstream out;
    writePointCloudCsv(out, circle);
    std::istringstream in(out.str());
    LoadedCloud back = loadPointCloud(in, CloudFormat::Csv);
    REQUIRE(back.space.size() == 12);
    for (PointId p = 0; p < 12; ++p)
    {
        CHECK(back.space.coordinates()[p] == circle.coordinates()[p]);
        for (PointId q = 0; q < 12; ++q)
            CHECK(back.space.distance(p, q) == circle.distance(p, q));
    }
}

TEST_CASE("json input with distance override and basepoint")
{
    std::istringstream in(R"({"points": [[0], [1], [5]], "dist": [[0,1,2],[1,0,1],[2,1,0]], "basepoint": 2})");
    LoadedCloud cloud = loadPointCloud(in, CloudFormat::Json);
    CHECK(cloud.basepoint == 2);
    CHECK(cloud.space.distance(0, 2) == 2.0);
    CHECK(cloud.space.kind() == MetricKind::ExplicitTable);

    std::istringstream bad_base(R"({"points": [[0], [1]], "basepoint": 7})");
    CHECK_THROWS(loadPointCloud(bad_base, CloudFormat::Json));
    std::istringstream asym(R"({"points": [[0], [1]], "dist": [[0,1],[2,0]]})");
    CHECK_THROWS(loadPointCloud(asym, CloudFormat::Json));
}

TEST_CASE("circle chords follow the closed form")
{
    CHECK_THAT(sampleCircle(12).distance(0, 1), Catch::Matchers::WithinAbs(2 * std::sin(std::numbers::pi / 12), 1e-15));
    CHECK_THAT(sampleCircle(12).distance(0, 1), Catch::Matchers::WithinAbs(0.517638, 1e-6));
    CHECK_THAT(sampleCircle(4).distance(0, 1), Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-15));
    CHECK_THAT(sampleCircle(120).distance(0, 1), Catch::Matchers::WithinAbs(0.052354, 1e-6));
    CHECK_THROWS_AS(sampleCircle(2), DomainError);
}

TEST_CASE("wedge spaces carry the hop metric")
{
    std::vector<std::size_t> fig8{6, 6};
    FiniteMetricSpace w = wedgeGraphSpace(fig8);
    CHECK(w.size() == 11);
    CHECK(w.kind() == MetricKind::GraphHop);
    CHECK(buildScaleGraph(w, 1.5).edges().size() == 12);

    std::vector<std::size_t> tri{3};
    FiniteMetricSpace t = wedgeGraphSpace(tri);
    for (PointId p = 0; p < 3; ++p)
    {
        for (PointId q = 0; q < 3; ++q)
            CHECK(t.distance(p, q) == (p == q ? 0.0 : 1.0));
    }

    std::vector<std::size_t> four_five{4, 5};
    CHECK(wedgeGraphSpace(four_five).distance(0, 2) == 2.0);
    CHECK_THROWS_AS(wedgeGraphSpace(std::vector<std::size_t>{}), DomainError);
    CHECK_THROWS_AS(wedgeGraphSpace(std::vector<std::size_t>{2}), DomainError);
}

TEST_CASE("scale graphs of the 12-point circle")
{
    ScaleGraph g06 = buildScaleGraph(sampleCircle(12), 0.6);
    CHECK(g06.edges().size() == 12);
    for (PointId p = 0; p < 12; ++p)
        CHECK(g06.hasEdge(p, (p + 1) % 12));
    CHECK(isChainConnected(g06));

    ScaleGraph g11 = buildScaleGraph(sampleCircle(12), 1.1);
    CHECK(g11.edges().size() == 24);
    CHECK(g11.hasEdge(0, 2));
    CHECK_FALSE(g11.hasEdge(0, 3));

    ScaleGraph g21 = buildScaleGraph(sampleCircle(12), 2.1);
    CHECK(g21.edges().size() == 66);

    ScaleGraph g04 = buildScaleGraph(sampleCircle(12), 0.4);
    CHECK(g04.edges().empty());
    CHECK_FALSE(isChainConnected(g04));

    CHECK(isChainConnected(buildScaleGraph(wedgeGraphSpace(std::vector<std::size_t>{6, 6}), 1.5)));
}

TEST_CASE("ties at exactly epsilon are excluded")
{
    std::istringstream in("0\n0.5\n1.5\n");
    auto space = std::make_shared<const FiniteMetricSpace>(loadPointCloud(in, CloudFormat::Csv).space);
    ScaleGraph g = buildScaleGraph(space, 1.0);
    CHECK_FALSE(g.hasEdge(1, 2));
    CHECK(g.hasEdge(0, 1));
    CHECK(buildScaleGraph(space, std::nextafter(1.0, 2.0)).hasEdge(1, 2));

    // 3-4-5 triangle: the hypotenuse is exactly 5.
    std::istringstream tri("0,0\n3,4\n");
    auto t = std::make_shared<const FiniteMetricSpace>(loadPointCloud(tri, CloudFormat::Csv).space);
    CHECK_FALSE(t->within(0, 1, 5.0));
    CHECK(t->within(0, 1, std::nextafter(5.0, 6.0)));
}

TEST_CASE("edges match the strict threshold on a full rescan; monotone in epsilon")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::vector<std::vector<double>> pts(15, std::vector<double>(2));
        for (auto& p : pts)
        {
            p[0] = coord(rng);
            p[1] = coord(rng);
        }
        auto space = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::fromCoordinates(pts));
        CHECK(space->satisfiesMetricAxioms());
        const double e1 = 0.2 + 0.05 * trial, e2 = e1 + 0.3;
        ScaleGraph a = buildScaleGraph(space, e1), b = buildScaleGraph(space, e2);
        for (PointId p = 0; p < 15; ++p)
        {
            CHECK_FALSE(a.hasEdge(p, p));
            for (PointId q = 0; q < 15; ++q)
            {
                CHECK(a.hasEdge(p, q) == a.hasEdge(q, p));
                if (p != q)
                    CHECK(a.hasEdge(p, q) == (space->distance(p, q) < e1));
                if (a.hasEdge(p, q))
                    CHECK(b.hasEdge(p, q));
            }
        }
        CHECK(std::is_sorted(a.edges().begin(), a.edges().end()));
    }
}

TEST_CASE("circle scale graph is exactly a cycle between the first two chords")
{
    for (std::size_t n : {5u, 12u, 24u, 120u})
    {
        const double c1 = 2 * std::sin(std::numbers::pi / n), c2 = 2 * std::sin(2 * std::numbers::pi / n);
        for (double eps : {circleCycleScale(n), 0.999 * c2, 0.5 * (c1 + c2)})
        {
            ScaleGraph g = buildScaleGraph(sampleCircle(n), eps);
            CHECK(g.edges().size() == n);
            for (PointId p = 0; p < n; ++p)
                CHECK(degree(g, p) == 2);
        }
    }
}

TEST_CASE("entourage powers are k-step reachability")
{
    ScaleGraph g = buildScaleGraph(sampleCircle(12), 0.6);
    auto p3 = entouragePower(g, 3);
    for (PointId a = 0; a < 12; ++a)
    {
        for (PointId b = 0; b < 12; ++b)
        {
            const std::size_t d = std::min((a + 12 - b) % 12, (b + 12 - a) % 12);
            CHECK((p3[a * 12 + b] != 0) == (d <= 3));
        }
    }
}

TEST_CASE("explicit tables are validated")
{
    CHECK_THROWS_AS(FiniteMetricSpace::fromTable({{0, 1}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(FiniteMetricSpace::fromTable({{0, 0}, {0, 0}}), DomainError);
    CHECK_THROWS_AS(FiniteMetricSpace::fromTable({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), DomainError);
    CHECK_NOTHROW(FiniteMetricSpace::fromTable({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
}
