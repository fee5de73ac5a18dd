#include <catch_amalgamated.hpp>

#include <set>

#include "chainlift/enumerate.hpp"
#include "chainlift/error.hpp"
#include "chainlift/tower.hpp"
#include "oracles.hpp"

using namespace chainlift;
using oracle::cycleGraph;
using oracle::presentation;
using oracle::wedgeGraph;

namespace {

GroupPtr catalogGroup(const std::string& name)
{
    GroupPtr g = SmallGroupCatalog::instance().find(name);
    REQUIRE(g);
    return g;
}

std::size_t fiberThreads(const TowerTruncation& t)
{
    std::size_t n = 0;
    for (const auto& thread : t.limit_points)
        n += thread[0] == 0;
    return n;
}

bool actsTrivially(const CoverGraph& c, Element g)
{
    for (CoverVertex x = 0; x < c.vertexCount(); ++x)
    {
        if (c.act(g, x) != x)
            return false;
    }
    return true;
}

}   // namespace

TEST_CASE("binary solenoid to depth 3")
{
    TowerTruncation t = buildSolenoidTower(12, 2, 3);
    REQUIRE(t.depth() == 3);
    for (std::size_t k = 0; k < 3; ++k)
    {
        const CoverGraph& c = t.levels[k].cover;
        CHECK(c.vertexCount() == (12u << (k + 1)));
        CHECK(c.edges().size() == c.vertexCount());
        CHECK(c.isConnected());
        CHECK(t.levels[k].degree == 2);
        CHECK(c.group().order() == (2u << k));
    }
    // theta is reduction of residues.
    for (Element g = 0; g < 8; ++g)
        CHECK(t.levels[2].theta[g] == g % 4);
    CHECK(fiberThreads(t) == 8);
    CHECK(t.limit_points.size() == 96);
    CHECK(t.limit_deck.size() == 8);
    CHECK(verifyTower(t));
    CHECK(snarkSurjectivityCheck(t));
}

TEST_CASE("ternary solenoid and the trivial tower")
{
    TowerTruncation t = buildSolenoidTower(12, 3, 2);
    CHECK(t.levels[0].cover.vertexCount() == 36);
    CHECK(t.levels[1].cover.vertexCount() == 108);
    CHECK(isIsomorphic(profiniteTruncation(t).group, *catalogGroup("Z9")));
    auto disp = levelDisplacements(t);
    REQUIRE(disp.size() == 2);
    CHECK(*disp[0].min_displacement == 12);
    CHECK(*disp[1].min_displacement == 36);

    TowerTruncation zero = buildSolenoidTower(12, 2, 0);
    CHECK(zero.depth() == 0);
    CHECK(zero.limit_points.size() == 12);
    CHECK(zero.limit_deck == std::vector<std::vector<Element>>{{}});
    CHECK(profiniteTruncation(zero).group.order() == 1);
    CHECK(snarkSurjectivityCheck(zero));
    CHECK(verifyTower(zero));
}

TEST_CASE("solenoid parameter bounds")
{
    CHECK_THROWS_AS(buildSolenoidTower(12, 4, 2), DomainError);
    CHECK_THROWS_AS(buildSolenoidTower(12, 2, 9), DomainError);
    CHECK_THROWS_AS(buildSolenoidTower(2, 2, 1), DomainError);
    CHECK_NOTHROW(buildSolenoidTower(12, 2, 8));
}

TEST_CASE("lifting through the tower gives residue threads")
{
    TowerTruncation t = buildSolenoidTower(12, 2, 3);
    TowerLift still = liftThroughTower(t, validateChain(t.base, {0}));
    CHECK(still.deck_thread == std::vector<Element>{0, 0, 0});
    CHECK(still.endpoints == std::vector<CoverVertex>{0, 0, 0, 0});

    for (std::size_t m = 0; m < 20; ++m)
    {
        TowerLift lift = liftThroughTower(t, validateChain(t.base, oracle::windingPoints(12, m)));
        CHECK(lift.deck_thread == std::vector<Element>{Element(m % 2), Element(m % 4), Element(m % 8)});
    }
    TowerLift dies = liftThroughTower(t, validateChain(t.base, oracle::windingPoints(12, 8)));
    CHECK(dies.deck_thread == std::vector<Element>{0, 0, 0});

    CHECK_THROWS_AS(liftThroughTower(t, validateChain(t.base, {3, 4})), DomainError);
}

TEST_CASE("profinite truncations")
{
    CHECK(isIsomorphic(profiniteTruncation(buildSolenoidTower(12, 2, 3)).group, *catalogGroup("Z8")));
    ProfiniteTruncation p4 = profiniteTruncation(buildSolenoidTower(12, 2, 4));
    CHECK(p4.threads.size() == 16);
    CHECK(p4.threads[0] == std::vector<Element>{0, 0, 0, 0});
    CHECK(isIsomorphic(p4.group, *catalogGroup("Z16")));

    auto pres = presentation(cycleGraph(12));
    TowerJoin join = towerJoin(buildCover(pres, catalogGroup("Z2"), {1}), buildCover(pres, catalogGroup("Z3"), {1}));
    TowerTruncation t = buildTower(pres, {join.cover});
    CHECK(isIsomorphic(profiniteTruncation(t).group, *catalogGroup("Z6")));
}

TEST_CASE("snark check catches a broken theta")
{
    TowerTruncation t = buildSolenoidTower(12, 2, 3);
    REQUIRE(snarkSurjectivityCheck(t));
    std::fill(t.levels[1].theta.begin(), t.levels[1].theta.end(), 0);
    CHECK_FALSE(snarkSurjectivityCheck(t));
    CHECK_FALSE(verifyTower(t));
}

TEST_CASE("cocycles, free action and thread separation")
{
    TowerTruncation t = buildSolenoidTower(12, 2, 4);
    CHECK(verifyTower(t));

    // Composite of consecutive thetas against a directly computed bonding map.
    for (std::size_t i = 0; i < t.depth(); ++i)
    {
        for (std::size_t k = i + 1; k < t.depth(); ++k)
        {
            BondingMap direct = bondingMap(t.levels[k].cover, t.levels[i].cover);
            for (Element g = 0; g < t.levels[k].cover.group().order(); ++g)
            {
                Element down = g;
                for (std::size_t j = k; j > i; --j)
                    down = t.levels[j].theta[down];
                CHECK(down == direct.theta[g]);
            }
            for (CoverVertex x = 0; x < t.levels[k].cover.vertexCount(); ++x)
            {
                CoverVertex down = x;
                for (std::size_t j = k; j > i; --j)
                    down = t.levels[j].graph_map[down];
                CHECK(down == direct.vertex_map[x]);
            }
        }
    }

    std::size_t degrees = 1;
    for (const TowerLevel& l : t.levels)
        degrees *= l.degree;
    CHECK(fiberThreads(t) == degrees);

    for (const auto& g : t.limit_deck)
    {
        bool identity = std::all_of(g.begin(), g.end(), [](Element e) { return e == 0; });
        bool trivial_everywhere = true;
        for (std::size_t k = 0; k < t.depth(); ++k)
            trivial_everywhere = trivial_everywhere && actsTrivially(t.levels[k].cover, g[k]);
        CHECK(trivial_everywhere == identity);

        // No nontrivial thread fixes a point thread.
        if (!identity)
        {
            for (const auto& v : t.limit_points)
            {
                bool fixed = true;
                for (std::size_t k = 0; k < t.depth(); ++k)
                    fixed = fixed && t.levels[k].cover.act(g[k], v[k + 1]) == v[k + 1];
                CHECK_FALSE(fixed);
            }
        }
    }
}

TEST_CASE("towers from arbitrary dominated covers")
{
    auto fig8 = presentation(wedgeGraph({6, 6}));
    CoverGraph z2 = buildCover(fig8, catalogGroup("Z2"), {1, 0});
    CoverGraph z4 = buildCover(fig8, catalogGroup("Z4"), {1, 0});
    CoverGraph d8 = buildCover(fig8, catalogGroup("D8"), {1, 4});
    CHECK_NOTHROW(buildTower(fig8, {z2, z4}));
    CHECK_THROWS_AS(buildTower(fig8, {z4, z2}), DomainError);
    TowerTruncation t = buildTower(fig8, {buildCover(fig8, catalogGroup("Z2xZ2"), {1, 2}), d8});
    CHECK(verifyTower(t));
    CHECK(snarkSurjectivityCheck(t));
}

TEST_CASE("joins of covers")
{
    auto pres = presentation(cycleGraph(12));
    CoverGraph a = buildCover(pres, catalogGroup("Z2"), {1}), b = buildCover(pres, catalogGroup("Z3"), {1});
    TowerJoin j = towerJoin(a, b);
    CHECK(j.cover.vertexCount() == 72);
    CHECK(j.cover.edges().size() == 72);
    CHECK(isIsomorphic(j.cover.group(), *catalogGroup("Z6")));
    CHECK(verifyBondingMap(j.cover, a, j.onto_first));
    CHECK(verifyBondingMap(j.cover, b, j.onto_second));

    TowerJoin self = towerJoin(a, a);
    CHECK(equivalenceCheck(self.cover, a));

    auto fig8 = presentation(wedgeGraph({6, 6}));
    TowerJoin four = towerJoin(buildCover(fig8, catalogGroup("Z2"), {1, 0}), buildCover(fig8, catalogGroup("Z2"), {0, 1}));
    CHECK(four.cover.group().order() == 4);
    CHECK(isIsomorphic(four.cover.group(), *catalogGroup("Z2xZ2")));
    CHECK(four.cover.isConnected());

    CHECK_THROWS_AS(towerJoin(a, buildCover(fig8, catalogGroup("Z2"), {1, 0})), DomainError);
}
