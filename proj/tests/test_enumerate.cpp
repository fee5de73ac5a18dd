#include <catch_amalgamated.hpp>

#include <set>

#include "chainlift/enumerate.hpp"
#include "chainlift/error.hpp"
#include "oracles.hpp"

using namespace chainlift;
using oracle::bruteKernelCount;
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

}   // namespace

TEST_CASE("surjection counts onto small cyclic groups")
{
    auto circle = presentation(cycleGraph(12));
    auto fig8 = presentation(wedgeGraph({6, 6}));
    auto one = surjectionsOnto(circle, catalogGroup("Z2"));
    REQUIRE(one.size() == 1);
    CHECK(one[0].images() == std::vector<Element>{1});
    CHECK(surjectionsOnto(fig8, catalogGroup("Z2")).size() == 3);
    CHECK(surjectionsOnto(fig8, catalogGroup("Z3")).size() == 8);
    CHECK(surjectionsOnto(circle, catalogGroup("Z2xZ2")).empty());

    auto homs = surjectionsOnto(fig8, catalogGroup("S3"));
    for (std::size_t i = 1; i < homs.size(); ++i)
        CHECK(homs[i - 1].images() < homs[i].images());
}

TEST_CASE("emitted homs re-verify independently")
{
    for (auto pres : {presentation(wedgeGraph({6, 6})), presentation(oracle::circleGraph(12, 1.1)),
                      presentation(wedgeGraph({4, 5, 4}))})
    {
        for (std::size_t n = 2; n <= 6; ++n)
        {
            for (const KernelRecord& k : normalSubgroupsOfIndex(pres, n))
            {
                const GroupHom& h = k.representative;
                CHECK(h.images() == k.signature);
                CHECK(h.target().generatedSubgroup(h.images()).size() == n);
                for (const Word& r : pres->relators())
                    CHECK(h.evaluate(r) == 0);
            }
        }
    }
}

TEST_CASE("normal subgroup counts")
{
    auto circle = presentation(cycleGraph(12));
    auto fig8 = presentation(wedgeGraph({6, 6}));
    CHECK(normalSubgroupsOfIndex(circle, 2).size() == 1);
    CHECK(normalSubgroupsOfIndex(circle, 3).size() == 1);
    CHECK(normalSubgroupsOfIndex(circle, 4).size() == 1);
    CHECK(normalSubgroupsOfIndex(fig8, 2).size() == 3);
    CHECK(normalSubgroupsOfIndex(fig8, 3).size() == 4);
    CHECK(normalSubgroupsOfIndex(fig8, 1).size() == 1);

    auto z3 = normalSubgroupsOfIndex(fig8, 3);
    CHECK(z3[0].signatureText() == "Z3:0,1");

    CHECK_THROWS_AS(normalSubgroupsOfIndex(fig8, 17), UnsupportedError);
    CHECK_THROWS_WITH(normalSubgroupsOfIndex(fig8, 17), Catch::Matchers::ContainsSubstring("catalog bound"));
    CHECK_THROWS_AS(normalSubgroupsOfIndex(fig8, 0), DomainError);
}

TEST_CASE("kernel counts match the brute-force word oracle")
{
    auto circle = presentation(cycleGraph(12));
    auto fig8 = presentation(wedgeGraph({6, 6}));
    for (std::size_t n : {2u, 3u, 4u})
        CHECK(bruteKernelCount(circle, n) == normalSubgroupsOfIndex(circle, n).size());
    for (std::size_t n : {2u, 3u, 4u})
        CHECK(bruteKernelCount(fig8, n) == normalSubgroupsOfIndex(fig8, n).size());

}

TEST_CASE("equal signatures exactly when kernels agree on short words")
{
    auto fig8 = presentation(wedgeGraph({6, 6}));
    for (const char* name : {"Z2", "Z3", "Z4", "Z2xZ2", "S3"})
    {
        GroupPtr g = catalogGroup(name);
        const auto words = oracle::reducedWords(2, 2 * g->order());
        auto homs = surjectionsOnto(fig8, g);
        std::vector<std::vector<bool>> patterns;
        for (const GroupHom& h : homs)
            patterns.push_back(oracle::kernelPattern(h, words));
        for (std::size_t a = 0; a < homs.size(); ++a)
        {
            for (std::size_t b = 0; b < homs.size(); ++b)
            {
                const bool same_sig =
                    canonicalSignature(*g, homs[a].images()) == canonicalSignature(*g, homs[b].images());
                CHECK(same_sig == (patterns[a] == patterns[b]));
            }
        }
    }
}

TEST_CASE("n-fold cover counts")
{
    GraphPtr circle = cycleGraph(12);
    CHECK(countNfoldCovers(circle, 2).count == 1);
    CHECK(countNfoldCovers(circle, 4).count == 1);
    CHECK(countNfoldCovers(circle, 4).kernels[0].target->name() == "Z4");

    CoverCount fig8 = countNfoldCovers(wedgeGraph({6, 6}), 2);
    CHECK(fig8.count == 3);
    REQUIRE(fig8.covers.size() == 3);
    for (std::size_t i = 0; i < fig8.covers.size(); ++i)
    {
        CHECK(fig8.covers[i].isConnected());
        CHECK(fig8.covers[i].vertexCount() == 22);
        for (std::size_t j = i + 1; j < fig8.covers.size(); ++j)
            CHECK_FALSE(equivalenceCheck(fig8.covers[i], fig8.covers[j]));
    }

    CoverCount four = countNfoldCovers(wedgeGraph({6, 6}), 4);
    for (std::size_t i = 0; i < four.covers.size(); ++i)
    {
        for (std::size_t j = i + 1; j < four.covers.size(); ++j)
            CHECK_FALSE(equivalenceCheck(four.covers[i], four.covers[j]));
    }

    CHECK_THROWS_AS(countNfoldCovers(oracle::circleGraph(12, 0.4), 2), DisconnectedError);
}

TEST_CASE("factor bound report")
{
    FactorReport circle = factorBoundReport(cycleGraph(12), 4);
    REQUIRE(circle.entries.size() == 4);
    for (const FactorEntry& e : circle.entries)
    {
        CHECK(e.count == 1);
        CHECK_FALSE(e.flagged);
    }
    CHECK(circle.entries[3].bound == 24);
    CHECK(circle.warnings.empty());

    FactorReport fig8 = factorBoundReport(wedgeGraph({6, 6}), 2);
    REQUIRE(fig8.entries.size() == 2);
    CHECK(fig8.entries[0].count == 1);
    CHECK(fig8.entries[0].bound == 1);
    CHECK_FALSE(fig8.entries[0].flagged);
    CHECK(fig8.entries[1].count == 3);
    CHECK(fig8.entries[1].flagged);
    REQUIRE(fig8.warnings.size() == 1);
    CHECK(fig8.warnings[0] == "n=2: 3 non-equivalent regular covers exceed the bound 2");
}

TEST_CASE("enumeration is deterministic")
{
    auto fig8 = presentation(wedgeGraph({6, 6}));
    for (std::size_t n : {4u, 6u, 8u})
    {
        auto a = normalSubgroupsOfIndex(fig8, n), b = normalSubgroupsOfIndex(fig8, n);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            CHECK(a[i].target == b[i].target);
            CHECK(a[i].signature == b[i].signature);
        }
    }
}
