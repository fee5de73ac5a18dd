#include "chainlift/tower.hpp"

#include <algorithm>
#include <map>

#include "chainlift/error.hpp"

namespace chainlift {

namespace {

bool isPrime(std::size_t p)
{
    if (p < 2)
        return false;
    for (std::size_t d = 2; d * d <= p; ++d)
    {
        if (p % d == 0)
            return false;
    }
    return true;
}

bool levelMapValid(const TowerTruncation& tower, std::size_t k)
{
    const TowerLevel& level = tower.levels[k];
    const CoverGraph& cover = level.cover;
    if (level.depth != k + 1 || !cover.isConnected() || !sameScaleGraph(cover.base(), *tower.base))
        return false;
    if (k > 0)
    {
        const CoverGraph& lower = tower.levels[k - 1].cover;
        return level.degree * lower.group().order() == cover.group().order()
               && verifyBondingMap(cover, lower, BondingMap{level.theta, level.graph_map});
    }
    if (level.degree != cover.group().order() || level.theta.size() != cover.group().order()
        || level.graph_map.size() != cover.vertexCount())
        return false;
    if (std::any_of(level.theta.begin(), level.theta.end(), [](Element t) { return t != 0; }))
        return false;
    for (CoverVertex x = 0; x < cover.vertexCount(); ++x)
    {
        if (level.graph_map[x] != cover.baseOf(x))
            return false;
    }
    for (auto [x, y] : cover.edges())
    {
        if (!tower.base->hasEdge(cover.baseOf(x), cover.baseOf(y)))
            return false;
    }
    return true;
}

}   // namespace

TowerTruncation buildTower(PresentationPtr presentation, std::vector<CoverGraph> covers)
{
    if (!presentation || !presentation->hasGraph())
        throw DomainError("a tower needs a presentation built from a scale graph");
    TowerTruncation tower{presentation->graphPtr(), presentation, {}, {}, {}};
    for (std::size_t k = 0; k < covers.size(); ++k)
    {
        CoverGraph& cover = covers[k];
        if (!sameScaleGraph(cover.base(), *tower.base))
            throw DomainError("tower level " + std::to_string(k + 1) + " lives over a different base");
        if (!cover.isConnected())
            throw DomainError("tower level " + std::to_string(k + 1) + " is not connected");
        if (k == 0)
        {
            std::vector<CoverVertex> graph_map(cover.vertexCount());
            for (CoverVertex x = 0; x < cover.vertexCount(); ++x)
                graph_map[x] = cover.baseOf(x);
            const std::size_t order = cover.group().order();
            tower.levels.push_back(
                TowerLevel{1, std::move(cover), std::vector<Element>(order, 0), std::move(graph_map), order});
        }
        else
        {
            const CoverGraph& lower = tower.levels.back().cover;
            BondingMap map = bondingMap(cover, lower);
            const std::size_t degree = cover.group().order() / lower.group().order();
            tower.levels.push_back(
                TowerLevel{k + 1, std::move(cover), std::move(map.theta), std::move(map.vertex_map), degree});
        }
    }

    if (tower.levels.empty())
    {
        for (PointId v = 0; v < tower.base->size(); ++v)
            tower.limit_points.push_back({v});
        tower.limit_deck.push_back({});
    }
    else
    {
        const std::size_t d = tower.levels.size();
        const CoverGraph& top = tower.levels.back().cover;
        for (CoverVertex x = 0; x < top.vertexCount(); ++x)
        {
            std::vector<CoverVertex> thread(d + 1);
            thread[d] = x;
            for (std::size_t k = d; k > 0; --k)
                thread[k - 1] = tower.levels[k - 1].graph_map[thread[k]];
            tower.limit_points.push_back(std::move(thread));
        }
        for (Element g = 0; g < top.group().order(); ++g)
        {
            std::vector<Element> thread(d);
            thread[d - 1] = g;
            for (std::size_t k = d - 1; k > 0; --k)
                thread[k - 1] = tower.levels[k].theta[thread[k]];
            tower.limit_deck.push_back(std::move(thread));
        }
    }
    if (!verifyTower(tower))
        throw Error("internal: constructed tower fails verification");
    return tower;
}

bool verifyTower(const TowerTruncation& tower)
{
    const std::size_t d = tower.depth();
    for (std::size_t k = 0; k < d; ++k)
    {
        if (!levelMapValid(tower, k))
            return false;
    }

    // Cocycle identities against directly computed bonding maps (levels are 1-based).
    for (std::size_t i = 1; i <= d; ++i)
    {
        for (std::size_t k = i + 2; k <= d; ++k)
        {
            const CoverGraph& upper = tower.levels[k - 1].cover;
            const CoverGraph& lower = tower.levels[i - 1].cover;
            BondingMap direct;
            try
            {
                direct = bondingMap(upper, lower);
            }
            catch (const DomainError&)
            {
                return false;
            }
            for (Element g = 0; g < upper.group().order(); ++g)
            {
                Element x = g;
                for (std::size_t j = k; j > i; --j)
                    x = tower.levels[j - 1].theta[x];
                if (x != direct.theta[g])
                    return false;
            }
            for (CoverVertex v = 0; v < upper.vertexCount(); ++v)
            {
                CoverVertex x = v;
                for (std::size_t j = k; j > i; --j)
                    x = tower.levels[j - 1].graph_map[x];
                if (x != direct.vertex_map[v])
                    return false;
            }
        }
    }

    const std::size_t point_count = d == 0 ? tower.base->size() : tower.levels.back().cover.vertexCount();
    const std::size_t deck_count = d == 0 ? 1 : tower.levels.back().cover.group().order();
    if (tower.limit_points.size() != point_count || tower.limit_deck.size() != deck_count)
        return false;
    for (const auto& thread : tower.limit_points)
    {
        if (thread.size() != d + 1 || thread[0] >= tower.base->size())
            return false;
        for (std::size_t k = 1; k <= d; ++k)
        {
            if (thread[k] >= tower.levels[k - 1].cover.vertexCount()
                || tower.levels[k - 1].graph_map[thread[k]] != thread[k - 1])
                return false;
        }
    }
    for (const auto& thread : tower.limit_deck)
    {
        if (thread.size() != d)
            return false;
        for (std::size_t k = 1; k < d; ++k)
        {
            if (thread[k] >= tower.levels[k].cover.group().order() || tower.levels[k].theta[thread[k]] != thread[k - 1])
                return false;
        }
    }
    return true;
}

TowerTruncation buildSolenoidTower(std::size_t n, std::size_t p, std::size_t depth)
{
    if (n < 3)
        throw DomainError("a circle sample needs at least 3 points");
    if (!isPrime(p))
        throw DomainError("p = " + std::to_string(p) + " is not prime");
    std::size_t order = 1;
    for (std::size_t k = 0; k < depth; ++k)
    {
        order *= p;
        if (order > 256)
            throw DomainError("tower deck order p^depth exceeds 256");
    }

    auto space = std::make_shared<const FiniteMetricSpace>(sampleCircle(n));
    auto pres = sharePresentation(presentationAtScale(shareGraph(buildScaleGraph(space, circleCycleScale(n)))));
    std::vector<CoverGraph> covers;
    order = 1;
    for (std::size_t k = 1; k <= depth; ++k)
    {
        order *= p;
        covers.push_back(buildCover(pres, shareGroup(FiniteGroup::cyclic(order)), {1}));
    }
    return buildTower(pres, std::move(covers));
}

TowerJoin towerJoin(const CoverGraph& first, const CoverGraph& second)
{
    if (!sameScaleGraph(first.base(), second.base())
        || first.presentation().generatorCount() != second.presentation().generatorCount())
        throw DomainError("joined covers live over different base scale graphs");
    const FiniteGroup prod = FiniteGroup::directProduct(first.group(), second.group());
    const std::size_t nb = second.group().order();
    std::vector<Element> images;
    for (std::size_t i = 0; i < first.hom().images().size(); ++i)
        images.push_back(first.hom().images()[i] * nb + second.hom().images()[i]);

    const std::vector<Element> image = prod.generatedSubgroup(images);
    const std::string name = image.size() == prod.order() ? prod.name() : "Im(" + prod.name() + ")";
    SubgroupTable sub = subgroupTable(prod, image, name);
    std::vector<Element> index(prod.order(), kUndefined);
    for (std::size_t i = 0; i < sub.embedding.size(); ++i)
        index[sub.embedding[i]] = i;
    for (Element& x : images)
        x = index[x];

    CoverGraph cover = buildCover(first.hom().sourcePtr(), shareGroup(std::move(sub.group)), std::move(images));
    BondingMap onto_first = bondingMap(cover, first);
    BondingMap onto_second = bondingMap(cover, second);
    return TowerJoin{std::move(cover), std::move(onto_first), std::move(onto_second)};
}

TowerLift liftThroughTower(const TowerTruncation& tower, const EChain& chain)
{
    if (!sameScaleGraph(chain.graph(), *tower.base))
        throw DomainError("chain does not live on the tower's base graph");
    if (chain.front() != tower.base->basepoint())
        throw DomainError("tower lifts start at the basepoint");
    TowerLift lift{{chain.back()}, {}};
    for (const TowerLevel& level : tower.levels)
    {
        const CoverVertex end = liftChain(level.cover, chain, level.cover.basepoint()).back();
        if (level.graph_map[end] != lift.endpoints.back())
            throw Error("internal: lifted endpoints are not coherent across the tower");
        lift.endpoints.push_back(end);
        lift.deck_thread.push_back(level.cover.sheetOf(end));
    }
    return lift;
}

ProfiniteTruncation profiniteTruncation(const TowerTruncation& tower)
{
    std::vector<std::vector<Element>> threads = tower.limit_deck;
    std::sort(threads.begin(), threads.end());
    std::map<std::vector<Element>, Element> index;
    for (std::size_t i = 0; i < threads.size(); ++i)
        index[threads[i]] = i;

    std::vector<std::vector<Element>> table(threads.size(), std::vector<Element>(threads.size()));
    std::vector<Element> product(tower.depth());
    for (std::size_t a = 0; a < threads.size(); ++a)
    {
        for (std::size_t b = 0; b < threads.size(); ++b)
        {
            for (std::size_t k = 0; k < tower.depth(); ++k)
                product[k] = tower.levels[k].cover.group().mul(threads[a][k], threads[b][k]);
            auto it = index.find(product);
            if (it == index.end())
                throw Error("internal: deck threads are not closed under multiplication");
            table[a][b] = it->second;
        }
    }
    FiniteGroup group = FiniteGroup::fromTable("lim" + std::to_string(tower.depth()), table,
                                               FiniteGroup::Check::Inherited);
    return ProfiniteTruncation{std::move(threads), std::move(group)};
}

bool snarkSurjectivityCheck(const TowerTruncation& tower)
{
    for (std::size_t k = 0; k < tower.depth(); ++k)
    {
        const TowerLevel& level = tower.levels[k];
        const std::size_t below = k == 0 ? 1 : tower.levels[k - 1].cover.group().order();
        std::vector<bool> hit(below, false);
        for (Element t : level.theta)
        {
            if (t < below)
                hit[t] = true;
        }
        if (std::find(hit.begin(), hit.end(), false) != hit.end())
            return false;

        std::vector<bool> deck_hit(level.cover.group().order(), false);
        for (const auto& thread : tower.limit_deck)
            deck_hit[thread[k]] = true;
        if (std::find(deck_hit.begin(), deck_hit.end(), false) != deck_hit.end())
            return false;
    }
    for (std::size_t k = 0; k <= tower.depth(); ++k)
    {
        const std::size_t count = k == 0 ? tower.base->size() : tower.levels[k - 1].cover.vertexCount();
        std::vector<bool> hit(count, false);
        for (const auto& thread : tower.limit_points)
            hit[thread[k]] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end())
            return false;
    }
    return true;
}

std::vector<RootScaleReport> levelDisplacements(const TowerTruncation& tower)
{
    std::vector<RootScaleReport> out;
    for (const TowerLevel& level : tower.levels)
    {
        std::vector<Element> kernel;
        for (Element g = 0; g < level.theta.size(); ++g)
        {
            if (level.theta[g] == 0)
                kernel.push_back(g);
        }
        out.push_back(rootScale(level.cover, kernel));
    }
    return out;
}

}   // namespace chainlift
