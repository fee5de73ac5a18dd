// Shared fixtures and brute-force oracles for the test binaries.
#ifndef CHAINLIFT_TEST_ORACLES_HPP
#define CHAINLIFT_TEST_ORACLES_HPP

#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "chainlift/covers.hpp"
#include "chainlift/enumerate.hpp"
#include "chainlift/homotopy.hpp"
#include "chainlift/space.hpp"

namespace oracle {

using namespace chainlift;

inline GraphPtr circleGraph(std::size_t n, double eps)
{
    return shareGraph(buildScaleGraph(sampleCircle(n), eps));
}

inline GraphPtr cycleGraph(std::size_t n)
{
    return circleGraph(n, circleCycleScale(n));
}

inline GraphPtr wedgeGraph(std::vector<std::size_t> lengths, double eps = 1.5)
{
    return shareGraph(buildScaleGraph(wedgeGraphSpace(lengths), eps));
}

inline PresentationPtr presentation(const GraphPtr& g)
{
    return sharePresentation(presentationAtScale(g));
}

/** 0..n-1 then back to 0: the once-around loop of an n-cycle. */
inline std::vector<PointId> windingPoints(std::size_t n, std::size_t times = 1)
{
    std::vector<PointId> pts{0};
    for (std::size_t t = 0; t < times; ++t)
    {
        for (std::size_t i = 1; i <= n; ++i)
            pts.push_back(i % n);
    }
    return pts;
}

/** Random walk of `steps` moves from `start`; each step stays put or moves to a neighbor. */
inline std::vector<PointId> randomWalk(const ScaleGraph& g, PointId start, std::size_t steps, std::mt19937_64& rng)
{
    std::vector<PointId> pts{start};
    for (std::size_t i = 0; i < steps; ++i)
    {
        auto nb = g.neighbors(pts.back());
        std::uniform_int_distribution<std::size_t> pick(0, nb.size());
        std::size_t k = pick(rng);
        pts.push_back(k == nb.size() ? pts.back() : nb[k]);
    }
    return pts;
}

/** Random closed walk: a walk out, then the tree path back to `start` via BFS parents. */
inline std::vector<PointId> randomLoop(const ScaleGraph& g, PointId start, std::size_t steps, std::mt19937_64& rng)
{
    std::vector<PointId> pts = randomWalk(g, start, steps, rng);
    std::vector<std::size_t> dist = g.hopDistances(start);
    while (pts.back() != start)
    {
        for (PointId w : g.neighbors(pts.back()))
        {
            if (dist[w] + 1 == dist[pts.back()])
            {
                pts.push_back(w);
                break;
            }
        }
    }
    return pts;
}

/** A uniformly chosen valid basic move, or nullopt when none exists. */
inline std::optional<BasicMove> randomMove(const EChain& chain, std::mt19937_64& rng)
{
    const ScaleGraph& g = chain.graph();
    const auto& pts = chain.points();
    std::vector<BasicMove> moves;
    for (std::size_t i = 1; i < pts.size(); ++i)
    {
        for (PointId y = 0; y < g.size(); ++y)
        {
            if (g.related(pts[i - 1], y) && g.related(y, pts[i]))
                moves.push_back(BasicMove::insert(i, y));
        }
    }
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    {
        if (g.related(pts[i - 1], pts[i + 1]))
            moves.push_back(BasicMove::remove(i));
    }
    if (moves.empty())
        return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    return moves[pick(rng)];
}

/**
 * Lift by walking the cover graph: each step must have exactly one cover
 * neighbor over the next point. Empty when that fails somewhere.
 */
inline std::vector<CoverVertex> walkLift(const CoverGraph& cover, const EChain& chain, CoverVertex start)
{
    const auto& pts = chain.points();
    std::vector<CoverVertex> out{start};
    for (std::size_t i = 1; i < pts.size(); ++i)
    {
        if (pts[i] == pts[i - 1])
        {
            out.push_back(out.back());
            continue;
        }
        std::vector<CoverVertex> over;
        for (CoverVertex y : cover.neighbors(out.back()))
        {
            if (cover.baseOf(y) == pts[i])
                over.push_back(y);
        }
        if (over.size() != 1)
            return {};
        out.push_back(over[0]);
    }
    return out;
}

/** Minimum over nontrivial g and all y of hop(y, g y), by one BFS per vertex. */
inline std::optional<std::size_t> bruteDisplacement(const CoverGraph& cover)
{
    std::optional<std::size_t> best;
    for (CoverVertex y = 0; y < cover.vertexCount(); ++y)
    {
        const auto dist = cover.hopDistances(y);
        for (Element g = 1; g < cover.group().order(); ++g)
        {
            const std::size_t d = dist[cover.act(g, y)];
            if (d != std::numeric_limits<std::size_t>::max() && (!best || d < *best))
                best = d;
        }
    }
    return best;
}

/** Every freely reduced word of length <= max_length over k generators, shortlex. */
inline std::vector<Word> reducedWords(std::size_t k, std::size_t max_length)
{
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_length; ++len)
    {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
        {
            for (std::size_t g = 0; g < k; ++g)
            {
                for (int e : {1, -1})
                {
                    const Word& w = out[i];
                    Letter l{g, e};
                    if (!w.empty() && w.letters().back() == l.inverse())
                        continue;
                    std::vector<Letter> letters = w.letters();
                    letters.push_back(l);
                    out.emplace_back(std::move(letters));
                }
            }
        }
        begin = end;
    }
    return out;
}

/** Kernel membership of each word under the hom. */
inline std::vector<bool> kernelPattern(const GroupHom& hom, const std::vector<Word>& words)
{
    std::vector<bool> out;
    for (const Word& w : words)
        out.push_back(hom.evaluate(w) == hom.target().identity());
    return out;
}

/**
 * Index-n kernels counted without the catalog's automorphism lists: every
 * image tuple into every group of order n, kept if it kills the relators and
 * generates, then grouped by kernel membership of all words of length <= 2n.
 */
inline std::size_t bruteKernelCount(const PresentationPtr& pres, std::size_t n)
{
    const std::size_t k = pres->generatorCount();
    const auto words = reducedWords(k, 2 * n);
    std::set<std::vector<bool>> patterns;
    for (const GroupPtr& g : SmallGroupCatalog::instance().groupsOfOrder(n))
    {
        std::vector<Element> images(k, 0);
        while (true)
        {
            bool kills = true;
            for (const Word& r : pres->relators())
            {
                Element value = 0;
                for (const Letter& l : r.letters())
                    value = g->mul(value, l.exponent > 0 ? images[l.generator] : g->inverse(images[l.generator]));
                kills = kills && value == 0;
            }
            if (kills && g->generatedSubgroup(images).size() == n)
                patterns.insert(kernelPattern(GroupHom(pres, g, images), words));

            std::size_t i = k;
            while (i > 0 && images[i - 1] + 1 == n)
                images[--i] = 0;
            if (i == 0)
                break;
            ++images[i - 1];
        }
    }
    return patterns.size();
}

}   // namespace oracle

#endif
