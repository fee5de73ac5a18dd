#include "chainlift/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "chainlift/error.hpp"

namespace chainlift {

namespace {

constexpr PointId kNoParent = static_cast<PointId>(-1);

std::string pairText(PointId a, PointId b)
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}   // namespace

EChain validateChain(GraphPtr graph, std::vector<PointId> points)
{
    if (!graph)
        throw DomainError("chain needs a scale graph");
    if (points.empty())
        throw DomainError("a chain has at least one point");
    for (PointId p : points)
    {
        if (p >= graph->size())
            throw DomainError("point " + std::to_string(p) + " is not in the space");
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
    {
        if (!graph->related(points[i], points[i + 1]))
        {
            throw ChainError(i, points[i], points[i + 1],
                             "pair " + pairText(points[i], points[i + 1]) + " at index " + std::to_string(i)
                                 + " is not within the scale");
        }
    }
    return EChain(std::move(graph), std::move(points));
}

EChain EChain::reversed() const
{
    std::vector<PointId> pts(points_.rbegin(), points_.rend());
    return validateChain(graph_, std::move(pts));
}

EChain EChain::concat(const EChain& other) const
{
    if (!sameScaleGraph(*graph_, *other.graph_))
        throw DomainError("cannot concatenate chains on different scale graphs");
    if (back() != other.front())
        throw DomainError("concatenation needs the second chain to start at the end of the first");
    std::vector<PointId> pts = points_;
    pts.insert(pts.end(), other.points_.begin() + 1, other.points_.end());
    return EChain(graph_, std::move(pts));
}

EChain applyBasicMove(const EChain& chain, const BasicMove& move)
{
    std::vector<PointId> pts = chain.points();
    if (move.kind == BasicMove::Kind::Insert)
    {
        if (move.position < 1 || move.position >= pts.size())
            throw DomainError("insertion at " + std::to_string(move.position) + " would alter an endpoint");
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(move.position), move.point);
    }
    else
    {
        if (pts.size() < 3 || move.position < 1 || move.position + 1 >= pts.size())
            throw DomainError("removal at " + std::to_string(move.position) + " would alter an endpoint");
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(move.position));
    }
    return validateChain(chain.graphPtr(), std::move(pts));
}

GroupPresentation GroupPresentation::synthetic(std::size_t generator_count, std::vector<Word> relators)
{
    for (const Word& r : relators)
    {
        for (const Letter& l : r.letters())
        {
            if (l.generator >= generator_count || (l.exponent != 1 && l.exponent != -1))
                throw DomainError("relator uses an unknown generator or exponent");
        }
    }
    GroupPresentation p;
    p.generator_count_ = generator_count;
    p.relators_ = std::move(relators);
    return p;
}

const SpanningTree& GroupPresentation::tree() const
{
    if (!tree_)
        throw DomainError("presentation is not attached to a scale graph");
    return *tree_;
}

Word GroupPresentation::edgeWord(PointId u, PointId v) const
{
    const SpanningTree& t = tree();
    const std::size_t n = t.graph->size();
    if (u == v)
        return {};
    long g = t.edge_generator[u * n + v];
    if (g < 0)
    {
        if (!t.graph->hasEdge(u, v))
            throw DomainError("pair " + pairText(u, v) + " is not an edge");
        return {};
    }
    return Word::generator(static_cast<std::size_t>(g), u < v ? 1 : -1);
}

std::vector<PointId> GroupPresentation::treePath(PointId p) const
{
    const SpanningTree& t = tree();
    if (p >= t.parent.size() || !t.contains(p))
        throw DomainError("point " + std::to_string(p) + " is outside the basepoint component");
    std::vector<PointId> path{p};
    while (path.back() != t.graph->basepoint())
        path.push_back(t.parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

EChain GroupPresentation::generatorLoop(std::size_t g) const
{
    const auto [a, b] = tree().generator_edges.at(g);
    std::vector<PointId> pts = treePath(a);
    std::vector<PointId> back = treePath(b);
    pts.insert(pts.end(), back.rbegin(), back.rend());
    return validateChain(graphPtr(), std::move(pts));
}

std::string GroupPresentation::toText() const
{
    std::string out = "gens:";
    for (std::size_t g = 0; g < generator_count_; ++g)
        out += " " + generatorSymbol(g);
    out += '\n';
    for (const Word& r : relators_)
        out += "rel: " + r.toString() + '\n';
    return out;
}

GroupPresentation presentationAtScale(GraphPtr graph, ComponentPolicy policy)
{
    if (!graph)
        throw DomainError("presentation needs a scale graph");
    const std::size_t n = graph->size();
    const PointId root = graph->basepoint();

    auto tree = std::make_shared<SpanningTree>();
    tree->graph = graph;
    tree->parent.assign(n, kNoParent);
    tree->depth.assign(n, 0);
    tree->parent[root] = root;
    std::deque<PointId> queue{root};
    while (!queue.empty())
    {
        PointId u = queue.front();
        queue.pop_front();
        tree->component.push_back(u);
        for (PointId v : graph->neighbors(u))
        {
            if (tree->parent[v] == kNoParent)
            {
                tree->parent[v] = u;
                tree->depth[v] = tree->depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    std::sort(tree->component.begin(), tree->component.end());

    if (policy == ComponentPolicy::RequireConnected && tree->component.size() != n)
    {
        throw DisconnectedError("graph disconnected at scale " + std::to_string(graph->epsilon())
                                + ": the basepoint reaches " + std::to_string(tree->component.size()) + " of "
                                + std::to_string(n) + " points; restrict to its chain component");
    }

    tree->edge_generator.assign(n * n, -1);
    for (auto [a, b] : graph->edges())
    {
        if (!tree->contains(a))
            continue;
        if (tree->parent[b] == a || tree->parent[a] == b)
            continue;
        long g = static_cast<long>(tree->generator_edges.size());
        tree->generator_edges.emplace_back(a, b);
        tree->edge_generator[a * n + b] = g;
        tree->edge_generator[b * n + a] = g;
    }

    GroupPresentation p;
    p.generator_count_ = tree->generator_edges.size();
    p.tree_ = tree;

    for (auto [a, b] : graph->edges())
    {
        if (!tree->contains(a))
            continue;
        for (PointId c : graph->neighbors(b))
        {
            if (c <= b || !graph->hasEdge(a, c))
                continue;
            Word r = p.edgeWord(a, b) * p.edgeWord(b, c) * p.edgeWord(c, a);
            p.relators_.push_back(std::move(r));
        }
    }
    return p;
}

Word chainToWord(const GroupPresentation& presentation, const EChain& chain)
{
    const SpanningTree& t = presentation.tree();
    if (!sameScaleGraph(*t.graph, chain.graph()))
        throw DomainError("chain and presentation live on different scale graphs");
    if (!t.contains(chain.front()))
        throw DomainError("chain starts outside the basepoint component");
    Word w;
    const auto& pts = chain.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    {
        const Word edge = presentation.edgeWord(pts[i], pts[i + 1]);
        for (const Letter& l : edge.letters())
            w.push(l);
    }
    return w;
}

Word ScaleMapRecord::apply(const Word& word) const
{
    Word out;
    for (const Letter& l : word.letters())
    {
        const Word& image = generator_images.at(l.generator);
        out = out * (l.exponent > 0 ? image : image.inverse());
    }
    return out;
}

ScaleMapRecord scaleMap(const GroupPresentation& fine, const GroupPresentation& coarse)
{
    const ScaleGraph& f = fine.graph();
    const ScaleGraph& c = coarse.graph();
    if (f.spacePtr() != c.spacePtr())
        throw DomainError("scale map needs both scales on the same space");
    if (f.basepoint() != c.basepoint())
        throw DomainError("scale map needs a common basepoint");
    if (f.epsilon() > c.epsilon())
        throw DomainError("scale map needs fine epsilon <= coarse epsilon");
    for (auto [a, b] : f.edges())
    {
        if (!c.hasEdge(a, b))
            throw DomainError("fine edge " + pairText(a, b) + " is not a coarse edge");
    }

    ScaleMapRecord record{f.epsilon(), c.epsilon(), {}};
    record.generator_images.reserve(fine.generatorCount());
    for (std::size_t g = 0; g < fine.generatorCount(); ++g)
    {
        EChain loop = rescaleChain(fine.generatorLoop(g), coarse.graphPtr());
        record.generator_images.push_back(chainToWord(coarse, loop));
    }
    return record;
}

EChain rescaleChain(const EChain& chain, GraphPtr graph)
{
    if (!graph || graph->spacePtr() != chain.graph().spacePtr())
        throw DomainError("rescaling needs a graph on the same space");
    return validateChain(std::move(graph), chain.points());
}

EChain replayMoves(const EChain& chain, const std::vector<BasicMove>& moves)
{
    EChain current = chain;
    for (const BasicMove& m : moves)
        current = applyBasicMove(current, m);
    return current;
}

HomotopyCertificate closeChainHomotopy(const EChain& alpha, const EChain& beta, double witness_scale)
{
    const ScaleGraph& g = alpha.graph();
    if (g.spacePtr() != beta.graph().spacePtr())
        throw DomainError("chains live on different spaces");
    if (alpha.front() != beta.front() || alpha.back() != beta.back())
        throw DomainError("chains must share both endpoints");
    if (alpha.size() != beta.size())
        throw DomainError("chains must have the same length; pad the shorter one by duplicating points");
    for (std::size_t i = 0; i < alpha.size(); ++i)
    {
        if (!g.related(alpha.points()[i], beta.points()[i]))
            throw DomainError("points at index " + std::to_string(i) + " are not within the chain scale");
    }

    HomotopyCertificate cert;
    cert.witness = shareGraph(buildScaleGraph(g.spacePtr(), witness_scale, g.basepoint()));
    EChain current = rescaleChain(alpha, cert.witness);
    for (std::size_t i = 1; i + 1 < alpha.size(); ++i)
    {
        if (alpha.points()[i] == beta.points()[i])
            continue;
        for (BasicMove m : {BasicMove::insert(i, beta.points()[i]), BasicMove::remove(i + 1)})
        {
            try
            {
                current = applyBasicMove(current, m);
            }
            catch (const ChainError& e)
            {
                throw DomainError("witness scale too small: " + std::string(e.what()));
            }
            cert.moves.push_back(m);
        }
    }
    return cert;
}

std::vector<Word> netGenerators(const ScaleGraph& fine, const GroupPresentation& coarse,
                                const std::vector<PointId>& net)
{
    const ScaleGraph& c = coarse.graph();
    if (fine.spacePtr() != c.spacePtr())
        throw DomainError("net generators need both scales on the same space");
    if (fine.basepoint() != c.basepoint())
        throw DomainError("net generators need a common basepoint");
    if (6.0 * fine.epsilon() > c.epsilon())
        throw DomainError("fine scale must be at most one sixth of the coarse scale");

    const std::size_t n = fine.size();
    std::vector<PointId> centers = net;
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    for (PointId p : centers)
    {
        if (p >= n)
            throw DomainError("net point " + std::to_string(p) + " is not in the space");
    }
    if (!std::binary_search(centers.begin(), centers.end(), fine.basepoint()))
        throw DomainError("net must contain the basepoint");
    for (PointId p = 0; p < n; ++p)
    {
        bool covered = std::any_of(centers.begin(), centers.end(),
                                   [&](PointId q) { return fine.related(p, q); });
        if (!covered)
            throw DomainError("net does not cover point " + std::to_string(p));
    }

    // Centers related by the cube of the fine entourage, BFS tree from the basepoint.
    const auto cube = entouragePower(fine, 3);
    const std::size_t m = centers.size();
    auto linked = [&](std::size_t i, std::size_t j) { return i != j && cube[centers[i] * n + centers[j]]; };
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(m, none);
    const std::size_t root =
        static_cast<std::size_t>(std::lower_bound(centers.begin(), centers.end(), fine.basepoint()) - centers.begin());
    parent[root] = root;
    std::deque<std::size_t> queue{root};
    while (!queue.empty())
    {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < m; ++v)
        {
            if (parent[v] == none && linked(u, v))
            {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    auto pathFromRoot = [&](std::size_t i) {
        std::vector<PointId> path{centers[i]};
        while (i != root)
        {
            i = parent[i];
            path.push_back(centers[i]);
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    std::set<Word> words;
    for (std::size_t i = 0; i < m; ++i)
    {
        if (parent[i] == none)
            continue;
        for (std::size_t j = i + 1; j < m; ++j)
        {
            if (parent[j] == none || !linked(i, j) || parent[i] == j || parent[j] == i)
                continue;
            std::vector<PointId> loop = pathFromRoot(i);
            std::vector<PointId> back = pathFromRoot(j);
            loop.insert(loop.end(), back.rbegin(), back.rend());
            if (loop.size() > 2 * m + 1)
                throw Error("internal: net loop longer than 2|net|+1 points");
            Word w = chainToWord(coarse, validateChain(coarse.graphPtr(), std::move(loop)));
            if (!w.empty())
                words.insert(std::move(w));
        }
    }
    return {words.begin(), words.end()};
}

}   // namespace chainlift
