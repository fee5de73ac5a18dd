#include "chainlift/covers.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <ostream>
#include <string>

#include "chainlift/error.hpp"

namespace chainlift {

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

void requireSameBase(const CoverGraph& a, const CoverGraph& b)
{
    if (!sameScaleGraph(a.base(), b.base())
        || a.presentation().generatorCount() != b.presentation().generatorCount())
        throw DomainError("covers live over different base scale graphs");
}

std::vector<std::size_t> bfs(std::size_t n, CoverVertex source,
                             const std::function<std::span<const CoverVertex>(CoverVertex)>& next)
{
    std::vector<std::size_t> dist(n, kUnreachable);
    std::deque<CoverVertex> queue{source};
    dist[source] = 0;
    while (!queue.empty())
    {
        CoverVertex u = queue.front();
        queue.pop_front();
        for (CoverVertex v : next(u))
        {
            if (dist[v] == kUnreachable)
            {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

}   // namespace

GroupHom::GroupHom(PresentationPtr source, GroupPtr target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (!source_ || !target_)
        throw HomError("homomorphism needs a source presentation and a target group");
    if (images_.size() != source_->generatorCount())
        throw HomError("expected " + std::to_string(source_->generatorCount()) + " generator images, got "
                       + std::to_string(images_.size()));
    for (Element x : images_)
    {
        if (x >= target_->order())
            throw HomError("generator image " + std::to_string(x) + " is not an element of " + target_->name());
    }
    for (std::size_t r = 0; r < source_->relators().size(); ++r)
    {
        Element value = evaluate(source_->relators()[r]);
        if (value != target_->identity())
            throw HomError("relator " + std::to_string(r) + " (" + source_->relators()[r].toString() + ") maps to "
                           + std::to_string(value) + ", not the identity");
    }
    image_subgroup_ = target_->generatedSubgroup(images_);
}

Element GroupHom::evaluate(const Word& word) const
{
    Element x = target_->identity();
    for (const Letter& l : word.letters())
    {
        Element g = images_.at(l.generator);
        x = target_->mul(x, l.exponent > 0 ? g : target_->inverse(g));
    }
    return x;
}

CoverGraph::CoverGraph(GroupHom hom)
    : hom_(std::move(hom)), base_size_(0), order_(hom_.target().order())
{
    const GroupPresentation& pres = hom_.source();
    if (!pres.hasGraph())
        throw DomainError("covers need a presentation built from a scale graph");
    const ScaleGraph& g = pres.graph();
    base_size_ = g.size();
    if (pres.tree().component.size() != base_size_)
        throw DisconnectedError("covers of disconnected bases are not supported");

    labels_.assign(base_size_ * base_size_, kUndefined);
    for (auto [a, b] : g.edges())
    {
        Element l = hom_.evaluate(pres.edgeWord(a, b));
        labels_[a * base_size_ + b] = l;
        labels_[b * base_size_ + a] = hom_.target().inverse(l);
    }

    const FiniteGroup& grp = hom_.target();
    edges_.reserve(g.edges().size() * order_);
    adj_.resize(vertexCount());
    for (auto [a, b] : g.edges())
    {
        const Element l = labels_[a * base_size_ + b];
        for (Element s = 0; s < order_; ++s)
        {
            CoverVertex x = vertex(a, s), y = vertex(b, grp.mul(s, l));
            edges_.emplace_back(std::min(x, y), std::max(x, y));
            adj_[x].push_back(y);
            adj_[y].push_back(x);
        }
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& row : adj_)
        std::sort(row.begin(), row.end());
}

Element CoverGraph::edgeLabel(PointId u, PointId w) const
{
    Element l = labels_[u * base_size_ + w];
    if (l == kUndefined)
        throw DomainError("(" + std::to_string(u) + "," + std::to_string(w) + ") is not a base edge");
    return l;
}

bool CoverGraph::hasEdge(CoverVertex x, CoverVertex y) const
{
    auto row = neighbors(x);
    return std::binary_search(row.begin(), row.end(), y);
}

std::vector<std::size_t> CoverGraph::hopDistances(CoverVertex x) const
{
    return bfs(vertexCount(), x, [this](CoverVertex u) { return neighbors(u); });
}

GraphPtr CoverGraph::totalScaleGraph() const
{
    if (!isConnected())
        throw DisconnectedError("total space of a non-surjective cover is disconnected");
    auto space = std::make_shared<const FiniteMetricSpace>(graphHopSpace(vertexCount(), edges_));
    return shareGraph(buildScaleGraph(space, 1.5, basepoint()));
}

CoverGraph buildCover(const GroupHom& hom)
{
    CoverGraph cover(hom);
    const FiniteGroup& g = cover.group();

    // Deck elements permute edges; free and fiber-transitive by construction
    // of the action, checked anyway on the basepoint fiber.
    for (auto [x, y] : cover.edges())
    {
        for (Element h = 0; h < g.order(); ++h)
        {
            if (!cover.hasEdge(cover.act(h, x), cover.act(h, y)))
                throw Error("internal: deck element " + std::to_string(h) + " does not preserve edges");
        }
    }
    std::vector<bool> hit(g.order(), false);
    for (Element h = 0; h < g.order(); ++h)
    {
        CoverVertex y = cover.act(h, cover.basepoint());
        if (cover.baseOf(y) != cover.base().basepoint() || hit[cover.sheetOf(y)]
            || (h != g.identity() && y == cover.basepoint()))
            throw Error("internal: deck action is not free and transitive on the basepoint fiber");
        hit[cover.sheetOf(y)] = true;
    }
    return cover;
}

CoverGraph buildCover(PresentationPtr presentation, GroupPtr target, std::vector<Element> images)
{
    return buildCover(GroupHom(std::move(presentation), std::move(target), std::move(images)));
}

std::vector<CoverVertex> liftChain(const CoverGraph& cover, const EChain& chain, CoverVertex start)
{
    if (!sameScaleGraph(cover.base(), chain.graph()))
        throw DomainError("chain does not live on the cover's base graph");
    if (start >= cover.vertexCount() || cover.baseOf(start) != chain.front())
        throw DomainError("lift start is not in the fiber over the chain's first point");
    const FiniteGroup& g = cover.group();
    std::vector<CoverVertex> lift{start};
    lift.reserve(chain.size());
    Element sheet = cover.sheetOf(start);
    const auto& pts = chain.points();
    for (std::size_t i = 1; i < pts.size(); ++i)
    {
        if (pts[i] != pts[i - 1])
            sheet = g.mul(sheet, cover.edgeLabel(pts[i - 1], pts[i]));
        lift.push_back(cover.vertex(pts[i], sheet));
    }
    return lift;
}

bool homotopyLiftCheck(const CoverGraph& cover, const EChain& alpha, const EChain& beta)
{
    if (alpha.front() != beta.front() || alpha.back() != beta.back())
        throw DomainError("homotopy check needs chains with common endpoints");
    const CoverVertex start = cover.vertex(alpha.front(), cover.group().identity());
    const bool same_end = liftChain(cover, alpha, start).back() == liftChain(cover, beta, start).back();
    const bool same_image = cover.hom().evaluate(chainToWord(cover.presentation(), alpha))
                            == cover.hom().evaluate(chainToWord(cover.presentation(), beta));
    if (same_end != same_image)
        throw Error("internal: lift endpoints disagree with hom images");
    return same_end;
}

bool deckCompatibilityCheck(const CoverGraph& cover, const EChain& chain, Element g)
{
    if (chain.front() != cover.base().basepoint())
        throw DomainError("deck compatibility is checked on chains from the basepoint");
    if (g >= cover.group().order())
        throw DomainError("not a deck element");
    const CoverVertex start = cover.basepoint();
    const CoverVertex end = liftChain(cover, chain, start).back();
    const CoverVertex moved_end = liftChain(cover, chain, cover.act(g, start)).back();
    return moved_end == cover.act(g, end);
}

RootScaleReport rootScale(const CoverGraph& cover, std::span<const Element> subgroup)
{
    const FiniteGroup& grp = cover.group();
    std::vector<Element> elements;
    if (subgroup.empty())
    {
        for (Element h = 1; h < grp.order(); ++h)
            elements.push_back(h);
    }
    else
    {
        for (Element h : subgroup)
        {
            if (h >= grp.order())
                throw DomainError("not a deck element");
            if (h != grp.identity())
                elements.push_back(h);
        }
    }

    RootScaleReport report;
    for (PointId v = 0; v < cover.base().size(); ++v)
    {
        // d((v,s), h (v,s)) = d((v,e), (v, s^-1 h s)) by deck invariance.
        const auto dist = cover.hopDistances(cover.vertex(v, grp.identity()));
        for (Element h : elements)
        {
            for (Element s = 0; s < grp.order(); ++s)
            {
                const std::size_t d = dist[cover.vertex(v, grp.conjugate(grp.inverse(s), h))];
                if (d == kUnreachable)
                    continue;
                if (!report.min_displacement || d < *report.min_displacement)
                {
                    report.min_displacement = d;
                    report.certificate_vertex = cover.vertex(v, s);
                    report.certificate_element = h;
                }
            }
        }
    }
    if (report.min_displacement)
        report.max_root_scale = (*report.min_displacement + 1) / 2 - 1;
    return report;
}

bool evenlyCoveredCheck(const CoverGraph& cover, std::size_t radius)
{
    if (radius == 0)
        throw DomainError("ball radius must be at least 1");
    const ScaleGraph& base = cover.base();
    const std::size_t order = cover.group().order();
    for (PointId x = 0; x < base.size(); ++x)
    {
        const auto dist = base.hopDistances(x);
        std::vector<bool> in_ball(base.size(), false);
        std::size_t ball_size = 0;
        for (PointId v = 0; v < base.size(); ++v)
        {
            if (dist[v] <= radius)
            {
                in_ball[v] = true;
                ++ball_size;
            }
        }

        std::vector<bool> seen(cover.vertexCount(), false);
        std::size_t sheets = 0;
        for (CoverVertex s = 0; s < cover.vertexCount(); ++s)
        {
            if (seen[s] || !in_ball[cover.baseOf(s)])
                continue;
            ++sheets;
            std::vector<bool> base_hit(base.size(), false);
            std::size_t size = 0;
            std::deque<CoverVertex> queue{s};
            seen[s] = true;
            while (!queue.empty())
            {
                CoverVertex u = queue.front();
                queue.pop_front();
                if (base_hit[cover.baseOf(u)])
                    return false;
                base_hit[cover.baseOf(u)] = true;
                ++size;
                for (CoverVertex w : cover.neighbors(u))
                {
                    if (!seen[w] && in_ball[cover.baseOf(w)])
                    {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            if (size != ball_size)
                return false;
        }
        if (sheets != order)
            return false;
    }
    return true;
}

std::vector<ComponentReport> componentsAndStabilizer(const GroupHom& hom)
{
    CoverGraph cover(hom);
    const FiniteGroup& grp = cover.group();
    const PointId root = cover.base().basepoint();
    const std::vector<Element>& image = hom.imageSubgroup();

    std::vector<ComponentReport> out;
    std::vector<bool> seen(cover.vertexCount(), false);
    for (CoverVertex s = 0; s < cover.vertexCount(); ++s)
    {
        if (seen[s])
            continue;
        auto dist = cover.hopDistances(s);
        std::vector<CoverVertex> vertices;
        for (CoverVertex v = 0; v < cover.vertexCount(); ++v)
        {
            if (dist[v] != kUnreachable)
            {
                vertices.push_back(v);
                seen[v] = true;
            }
        }

        Element g0 = kUndefined;
        for (Element g = 0; g < grp.order() && g0 == kUndefined; ++g)
        {
            if (dist[cover.vertex(root, g)] != kUnreachable)
                g0 = g;
        }

        std::vector<Element> stabilizer;
        for (Element h : image)
            stabilizer.push_back(grp.conjugate(g0, h));
        std::sort(stabilizer.begin(), stabilizer.end());

        SubgroupTable sub = subgroupTable(grp, stabilizer, "Stab");
        std::vector<Element> index(grp.order(), kUndefined);
        for (std::size_t i = 0; i < sub.embedding.size(); ++i)
            index[sub.embedding[i]] = i;
        std::vector<Element> images;
        for (Element x : hom.images())
            images.push_back(index[grp.conjugate(g0, x)]);
        CoverGraph restricted = buildCover(hom.sourcePtr(), shareGroup(std::move(sub.group)), std::move(images));

        std::vector<CoverVertex> embedding(restricted.vertexCount());
        for (CoverVertex r = 0; r < restricted.vertexCount(); ++r)
        {
            embedding[r] = cover.vertex(restricted.baseOf(r),
                                        grp.mul(sub.embedding[restricted.sheetOf(r)], g0));
            if (dist[embedding[r]] == kUnreachable)
                throw Error("internal: restricted cover does not embed in its component");
        }
        for (auto [x, y] : restricted.edges())
        {
            if (!cover.hasEdge(embedding[x], embedding[y]))
                throw Error("internal: restricted cover edge is not a component edge");
        }
        out.push_back(ComponentReport{std::move(vertices), std::move(stabilizer), std::move(restricted),
                                      std::move(embedding)});
    }
    return out;
}

InducedQuotient inducedQuotient(const CoverGraph& cover, std::span<const Element> normal_subgroup)
{
    const FiniteGroup& grp = cover.group();
    QuotientTable q = quotientGroup(grp, normal_subgroup);
    std::vector<Element> images;
    for (Element x : cover.hom().images())
        images.push_back(q.projection[x]);
    CoverGraph intermediate = buildCover(cover.hom().sourcePtr(), shareGroup(std::move(q.group)), std::move(images));

    std::vector<CoverVertex> vertex_map(cover.vertexCount());
    for (CoverVertex x = 0; x < cover.vertexCount(); ++x)
    {
        vertex_map[x] = intermediate.vertex(cover.baseOf(x), q.projection[cover.sheetOf(x)]);
        if (intermediate.baseOf(vertex_map[x]) != cover.baseOf(x))
            throw Error("internal: induced quotient does not commute with projections");
    }
    for (auto [x, y] : cover.edges())
    {
        if (!intermediate.hasEdge(vertex_map[x], vertex_map[y]))
            throw Error("internal: induced quotient map does not preserve edges");
    }
    return InducedQuotient{std::move(intermediate), std::move(q.projection), std::move(vertex_map)};
}

BondingMap bondingMap(const CoverGraph& upper, const CoverGraph& lower)
{
    requireSameBase(upper, lower);
    if (!upper.isConnected())
        throw DomainError("bonding maps start from a connected cover");
    auto theta = extendHomomorphism(upper.group(), upper.hom().images(), lower.group(), lower.hom().images());
    if (!theta)
        throw DomainError("no bonding map: the upper kernel is not contained in the lower kernel");

    BondingMap map{std::move(*theta), {}};
    map.vertex_map.resize(upper.vertexCount());
    for (CoverVertex x = 0; x < upper.vertexCount(); ++x)
        map.vertex_map[x] = lower.vertex(upper.baseOf(x), map.theta[upper.sheetOf(x)]);
    if (!verifyBondingMap(upper, lower, map))
        throw Error("internal: constructed bonding map fails verification");
    return map;
}

bool verifyBondingMap(const CoverGraph& upper, const CoverGraph& lower, const BondingMap& map)
{
    if (map.theta.size() != upper.group().order() || map.vertex_map.size() != upper.vertexCount())
        return false;
    if (!isHomomorphism(upper.group(), lower.group(), map.theta))
        return false;
    std::vector<bool> hit(lower.group().order(), false);
    for (Element t : map.theta)
        hit[t] = true;
    if (lower.isConnected() && std::find(hit.begin(), hit.end(), false) != hit.end())
        return false;
    for (CoverVertex x = 0; x < upper.vertexCount(); ++x)
    {
        if (map.vertex_map[x] >= lower.vertexCount() || lower.baseOf(map.vertex_map[x]) != upper.baseOf(x))
            return false;
        for (Element g = 0; g < upper.group().order(); ++g)
        {
            if (map.vertex_map[upper.act(g, x)] != lower.act(map.theta[g], map.vertex_map[x]))
                return false;
        }
    }
    for (auto [x, y] : upper.edges())
    {
        if (!lower.hasEdge(map.vertex_map[x], map.vertex_map[y]))
            return false;
    }
    return true;
}

CompositeCover composeCovers(const CoverGraph& upper, const CoverGraph& lower)
{
    const ScaleGraph& ybase = upper.base();
    if (ybase.size() != lower.vertexCount() || ybase.edges() != lower.edges()
        || ybase.basepoint() != lower.basepoint())
        throw DomainError("upper cover is not a cover of the lower cover's total graph");

    const FiniteGroup& h_grp = upper.group();
    const FiniteGroup& g_grp = lower.group();
    const std::size_t nz = upper.vertexCount();
    const PointId x_root = lower.base().basepoint();
    const CoverVertex z0 = upper.basepoint();
    auto toX = [&](CoverVertex z) { return lower.baseOf(upper.baseOf(z)); };

    std::vector<CoverVertex> fiber;
    for (CoverVertex z = 0; z < nz; ++z)
    {
        if (toX(z) == x_root)
            fiber.push_back(z);
    }
    if (fiber.front() != z0)
        throw Error("internal: basepoint is not first in its fiber");
    std::vector<Element> fiber_index(nz, kUndefined);
    for (std::size_t i = 0; i < fiber.size(); ++i)
        fiber_index[fiber[i]] = i;

    // BFS tree of Z from z0; deck maps are propagated along it.
    std::vector<CoverVertex> order{z0}, parent(nz, kUndefined);
    parent[z0] = z0;
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        for (CoverVertex w : upper.neighbors(order[i]))
        {
            if (parent[w] == kUndefined)
            {
                parent[w] = order[i];
                order.push_back(w);
            }
        }
    }
    if (order.size() != nz)
        throw DomainError("composite needs a connected upper cover");

    // k_x(z): push a path z0 -> z down to Y, translate it by the lower deck
    // element j_x with j_x(*) = g(x), lift it back at x.
    std::vector<std::vector<CoverVertex>> deck(fiber.size(), std::vector<CoverVertex>(nz));
    for (std::size_t i = 0; i < fiber.size(); ++i)
    {
        const Element j = lower.sheetOf(upper.baseOf(fiber[i]));
        auto& k = deck[i];
        k[z0] = fiber[i];
        for (std::size_t t = 1; t < order.size(); ++t)
        {
            const CoverVertex w = order[t], u = parent[w];
            const CoverVertex yu = lower.act(j, upper.baseOf(u)), yw = lower.act(j, upper.baseOf(w));
            k[w] = upper.vertex(yw, h_grp.mul(upper.sheetOf(k[u]), upper.edgeLabel(yu, yw)));
        }
        for (auto [a, b] : upper.edges())
        {
            if (!upper.hasEdge(k[a], k[b]))
                throw DomainError("composite of the two covers is not regular");
        }
    }

    std::vector<std::vector<Element>> table(fiber.size(), std::vector<Element>(fiber.size()));
    for (std::size_t a = 0; a < fiber.size(); ++a)
    {
        for (std::size_t b = 0; b < fiber.size(); ++b)
        {
            const Element c = fiber_index[deck[a][fiber[b]]];
            for (CoverVertex z = 0; z < nz; ++z)
            {
                if (deck[a][deck[b][z]] != deck[c][z])
                    throw Error("internal: composite deck maps are not closed under composition");
            }
            table[a][b] = c;
        }
    }
    auto k_grp = shareGroup(FiniteGroup::fromTable("K", table));

    // Composite hom: lift each generator loop of X through both covers.
    const GroupPresentation& xpres = lower.presentation();
    auto liftToZ = [&](const EChain& chain) {
        std::vector<CoverVertex> ys = liftChain(lower, chain, lower.basepoint());
        return liftChain(upper, validateChain(upper.basePtr(), ys), z0);
    };
    std::vector<Element> images;
    for (std::size_t g = 0; g < xpres.generatorCount(); ++g)
        images.push_back(fiber_index[liftToZ(xpres.generatorLoop(g)).back()]);
    CoverGraph composite = buildCover(lower.hom().sourcePtr(), k_grp, std::move(images));

    std::vector<CoverVertex> vertex_map(composite.vertexCount());
    std::vector<bool> hit(nz, false);
    for (PointId v = 0; v < lower.base().size(); ++v)
    {
        const CoverVertex zv = liftToZ(validateChain(lower.basePtr(), xpres.treePath(v))).back();
        for (Element k = 0; k < k_grp->order(); ++k)
        {
            const CoverVertex z = deck[k][zv];
            if (hit[z])
                throw Error("internal: composite vertex map is not injective");
            hit[z] = true;
            vertex_map[composite.vertex(v, k)] = z;
        }
    }
    for (auto [a, b] : composite.edges())
    {
        if (!upper.hasEdge(vertex_map[a], vertex_map[b]))
            throw Error("internal: composite vertex map does not preserve edges");
    }

    std::vector<Element> embedding(h_grp.order());
    for (Element h = 0; h < h_grp.order(); ++h)
    {
        embedding[h] = fiber_index[upper.act(h, z0)];
        for (CoverVertex z = 0; z < nz; ++z)
        {
            if (deck[embedding[h]][z] != upper.act(h, z))
                throw Error("internal: upper deck element is not a composite deck element");
        }
    }
    if (k_grp->normalityCounterexample(embedding))
        throw Error("internal: upper deck group is not normal in the composite deck group");

    std::vector<Element> theta(k_grp->order());
    for (Element k = 0; k < k_grp->order(); ++k)
        theta[k] = lower.sheetOf(upper.baseOf(fiber[k]));
    if (!isHomomorphism(*k_grp, g_grp, theta))
        throw Error("internal: composite-to-lower deck map is not a homomorphism");
    std::vector<Element> kernel;
    for (Element k = 0; k < k_grp->order(); ++k)
    {
        if (theta[k] == g_grp.identity())
            kernel.push_back(k);
    }
    std::vector<Element> sorted_embedding = embedding;
    std::sort(sorted_embedding.begin(), sorted_embedding.end());
    if (kernel != sorted_embedding)
        throw Error("internal: kernel of the composite-to-lower map is not the upper deck group");

    return CompositeCover{std::move(composite), std::move(embedding), std::move(theta), std::move(vertex_map)};
}

bool kernelsCoincide(const CoverGraph& a, const CoverGraph& b)
{
    requireSameBase(a, b);
    if (a.group().order() != b.group().order()
        || a.hom().imageSubgroup().size() != b.hom().imageSubgroup().size())
        return false;
    auto sigma = extendHomomorphism(a.group(), a.hom().images(), b.group(), b.hom().images());
    if (!sigma)
        return false;
    std::vector<bool> hit(b.group().order(), false);
    for (Element y : *sigma)
    {
        if (y == kUndefined)
            continue;
        if (hit[y])
            return false;
        hit[y] = true;
    }
    return true;
}

bool equivalenceCheck(const CoverGraph& a, const CoverGraph& b)
{
    requireSameBase(a, b);
    if (a.hom().targetPtr() == b.hom().targetPtr() && !a.group().automorphisms().empty())
    {
        const auto& x = a.hom().images();
        const auto& y = b.hom().images();
        for (const auto& sigma : a.group().automorphisms())
        {
            bool match = true;
            for (std::size_t i = 0; i < x.size() && match; ++i)
                match = sigma[x[i]] == y[i];
            if (match)
                return true;
        }
        return false;
    }
    return kernelsCoincide(a, b);
}

void writeDot(std::ostream& out, const CoverGraph& cover, const std::string& name)
{
    const std::size_t order = cover.group().order();
    auto label = [&](CoverVertex x) {
        return "v" + std::to_string(cover.baseOf(x)) + "_g" + std::to_string(cover.sheetOf(x));
    };
    out << "graph " << name << " {\n";
    out << "  // base points " << cover.base().size() << ", deck " << cover.group().name() << " (order " << order
        << ")\n";
    for (CoverVertex x = 0; x < cover.vertexCount(); ++x)
        out << "  " << label(x) << " [colorscheme=set312, color=" << (cover.sheetOf(x) % 12 + 1) << "];\n";
    for (auto [x, y] : cover.edges())
        out << "  " << label(x) << " -- " << label(y) << ";\n";
    out << "}\n";
}

}   // namespace chainlift
