#include "chainlift/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "chainlift/error.hpp"

namespace chainlift {

namespace {

FiniteGroup product(std::initializer_list<FiniteGroup> parts, std::string name)
{
    auto it = parts.begin();
    FiniteGroup g = *it;
    for (++it; it != parts.end(); ++it)
        g = FiniteGroup::directProduct(g, *it);
    return g.renamed(std::move(name));
}

/** Powers of one automorphism of `n`, as a semidirect action of the cyclic group of its order. */
std::vector<std::vector<Element>> cyclicAction(const FiniteGroup& n, const std::vector<Element>& perm,
                                               std::size_t order)
{
    std::vector<std::vector<Element>> action;
    std::vector<Element> current(n.order());
    for (Element x = 0; x < n.order(); ++x)
        current[x] = x;
    for (std::size_t k = 0; k < order; ++k)
    {
        action.push_back(current);
        for (Element& x : current)
            x = perm[x];
    }
    return action;
}

std::vector<FiniteGroup> catalogTables()
{
    const FiniteGroup z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3), z4 = FiniteGroup::cyclic(4);
    const FiniteGroup z4z2 = product({z4, z2}, "Z4xZ2");   // (x, y) at x * 2 + y

    std::vector<Element> a4_perm{0, 3, 1, 2};
    std::vector<Element> shear(8), pauli(8);
    for (Element x = 0; x < 4; ++x)
    {
        for (Element y = 0; y < 2; ++y)
        {
            shear[x * 2 + y] = x * 2 + (y + x) % 2;
            pauli[x * 2 + y] = ((x + 2 * y) % 4) * 2 + y;
        }
    }

    std::vector<FiniteGroup> out;
    out.push_back(FiniteGroup::trivial());
    out.push_back(z2);
    out.push_back(z3);
    out.push_back(z4);
    out.push_back(product({z2, z2}, "Z2xZ2"));
    out.push_back(FiniteGroup::cyclic(5));
    out.push_back(FiniteGroup::cyclic(6));
    out.push_back(FiniteGroup::dihedral(3).renamed("S3"));
    out.push_back(FiniteGroup::cyclic(7));
    out.push_back(FiniteGroup::cyclic(8));
    out.push_back(z4z2);
    out.push_back(product({z2, z2, z2}, "Z2^3"));
    out.push_back(FiniteGroup::dihedral(4));
    out.push_back(FiniteGroup::metacyclic("Q8", 4, 2, 3, 2));
    out.push_back(FiniteGroup::cyclic(9));
    out.push_back(product({z3, z3}, "Z3xZ3"));
    out.push_back(FiniteGroup::cyclic(10));
    out.push_back(FiniteGroup::dihedral(5));
    out.push_back(FiniteGroup::cyclic(11));
    out.push_back(FiniteGroup::cyclic(12));
    out.push_back(product({FiniteGroup::cyclic(6), z2}, "Z6xZ2"));
    out.push_back(FiniteGroup::dihedral(6));
    const FiniteGroup v4 = product({z2, z2}, "Z2xZ2");
    out.push_back(FiniteGroup::semidirect("A4", v4, z3, cyclicAction(v4, a4_perm, 3)));
    out.push_back(FiniteGroup::metacyclic("Dic12", 6, 2, 5, 3));
    out.push_back(FiniteGroup::cyclic(13));
    out.push_back(FiniteGroup::cyclic(14));
    out.push_back(FiniteGroup::dihedral(7));
    out.push_back(FiniteGroup::cyclic(15));
    out.push_back(FiniteGroup::cyclic(16));
    out.push_back(product({z4, z4}, "Z4xZ4"));
    out.push_back(product({FiniteGroup::cyclic(8), z2}, "Z8xZ2"));
    out.push_back(FiniteGroup::semidirect("(Z4xZ2):Z2", z4z2, z2, cyclicAction(z4z2, shear, 2)));
    out.push_back(FiniteGroup::metacyclic("Z4:Z4", 4, 4, 3, 0));
    out.push_back(FiniteGroup::metacyclic("M16", 8, 2, 5, 0));
    out.push_back(FiniteGroup::dihedral(8));
    out.push_back(FiniteGroup::metacyclic("SD16", 8, 2, 3, 0));
    out.push_back(FiniteGroup::metacyclic("Q16", 8, 2, 7, 4));
    out.push_back(product({z4, z2, z2}, "Z4xZ2xZ2"));
    out.push_back(product({FiniteGroup::dihedral(4), z2}, "D8xZ2"));
    out.push_back(product({FiniteGroup::metacyclic("Q8", 4, 2, 3, 2), z2}, "Q8xZ2"));
    out.push_back(FiniteGroup::semidirect("Pauli", z4z2, z2, cyclicAction(z4z2, pauli, 2)));
    out.push_back(product({z2, z2, z2, z2}, "Z2^4"));
    return out;
}

}   // namespace

SmallGroupCatalog::SmallGroupCatalog()
{
    for (FiniteGroup& g : catalogTables())
        groups_.push_back(shareGroup(g.withAutomorphisms()));
}

const SmallGroupCatalog& SmallGroupCatalog::instance()
{
    static const SmallGroupCatalog catalog;
    return catalog;
}

std::vector<GroupPtr> SmallGroupCatalog::groupsOfOrder(std::size_t n) const
{
    std::vector<GroupPtr> out;
    for (const GroupPtr& g : groups_)
    {
        if (g->order() == n)
            out.push_back(g);
    }
    return out;
}

GroupPtr SmallGroupCatalog::find(const std::string& name) const
{
    for (const GroupPtr& g : groups_)
    {
        if (g->name() == name)
            return g;
    }
    return nullptr;
}

std::vector<GroupHom> surjectionsOnto(const PresentationPtr& presentation, const GroupPtr& target)
{
    const std::size_t k = presentation->generatorCount();
    const FiniteGroup& grp = *target;

    // Each relator is tested as soon as its largest generator is assigned.
    std::vector<std::vector<const Word*>> due(k);
    for (const Word& r : presentation->relators())
    {
        if (r.empty())
            continue;
        std::size_t last = 0;
        for (const Letter& l : r.letters())
            last = std::max(last, l.generator);
        due[last].push_back(&r);
    }

    std::vector<GroupHom> out;
    std::vector<Element> images(k, 0);
    auto killed = [&](const Word& r) {
        Element x = grp.identity();
        for (const Letter& l : r.letters())
            x = grp.mul(x, l.exponent > 0 ? images[l.generator] : grp.inverse(images[l.generator]));
        return x == grp.identity();
    };
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i == k)
        {
            if (grp.generatedSubgroup(images).size() == grp.order())
                out.emplace_back(presentation, target, images);
            return;
        }
        for (Element x = 0; x < grp.order(); ++x)
        {
            images[i] = x;
            if (std::all_of(due[i].begin(), due[i].end(), [&](const Word* r) { return killed(*r); }))
                assign(i + 1);
        }
    };
    assign(0);
    return out;
}

std::vector<Element> canonicalSignature(const FiniteGroup& target, const std::vector<Element>& images)
{
    if (target.automorphisms().empty())
        throw DomainError("group " + target.name() + " has no automorphism list attached");
    std::vector<Element> best = images;
    std::vector<Element> moved(images.size());
    for (const auto& sigma : target.automorphisms())
    {
        for (std::size_t i = 0; i < images.size(); ++i)
            moved[i] = sigma[images[i]];
        if (moved < best)
            best = moved;
    }
    return best;
}

std::string KernelRecord::signatureText() const
{
    std::string out = target->name() + ":";
    for (std::size_t i = 0; i < signature.size(); ++i)
        out += (i ? "," : "") + std::to_string(signature[i]);
    return out;
}

std::vector<KernelRecord> normalSubgroupsOfIndex(const PresentationPtr& presentation, std::size_t n,
                                                 const SmallGroupCatalog& catalog)
{
    if (n == 0)
        throw DomainError("index must be positive");
    if (n > catalog.maxOrder())
        throw UnsupportedError("index " + std::to_string(n) + " exceeds the catalog bound "
                               + std::to_string(catalog.maxOrder()));
    std::vector<KernelRecord> out;
    for (const GroupPtr& target : catalog.groupsOfOrder(n))
    {
        std::set<std::vector<Element>> signatures;
        for (const GroupHom& hom : surjectionsOnto(presentation, target))
            signatures.insert(canonicalSignature(*target, hom.images()));
        for (const auto& sig : signatures)
            out.push_back(KernelRecord{n, target, GroupHom(presentation, target, sig), sig});
    }
    return out;
}

CoverCount countNfoldCovers(const GraphPtr& graph, std::size_t n)
{
    auto pres = sharePresentation(presentationAtScale(graph));
    CoverCount result{0, normalSubgroupsOfIndex(pres, n), {}};
    result.count = result.kernels.size();
    for (const KernelRecord& k : result.kernels)
        result.covers.push_back(buildCover(k.representative));
    return result;
}

FactorReport factorBoundReport(const GraphPtr& graph, std::size_t n_max)
{
    if (n_max > SmallGroupCatalog::maxOrder())
        throw UnsupportedError("n_max " + std::to_string(n_max) + " exceeds the catalog bound "
                               + std::to_string(SmallGroupCatalog::maxOrder()));
    auto pres = sharePresentation(presentationAtScale(graph));
    FactorReport report;
    std::uint64_t bound = 1;
    for (std::size_t n = 1; n <= n_max; ++n)
    {
        bound *= n;
        FactorEntry e{n, 0, bound, false, {}};
        for (const KernelRecord& k : normalSubgroupsOfIndex(pres, n))
            e.kernels.push_back(k.signatureText());
        e.count = e.kernels.size();
        e.flagged = e.count > bound;
        if (e.flagged)
            report.warnings.push_back("n=" + std::to_string(n) + ": " + std::to_string(e.count)
                                      + " non-equivalent regular covers exceed the bound " + std::to_string(bound));
        report.entries.push_back(std::move(e));
    }
    return report;
}

}   // namespace chainlift
