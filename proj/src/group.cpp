#include "chainlift/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "chainlift/error.hpp"

namespace chainlift {

FiniteGroup FiniteGroup::fromTable(std::string name, const std::vector<std::vector<Element>>& table, Check check)
{
    const std::size_t n = table.size();
    if (n == 0)
        throw DomainError("a group has at least one element");
    FiniteGroup g;
    g.order_ = n;
    g.name_ = std::move(name);
    g.mult_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
    {
        if (table[a].size() != n)
            throw DomainError("multiplication table is not square");
        std::vector<bool> seen(n, false);
        for (std::size_t b = 0; b < n; ++b)
        {
            Element c = table[a][b];
            if (c >= n || seen[c])
                throw DomainError("multiplication table row " + std::to_string(a) + " is not a permutation");
            seen[c] = true;
            g.mult_[a * n + b] = c;
        }
    }
    g.inverse_.assign(n, kUndefined);
    for (Element a = 0; a < n; ++a)
    {
        for (Element b = 0; b < n; ++b)
        {
            if (g.mul(a, b) == 0)
                g.inverse_[a] = b;
        }
    }
    for (Element a = 0; a < n; ++a)
    {
        if (g.mul(0, a) != a || g.mul(a, 0) != a || g.inverse_[a] == kUndefined || g.mul(g.inverse_[a], a) != 0)
            throw DomainError("table does not have identity 0 with two-sided inverses");
    }
    if (check == Check::Full && !g.verifyAxioms())
        throw DomainError("table is not associative");
    return g;
}

FiniteGroup FiniteGroup::trivial()
{
    return cyclic(1);
}

FiniteGroup FiniteGroup::cyclic(std::size_t n)
{
    if (n == 0)
        throw DomainError("cyclic group order must be positive");
    FiniteGroup g;
    g.order_ = n;
    g.name_ = "Z" + std::to_string(n);
    g.mult_.resize(n * n);
    g.inverse_.resize(n);
    for (Element a = 0; a < n; ++a)
    {
        for (Element b = 0; b < n; ++b)
            g.mult_[a * n + b] = (a + b) % n;
        g.inverse_[a] = (n - a) % n;
    }
    return g;
}

FiniteGroup FiniteGroup::directProduct(const FiniteGroup& a, const FiniteGroup& b, std::string name)
{
    FiniteGroup g;
    const std::size_t na = a.order(), nb = b.order();
    g.order_ = na * nb;
    g.name_ = name.empty() ? a.name() + "x" + b.name() : std::move(name);
    g.mult_.resize(g.order_ * g.order_);
    g.inverse_.resize(g.order_);
    for (Element x = 0; x < g.order_; ++x)
    {
        for (Element y = 0; y < g.order_; ++y)
            g.mult_[x * g.order_ + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
        g.inverse_[x] = a.inverse(x / nb) * nb + b.inverse(x % nb);
    }
    return g;
}

FiniteGroup FiniteGroup::metacyclic(std::string name, std::size_t m, std::size_t k, std::size_t r, std::size_t s)
{
    if (m == 0 || k == 0)
        throw DomainError("metacyclic parameters must be positive");
    std::vector<std::size_t> rpow(k + 1, 1 % m);
    for (std::size_t j = 1; j <= k; ++j)
        rpow[j] = (rpow[j - 1] * r) % m;
    if (rpow[k] != 1 % m || (s * (r + m - 1)) % m != 0)
        throw DomainError("metacyclic parameters do not define a group of order m*k");

    const std::size_t n = m * k;
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    for (Element x = 0; x < n; ++x)
    {
        const std::size_t i = x % m, j = x / m;
        for (Element y = 0; y < n; ++y)
        {
            const std::size_t i2 = y % m, j2 = y / m;
            std::size_t a = (i + i2 * rpow[j]) % m;
            std::size_t b = j + j2;
            if (b >= k)
            {
                b -= k;
                a = (a + s) % m;
            }
            table[x][y] = b * m + a;
        }
    }
    return fromTable(std::move(name), table);
}

FiniteGroup FiniteGroup::dihedral(std::size_t n)
{
    if (n < 1)
        throw DomainError("dihedral group needs n >= 1");
    return metacyclic("D" + std::to_string(2 * n), n, 2, n - 1, 0);
}

FiniteGroup FiniteGroup::semidirect(std::string name, const FiniteGroup& normal, const FiniteGroup& acting,
                                    const std::vector<std::vector<Element>>& action)
{
    const std::size_t nn = normal.order(), nh = acting.order();
    if (action.size() != nh)
        throw DomainError("semidirect product needs one automorphism per acting element");
    for (const auto& perm : action)
    {
        if (!normal.isAutomorphism(perm))
            throw DomainError("semidirect action is not by automorphisms");
    }
    const std::size_t n = nn * nh;
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    for (Element x = 0; x < n; ++x)
    {
        const Element a = x % nn, h = x / nn;
        for (Element y = 0; y < n; ++y)
        {
            const Element a2 = y % nn, h2 = y / nn;
            table[x][y] = acting.mul(h, h2) * nn + normal.mul(a, action[h][a2]);
        }
    }
    return fromTable(std::move(name), table);
}

Element FiniteGroup::power(Element a, long long k) const
{
    if (k < 0)
        return power(inverse(a), -k);
    Element result = identity();
    Element base = a;
    while (k > 0)
    {
        if (k & 1)
            result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::size_t FiniteGroup::elementOrder(Element a) const
{
    std::size_t k = 1;
    for (Element x = a; x != identity(); x = mul(x, a))
        ++k;
    return k;
}

bool FiniteGroup::isAbelian() const
{
    for (Element a = 0; a < order_; ++a)
    {
        for (Element b = a + 1; b < order_; ++b)
        {
            if (mul(a, b) != mul(b, a))
                return false;
        }
    }
    return true;
}

std::size_t FiniteGroup::centerSize() const
{
    std::size_t count = 0;
    for (Element a = 0; a < order_; ++a)
    {
        bool central = true;
        for (Element b = 0; b < order_ && central; ++b)
            central = mul(a, b) == mul(b, a);
        count += central ? 1 : 0;
    }
    return count;
}

std::map<std::size_t, std::size_t> FiniteGroup::orderProfile() const
{
    std::map<std::size_t, std::size_t> profile;
    for (Element a = 0; a < order_; ++a)
        ++profile[elementOrder(a)];
    return profile;
}

bool FiniteGroup::verifyAxioms() const
{
    for (Element a = 0; a < order_; ++a)
    {
        if (mul(0, a) != a || mul(a, 0) != a)
            return false;
        if (inverse_[a] >= order_ || mul(a, inverse_[a]) != 0 || mul(inverse_[a], a) != 0)
            return false;
    }
    for (Element a = 0; a < order_; ++a)
    {
        for (Element b = 0; b < order_; ++b)
        {
            const Element ab = mul(a, b);
            for (Element c = 0; c < order_; ++c)
            {
                if (mul(ab, c) != mul(a, mul(b, c)))
                    return false;
            }
        }
    }
    return true;
}

std::vector<Element> FiniteGroup::generatedSubgroup(std::span<const Element> gens) const
{
    std::vector<bool> seen(order_, false);
    std::deque<Element> queue{identity()};
    seen[identity()] = true;
    while (!queue.empty())
    {
        Element x = queue.front();
        queue.pop_front();
        for (Element g : gens)
        {
            Element y = mul(x, g);
            if (!seen[y])
            {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    std::vector<Element> out;
    for (Element x = 0; x < order_; ++x)
    {
        if (seen[x])
            out.push_back(x);
    }
    return out;
}

bool FiniteGroup::isSubgroup(std::span<const Element> subset) const
{
    std::vector<bool> in(order_, false);
    for (Element x : subset)
    {
        if (x >= order_)
            return false;
        in[x] = true;
    }
    if (subset.empty() || !in[identity()])
        return false;
    for (Element a : subset)
    {
        for (Element b : subset)
        {
            if (!in[mul(a, inverse(b))])
                return false;
        }
    }
    return true;
}

std::optional<std::pair<Element, Element>> FiniteGroup::normalityCounterexample(std::span<const Element> subgroup) const
{
    std::vector<bool> in(order_, false);
    for (Element x : subgroup)
        in[x] = true;
    for (Element g = 0; g < order_; ++g)
    {
        for (Element k : subgroup)
        {
            if (!in[conjugate(g, k)])
                return std::make_pair(g, k);
        }
    }
    return std::nullopt;
}

std::vector<Element> FiniteGroup::generatingSet() const
{
    std::vector<Element> gens;
    std::size_t size = 1;
    while (size < order_)
    {
        Element best = 0;
        std::size_t best_size = size;
        std::vector<Element> current = generatedSubgroup(gens);
        std::vector<bool> in(order_, false);
        for (Element x : current)
            in[x] = true;
        for (Element x = 1; x < order_; ++x)
        {
            if (in[x])
                continue;
            gens.push_back(x);
            std::size_t s = generatedSubgroup(gens).size();
            gens.pop_back();
            if (s > best_size)
            {
                best = x;
                best_size = s;
                if (s == order_)
                    break;
            }
        }
        gens.push_back(best);
        size = best_size;
    }
    return gens;
}

bool FiniteGroup::isAutomorphism(std::span<const Element> perm) const
{
    if (perm.size() != order_)
        return false;
    std::vector<bool> seen(order_, false);
    for (Element x : perm)
    {
        if (x >= order_ || seen[x])
            return false;
        seen[x] = true;
    }
    return isHomomorphism(*this, *this, perm);
}

FiniteGroup FiniteGroup::withAutomorphisms() const
{
    FiniteGroup g = *this;
    g.automorphisms_ = computeAutomorphisms(*this);
    return g;
}

FiniteGroup FiniteGroup::renamed(std::string name) const
{
    FiniteGroup g = *this;
    g.name_ = std::move(name);
    return g;
}

std::optional<std::vector<Element>> extendHomomorphism(const FiniteGroup& src, std::span<const Element> src_gens,
                                                       const FiniteGroup& dst, std::span<const Element> dst_gens)
{
    if (src_gens.size() != dst_gens.size())
        throw DomainError("generator lists differ in length");
    std::vector<Element> map(src.order(), kUndefined);
    map[src.identity()] = dst.identity();
    std::deque<Element> queue{src.identity()};
    while (!queue.empty())
    {
        Element x = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < src_gens.size(); ++i)
        {
            Element y = src.mul(x, src_gens[i]);
            Element image = dst.mul(map[x], dst_gens[i]);
            if (map[y] == kUndefined)
            {
                map[y] = image;
                queue.push_back(y);
            }
            else if (map[y] != image)
            {
                return std::nullopt;
            }
        }
    }
    return map;
}

namespace {

// Calls `visit` with each total bijective extension of gens -> candidates;
// stops early when `visit` returns false.
template <typename Visit>
void searchIsomorphisms(const FiniteGroup& a, const FiniteGroup& b, Visit visit)
{
    if (a.order() != b.order())
        return;
    const std::vector<Element> gens = a.generatingSet();
    std::vector<std::vector<Element>> candidates;
    for (Element g : gens)
    {
        std::vector<Element> c;
        const std::size_t ord = a.elementOrder(g);
        for (Element x = 0; x < b.order(); ++x)
        {
            if (b.elementOrder(x) == ord)
                c.push_back(x);
        }
        if (c.empty())
            return;
        candidates.push_back(std::move(c));
    }

    std::vector<std::size_t> choice(gens.size(), 0);
    std::vector<Element> images(gens.size());
    for (;;)
    {
        for (std::size_t i = 0; i < gens.size(); ++i)
            images[i] = candidates[i][choice[i]];
        if (auto map = extendHomomorphism(a, gens, b, images))
        {
            std::vector<bool> hit(b.order(), false);
            bool bijective = true;
            for (Element y : *map)
            {
                if (y == kUndefined || hit[y])
                {
                    bijective = false;
                    break;
                }
                hit[y] = true;
            }
            if (bijective && !visit(*map))
                return;
        }
        std::size_t i = gens.size();
        while (i > 0)
        {
            --i;
            if (++choice[i] < candidates[i].size())
                break;
            choice[i] = 0;
            if (i == 0)
                return;
        }
        if (gens.empty())
            return;
    }
}

}   // namespace

std::vector<std::vector<Element>> computeAutomorphisms(const FiniteGroup& g)
{
    std::vector<std::vector<Element>> out;
    if (g.order() == 1)
        return {{0}};
    searchIsomorphisms(g, g, [&](const std::vector<Element>& map) {
        out.push_back(map);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<Element>> findIsomorphism(const FiniteGroup& a, const FiniteGroup& b)
{
    if (a.order() != b.order() || a.orderProfile() != b.orderProfile())
        return std::nullopt;
    if (a.order() == 1)
        return std::vector<Element>{0};
    std::optional<std::vector<Element>> found;
    searchIsomorphisms(a, b, [&](const std::vector<Element>& map) {
        found = map;
        return false;
    });
    return found;
}

SubgroupTable subgroupTable(const FiniteGroup& g, std::span<const Element> elements, std::string name)
{
    std::vector<Element> sorted(elements.begin(), elements.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!g.isSubgroup(sorted))
        throw DomainError("subset is not a subgroup");
    std::vector<Element> index(g.order(), kUndefined);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        index[sorted[i]] = i;
    std::vector<std::vector<Element>> table(sorted.size(), std::vector<Element>(sorted.size()));
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        for (std::size_t j = 0; j < sorted.size(); ++j)
            table[i][j] = index[g.mul(sorted[i], sorted[j])];
    }
    if (name.empty())
        name = "sub(" + g.name() + ")";
    return SubgroupTable{FiniteGroup::fromTable(std::move(name), table, FiniteGroup::Check::Inherited),
                         std::move(sorted)};
}

QuotientTable quotientGroup(const FiniteGroup& g, std::span<const Element> normal_subgroup)
{
    if (!g.isSubgroup(normal_subgroup))
        throw NotNormalError("subset is not a subgroup of " + g.name());
    if (auto bad = g.normalityCounterexample(normal_subgroup))
    {
        throw NotNormalError("subgroup is not normal: conjugating " + std::to_string(bad->second) + " by "
                             + std::to_string(bad->first) + " leaves it");
    }
    std::vector<Element> projection(g.order(), kUndefined);
    std::vector<Element> reps;
    for (Element x = 0; x < g.order(); ++x)
    {
        if (projection[x] != kUndefined)
            continue;
        const Element coset = reps.size();
        reps.push_back(x);
        for (Element k : normal_subgroup)
            projection[g.mul(x, k)] = coset;
    }
    std::vector<std::vector<Element>> table(reps.size(), std::vector<Element>(reps.size()));
    for (std::size_t i = 0; i < reps.size(); ++i)
    {
        for (std::size_t j = 0; j < reps.size(); ++j)
            table[i][j] = projection[g.mul(reps[i], reps[j])];
    }
    return QuotientTable{FiniteGroup::fromTable(g.name() + "/K", table, FiniteGroup::Check::Inherited),
                         std::move(projection)};
}

bool isHomomorphism(const FiniteGroup& a, const FiniteGroup& b, std::span<const Element> map)
{
    if (map.size() != a.order())
        return false;
    for (Element x : map)
    {
        if (x >= b.order())
            return false;
    }
    for (Element x = 0; x < a.order(); ++x)
    {
        for (Element y = 0; y < a.order(); ++y)
        {
            if (map[a.mul(x, y)] != b.mul(map[x], map[y]))
                return false;
        }
    }
    return true;
}

}   // namespace chainlift
