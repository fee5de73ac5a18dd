/**
 * Finite groups given by full multiplication tables.
 *
 * Elements are indices 0..order-1 with the identity at 0. Tables are small
 * (catalog groups have order <= 16, tower decks stay in the hundreds), so
 * every structural query is answered by direct scans.
 */
#ifndef CHAINLIFT_GROUP_HPP
#define CHAINLIFT_GROUP_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chainlift {

using Element = std::size_t;

/** Marks elements outside the domain of a partial map. */
inline constexpr Element kUndefined = static_cast<Element>(-1);

class FiniteGroup
{
    private:
        std::size_t order_ = 0;
        std::string name_;
        std::vector<Element> mult_;
        std::vector<Element> inverse_;
        std::vector<std::vector<Element>> automorphisms_;

        FiniteGroup() = default;

    public:
        enum class Check
        {
            Full,
            /** Skip the cubic associativity scan for tables derived from a group. */
            Inherited
        };

        /** Validates closure, identity at 0, inverses and associativity. */
        static FiniteGroup fromTable(std::string name, const std::vector<std::vector<Element>>& table,
                                     Check check = Check::Full);

        static FiniteGroup trivial();
        static FiniteGroup cyclic(std::size_t n);

        /** Pairs (a,b) indexed a * |B| + b. */
        static FiniteGroup directProduct(const FiniteGroup& a, const FiniteGroup& b, std::string name = "");

        /**
         * Metacyclic group <a, b | a^m, b^k = a^s, b a b^-1 = a^r> of order
         * m*k; element a^i b^j has index j*m + i. Requires r^k = 1 and
         * s(r-1) = 0 mod m.
         */
        static FiniteGroup metacyclic(std::string name, std::size_t m, std::size_t k, std::size_t r, std::size_t s);

        /** Dihedral group of order 2n (symmetries of the n-gon). */
        static FiniteGroup dihedral(std::size_t n);

        /**
         * N x| H with (n,h)(n',h') = (n * action[h](n'), h h'), indexed
         * h * |N| + n. `action[h]` must be an automorphism of N and
         * h -> action[h] a homomorphism.
         */
        static FiniteGroup semidirect(std::string name, const FiniteGroup& normal, const FiniteGroup& acting,
                                      const std::vector<std::vector<Element>>& action);

        std::size_t order() const { return order_; }
        const std::string& name() const { return name_; }

        Element identity() const { return 0; }
        Element mul(Element a, Element b) const { return mult_[a * order_ + b]; }
        Element inverse(Element a) const { return inverse_[a]; }
        Element power(Element a, long long k) const;
        Element conjugate(Element g, Element x) const { return mul(mul(g, x), inverse(g)); }

        std::size_t elementOrder(Element a) const;
        bool isAbelian() const;
        std::size_t centerSize() const;

        /** Number of elements of each order. */
        std::map<std::size_t, std::size_t> orderProfile() const;

        /** Full scan of the group axioms (cubic in the order). */
        bool verifyAxioms() const;

        /** Sorted element list of the subgroup generated by `gens`. */
        std::vector<Element> generatedSubgroup(std::span<const Element> gens) const;

        bool isSubgroup(std::span<const Element> subset) const;

        /** A pair (g, k) with g k g^-1 outside `subgroup`, if any. */
        std::optional<std::pair<Element, Element>> normalityCounterexample(std::span<const Element> subgroup) const;

        /** Small generating set, chosen greedily by subgroup growth. */
        std::vector<Element> generatingSet() const;

        bool isAutomorphism(std::span<const Element> perm) const;

        /**
         * Automorphism list; empty unless attached with `withAutomorphisms`.
         * The identity is always first.
         */
        const std::vector<std::vector<Element>>& automorphisms() const { return automorphisms_; }

        /** Copy with the complete automorphism list computed and attached. */
        FiniteGroup withAutomorphisms() const;

        FiniteGroup renamed(std::string name) const;

        bool operator==(const FiniteGroup& other) const
        {
            return order_ == other.order_ && mult_ == other.mult_;
        }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr shareGroup(FiniteGroup g)
{
    return std::make_shared<const FiniteGroup>(std::move(g));
}

/**
 * Extends x_i -> y_i to a homomorphism <x_i> -> dst by walking the Cayley
 * graph of <x_i>. Returns the map (kUndefined outside <x_i>) or nullopt when
 * the assignment is not well defined.
 */
std::optional<std::vector<Element>> extendHomomorphism(const FiniteGroup& src, std::span<const Element> src_gens,
                                                       const FiniteGroup& dst, std::span<const Element> dst_gens);

/** Every automorphism of `g`, identity first. */
std::vector<std::vector<Element>> computeAutomorphisms(const FiniteGroup& g);

/** An isomorphism a -> b as an element map, if one exists. */
std::optional<std::vector<Element>> findIsomorphism(const FiniteGroup& a, const FiniteGroup& b);

inline bool isIsomorphic(const FiniteGroup& a, const FiniteGroup& b)
{
    return findIsomorphism(a, b).has_value();
}

/** Subgroup as its own table; `embedding[i]` is the ambient element. */
struct SubgroupTable
{
    FiniteGroup group;
    std::vector<Element> embedding;
};

SubgroupTable subgroupTable(const FiniteGroup& g, std::span<const Element> elements, std::string name = "");

/** G/K; `projection[g]` is the coset of g. Cosets are numbered by smallest member. */
struct QuotientTable
{
    FiniteGroup group;
    std::vector<Element> projection;
};

/** Throws `NotNormalError` (with a counterexample) unless K is a normal subgroup. */
QuotientTable quotientGroup(const FiniteGroup& g, std::span<const Element> normal_subgroup);

/** Checks that `map` is a homomorphism a -> b on all of a. */
bool isHomomorphism(const FiniteGroup& a, const FiniteGroup& b, std::span<const Element> map);

}   // namespace chainlift

#endif
