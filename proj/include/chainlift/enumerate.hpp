/**
 * Small finite groups and finite-index normal subgroups of presented groups.
 *
 * The catalog holds one table per isomorphism class of order at most 16,
 * each with its complete automorphism list. Normal subgroups of index n are
 * the kernels of surjections onto groups of order n; two surjections onto the
 * same group have equal kernels exactly when an automorphism carries one to
 * the other, so a kernel is named by the orbit-minimal generator image tuple.
 */
#ifndef CHAINLIFT_ENUMERATE_HPP
#define CHAINLIFT_ENUMERATE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chainlift/covers.hpp"

namespace chainlift {

class SmallGroupCatalog
{
    private:
        std::vector<GroupPtr> groups_;

        SmallGroupCatalog();

    public:
        /** Built on first use; tables and automorphism lists are computed once. */
        static const SmallGroupCatalog& instance();

        static constexpr std::size_t maxOrder() { return 16; }

        const std::vector<GroupPtr>& groups() const { return groups_; }
        std::vector<GroupPtr> groupsOfOrder(std::size_t n) const;

        /** nullptr when no group has that name. */
        GroupPtr find(const std::string& name) const;
};

/** All surjections in lexicographic order of generator image tuples. */
std::vector<GroupHom> surjectionsOnto(const PresentationPtr& presentation, const GroupPtr& target);

struct KernelRecord
{
    std::size_t index;
    GroupPtr target;
    GroupHom representative;           // images equal the signature
    std::vector<Element> signature;    // minimal tuple in the automorphism orbit

    /** "Name:i1,i2,..." */
    std::string signatureText() const;
};

/** Orbit-minimal image tuple of `images` under the target's automorphisms. */
std::vector<Element> canonicalSignature(const FiniteGroup& target, const std::vector<Element>& images);

/**
 * Distinct normal subgroups of index n, ordered by catalog position of the
 * quotient and then by signature. Throws `UnsupportedError` past the catalog bound.
 */
std::vector<KernelRecord> normalSubgroupsOfIndex(const PresentationPtr& presentation, std::size_t n,
                                                 const SmallGroupCatalog& catalog = SmallGroupCatalog::instance());

struct CoverCount
{
    std::size_t count;
    std::vector<KernelRecord> kernels;
    std::vector<CoverGraph> covers;
};

/** One connected regular n-fold cover per index-n normal subgroup. Requires a connected graph. */
CoverCount countNfoldCovers(const GraphPtr& graph, std::size_t n);

struct FactorEntry
{
    std::size_t n;
    std::size_t count;
    std::uint64_t bound;   // n!
    bool flagged;          // count > n!
    std::vector<std::string> kernels;
};

struct FactorReport
{
    std::vector<FactorEntry> entries;
    std::vector<std::string> warnings;
};

/** Counts for n = 1..n_max against n!. Never throws on a flag; records a warning instead. */
FactorReport factorBoundReport(const GraphPtr& graph, std::size_t n_max);

}   // namespace chainlift

#endif
