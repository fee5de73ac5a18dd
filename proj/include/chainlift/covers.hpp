/**
 * Regular covering graphs of scale graphs with finite deck groups.
 *
 * A homomorphism phi from the edge-path group onto a finite group G defines
 * the cover with vertices (v, g) and edges (u, g) -- (w, g * phi(label(u,w)))
 * for each base edge u -- w, where label is the edge's tree-path normal form
 * (identity on tree edges, the generator on non-tree edges). The deck group
 * G acts by h * (v, g) = (v, h g). Lifting a base chain is a table walk.
 */
#ifndef CHAINLIFT_COVERS_HPP
#define CHAINLIFT_COVERS_HPP

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chainlift/group.hpp"
#include "chainlift/homotopy.hpp"

namespace chainlift {

using PresentationPtr = std::shared_ptr<const GroupPresentation>;

inline PresentationPtr sharePresentation(GroupPresentation p)
{
    return std::make_shared<const GroupPresentation>(std::move(p));
}

/** Generator images in a finite group. Relators are checked on construction. */
class GroupHom
{
    private:
        PresentationPtr source_;
        GroupPtr target_;
        std::vector<Element> images_;
        std::vector<Element> image_subgroup_;

    public:
        /** Throws `HomError` if the image count is wrong or a relator survives. */
        GroupHom(PresentationPtr source, GroupPtr target, std::vector<Element> images);

        const GroupPresentation& source() const { return *source_; }
        const PresentationPtr& sourcePtr() const { return source_; }
        const FiniteGroup& target() const { return *target_; }
        const GroupPtr& targetPtr() const { return target_; }
        const std::vector<Element>& images() const { return images_; }

        Element evaluate(const Word& word) const;

        bool isSurjective() const { return image_subgroup_.size() == target_->order(); }
        const std::vector<Element>& imageSubgroup() const { return image_subgroup_; }
};

using CoverVertex = std::size_t;

class CoverGraph
{
    private:
        GroupHom hom_;
        std::size_t base_size_;
        std::size_t order_;
        std::vector<Element> labels_;                  // base n x n, kUndefined off edges
        std::vector<std::pair<CoverVertex, CoverVertex>> edges_;
        std::vector<std::vector<CoverVertex>> adj_;

    public:
        explicit CoverGraph(GroupHom hom);

        const GroupHom& hom() const { return hom_; }
        const GroupPresentation& presentation() const { return hom_.source(); }
        const FiniteGroup& group() const { return hom_.target(); }
        const ScaleGraph& base() const { return hom_.source().graph(); }
        const GraphPtr& basePtr() const { return hom_.source().graphPtr(); }

        std::size_t vertexCount() const { return base_size_ * order_; }
        CoverVertex vertex(PointId v, Element g) const { return v * order_ + g; }
        PointId baseOf(CoverVertex x) const { return x / order_; }
        Element sheetOf(CoverVertex x) const { return x % order_; }
        CoverVertex basepoint() const { return vertex(base().basepoint(), group().identity()); }

        /** Deck action h * (v, g) = (v, h g). */
        CoverVertex act(Element h, CoverVertex x) const { return vertex(baseOf(x), group().mul(h, sheetOf(x))); }

        /** phi(label(u, w)) for a base edge u -> w. */
        Element edgeLabel(PointId u, PointId w) const;

        /** (x, y) with x < y, lexicographic. */
        const std::vector<std::pair<CoverVertex, CoverVertex>>& edges() const { return edges_; }
        std::span<const CoverVertex> neighbors(CoverVertex x) const { return adj_[x]; }
        bool hasEdge(CoverVertex x, CoverVertex y) const;

        /** True when the hom is onto, i.e. the cover graph is connected. */
        bool isConnected() const { return hom_.isSurjective(); }

        /** Hop distances from x; unreachable vertices get SIZE_MAX. */
        std::vector<std::size_t> hopDistances(CoverVertex x) const;

        /**
         * The total space as a scale graph: the hop metric of the cover graph
         * at scale 1.5, so its edges are exactly the cover edges. Requires a
         * connected cover.
         */
        GraphPtr totalScaleGraph() const;
};

/** Builds the cover and verifies free action, fiber transitivity and deck symmetry. */
CoverGraph buildCover(const GroupHom& hom);

/** Convenience: hom from generator images and a cover from it. */
CoverGraph buildCover(PresentationPtr presentation, GroupPtr target, std::vector<Element> images);

/** Stepwise lift of a base chain from `start`. Throws if start is in the wrong fiber. */
std::vector<CoverVertex> liftChain(const CoverGraph& cover, const EChain& chain, CoverVertex start);

/**
 * Whether two chains with common endpoints are homotopic as seen by the
 * cover: their lifts from the same start end at the same vertex. The answer
 * is cross-checked against the hom images of their words.
 */
bool homotopyLiftCheck(const CoverGraph& cover, const EChain& alpha, const EChain& beta);

/** Lift at g * start ends at g * (end of lift at start). */
bool deckCompatibilityCheck(const CoverGraph& cover, const EChain& chain, Element g);

struct RootScaleReport
{
    /** nullopt: no nontrivial deck element (infinite root scale). */
    std::optional<std::size_t> min_displacement;
    std::size_t max_root_scale = 0;

    /** A vertex y and deck element g with hop(y, g y) = min_displacement. */
    CoverVertex certificate_vertex = 0;
    Element certificate_element = 0;

    bool infinite() const { return !min_displacement.has_value(); }
};

/**
 * Minimum hop displacement over nontrivial deck elements and the largest
 * radius r with 2r < displacement. `subgroup` restricts the deck elements
 * considered (all of them when empty).
 */
RootScaleReport rootScale(const CoverGraph& cover, std::span<const Element> subgroup = {});

/**
 * For every base vertex x, the preimage of the hop ball B(x, radius) splits
 * into |G| components each mapping bijectively onto the ball.
 */
bool evenlyCoveredCheck(const CoverGraph& cover, std::size_t radius);

struct ComponentReport
{
    std::vector<CoverVertex> vertices;   // ascending
    std::vector<Element> stabilizer;     // ascending
    CoverGraph restricted;               // connected cover with deck = stabilizer
    std::vector<CoverVertex> embedding;  // restricted vertex -> ambient vertex
};

/** Components of a (possibly non-surjective) cover, in order of smallest vertex. */
std::vector<ComponentReport> componentsAndStabilizer(const GroupHom& hom);

struct InducedQuotient
{
    CoverGraph intermediate;             // deck G/K
    std::vector<Element> quotient_map;   // G -> G/K
    std::vector<CoverVertex> vertex_map; // cover vertex -> intermediate vertex
};

/**
 * Intermediate cover X_phi / K for a normal subgroup K of the deck group.
 * Throws `NotNormalError` with a conjugation counterexample otherwise.
 */
InducedQuotient inducedQuotient(const CoverGraph& cover, std::span<const Element> normal_subgroup);

/** Deck-group map and the vertex map it induces between two covers of one base. */
struct BondingMap
{
    std::vector<Element> theta;            // upper deck -> lower deck
    std::vector<CoverVertex> vertex_map;   // upper vertex -> lower vertex
};

/**
 * The map (v, g) -> (v, theta(g)) with theta(phi_upper(x)) = phi_lower(x).
 * Exists iff ker phi_upper is inside ker phi_lower; throws `DomainError`
 * otherwise. Verifies compatibility and that edges go to edges.
 */
BondingMap bondingMap(const CoverGraph& upper, const CoverGraph& lower);

/** Checks the bonding-map conditions (hom, onto, equivariant, edge and projection preserving). */
bool verifyBondingMap(const CoverGraph& upper, const CoverGraph& lower, const BondingMap& map);

struct CompositeCover
{
    CoverGraph cover;                      // Z over X with deck K
    std::vector<Element> upper_embedding;  // H -> K
    std::vector<Element> theta;            // K -> G_lower, kernel = image of H
    std::vector<CoverVertex> vertex_map;   // composite vertex -> upper cover vertex
};

/**
 * Composite of `upper` (a cover of lower's total graph) with `lower`.
 * The composite deck group is the group of lifts of the fiber over the
 * basepoint; it is built as a table, checked to contain H as a normal
 * subgroup with quotient the lower deck group.
 */
CompositeCover composeCovers(const CoverGraph& upper, const CoverGraph& lower);

/** Same base, and the kernels coincide: phi2 = sigma o phi1 for an isomorphism sigma. */
bool kernelsCoincide(const CoverGraph& a, const CoverGraph& b);

/**
 * Equivalence of covers over the same base. When both use the same target
 * table with an attached automorphism list, scans the automorphisms;
 * otherwise falls back to `kernelsCoincide`.
 */
bool equivalenceCheck(const CoverGraph& a, const CoverGraph& b);

/** DOT graph: vertices `v<i>_g<j>` colored by sheet, edges in stored order. */
void writeDot(std::ostream& out, const CoverGraph& cover, const std::string& name = "cover");

}   // namespace chainlift

#endif
