/**
 * Chains, basic moves, and the edge-path presentation of the discrete
 * fundamental group of a scale graph.
 *
 * The presentation uses a BFS spanning tree rooted at the basepoint (children
 * visited in ascending point order). Each non-tree edge {a,b}, a < b, is one
 * generator oriented a -> b, and each triangle of pairwise related points
 * gives one relator: inserting or removing a point between two related
 * neighbors is exactly a triangle, so words in this presentation are
 * invariant under basic moves.
 */
#ifndef CHAINLIFT_HOMOTOPY_HPP
#define CHAINLIFT_HOMOTOPY_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "chainlift/space.hpp"
#include "chainlift/word.hpp"

namespace chainlift {

using GraphPtr = std::shared_ptr<const ScaleGraph>;

inline GraphPtr shareGraph(ScaleGraph graph)
{
    return std::make_shared<const ScaleGraph>(std::move(graph));
}

/** A point sequence whose consecutive pairs are edges or repeated points. */
class EChain
{
    private:
        GraphPtr graph_;
        std::vector<PointId> points_;

        EChain(GraphPtr graph, std::vector<PointId> points)
            : graph_(std::move(graph)), points_(std::move(points))
        {
        }

        friend EChain validateChain(GraphPtr graph, std::vector<PointId> points);

    public:
        const ScaleGraph& graph() const { return *graph_; }
        const GraphPtr& graphPtr() const { return graph_; }
        const std::vector<PointId>& points() const { return points_; }
        std::size_t size() const { return points_.size(); }
        PointId front() const { return points_.front(); }
        PointId back() const { return points_.back(); }
        bool isLoop() const { return front() == back(); }

        EChain reversed() const;

        /** Concatenation; `other` must start where this chain ends. */
        EChain concat(const EChain& other) const;

        bool operator==(const EChain& other) const
        {
            return graph_ == other.graph_ && points_ == other.points_;
        }
};

/**
 * Checks that `points` is a chain on `graph`. Throws `ChainError` naming the
 * first offending pair, `DomainError` for an empty list or unknown point.
 */
EChain validateChain(GraphPtr graph, std::vector<PointId> points);

struct BasicMove
{
    enum class Kind
    {
        Insert,
        Remove
    };

    Kind kind;

    /**
     * Insert: index the new point will occupy (1 <= position <= size-1).
     * Remove: index of the point to drop (1 <= position <= size-2).
     */
    std::size_t position;

    PointId point = 0;   // inserted point; ignored for Remove

    static BasicMove insert(std::size_t position, PointId point) { return {Kind::Insert, position, point}; }
    static BasicMove remove(std::size_t position) { return {Kind::Remove, position, 0}; }

    bool operator==(const BasicMove&) const = default;
};

/**
 * Applies one basic move. Throws `DomainError` for a move that would touch an
 * endpoint and `ChainError` when the result is not a chain.
 */
EChain applyBasicMove(const EChain& chain, const BasicMove& move);

/** Spanning tree and edge labelling behind a graph-derived presentation. */
struct SpanningTree
{
    GraphPtr graph;
    std::vector<PointId> parent;       // parent[basepoint] == basepoint; SIZE_MAX outside the component
    std::vector<std::size_t> depth;
    std::vector<PointId> component;    // points reachable from the basepoint, ascending
    std::vector<Edge> generator_edges; // generator g is the edge a -> b, a < b
    std::vector<long> edge_generator;  // n x n; -1 for tree edges and non-edges

    bool contains(PointId p) const { return parent[p] != static_cast<PointId>(-1); }
};

enum class ComponentPolicy
{
    /** Throw `DisconnectedError` unless the whole graph is chain connected. */
    RequireConnected,

    /** Present the chain component of the basepoint only. */
    BasepointComponent
};

class GroupPresentation
{
    private:
        std::size_t generator_count_ = 0;
        std::vector<Word> relators_;
        std::shared_ptr<const SpanningTree> tree_;

        GroupPresentation() = default;

        friend GroupPresentation presentationAtScale(GraphPtr graph, ComponentPolicy policy);

    public:
        /** Presentation not tied to any graph, e.g. <g | g^2>. */
        static GroupPresentation synthetic(std::size_t generator_count, std::vector<Word> relators);

        std::size_t generatorCount() const { return generator_count_; }
        const std::vector<Word>& relators() const { return relators_; }

        bool hasGraph() const { return tree_ != nullptr; }
        const SpanningTree& tree() const;
        const ScaleGraph& graph() const { return *tree().graph; }
        const GraphPtr& graphPtr() const { return tree().graph; }

        /** Label of the directed edge u -> v: empty on tree edges. */
        Word edgeWord(PointId u, PointId v) const;

        /** Tree path basepoint -> p (inclusive). */
        std::vector<PointId> treePath(PointId p) const;

        /** The loop tree(basepoint -> a), b, tree(b -> basepoint) for generator g = (a,b). */
        EChain generatorLoop(std::size_t g) const;

        /** `gens: g1 ... gk` then one `rel: <word>` line per relator. */
        std::string toText() const;
};

/**
 * Edge-path presentation of the scale graph at its basepoint: BFS tree,
 * one generator per non-tree edge, one relator per triangle.
 */
GroupPresentation presentationAtScale(GraphPtr graph,
                                      ComponentPolicy policy = ComponentPolicy::RequireConnected);

/**
 * Image of a chain in the edge-path group: the product of its edge labels,
 * freely reduced. For a chain from a to b this is the word of the loop
 * tree(* -> a) . chain . tree(b -> *).
 */
Word chainToWord(const GroupPresentation& presentation, const EChain& chain);

/** The bonding map between two scales of the same space, on generators. */
struct ScaleMapRecord
{
    double fine_epsilon;
    double coarse_epsilon;
    std::vector<Word> generator_images;   // indexed by fine generator

    /** Substitutes generator images into a fine-scale word. */
    Word apply(const Word& word) const;
};

/**
 * Re-expresses each fine generator loop at the coarse scale. Both
 * presentations must come from graphs on the same space with the same
 * basepoint, and fine epsilon <= coarse epsilon.
 */
ScaleMapRecord scaleMap(const GroupPresentation& fine, const GroupPresentation& coarse);

/** Basic-move certificate that two pointwise close chains are homotopic. */
struct HomotopyCertificate
{
    GraphPtr witness;                // scale graph at the witness scale
    std::vector<BasicMove> moves;
};

/** Re-validates the chain's points on another graph of the same space. */
EChain rescaleChain(const EChain& chain, GraphPtr graph);

/** Applies the moves in order, validating every intermediate chain. */
EChain replayMoves(const EChain& chain, const std::vector<BasicMove>& moves);

/**
 * Zig-zag homotopy between two chains with the same endpoints and length
 * whose i-th points are related at the chain scale: for each interior index
 * where they differ, insert beta_i in front of alpha_i, then drop alpha_i.
 * Every intermediate chain is checked at `witness_scale`; the usual choice is
 * twice the chain scale.
 */
HomotopyCertificate closeChainHomotopy(const EChain& alpha, const EChain& beta, double witness_scale);

/**
 * Generators, in the coarse presentation, of the subgroup carried by fine
 * loops. Net centers are joined when related by the third power of the fine
 * entourage; every loop through the centers is a product of the basic loops
 * tree(* -> a), b, tree(b -> *) over the resulting center graph, each with at
 * most 2|net|+1 points. Returns their coarse words, freely reduced, without
 * the identity, deduplicated and sorted.
 */
std::vector<Word> netGenerators(const ScaleGraph& fine, const GroupPresentation& coarse,
                                const std::vector<PointId>& net);

}   // namespace chainlift

#endif
