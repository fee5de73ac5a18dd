/**
 * Finite towers of regular covers over one base scale graph.
 *
 * Level k is a connected cover with deck G_k, joined to level k-1 by a
 * surjective deck map theta_k and the vertex map (v, g) -> (v, theta_k(g)).
 * Level 0 is the base itself with trivial deck. A truncation at depth d keeps
 * the coherent threads of vertices and of deck elements, which stand in for
 * the inverse limits at finite depth.
 */
#ifndef CHAINLIFT_TOWER_HPP
#define CHAINLIFT_TOWER_HPP

#include <cstddef>
#include <vector>

#include "chainlift/covers.hpp"

namespace chainlift {

struct TowerLevel
{
    std::size_t depth;
    CoverGraph cover;
    std::vector<Element> theta;           // G_k -> G_{k-1}; all identity at k = 1
    std::vector<CoverVertex> graph_map;   // level k vertex -> level k-1 vertex (base point at k = 1)
    std::size_t degree;                   // |G_k| / |G_{k-1}|
};

struct TowerTruncation
{
    GraphPtr base;
    PresentationPtr presentation;
    std::vector<TowerLevel> levels;

    /** (v_0, ..., v_d): v_0 a base point, v_k a level-k vertex over v_{k-1}. */
    std::vector<std::vector<CoverVertex>> limit_points;

    /** (g_1, ..., g_d) with theta_k(g_k) = g_{k-1}; ordered by the top element. */
    std::vector<std::vector<Element>> limit_deck;

    std::size_t depth() const { return levels.size(); }
};

/**
 * Tower from connected covers of the presentation's graph, listed from the
 * bottom up. Each cover must dominate the one below it; throws `DomainError`
 * otherwise. An empty list gives the depth-0 tower.
 */
TowerTruncation buildTower(PresentationPtr presentation, std::vector<CoverGraph> covers);

/**
 * Full scan of the level invariants, the cocycle identities theta_ik =
 * theta_ij o theta_jk and f_ik = f_ij o f_jk against directly computed
 * bonding maps, and coherence of every stored thread.
 */
bool verifyTower(const TowerTruncation& tower);

/**
 * Cyclic p-power covers of the circle sampled at n points, at the scale
 * where its graph is an n-cycle. Level k has deck Z/p^k, the winding
 * generator mapping to 1. Requires n >= 3, p prime, p^depth <= 256.
 */
TowerTruncation buildSolenoidTower(std::size_t n, std::size_t p, std::size_t depth);

struct TowerJoin
{
    CoverGraph cover;
    BondingMap onto_first;
    BondingMap onto_second;
};

/** Cover from the product hom into G_i x G_j corestricted to its image, with both bonding maps. */
TowerJoin towerJoin(const CoverGraph& first, const CoverGraph& second);

struct TowerLift
{
    std::vector<CoverVertex> endpoints;   // (v_0, ..., v_d)
    std::vector<Element> deck_thread;     // sheet of v_k for k = 1..d
};

/** Lifts a base chain from the basepoint at every level and checks the endpoint thread. */
TowerLift liftThroughTower(const TowerTruncation& tower, const EChain& chain);

struct ProfiniteTruncation
{
    std::vector<std::vector<Element>> threads;   // lexicographic, identity thread first
    FiniteGroup group;                           // componentwise product, indexed as `threads`
};

ProfiniteTruncation profiniteTruncation(const TowerTruncation& tower);

/** Every theta is onto, and the deck and point threads project onto every level. */
bool snarkSurjectivityCheck(const TowerTruncation& tower);

/**
 * Minimum displacement at each level of the relative deck group ker theta_k
 * (all of G_1 at the first level).
 */
std::vector<RootScaleReport> levelDisplacements(const TowerTruncation& tower);

}   // namespace chainlift

#endif
