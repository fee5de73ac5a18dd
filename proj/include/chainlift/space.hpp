/**
 * Finite metric spaces, metric entourages at a scale, and scale graphs.
 *
 * A `FiniteMetricSpace` is a full distance table over points 0..n-1, with an
 * optional coordinate payload. A `ScaleGraph` is the strict-threshold graph
 * {(p,q) : d(p,q) < epsilon} together with a basepoint; it is the object on
 * which chains, presentations and covers are built.
 */
#ifndef CHAINLIFT_SPACE_HPP
#define CHAINLIFT_SPACE_HPP

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace chainlift {

using PointId = std::size_t;

enum class MetricKind
{
    EuclideanFromCoordinates,
    ExplicitTable,
    GraphHop
};

class FiniteMetricSpace
{
    private:
        std::size_t n_ = 0;
        std::vector<std::vector<double>> coords_;
        std::vector<double> dist_;   // row-major n x n
        MetricKind kind_ = MetricKind::ExplicitTable;

        FiniteMetricSpace() = default;

    public:
        /**
         * Euclidean metric from coordinates. Rejects empty input, ragged or
         * non-finite coordinates, and coincident points.
         */
        static FiniteMetricSpace fromCoordinates(std::vector<std::vector<double>> coords);

        /**
         * Explicit distance table. The table must be square, symmetric,
         * non-negative, zero exactly on the diagonal. `kind` is either
         * `ExplicitTable` or `GraphHop`.
         */
        static FiniteMetricSpace fromTable(const std::vector<std::vector<double>>& table,
                                           MetricKind kind = MetricKind::ExplicitTable);

        std::size_t size() const { return n_; }
        MetricKind kind() const { return kind_; }
        bool hasCoordinates() const { return !coords_.empty(); }
        const std::vector<std::vector<double>>& coordinates() const { return coords_; }

        double distance(PointId p, PointId q) const { return dist_[p * n_ + q]; }

        /**
         * Strict entourage membership d(p,q) < epsilon.
         *
         * For coordinate spaces the comparison is exact: the squared distance
         * of the (dyadic rational) coordinates is compared against epsilon^2
         * as rationals, so ties at exactly epsilon are excluded
         * deterministically. Tables compare the stored doubles directly.
         */
        bool within(PointId p, PointId q, double epsilon) const;

        /**
         * Full scan of symmetry, identity of indiscernibles and the triangle
         * inequality. Returns false on the first violation. `slack` absorbs
         * floating point rounding in tables derived from coordinates.
         */
        bool satisfiesMetricAxioms(double slack = 1e-12) const;

        /** Smallest distance between distinct points (infinity for one point). */
        double minimumSeparation() const;
};

/** The metric entourage E_epsilon = {(p,q) : d(p,q) < epsilon}. */
struct ScaleEntourage
{
    double epsilon;

    bool contains(const FiniteMetricSpace& space, PointId p, PointId q) const
    {
        return p == q || space.within(p, q, epsilon);
    }
};

using Edge = std::pair<PointId, PointId>;

class ScaleGraph
{
    private:
        std::shared_ptr<const FiniteMetricSpace> space_;
        double epsilon_;
        PointId basepoint_;
        std::vector<Edge> edges_;                    // (a,b), a < b, lexicographic
        std::vector<std::vector<PointId>> adj_;      // ascending
        std::vector<unsigned char> adjacency_;       // n x n

    public:
        ScaleGraph(std::shared_ptr<const FiniteMetricSpace> space, double epsilon, PointId basepoint);

        const FiniteMetricSpace& space() const { return *space_; }
        const std::shared_ptr<const FiniteMetricSpace>& spacePtr() const { return space_; }
        double epsilon() const { return epsilon_; }
        PointId basepoint() const { return basepoint_; }
        std::size_t size() const { return space_->size(); }

        const std::vector<Edge>& edges() const { return edges_; }
        std::span<const PointId> neighbors(PointId p) const { return adj_[p]; }

        bool hasEdge(PointId p, PointId q) const { return adjacency_[p * size() + q] != 0; }

        /** Edge or diagonal pair: the entourage contains the diagonal. */
        bool related(PointId p, PointId q) const { return p == q || hasEdge(p, q); }

        /** Hop distances from `source`; unreachable points get SIZE_MAX. */
        std::vector<std::size_t> hopDistances(PointId source) const;

        /** Points reachable from `source` (ascending). */
        std::vector<PointId> component(PointId source) const;
};

/** Parsed point cloud plus the basepoint named in the input (default 0). */
struct LoadedCloud
{
    FiniteMetricSpace space;
    PointId basepoint = 0;
};

enum class CloudFormat
{
    Csv,
    Json
};

/**
 * Read a point cloud. CSV: one point per line, comma separated coordinates,
 * optional header lines starting with '#'. JSON: {"points": [[..], ..],
 * "dist": optional full matrix, "basepoint": optional index}.
 */
LoadedCloud loadPointCloud(std::istream& in, CloudFormat format);

/** Write coordinates as CSV with round-trip exact decimal formatting. */
void writePointCloudCsv(std::ostream& out, const FiniteMetricSpace& space);

/** n points on the circle of the given radius at angles 2*pi*k/n. */
FiniteMetricSpace sampleCircle(std::size_t n, double radius = 1.0);

/**
 * Wedge of cycles with unit edges and the hop metric. Vertex 0 is the shared
 * vertex; cycle k contributes cycle_lengths[k] - 1 further vertices in order.
 */
FiniteMetricSpace wedgeGraphSpace(std::span<const std::size_t> cycle_lengths);

/** Explicit-table space from an unweighted graph, with hop distances. */
FiniteMetricSpace graphHopSpace(std::size_t n, std::span<const Edge> edges);

ScaleGraph buildScaleGraph(std::shared_ptr<const FiniteMetricSpace> space, double epsilon,
                           PointId basepoint = 0);

inline ScaleGraph buildScaleGraph(FiniteMetricSpace space, double epsilon, PointId basepoint = 0)
{
    return buildScaleGraph(std::make_shared<const FiniteMetricSpace>(std::move(space)), epsilon, basepoint);
}

bool isChainConnected(const ScaleGraph& graph);

/** Same space object, scale and basepoint. */
inline bool sameScaleGraph(const ScaleGraph& a, const ScaleGraph& b)
{
    return &a == &b
           || (a.spacePtr() == b.spacePtr() && a.epsilon() == b.epsilon() && a.basepoint() == b.basepoint());
}

/**
 * Pairs related by the k-th power of the graph's entourage, i.e. joined by a
 * chain with at most k steps. Returned as an n x n 0/1 table.
 */
std::vector<unsigned char> entouragePower(const ScaleGraph& graph, std::size_t k);

/**
 * Scale strictly between the nearest-neighbor and second-neighbor chords of
 * `sampleCircle(n, radius)`, at which the scale graph is exactly an n-cycle.
 */
double circleCycleScale(std::size_t n, double radius = 1.0);

}   // namespace chainlift

#endif
