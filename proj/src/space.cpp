#include "chainlift/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "chainlift/error.hpp"

namespace chainlift {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Relative band around epsilon^2 inside which the double computation cannot
// be trusted to order the two values; outside it the sign is certain.
constexpr double kTieBand = 1e-12;

double squaredDistance(const std::vector<double>& x, const std::vector<double>& y)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

Rational exactSquaredDistance(const std::vector<double>& x, const std::vector<double>& y)
{
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        Rational d = Rational(x[i]) - Rational(y[i]);
        s += d * d;
    }
    return s;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

LoadedCloud loadCsv(std::istream& in)
{
    std::vector<std::vector<double>> coords;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;

        std::vector<double> row;
        std::stringstream ss(t);
        std::string field;
        while (std::getline(ss, field, ','))
        {
            std::string f = trim(field);
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
            if (f.empty() || ec != std::errc() || ptr != f.data() + f.size())
                throw ParseError(lineno, "malformed coordinate '" + f + "'");
            if (!std::isfinite(value))
                throw ParseError(lineno, "non-finite coordinate '" + f + "'");
            row.push_back(value);
        }
        if (t.back() == ',')
            throw ParseError(lineno, "trailing comma");
        if (!coords.empty() && row.size() != coords.front().size())
        {
            throw ParseError(lineno, "expected " + std::to_string(coords.front().size())
                                     + " coordinates, found " + std::to_string(row.size()));
        }
        coords.push_back(std::move(row));
    }
    if (coords.empty())
        throw ParseError(0, "no points");
    return LoadedCloud{FiniteMetricSpace::fromCoordinates(std::move(coords)), 0};
}

LoadedCloud loadJson(std::istream& in)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError(0, "expected a JSON object");

    std::vector<std::vector<double>> coords;
    if (doc.contains("points"))
    {
        if (!doc["points"].is_array())
            throw ParseError(0, "\"points\" must be an array");
        for (const auto& p : doc["points"])
        {
            if (!p.is_array())
                throw ParseError(0, "point " + std::to_string(coords.size()) + " is not an array");
            std::vector<double> row;
            for (const auto& c : p)
            {
                if (!c.is_number())
                    throw ParseError(0, "point " + std::to_string(coords.size()) + " has a non-numeric coordinate");
                row.push_back(c.get<double>());
            }
            if (!coords.empty() && row.size() != coords.front().size())
                throw ParseError(0, "point " + std::to_string(coords.size()) + " has the wrong dimension");
            coords.push_back(std::move(row));
        }
    }

    std::optional<FiniteMetricSpace> space;
    if (doc.contains("dist"))
    {
        std::vector<std::vector<double>> table;
        try
        {
            table = doc["dist"].get<std::vector<std::vector<double>>>();
        }
        catch (const nlohmann::json::exception&)
        {
            throw ParseError(0, "\"dist\" must be a numeric matrix");
        }
        if (!coords.empty() && coords.size() != table.size())
            throw ParseError(0, "\"dist\" size does not match \"points\"");
        if (table.empty())
            throw ParseError(0, "no points");
        space = FiniteMetricSpace::fromTable(table, MetricKind::ExplicitTable);
    }
    else
    {
        if (coords.empty())
            throw ParseError(0, "no points");
        space = FiniteMetricSpace::fromCoordinates(std::move(coords));
    }

    PointId basepoint = 0;
    if (doc.contains("basepoint"))
    {
        const auto& b = doc["basepoint"];
        if (!b.is_number_integer() || b.get<long long>() < 0
            || static_cast<std::size_t>(b.get<long long>()) >= space->size())
            throw ParseError(0, "\"basepoint\" must be a valid point index");
        basepoint = b.get<std::size_t>();
    }
    return LoadedCloud{std::move(*space), basepoint};
}

}   // namespace

FiniteMetricSpace FiniteMetricSpace::fromCoordinates(std::vector<std::vector<double>> coords)
{
    if (coords.empty())
        throw DomainError("no points");
    const std::size_t dim = coords.front().size();
    if (dim == 0)
        throw DomainError("points must have at least one coordinate");
    for (std::size_t i = 0; i < coords.size(); ++i)
    {
        if (coords[i].size() != dim)
            throw DomainError("point " + std::to_string(i) + " has dimension "
                              + std::to_string(coords[i].size()) + ", expected " + std::to_string(dim));
        for (double c : coords[i])
        {
            if (!std::isfinite(c))
                throw DomainError("point " + std::to_string(i) + " has a non-finite coordinate");
        }
    }

    FiniteMetricSpace space;
    space.n_ = coords.size();
    space.kind_ = MetricKind::EuclideanFromCoordinates;
    space.dist_.assign(space.n_ * space.n_, 0.0);
    for (std::size_t i = 0; i < space.n_; ++i)
    {
        for (std::size_t j = i + 1; j < space.n_; ++j)
        {
            if (coords[i] == coords[j])
                throw DomainError("duplicate point: indices " + std::to_string(i) + " and " + std::to_string(j));
            double d = std::sqrt(squaredDistance(coords[i], coords[j]));
            space.dist_[i * space.n_ + j] = d;
            space.dist_[j * space.n_ + i] = d;
        }
    }
    space.coords_ = std::move(coords);
    return space;
}

FiniteMetricSpace FiniteMetricSpace::fromTable(const std::vector<std::vector<double>>& table, MetricKind kind)
{
    if (kind == MetricKind::EuclideanFromCoordinates)
        throw DomainError("a distance table cannot carry the euclidean-from-coordinates kind");
    if (table.empty())
        throw DomainError("no points");
    const std::size_t n = table.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        if (table[i].size() != n)
            throw DomainError("distance table is not square at row " + std::to_string(i));
    }

    FiniteMetricSpace space;
    space.n_ = n;
    space.kind_ = kind;
    space.dist_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            double d = table[i][j];
            if (!std::isfinite(d) || d < 0.0)
                throw DomainError("invalid distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (d != table[j][i])
                throw DomainError("distance table is not symmetric at (" + std::to_string(i) + ","
                                  + std::to_string(j) + ")");
            if (i == j && d != 0.0)
                throw DomainError("nonzero self-distance at " + std::to_string(i));
            if (i != j && d == 0.0)
                throw DomainError("duplicate point: indices " + std::to_string(std::min(i, j)) + " and "
                                  + std::to_string(std::max(i, j)));
            space.dist_[i * n + j] = d;
        }
    }
    if (!space.satisfiesMetricAxioms())
        throw DomainError("distance table violates the triangle inequality");
    return space;
}

bool FiniteMetricSpace::within(PointId p, PointId q, double epsilon) const
{
    if (p == q)
        return 0.0 < epsilon;
    if (kind_ != MetricKind::EuclideanFromCoordinates)
        return distance(p, q) < epsilon;

    const double sq = squaredDistance(coords_[p], coords_[q]);
    const double eps2 = epsilon * epsilon;
    if (sq < eps2 * (1.0 - kTieBand))
        return true;
    if (sq > eps2 * (1.0 + kTieBand))
        return false;
    Rational e(epsilon);
    return exactSquaredDistance(coords_[p], coords_[q]) < e * e;
}

bool FiniteMetricSpace::satisfiesMetricAxioms(double slack) const
{
    for (std::size_t i = 0; i < n_; ++i)
    {
        if (distance(i, i) != 0.0)
            return false;
        for (std::size_t j = 0; j < n_; ++j)
        {
            if (distance(i, j) != distance(j, i))
                return false;
            if (i != j && !(distance(i, j) > 0.0))
                return false;
        }
    }
    for (std::size_t i = 0; i < n_; ++i)
    {
        for (std::size_t j = 0; j < n_; ++j)
        {
            for (std::size_t k = 0; k < n_; ++k)
            {
                double bound = distance(i, k) + distance(k, j);
                if (distance(i, j) > bound * (1.0 + slack))
                    return false;
            }
        }
    }
    return true;
}

double FiniteMetricSpace::minimumSeparation() const
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i)
    {
        for (std::size_t j = i + 1; j < n_; ++j)
            best = std::min(best, distance(i, j));
    }
    return best;
}

ScaleGraph::ScaleGraph(std::shared_ptr<const FiniteMetricSpace> space, double epsilon, PointId basepoint)
    : space_(std::move(space)), epsilon_(epsilon), basepoint_(basepoint)
{
    if (!space_)
        throw DomainError("scale graph needs a space");
    if (!(epsilon > 0.0))
        throw DomainError("scale must be positive");
    const std::size_t n = space_->size();
    if (basepoint >= n)
        throw DomainError("basepoint " + std::to_string(basepoint) + " is not a point of the space");

    adj_.resize(n);
    adjacency_.assign(n * n, 0);
    for (PointId a = 0; a < n; ++a)
    {
        for (PointId b = a + 1; b < n; ++b)
        {
            if (space_->within(a, b, epsilon))
            {
                edges_.emplace_back(a, b);
                adj_[a].push_back(b);
                adj_[b].push_back(a);
                adjacency_[a * n + b] = 1;
                adjacency_[b * n + a] = 1;
            }
        }
    }
    for (auto& row : adj_)
        std::sort(row.begin(), row.end());
}

std::vector<std::size_t> ScaleGraph::hopDistances(PointId source) const
{
    std::vector<std::size_t> dist(size(), kUnreachable);
    std::deque<PointId> queue{source};
    dist[source] = 0;
    while (!queue.empty())
    {
        PointId u = queue.front();
        queue.pop_front();
        for (PointId v : adj_[u])
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

std::vector<PointId> ScaleGraph::component(PointId source) const
{
    auto dist = hopDistances(source);
    std::vector<PointId> out;
    for (PointId p = 0; p < size(); ++p)
    {
        if (dist[p] != kUnreachable)
            out.push_back(p);
    }
    return out;
}

LoadedCloud loadPointCloud(std::istream& in, CloudFormat format)
{
    return format == CloudFormat::Csv ? loadCsv(in) : loadJson(in);
}

void writePointCloudCsv(std::ostream& out, const FiniteMetricSpace& space)
{
    if (!space.hasCoordinates())
        throw DomainError("space has no coordinates to export");
    char buf[64];
    for (const auto& row : space.coordinates())
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), row[i]);
            if (i > 0)
                out << ',';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
}

FiniteMetricSpace sampleCircle(std::size_t n, double radius)
{
    if (n < 3)
        throw DomainError("circle sample needs at least 3 points");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("circle radius must be positive");
    std::vector<std::vector<double>> coords;
    coords.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        coords.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
    return FiniteMetricSpace::fromCoordinates(std::move(coords));
}

double circleCycleScale(std::size_t n, double radius)
{
    if (n < 3)
        throw DomainError("circle sample needs at least 3 points");
    const double first = 2.0 * radius * std::sin(std::numbers::pi / static_cast<double>(n));
    if (n == 3)
        return 1.5 * first;
    const double second = 2.0 * radius * std::sin(2.0 * std::numbers::pi / static_cast<double>(n));
    return 0.5 * (first + second);
}

FiniteMetricSpace graphHopSpace(std::size_t n, std::span<const Edge> edges)
{
    if (n == 0)
        throw DomainError("no points");
    std::vector<std::vector<PointId>> adj(n);
    for (auto [a, b] : edges)
    {
        if (a >= n || b >= n || a == b)
            throw DomainError("invalid edge in hop graph");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
    for (PointId s = 0; s < n; ++s)
    {
        std::vector<std::size_t> dist(n, kUnreachable);
        std::deque<PointId> queue{s};
        dist[s] = 0;
        while (!queue.empty())
        {
            PointId u = queue.front();
            queue.pop_front();
            for (PointId v : adj[u])
            {
                if (dist[v] == kUnreachable)
                {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (PointId t = 0; t < n; ++t)
        {
            if (dist[t] == kUnreachable)
                throw DomainError("hop metric needs a connected graph");
            table[s][t] = static_cast<double>(dist[t]);
        }
    }
    return FiniteMetricSpace::fromTable(table, MetricKind::GraphHop);
}

FiniteMetricSpace wedgeGraphSpace(std::span<const std::size_t> cycle_lengths)
{
    if (cycle_lengths.empty())
        throw DomainError("wedge needs at least one cycle");
    std::vector<Edge> edges;
    std::size_t next = 1;
    for (std::size_t len : cycle_lengths)
    {
        if (len < 3)
            throw DomainError("wedge cycles need length at least 3");
        PointId prev = 0;
        for (std::size_t k = 1; k < len; ++k)
        {
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, 0);
    }
    return graphHopSpace(next, edges);
}

ScaleGraph buildScaleGraph(std::shared_ptr<const FiniteMetricSpace> space, double epsilon, PointId basepoint)
{
    return ScaleGraph(std::move(space), epsilon, basepoint);
}

bool isChainConnected(const ScaleGraph& graph)
{
    return graph.component(graph.basepoint()).size() == graph.size();
}

std::vector<unsigned char> entouragePower(const ScaleGraph& graph, std::size_t k)
{
    const std::size_t n = graph.size();
    std::vector<unsigned char> table(n * n, 0);
    for (PointId s = 0; s < n; ++s)
    {
        std::vector<std::size_t> dist(n, kUnreachable);
        std::deque<PointId> queue{s};
        dist[s] = 0;
        while (!queue.empty())
        {
            PointId u = queue.front();
            queue.pop_front();
            table[s * n + u] = 1;
            if (dist[u] == k)
                continue;
            for (PointId v : graph.neighbors(u))
            {
                if (dist[v] == kUnreachable)
                {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return table;
}

}   // namespace chainlift
