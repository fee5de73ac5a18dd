// chainlift: fundamental groups, covers and cover towers of finite metric spaces at a scale.
//
// Exit codes: 0 success, 1 input or domain error, 2 disconnected scale graph.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainlift/covers.hpp"
#include "chainlift/enumerate.hpp"
#include "chainlift/error.hpp"
#include "chainlift/report.hpp"
#include "chainlift/tower.hpp"

using namespace chainlift;

namespace {

struct SpaceOptions
{
    std::string points;
    std::size_t circle = 0;
    double radius = 1.0;
    std::string wedge;
    double epsilon = 0.0;
    std::optional<std::size_t> basepoint;
};

void addSpaceOptions(CLI::App* cmd, SpaceOptions& opt)
{
    auto* points = cmd->add_option("--points", opt.points, "point cloud file (.csv or .json)")->check(CLI::ExistingFile);
    auto* circle = cmd->add_option("--circle", opt.circle, "n points on the unit circle")->check(CLI::Range(3, 1000000));
    cmd->add_option("--radius", opt.radius, "circle radius")->needs(circle)->check(CLI::PositiveNumber);
    auto* wedge = cmd->add_option("--wedge", opt.wedge, "wedge of cycles, comma separated lengths");
    points->excludes(circle)->excludes(wedge);
    circle->excludes(wedge);
    cmd->add_option("--epsilon", opt.epsilon, "scale")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--basepoint", opt.basepoint, "basepoint index");
}

std::vector<std::size_t> parseList(const std::string& text, const std::string& what)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
    {
        std::size_t used = 0;
        unsigned long long v = 0;
        try
        {
            v = std::stoull(item, &used);
        }
        catch (const std::exception&)
        {
            used = 0;
        }
        if (used == 0 || used != item.size() || item.front() == '-')
            throw DomainError("bad " + what + " entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw DomainError(what + " is empty");
    return out;
}

GraphPtr loadGraph(const SpaceOptions& opt)
{
    PointId basepoint = 0;
    std::shared_ptr<const FiniteMetricSpace> space;
    if (!opt.points.empty())
    {
        std::ifstream in(opt.points);
        if (!in)
            throw DomainError("cannot open " + opt.points);
        const bool json = opt.points.size() >= 5 && opt.points.substr(opt.points.size() - 5) == ".json";
        LoadedCloud cloud = loadPointCloud(in, json ? CloudFormat::Json : CloudFormat::Csv);
        basepoint = cloud.basepoint;
        space = std::make_shared<const FiniteMetricSpace>(std::move(cloud.space));
    }
    else if (opt.circle != 0)
        space = std::make_shared<const FiniteMetricSpace>(sampleCircle(opt.circle, opt.radius));
    else if (!opt.wedge.empty())
        space = std::make_shared<const FiniteMetricSpace>(wedgeGraphSpace(parseList(opt.wedge, "wedge")));
    else
        throw DomainError("one of --points, --circle, --wedge is required");
    if (opt.basepoint)
        basepoint = *opt.basepoint;
    if (basepoint >= space->size())
        throw DomainError("basepoint " + std::to_string(basepoint) + " is not a point of the space");
    return shareGraph(buildScaleGraph(space, opt.epsilon, basepoint));
}

std::size_t catalogCap()
{
    std::size_t cap = SmallGroupCatalog::maxOrder();
    if (const char* env = std::getenv("CHAINLIFT_CATALOG_MAX"))
    {
        try
        {
            cap = std::min<std::size_t>(cap, std::stoul(env));
        }
        catch (const std::exception&)
        {
            throw DomainError(std::string("CHAINLIFT_CATALOG_MAX is not a number: ") + env);
        }
    }
    return cap;
}

int cmdPi(const SpaceOptions& opt)
{
    auto pres = presentationAtScale(loadGraph(opt));
    std::cout << pres.toText();
    return 0;
}

int cmdCovers(const SpaceOptions& opt, std::size_t n, const std::string& dot_dir)
{
    const std::size_t cap = catalogCap();
    if (n > cap)
        throw UnsupportedError("n = " + std::to_string(n) + " exceeds the catalog bound " + std::to_string(cap));
    GraphPtr graph = loadGraph(opt);
    FactorReport report = factorBoundReport(graph, n);
    std::cout << factorEntryJson(report.entries.back()) << '\n';
    for (const std::string& w : report.warnings)
    {
        if (w.starts_with("n=" + std::to_string(n) + ":"))
            std::cerr << "warning: " << w << '\n';
    }
    if (!dot_dir.empty())
        writeCoverDots(dot_dir, n, countNfoldCovers(graph, n).covers);
    return 0;
}

int cmdLift(const SpaceOptions& opt, const std::string& cover_spec, const std::string& chain_text)
{
    GraphPtr graph = loadGraph(opt);
    auto pres = sharePresentation(presentationAtScale(graph));

    const auto colon = cover_spec.find(':');
    const std::string name = cover_spec.substr(0, colon);
    GroupPtr target = SmallGroupCatalog::instance().find(name);
    if (!target)
        throw DomainError("unknown group '" + name + "' in --cover");
    std::vector<Element> images;
    if (colon != std::string::npos && colon + 1 < cover_spec.size())
        images = parseList(cover_spec.substr(colon + 1), "cover image");
    CoverGraph cover = buildCover(pres, target, images);

    EChain chain = validateChain(graph, parseList(chain_text, "chain"));
    const CoverVertex end = liftChain(cover, chain, cover.vertex(chain.front(), target->identity())).back();
    std::cout << "endpoint: v" << cover.baseOf(end) << "_g" << cover.sheetOf(end) << '\n';
    std::cout << "deck: " << cover.sheetOf(end) << '\n';
    return 0;
}

int cmdTower(std::size_t circle, std::size_t p, std::size_t depth, const std::string& dot_dir)
{
    TowerTruncation tower = buildSolenoidTower(circle, p, depth);
    std::cout << towerReportJson(tower) << '\n';
    if (!dot_dir.empty())
        writeTowerDots(dot_dir, tower);
    return 0;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete fundamental groups, covers and cover towers of finite metric spaces"};
    app.require_subcommand(1);

    SpaceOptions pi_opt, covers_opt, lift_opt;
    auto* pi = app.add_subcommand("pi", "presentation of the fundamental group at a scale");
    addSpaceOptions(pi, pi_opt);

    std::size_t n = 0;
    std::string covers_dot;
    auto* covers = app.add_subcommand("covers", "regular n-fold covers and the n! report");
    addSpaceOptions(covers, covers_opt);
    covers->add_option("--n", n, "cover degree")->required()->check(CLI::PositiveNumber);
    covers->add_option("--emit-dot", covers_dot, "directory for cover_<n>_<k>.dot files");

    std::string cover_spec, chain_text;
    auto* lift = app.add_subcommand("lift", "lift a chain into a cover");
    addSpaceOptions(lift, lift_opt);
    lift->add_option("--cover", cover_spec, "Group:image1,image2,...")->required();
    lift->add_option("--chain", chain_text, "comma separated point indices")->required();

    std::size_t tower_circle = 0, p = 0, depth = 0;
    std::string tower_dot;
    auto* tower = app.add_subcommand("tower", "solenoid tower over a circle sample");
    tower->add_option("--circle", tower_circle, "n points on the unit circle")->required()->check(CLI::Range(3, 1000000));
    tower->add_option("--p", p, "prime")->required();
    tower->add_option("--depth", depth, "tower depth")->required();
    tower->add_option("--emit-dot", tower_dot, "directory for tower_level_<k>.dot files");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try
    {
        if (pi->parsed())
            return cmdPi(pi_opt);
        if (covers->parsed())
            return cmdCovers(covers_opt, n, covers_dot);
        if (lift->parsed())
            return cmdLift(lift_opt, cover_spec, chain_text);
        return cmdTower(tower_circle, p, depth, tower_dot);
    }
    catch (const DisconnectedError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
