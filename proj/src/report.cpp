#include "chainlift/report.hpp"

#include <fstream>
#include <json.hpp>

#include "chainlift/error.hpp"

namespace chainlift {

namespace {

std::filesystem::path writeDotFile(const std::filesystem::path& dir, const std::string& name, const CoverGraph& cover)
{
    std::filesystem::create_directories(dir);
    std::filesystem::path path = dir / (name + ".dot");
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    writeDot(out, cover, name);
    return path;
}

nlohmann::json entryJson(const FactorEntry& e)
{
    return {{"n", e.n}, {"count", e.count}, {"bound", e.bound}, {"flagged", e.flagged}, {"kernels", e.kernels}};
}

}   // namespace

std::string factorEntryJson(const FactorEntry& entry)
{
    return entryJson(entry).dump();
}

std::string factorReportJson(const FactorReport& report)
{
    nlohmann::json out = nlohmann::json::array();
    for (const FactorEntry& e : report.entries)
        out.push_back(entryJson(e));
    return out.dump();
}

std::string towerReportJson(const TowerTruncation& tower)
{
    nlohmann::json levels = nlohmann::json::array();
    const auto displacements = levelDisplacements(tower);
    for (std::size_t k = 0; k < tower.depth(); ++k)
    {
        nlohmann::json d = nullptr;
        if (displacements[k].min_displacement)
            d = *displacements[k].min_displacement;
        levels.push_back({{"degree", tower.levels[k].degree},
                          {"deck_order", tower.levels[k].cover.group().order()},
                          {"min_displacement", d}});
    }
    nlohmann::json out = {{"depth", tower.depth()}, {"levels", levels}, {"limit_deck", tower.limit_deck}};
    return out.dump();
}

std::vector<std::filesystem::path> writeCoverDots(const std::filesystem::path& dir, std::size_t n,
                                                  const std::vector<CoverGraph>& covers)
{
    std::vector<std::filesystem::path> paths;
    for (std::size_t k = 0; k < covers.size(); ++k)
        paths.push_back(writeDotFile(dir, "cover_" + std::to_string(n) + "_" + std::to_string(k + 1), covers[k]));
    return paths;
}

std::vector<std::filesystem::path> writeTowerDots(const std::filesystem::path& dir, const TowerTruncation& tower)
{
    std::vector<std::filesystem::path> paths;
    for (const TowerLevel& level : tower.levels)
        paths.push_back(writeDotFile(dir, "tower_level_" + std::to_string(level.depth), level.cover));
    return paths;
}

}   // namespace chainlift
