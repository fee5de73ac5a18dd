/**
 * JSON and DOT exports. JSON objects have sorted keys and integers only, so
 * repeated runs give byte-identical text.
 */
#ifndef CHAINLIFT_REPORT_HPP
#define CHAINLIFT_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "chainlift/enumerate.hpp"
#include "chainlift/tower.hpp"

namespace chainlift {

/** {bound, count, flagged, kernels, n} */
std::string factorEntryJson(const FactorEntry& entry);

/** Array of factor entries. */
std::string factorReportJson(const FactorReport& report);

/** {depth, levels: [{degree, deck_order, min_displacement}], limit_deck: [[..], ..]}. */
std::string towerReportJson(const TowerTruncation& tower);

/** Writes cover_<n>_<k>.dot for k = 1.. and returns the paths written. */
std::vector<std::filesystem::path> writeCoverDots(const std::filesystem::path& dir, std::size_t n,
                                                  const std::vector<CoverGraph>& covers);

/** Writes tower_level_<k>.dot for k = 1..depth and returns the paths written. */
std::vector<std::filesystem::path> writeTowerDots(const std::filesystem::path& dir, const TowerTruncation& tower);

}   // namespace chainlift

#endif
