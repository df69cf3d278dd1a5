#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kleq/attacks.hpp"

namespace kleq::cli {

/// Report as JSON with a fixed key order. Exponents appear as exact
/// rationals ("20/3") next to their decimal value.
nlohmann::ordered_json report_json(const AttackReport& rep);

/// Leaf fields of a JSON object as (dotted.path, text) in document order.
std::vector<std::pair<std::string, std::string>> flatten(const nlohmann::ordered_json& j);

/// CSV with one row per report (all reports must share one layout) and,
/// per parameter group, a summary row of success rate and column means.
/// `groups[i]` is the group label of reports[i]; groups are contiguous.
std::string reports_csv(const std::vector<AttackReport>& reports, const std::vector<std::string>& groups);

std::string hex(std::uint64_t v);

}  // namespace kleq::cli
