#ifndef CELLPLAN_PLAN_IO_HPP
#define CELLPLAN_PLAN_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cellplan/mpam_planner.hpp"

namespace cellplan {

/// Everything a plan.json carries: the result plus the per-cell coverage
/// and capacity figures its ratios were computed against.
struct PlanDocument
{
	std::string map_name;
	CoverageResult coverage;
	CapacityResult capacity;
	PlanResult result;
};

class PlanFormatError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Pretty-printed JSON. Iteration snapshots are written as (k, violating,
/// total cost) only; cluster entries carry medoid coordinates for readers
/// that do not load the map.
std::string plan_to_json(const PlanDocument& doc, const DigitalMap& map);

PlanDocument plan_from_json(std::string_view text);
PlanDocument load_plan_file(const std::string& path);

/// Re-checks a plan against its map: partition of the node set, medoid
/// membership, ratios recomputed from member nodes (relative tolerance),
/// satisfied flags and feasibility. Returns one message per problem.
std::vector<std::string> validate_plan(const PlanDocument& doc, const DigitalMap& map, double rel_tol = 1e-9);

} // namespace cellplan

#endif
