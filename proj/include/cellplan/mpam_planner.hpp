#ifndef CELLPLAN_MPAM_PLANNER_HPP
#define CELLPLAN_MPAM_PLANNER_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cellplan/geo_map.hpp"
#include "cellplan/pam.hpp"
#include "cellplan/radio_coverage.hpp"
#include "cellplan/traffic_capacity.hpp"

namespace cellplan {

enum class Method
{
	method1, ///< grow k and re-cluster the whole map
	method2  ///< split only the clusters that violate a constraint
};

std::string to_string(Method method);
/// Accepts "1", "2", "method1" and "method2".
std::optional<Method> parse_method(std::string_view text);

struct PlanningContext
{
	DigitalMap map;
	CoverageResult coverage;
	CapacityResult capacity;
	PamConfig pam_cfg;
	Method method = Method::method2;
	/// Upper bound on the cluster count; defaults to the node count.
	std::optional<int> max_total_clusters;
	/// Method II: split a violating cluster into ceil(max ratio) parts
	/// instead of two.
	bool split_by_ratio = false;

	int cluster_cap() const;
	void validate() const;
};

struct ClusterReport
{
	NodeId medoid_id = 0;
	std::vector<NodeId> member_ids;
	double hull_area_m2 = 0.0;
	double subscribers = 0.0;
	double cells_coverage_ratio = 0.0;
	double cells_capacity_ratio = 0.0;
	bool satisfied = true;
	/// Sum of member distances to the medoid, meters.
	double cost_m = 0.0;

	bool operator==(const ClusterReport&) const = default;
};

struct IterationSnapshot
{
	int k = 0;
	int violating = 0;
	double total_cost_m = 0.0;
	/// Cluster reports of this iteration, ordered by medoid id.
	std::vector<ClusterReport> clusters;

	bool operator==(const IterationSnapshot&) const = default;
};

struct PlanResult
{
	Method method = Method::method2;
	int initial_k = 0;
	int final_k = 0;
	bool feasible = false;
	std::vector<ClusterReport> clusters;
	std::vector<IterationSnapshot> iterations;
	double elapsed_ms = 0.0;
	std::vector<std::string> warnings;
	std::vector<std::string> diagnostics;
};

struct InitialK
{
	int k = 1;
	double coverage_cells = 0.0;
	double capacity_cells = 0.0;
	bool capped = false;
	std::optional<std::string> warning;
};

/// max(1, ceil(area / cell area), ceil(subscribers / subscribers per cell)),
/// capped at the node count.
InitialK initial_k(const DigitalMap& map, const CoverageResult& coverage, const CapacityResult& capacity);

/// Coverage and capacity check of one cluster. A cluster is satisfied when
/// neither raw ratio exceeds 1.
ClusterReport check_cluster(std::span<const Node> members, NodeId medoid_id,
	const CoverageResult& coverage, const CapacityResult& capacity);

PlanResult plan_method1(const PlanningContext& ctx);
PlanResult plan_method2(const PlanningContext& ctx);

/// Dispatches on ctx.method.
PlanResult plan(const PlanningContext& ctx);

} // namespace cellplan

#endif
