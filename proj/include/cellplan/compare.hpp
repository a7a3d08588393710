#ifndef CELLPLAN_COMPARE_HPP
#define CELLPLAN_COMPARE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cellplan/config.hpp"
#include "cellplan/geo_map.hpp"

namespace cellplan {

struct ComparisonRow
{
	std::string dataset;
	std::size_t nodes = 0;
	double subscribers = 0.0;
	double cell_range_km = 0.0;
	int method1_bs = 0;
	int method2_bs = 0;
	int pam_bs = 0;
	double method1_ms = 0.0;
	double method2_ms = 0.0;
	double pam_ms = 0.0;
	/// "ok" when both methods end feasible, "infeasible" otherwise, or
	/// "error: <message>" when the row could not be computed.
	std::string status;
};

struct CompareOptions
{
	std::vector<double> cell_ranges_km;
	/// k for the plain PAM column; the radio-planning initial k when unset.
	std::optional<int> baseline_k;
	/// Runtimes are the median over this many runs.
	int repeat = 1;
	bool parallel = false;
};

inline constexpr const char* comparison_csv_header =
	"dataset,nodes,subscribers,cell_range_km,method1_bs,method2_bs,pam_bs,method1_ms,method2_ms,pam_ms,status";

/// One row per (map, cell range), in map-major order.
std::vector<ComparisonRow> run_comparison(const std::vector<DigitalMap>& maps, const RunConfig& cfg,
	const CompareOptions& opts);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

} // namespace cellplan

#endif
