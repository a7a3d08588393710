#ifndef CELLPLAN_CONFIG_HPP
#define CELLPLAN_CONFIG_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cellplan/mpam_planner.hpp"
#include "cellplan/pam.hpp"
#include "cellplan/radio_coverage.hpp"
#include "cellplan/traffic_capacity.hpp"

namespace cellplan {

class ConfigError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

struct RadioConfig
{
	LinkBudgetParams link;
	HataParams hata;
	CellGeometry geometry = CellGeometry::circle;
	/// Fixed cell range; skips the link budget and Hata when set.
	std::optional<double> cell_range_km;
};

struct PlannerConfig
{
	std::optional<Method> method;
	std::optional<int> max_total_clusters;
	bool split_by_ratio = false;
};

struct OutputConfig
{
	std::optional<std::string> plan_path;
	std::optional<std::string> svg_path;
	std::optional<std::string> csv_path;
};

/**
 * Single JSON document with optional "radio", "traffic", "pam", "planner"
 * and "output" sections. Every field is optional and falls back to the
 * defaults of the corresponding struct; unknown keys are rejected.
 *
 * The radio "band" selects the tabulated Hata A/B; explicit "coeff_a" and
 * "coeff_b" override them.
 */
struct RunConfig
{
	RadioConfig radio;
	TrafficModel traffic;
	PamConfig pam;
	PlannerConfig planner;
	OutputConfig output;
};

RunConfig load_config(std::istream& in);
RunConfig load_config_string(std::string_view text);
RunConfig load_config_file(const std::string& path);

/// Coverage for the radio section; `range_override_km` wins over the
/// config's own cell_range_km.
CoverageResult coverage_for(const RadioConfig& radio, std::optional<double> range_override_km = std::nullopt);

} // namespace cellplan

#endif
