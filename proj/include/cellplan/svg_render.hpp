#ifndef CELLPLAN_SVG_RENDER_HPP
#define CELLPLAN_SVG_RENDER_HPP

#include <string>

#include "cellplan/geo_map.hpp"
#include "cellplan/mpam_planner.hpp"

namespace cellplan {

/**
 * SVG 1.1 picture of a plan: node dots sized by load, one convex-hull
 * boundary per cluster (a stroked segment for two-node clusters), medoids
 * as black-edged squares and a legend with k and per-cluster ratios.
 *
 * Elements carry class="hull" / "node" / "medoid" so callers can pick
 * them out. Output depends only on the inputs.
 */
std::string render_svg(const PlanResult& plan, const DigitalMap& map);

/// Fill color of the i-th cluster: a fixed palette, then golden-angle hues.
std::string cluster_color(std::size_t index);

} // namespace cellplan

#endif
