#ifndef CELLPLAN_MAP_GEN_HPP
#define CELLPLAN_MAP_GEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cellplan/geo_map.hpp"

namespace cellplan {

struct MapGenOptions
{
	int nodes = 50;
	double area_m2 = 230850.0;
	std::int64_t subscribers = 3139;
	std::uint64_t seed = 1;
	/// 0 for a uniform layout, otherwise the number of Gaussian clumps.
	int clumps = 0;
	std::string name;

	void validate() const;
};

/**
 * Synthetic map: nodes scattered over a square of the requested area
 * (uniformly, or around `clumps` Gaussian centers clamped to the square)
 * with integer loads summing exactly to `subscribers`.
 *
 * Only raw 64-bit draws of std::mt19937_64 are used, turned into doubles
 * and normals by hand, so the output is identical across standard
 * libraries.
 */
DigitalMap generate_map(const MapGenOptions& opts);

/// Largest-remainder apportionment of `total` proportional to `weights`.
/// Ties on the remainder go to the lower index.
std::vector<std::int64_t> apportion(std::int64_t total, const std::vector<double>& weights);

} // namespace cellplan

#endif
