// Independent reference computations for the unit and acceptance suites.
// Nothing here calls into the library's algorithms.
#ifndef CELLPLAN_TESTS_ORACLES_HPP
#define CELLPLAN_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "cellplan/geo_map.hpp"

namespace oracle {

/// Erlang-B by the direct sum (A^m/m!) / sum_k A^k/k!, in long double,
/// with terms built incrementally.
inline long double erlang_b_direct(long double a, int m)
{
	long double term = 1.0L;
	long double sum = 1.0L;
	for (int k = 1; k <= m; ++k)
	{
		term *= a / k;
		sum += term;
	}
	return term / sum;
}

inline double pdist(const cellplan::Node& a, const cellplan::Node& b)
{
	const double dx = a.x_m - b.x_m;
	const double dy = a.y_m - b.y_m;
	return std::sqrt(dx * dx + dy * dy);
}

/// Sum of distances to the nearest medoid (by index).
inline double medoid_cost(const std::vector<cellplan::Node>& nodes, const std::vector<std::size_t>& medoids)
{
	double total = 0.0;
	for (const auto& n : nodes)
	{
		double best = std::numeric_limits<double>::infinity();
		for (std::size_t m : medoids)
			best = std::min(best, pdist(n, nodes[m]));
		total += best;
	}
	return total;
}

/// Global k-medoids optimum by enumerating all C(n, k) subsets.
inline double best_medoid_cost(const std::vector<cellplan::Node>& nodes, int k)
{
	const std::size_t n = nodes.size();
	std::vector<char> pick(n, 0);
	std::fill(pick.end() - k, pick.end(), 1);
	double best = std::numeric_limits<double>::infinity();
	do
	{
		std::vector<std::size_t> medoids;
		for (std::size_t i = 0; i < n; ++i)
			if (pick[i])
				medoids.push_back(i);
		best = std::min(best, medoid_cost(nodes, medoids));
	} while (std::next_permutation(pick.begin(), pick.end()));
	return best;
}

/// Convex hull area by brute force: an ordered pair (i, j) is a hull edge
/// when every other point lies strictly left of i->j or on the closed
/// segment. Area = sum of the triangles (centroid, i, j) over hull edges.
inline double hull_area_bruteforce(const std::vector<cellplan::Point>& pts)
{
	const std::size_t n = pts.size();
	if (n < 3)
		return 0.0;
	auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
		return (pts[a].x - pts[o].x) * (pts[b].y - pts[o].y) - (pts[a].y - pts[o].y) * (pts[b].x - pts[o].x);
	};
	double cx = 0.0, cy = 0.0;
	for (const auto& p : pts)
	{
		cx += p.x;
		cy += p.y;
	}
	cx /= static_cast<double>(n);
	cy /= static_cast<double>(n);

	double area = 0.0;
	for (std::size_t i = 0; i < n; ++i)
	{
		for (std::size_t j = 0; j < n; ++j)
		{
			if (i == j || (pts[i].x == pts[j].x && pts[i].y == pts[j].y))
				continue;
			bool edge = true;
			for (std::size_t k = 0; k < n && edge; ++k)
			{
				if (k == i || k == j)
					continue;
				const double c = cross(i, j, k);
				if (c < 0.0)
					edge = false;
				else if (c == 0.0)
				{
					// Collinear: must lie within the segment, else i->j is not maximal.
					const double t = (pts[k].x - pts[i].x) * (pts[j].x - pts[i].x)
						+ (pts[k].y - pts[i].y) * (pts[j].y - pts[i].y);
					const double len2 = (pts[j].x - pts[i].x) * (pts[j].x - pts[i].x)
						+ (pts[j].y - pts[i].y) * (pts[j].y - pts[i].y);
					if (t < 0.0 || t > len2)
						edge = false;
				}
			}
			if (edge)
				area += 0.5 * ((pts[i].x - cx) * (pts[j].y - cy) - (pts[i].y - cy) * (pts[j].x - cx));
		}
	}
	return std::abs(area);
}

inline std::vector<cellplan::Node> random_nodes(std::mt19937_64& rng, std::size_t n, double extent = 1000.0)
{
	std::vector<cellplan::Node> nodes;
	for (std::size_t i = 0; i < n; ++i)
	{
		cellplan::Node node;
		node.id = static_cast<cellplan::NodeId>(i + 1);
		node.x_m = std::uniform_real_distribution<double>(0.0, extent)(rng);
		node.y_m = std::uniform_real_distribution<double>(0.0, extent)(rng);
		node.subscribers = std::uniform_real_distribution<double>(0.0, 50.0)(rng);
		nodes.push_back(node);
	}
	return nodes;
}

} // namespace oracle

#endif
