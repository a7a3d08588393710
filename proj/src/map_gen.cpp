#include "cellplan/map_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cellplan {

namespace {

class Draws
{
public:
	explicit Draws(std::uint64_t seed)
		: rng_(seed)
	{}

	/// Uniform in [0, 1).
	double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

	/// Standard normal (Box-Muller, one value per call).
	double normal()
	{
		const double u1 = 1.0 - uniform(); // (0, 1]
		const double u2 = uniform();
		return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
	}

private:
	std::mt19937_64 rng_;
};

double round_cm(double v)
{
	return std::round(v * 100.0) / 100.0;
}

} // namespace

void MapGenOptions::validate() const
{
	if (nodes < 1)
		throw std::invalid_argument("nodes must be >= 1");
	if (!(area_m2 > 0.0) || !std::isfinite(area_m2))
		throw std::invalid_argument("area_m2 must be > 0");
	if (subscribers < 0)
		throw std::invalid_argument("subscribers must be >= 0");
	if (clumps < 0)
		throw std::invalid_argument("clumps must be >= 0");
}

std::vector<std::int64_t> apportion(std::int64_t total, const std::vector<double>& weights)
{
	std::vector<std::int64_t> out(weights.size(), 0);
	if (weights.empty())
		return out;
	const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
	std::vector<double> remainder(weights.size(), 0.0);
	std::int64_t assigned = 0;
	for (std::size_t i = 0; i < weights.size(); ++i)
	{
		const double quota = sum > 0.0 ? static_cast<double>(total) * weights[i] / sum
		                               : static_cast<double>(total) / static_cast<double>(weights.size());
		out[i] = static_cast<std::int64_t>(std::floor(quota));
		remainder[i] = quota - static_cast<double>(out[i]);
		assigned += out[i];
	}

	std::vector<std::size_t> order(weights.size());
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::stable_sort(order.begin(), order.end(),
		[&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
	for (std::size_t i = 0; assigned < total; i = (i + 1) % order.size(), ++assigned)
		++out[order[i]];
	// Rounding in the quotas can push the floor sum one over the total.
	for (std::size_t i = order.size(); assigned > total;)
	{
		i = (i + order.size() - 1) % order.size();
		if (out[order[i]] > 0)
		{
			--out[order[i]];
			--assigned;
		}
	}
	return out;
}

DigitalMap generate_map(const MapGenOptions& opts)
{
	opts.validate();
	Draws draws(opts.seed);
	const double side = std::sqrt(opts.area_m2);
	const auto n = static_cast<std::size_t>(opts.nodes);

	std::vector<std::pair<double, double>> centers;
	double sigma = 0.0;
	if (opts.clumps > 0)
	{
		for (int c = 0; c < opts.clumps; ++c)
		{
			const double cx = side * (0.15 + 0.7 * draws.uniform());
			const double cy = side * (0.15 + 0.7 * draws.uniform());
			centers.emplace_back(cx, cy);
		}
		sigma = side / (6.0 * std::sqrt(static_cast<double>(opts.clumps)));
	}

	DigitalMap map;
	map.name = opts.name.empty()
		? "synthetic-" + std::to_string(opts.nodes) + "-" + std::to_string(opts.seed)
		: opts.name;
	map.declared_area_m2 = opts.area_m2;
	map.nodes.reserve(n);

	std::vector<double> weights;
	weights.reserve(n);
	for (std::size_t i = 0; i < n; ++i)
	{
		double x = 0.0;
		double y = 0.0;
		if (centers.empty())
		{
			x = side * draws.uniform();
			y = side * draws.uniform();
		}
		else
		{
			const auto& [cx, cy] = centers[i % centers.size()];
			x = std::clamp(cx + sigma * draws.normal(), 0.0, side);
			y = std::clamp(cy + sigma * draws.normal(), 0.0, side);
		}
		weights.push_back(0.5 + draws.uniform());

		Node node;
		node.id = static_cast<NodeId>(i + 1);
		node.name = "n" + std::to_string(i + 1);
		node.x_m = round_cm(x);
		node.y_m = round_cm(y);
		map.nodes.push_back(std::move(node));
	}

	const std::vector<std::int64_t> loads = apportion(opts.subscribers, weights);
	for (std::size_t i = 0; i < n; ++i)
		map.nodes[i].subscribers = static_cast<double>(loads[i]);
	return map;
}

} // namespace cellplan
