#include "cellplan/pam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace cellplan {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

// Relative slack below which a swap delta counts as no improvement.
constexpr double improvement_epsilon = 1e-12;

class DistanceTable
{
public:
	DistanceTable(std::span<const Node> nodes, std::size_t matrix_threshold)
		: nodes_(nodes)
	{
		const std::size_t n = nodes.size();
		if (n <= matrix_threshold)
		{
			matrix_.resize(n * n);
			for (std::size_t i = 0; i < n; ++i)
			{
				matrix_[i * n + i] = 0.0;
				for (std::size_t j = i + 1; j < n; ++j)
					matrix_[i * n + j] = matrix_[j * n + i] = distance(nodes[i], nodes[j]);
			}
		}
	}

	double operator()(std::size_t i, std::size_t j) const
	{
		if (!matrix_.empty())
			return matrix_[i * nodes_.size() + j];
		return distance(nodes_[i], nodes_[j]);
	}

private:
	std::span<const Node> nodes_;
	std::vector<double> matrix_;
};

// Nearest and second-nearest medoid per node, by position in `medoids`.
struct NearestState
{
	std::vector<std::size_t> nearest;
	std::vector<double> d1;
	std::vector<double> d2;
	double cost = 0.0;
};

NearestState nearest_state(std::span<const Node> nodes, const DistanceTable& dist, const std::vector<std::size_t>& medoids)
{
	const std::size_t n = nodes.size();
	NearestState s;
	s.nearest.assign(n, 0);
	s.d1.assign(n, infinity);
	s.d2.assign(n, infinity);
	for (std::size_t o = 0; o < n; ++o)
	{
		for (std::size_t m = 0; m < medoids.size(); ++m)
		{
			const double d = dist(o, medoids[m]);
			if (d < s.d1[o])
			{
				s.d2[o] = s.d1[o];
				s.d1[o] = d;
				s.nearest[o] = m;
			}
			else if (d < s.d2[o])
			{
				s.d2[o] = d;
			}
		}
		s.cost += s.d1[o];
	}
	return s;
}

std::unordered_map<NodeId, std::size_t> index_by_id(std::span<const Node> nodes)
{
	std::unordered_map<NodeId, std::size_t> index;
	index.reserve(nodes.size());
	for (std::size_t i = 0; i < nodes.size(); ++i)
	{
		if (!index.emplace(nodes[i].id, i).second)
			throw PamError("duplicate node id " + std::to_string(nodes[i].id));
	}
	return index;
}

} // namespace

std::vector<NodeId> Clustering::members_of(NodeId medoid) const
{
	std::vector<NodeId> out;
	for (const auto& [node, m] : assignment)
	{
		if (m == medoid)
			out.push_back(node);
	}
	return out;
}

void PamConfig::validate() const
{
	if (max_sweeps < 1)
		throw std::invalid_argument("max_sweeps must be >= 1");
}

Clustering assign(std::span<const Node> nodes, std::span<const NodeId> medoid_ids)
{
	if (medoid_ids.empty())
		throw PamError("assign: empty medoid set");

	const auto index = index_by_id(nodes);
	std::vector<NodeId> sorted(medoid_ids.begin(), medoid_ids.end());
	std::sort(sorted.begin(), sorted.end());
	if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
		throw PamError("assign: duplicate medoid id");

	std::vector<std::size_t> medoid_index;
	medoid_index.reserve(sorted.size());
	for (NodeId id : sorted)
	{
		auto it = index.find(id);
		if (it == index.end())
			throw PamError("assign: medoid " + std::to_string(id) + " is not a node");
		medoid_index.push_back(it->second);
	}

	Clustering c;
	c.medoid_ids = sorted;
	for (const Node& node : nodes)
	{
		NodeId best_id = node.id;
		double best = 0.0;
		if (!std::binary_search(sorted.begin(), sorted.end(), node.id))
		{
			best = infinity;
			// Ascending id order, strict comparison: ties keep the lowest id.
			for (std::size_t m = 0; m < sorted.size(); ++m)
			{
				const double d = distance(node, nodes[medoid_index[m]]);
				if (d < best)
				{
					best = d;
					best_id = sorted[m];
				}
			}
		}
		c.assignment.emplace(node.id, best_id);
		c.total_cost_m += best;
	}
	return c;
}

double swap_cost(std::span<const Node> nodes, const Clustering& current, NodeId out_medoid, NodeId in_candidate)
{
	const auto& meds = current.medoid_ids;
	if (std::find(meds.begin(), meds.end(), out_medoid) == meds.end())
		throw PamError("swap_cost: " + std::to_string(out_medoid) + " is not a medoid");
	if (std::find(meds.begin(), meds.end(), in_candidate) != meds.end())
		throw PamError("swap_cost: " + std::to_string(in_candidate) + " is already a medoid");
	if (std::none_of(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == in_candidate; }))
		throw PamError("swap_cost: " + std::to_string(in_candidate) + " is not a node");

	std::vector<NodeId> swapped = meds;
	std::replace(swapped.begin(), swapped.end(), out_medoid, in_candidate);
	const double before = assign(nodes, meds).total_cost_m;
	return assign(nodes, swapped).total_cost_m - before;
}

std::vector<std::size_t> initial_medoid_indices(std::size_t n, int k, std::uint64_t seed)
{
	std::vector<std::size_t> idx(n);
	for (std::size_t i = 0; i < n; ++i)
		idx[i] = i;
	std::mt19937_64 rng(seed);
	for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
	{
		const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
		std::swap(idx[i], idx[j]);
	}
	idx.resize(static_cast<std::size_t>(k));
	return idx;
}

PamResult pam(std::span<const Node> nodes, int k, const PamConfig& cfg)
{
	cfg.validate();
	const std::size_t n = nodes.size();
	if (k < 1)
		throw PamError("pam: k must be >= 1");
	if (static_cast<std::size_t>(k) > n)
		throw PamError("pam: k = " + std::to_string(k) + " exceeds node count " + std::to_string(n));
	index_by_id(nodes);

	const DistanceTable dist(nodes, cfg.matrix_threshold);
	std::vector<std::size_t> medoids = initial_medoid_indices(n, k, cfg.seed);
	std::vector<char> is_medoid(n, 0);
	for (std::size_t m : medoids)
		is_medoid[m] = 1;

	PamResult result;
	NearestState state = nearest_state(nodes, dist, medoids);
	result.sweep_costs.push_back(state.cost);

	std::vector<double> removal(medoids.size());
	for (;;)
	{
		if (result.sweeps >= cfg.max_sweeps)
			break;
		++result.sweeps;

		double best_delta = infinity;
		std::size_t best_out = 0;
		std::size_t best_in = 0;
		for (std::size_t h = 0; h < n; ++h)
		{
			if (is_medoid[h])
				continue;
			// Delta for every medoid at once: a shared part for nodes that
			// move to h, plus the extra loss of removing each node's nearest.
			double shared = 0.0;
			std::fill(removal.begin(), removal.end(), 0.0);
			for (std::size_t o = 0; o < n; ++o)
			{
				const double dh = dist(o, h);
				const double kept = std::min(state.d1[o], dh);
				shared += kept - state.d1[o];
				removal[state.nearest[o]] += std::min(state.d2[o], dh) - kept;
			}
			for (std::size_t m = 0; m < medoids.size(); ++m)
			{
				const double delta = shared + removal[m];
				const NodeId out_id = nodes[medoids[m]].id;
				const NodeId in_id = nodes[h].id;
				if (delta < best_delta
					|| (delta == best_delta
						&& std::pair(out_id, in_id) < std::pair(nodes[medoids[best_out]].id, nodes[best_in].id)))
				{
					best_delta = delta;
					best_out = m;
					best_in = h;
				}
			}
		}

		if (!(best_delta < -improvement_epsilon * state.cost))
		{
			result.converged = true;
			break;
		}

		is_medoid[medoids[best_out]] = 0;
		is_medoid[best_in] = 1;
		medoids[best_out] = best_in;
		state = nearest_state(nodes, dist, medoids);
		result.sweep_costs.push_back(state.cost);
	}

	std::vector<NodeId> ids;
	ids.reserve(medoids.size());
	for (std::size_t m : medoids)
		ids.push_back(nodes[m].id);
	result.clustering = assign(nodes, ids);
	return result;
}

} // namespace cellplan
