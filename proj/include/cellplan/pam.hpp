#ifndef CELLPLAN_PAM_HPP
#define CELLPLAN_PAM_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "cellplan/geo_map.hpp"

namespace cellplan {

/// A k-medoids partition. Medoids are kept in ascending id order; every
/// medoid is assigned to itself and every other node to its nearest medoid
/// with ties going to the lowest medoid id.
struct Clustering
{
	std::vector<NodeId> medoid_ids;
	std::map<NodeId, NodeId> assignment;
	/// Sum of member-to-medoid Euclidean distances, meters.
	double total_cost_m = 0.0;

	/// Member ids of the cluster served by `medoid`, in ascending order.
	std::vector<NodeId> members_of(NodeId medoid) const;

	bool operator==(const Clustering&) const = default;
};

struct PamConfig
{
	std::uint64_t seed = 1;
	int max_sweeps = 1000;
	/// Node counts up to this value use a precomputed distance matrix.
	std::size_t matrix_threshold = 4096;

	void validate() const;
};

struct PamResult
{
	Clustering clustering;
	/// Cost after initialization followed by the cost after every applied swap.
	std::vector<double> sweep_costs;
	int sweeps = 0;
	/// False when max_sweeps stopped the search before a local optimum.
	bool converged = false;
};

class PamError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

Clustering assign(std::span<const Node> nodes, std::span<const NodeId> medoid_ids);

/// Exact cost change of replacing `out_medoid` by `in_candidate` with a full
/// reassignment. Negative means the swap improves the clustering.
double swap_cost(std::span<const Node> nodes, const Clustering& current, NodeId out_medoid, NodeId in_candidate);

/**
 * Partitioning Around Medoids.
 *
 * Medoids start as k distinct nodes drawn by a partial Fisher-Yates shuffle
 * of the node indices driven by std::mt19937_64(seed), index
 * i + (draw mod (n - i)) at step i. Each sweep evaluates every
 * (medoid, non-medoid) pair and applies the single most negative swap,
 * ties going to the smallest (out id, in id). The search stops when no swap
 * improves the cost or after max_sweeps sweeps.
 */
PamResult pam(std::span<const Node> nodes, int k, const PamConfig& cfg = {});

/// Node indices of the seeded initial medoids (see pam()).
std::vector<std::size_t> initial_medoid_indices(std::size_t n, int k, std::uint64_t seed);

} // namespace cellplan

#endif
