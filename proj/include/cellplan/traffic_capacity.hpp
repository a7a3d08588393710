#ifndef CELLPLAN_TRAFFIC_CAPACITY_HPP
#define CELLPLAN_TRAFFIC_CAPACITY_HPP

#include <stdexcept>

namespace cellplan {

struct TrafficModel
{
	double calls_per_hour = 2.0;
	double avg_call_s = 90.0;
	/// Target blocking probability, strictly between 0 and 1.
	double gos = 0.02;
	int available_frequencies = 24;
	int cells_per_pattern = 4;
	int channels_per_carrier = 8;
	int control_channels_per_cell = 2;

	void validate() const;
};

struct CapacityResult
{
	double traffic_per_subscriber_e = 0.0;
	int frequencies_per_cell = 0;
	int traffic_channels_per_cell = 0;
	double traffic_per_cell_e = 0.0;
	double subscribers_per_cell = 0.0;
};

/// The frequency plan or traffic profile cannot carry any subscriber.
class InfeasiblePlanError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

double erlang_traffic(double calls_per_hour, double avg_call_s);

/// Erlang-B blocking probability via the stable recursion
/// B(A,0) = 1, B(A,m) = A B(A,m-1) / (m + A B(A,m-1)).
double erlang_b(double offered_e, int channels);

/// Offered traffic A with erlang_b(A, channels) == gos, by bisection.
double erlang_b_inverse(int channels, double gos);

int frequencies_per_cell(const TrafficModel& m);
int traffic_channels_per_cell(const TrafficModel& m);

CapacityResult capacity_plan(const TrafficModel& m);

/// Raw ratio; throws std::domain_error when subscribers_per_cell <= 0.
double cells_by_capacity(double total_subscribers, double subscribers_per_cell);

} // namespace cellplan

#endif
