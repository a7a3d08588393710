#include "cellplan/traffic_capacity.hpp"

#include <cmath>
#include <string>

namespace cellplan {

namespace {

constexpr double inverse_tolerance = 1e-12;
constexpr int max_bisection_steps = 400;

} // namespace

void TrafficModel::validate() const
{
	if (!(calls_per_hour >= 0.0) || !std::isfinite(calls_per_hour))
		throw std::invalid_argument("calls_per_hour must be >= 0");
	if (!(avg_call_s >= 0.0) || !std::isfinite(avg_call_s))
		throw std::invalid_argument("avg_call_s must be >= 0");
	if (!(gos > 0.0 && gos < 1.0))
		throw std::invalid_argument("gos must be in (0, 1)");
	if (available_frequencies < 1)
		throw std::invalid_argument("available_frequencies must be >= 1");
	if (cells_per_pattern < 1)
		throw std::invalid_argument("cells_per_pattern must be >= 1");
	if (channels_per_carrier < 1)
		throw std::invalid_argument("channels_per_carrier must be >= 1");
	if (control_channels_per_cell < 0)
		throw std::invalid_argument("control_channels_per_cell must be >= 0");
}

double erlang_traffic(double calls_per_hour, double avg_call_s)
{
	return calls_per_hour * avg_call_s / 3600.0;
}

double erlang_b(double offered_e, int channels)
{
	double b = 1.0;
	for (int m = 1; m <= channels; ++m)
		b = offered_e * b / (m + offered_e * b);
	return b;
}

double erlang_b_inverse(int channels, double gos)
{
	if (channels < 1)
		throw std::domain_error("erlang_b_inverse: channels must be >= 1");
	if (!(gos > 0.0 && gos < 1.0))
		throw std::domain_error("erlang_b_inverse: gos must be in (0, 1)");

	double lo = 0.0;
	double hi = 10.0 * channels;
	// B(A,m) -> 1 as A grows; widen for targets close to 1.
	while (erlang_b(hi, channels) < gos)
	{
		lo = hi;
		hi *= 2.0;
	}

	double mid = 0.5 * (lo + hi);
	for (int step = 0; step < max_bisection_steps; ++step)
	{
		mid = 0.5 * (lo + hi);
		const double b = erlang_b(mid, channels);
		if (std::abs(b - gos) <= inverse_tolerance || mid == lo || mid == hi)
			break;
		if (b < gos)
			lo = mid;
		else
			hi = mid;
	}
	return mid;
}

int frequencies_per_cell(const TrafficModel& m)
{
	if (m.cells_per_pattern < 1)
		throw std::invalid_argument("cells_per_pattern must be >= 1");
	const int f = m.available_frequencies / m.cells_per_pattern;
	if (f < 1)
		throw InfeasiblePlanError("no carrier per cell: " + std::to_string(m.available_frequencies)
			+ " frequencies over a pattern of " + std::to_string(m.cells_per_pattern) + " cells");
	return f;
}

int traffic_channels_per_cell(const TrafficModel& m)
{
	const int ch = frequencies_per_cell(m) * m.channels_per_carrier - m.control_channels_per_cell;
	if (ch < 1)
		throw InfeasiblePlanError("no traffic channel per cell (" + std::to_string(ch) + ")");
	return ch;
}

CapacityResult capacity_plan(const TrafficModel& m)
{
	m.validate();

	CapacityResult r;
	r.traffic_per_subscriber_e = erlang_traffic(m.calls_per_hour, m.avg_call_s);
	if (r.traffic_per_subscriber_e <= 0.0)
		throw InfeasiblePlanError("zero per-subscriber traffic");
	r.frequencies_per_cell = frequencies_per_cell(m);
	r.traffic_channels_per_cell = traffic_channels_per_cell(m);
	r.traffic_per_cell_e = erlang_b_inverse(r.traffic_channels_per_cell, m.gos);
	r.subscribers_per_cell = r.traffic_per_cell_e / r.traffic_per_subscriber_e;
	return r;
}

double cells_by_capacity(double total_subscribers, double subscribers_per_cell)
{
	if (!(subscribers_per_cell > 0.0))
		throw std::domain_error("cells_by_capacity: subscribers per cell must be positive");
	return total_subscribers / subscribers_per_cell;
}

} // namespace cellplan
