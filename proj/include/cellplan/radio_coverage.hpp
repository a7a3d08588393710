#ifndef CELLPLAN_RADIO_COVERAGE_HPP
#define CELLPLAN_RADIO_COVERAGE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellplan {

/// Link budget inputs, all in dB / dBm. Losses and margins are magnitudes
/// (non-negative) and are subtracted where they apply.
struct LinkBudgetParams
{
	double tx_power_dbm = 33.0;
	double tx_cable_loss_db = 0.0;
	double tx_body_loss_db = 3.0;
	double tx_antenna_gain_dbi = 0.0;

	double rx_sensitivity_dbm = -104.0;
	double rx_cable_loss_db = 3.0;
	double rx_body_loss_db = 0.0;
	double rx_antenna_gain_dbi = 18.0;

	double fading_margin_db = 8.0;
	double interference_margin_db = 2.0;
	double penetration_margin_db = 0.0;
	double other_margin_db = 0.0;

	/// Throws std::invalid_argument on non-finite values or negative
	/// losses/margins.
	void validate() const;
};

enum class Band
{
	gsm900,
	gsm1800
};

/// Simplified Okumura-Hata: loss = A + B log10(d_km) + C.
struct HataParams
{
	double coeff_a = 69.55;
	double coeff_b = 26.16;
	double coeff_c = 0.0;
	Band band = Band::gsm900;

	void validate() const;
};

/// Tabulated A/B for the band, C as given (terrain dependent).
HataParams hata_params_for(Band band, double coeff_c = 0.0);

enum class CellGeometry
{
	circle,
	hexagon
};

struct CoverageResult
{
	double eirp_dbm = 0.0;
	double total_margin_db = 0.0;
	double max_path_loss_db = 0.0;
	double cell_range_km = 0.0;
	double cell_area_m2 = 0.0;
	CellGeometry geometry = CellGeometry::circle;
	/// Set when the range was given directly instead of derived.
	bool range_overridden = false;
	std::vector<std::string> warnings;
};

double eirp(const LinkBudgetParams& p);
double effective_rx_sensibility(const LinkBudgetParams& p);
double total_margin(const LinkBudgetParams& p);

/// EIRP + (RX gain - RX cable loss - RX body loss) - RX sensitivity - margins.
double max_allowed_path_loss(const LinkBudgetParams& p);

/// Throws std::domain_error when d_km <= 0.
double hata_path_loss(const HataParams& h, double d_km);

struct RangeEstimate
{
	double range_km = 0.0;
	/// Present when the range falls outside the 1-20 km validity window.
	std::optional<std::string> warning;
};

RangeEstimate hata_max_range(const HataParams& h, double max_loss_db);

/// Cell area in m2 for a range in km. Throws std::domain_error when
/// range_km <= 0.
double cell_area(double range_km, CellGeometry geometry);

/// Raw ratio area / cell_area. Throws std::domain_error when cell_area <= 0.
double cells_by_coverage(double area_m2, double cell_area_m2);

/// Link budget -> Hata range -> cell area.
CoverageResult coverage_plan(const LinkBudgetParams& p, const HataParams& h, CellGeometry geometry);

/// Coverage with a fixed cell range, bypassing link budget and Hata.
CoverageResult coverage_for_range(double range_km, CellGeometry geometry);

std::string to_string(Band band);
std::string to_string(CellGeometry geometry);
std::optional<Band> parse_band(const std::string& text);
std::optional<CellGeometry> parse_geometry(const std::string& text);

} // namespace cellplan

#endif
