#include "cellplan/radio_coverage.hpp"

#include <cmath>
#include <numbers>

namespace cellplan {

namespace {

void check_finite(double v, const char* name)
{
	if (!std::isfinite(v))
		throw std::invalid_argument(std::string(name) + " must be finite");
}

void check_magnitude(double v, const char* name)
{
	check_finite(v, name);
	if (v < 0.0)
		throw std::invalid_argument(std::string(name) + " must be >= 0");
}

constexpr double validity_min_km = 1.0;
constexpr double validity_max_km = 20.0;

} // namespace

void LinkBudgetParams::validate() const
{
	check_finite(tx_power_dbm, "tx_power_dbm");
	check_magnitude(tx_cable_loss_db, "tx_cable_loss_db");
	check_magnitude(tx_body_loss_db, "tx_body_loss_db");
	check_finite(tx_antenna_gain_dbi, "tx_antenna_gain_dbi");
	check_finite(rx_sensitivity_dbm, "rx_sensitivity_dbm");
	check_magnitude(rx_cable_loss_db, "rx_cable_loss_db");
	check_magnitude(rx_body_loss_db, "rx_body_loss_db");
	check_finite(rx_antenna_gain_dbi, "rx_antenna_gain_dbi");
	check_magnitude(fading_margin_db, "fading_margin_db");
	check_magnitude(interference_margin_db, "interference_margin_db");
	check_magnitude(penetration_margin_db, "penetration_margin_db");
	check_magnitude(other_margin_db, "other_margin_db");
}

void HataParams::validate() const
{
	check_finite(coeff_a, "coeff_a");
	check_finite(coeff_b, "coeff_b");
	check_finite(coeff_c, "coeff_c");
	if (coeff_b <= 0.0)
		throw std::invalid_argument("coeff_b must be > 0");
}

HataParams hata_params_for(Band band, double coeff_c)
{
	switch (band)
	{
	case Band::gsm1800:
		return {46.3, 33.9, coeff_c, Band::gsm1800};
	case Band::gsm900:
		break;
	}
	return {69.55, 26.16, coeff_c, Band::gsm900};
}

double eirp(const LinkBudgetParams& p)
{
	return p.tx_power_dbm - (p.tx_cable_loss_db + p.tx_body_loss_db) + p.tx_antenna_gain_dbi;
}

double effective_rx_sensibility(const LinkBudgetParams& p)
{
	return p.rx_sensitivity_dbm - (p.rx_cable_loss_db + p.rx_body_loss_db) + p.rx_antenna_gain_dbi;
}

double total_margin(const LinkBudgetParams& p)
{
	return p.fading_margin_db + p.interference_margin_db + p.penetration_margin_db + p.other_margin_db;
}

double max_allowed_path_loss(const LinkBudgetParams& p)
{
	const double rx_gains = p.rx_antenna_gain_dbi - p.rx_cable_loss_db - p.rx_body_loss_db - p.rx_sensitivity_dbm;
	return eirp(p) + rx_gains - total_margin(p);
}

double hata_path_loss(const HataParams& h, double d_km)
{
	if (!(d_km > 0.0))
		throw std::domain_error("hata_path_loss: distance must be positive");
	return h.coeff_a + h.coeff_b * std::log10(d_km) + h.coeff_c;
}

RangeEstimate hata_max_range(const HataParams& h, double max_loss_db)
{
	RangeEstimate r;
	r.range_km = std::pow(10.0, (max_loss_db - h.coeff_a - h.coeff_c) / h.coeff_b);
	if (r.range_km < validity_min_km || r.range_km > validity_max_km)
	{
		r.warning = "cell range " + std::to_string(r.range_km)
			+ " km is outside the 1-20 km validity range of the Hata model";
	}
	return r;
}

double cell_area(double range_km, CellGeometry geometry)
{
	if (!(range_km > 0.0))
		throw std::domain_error("cell_area: range must be positive");
	const double r_m = range_km * 1000.0;
	switch (geometry)
	{
	case CellGeometry::hexagon:
		return 1.5 * std::numbers::sqrt3 * r_m * r_m;
	case CellGeometry::circle:
		break;
	}
	return std::numbers::pi * r_m * r_m;
}

double cells_by_coverage(double area_m2, double cell_area_m2)
{
	if (!(cell_area_m2 > 0.0))
		throw std::domain_error("cells_by_coverage: cell area must be positive");
	return area_m2 / cell_area_m2;
}

CoverageResult coverage_plan(const LinkBudgetParams& p, const HataParams& h, CellGeometry geometry)
{
	p.validate();
	h.validate();

	CoverageResult c;
	c.geometry = geometry;
	c.eirp_dbm = eirp(p);
	c.total_margin_db = total_margin(p);
	c.max_path_loss_db = max_allowed_path_loss(p);
	RangeEstimate r = hata_max_range(h, c.max_path_loss_db);
	c.cell_range_km = r.range_km;
	if (r.warning)
		c.warnings.push_back(*r.warning);
	c.cell_area_m2 = cell_area(c.cell_range_km, geometry);
	return c;
}

CoverageResult coverage_for_range(double range_km, CellGeometry geometry)
{
	CoverageResult c;
	c.geometry = geometry;
	c.cell_range_km = range_km;
	c.cell_area_m2 = cell_area(range_km, geometry);
	c.range_overridden = true;
	return c;
}

std::string to_string(Band band)
{
	return band == Band::gsm1800 ? "GSM1800" : "GSM900";
}

std::string to_string(CellGeometry geometry)
{
	return geometry == CellGeometry::hexagon ? "hexagon" : "circle";
}

std::optional<Band> parse_band(const std::string& text)
{
	if (text == "GSM900")
		return Band::gsm900;
	if (text == "GSM1800")
		return Band::gsm1800;
	return std::nullopt;
}

std::optional<CellGeometry> parse_geometry(const std::string& text)
{
	if (text == "circle")
		return CellGeometry::circle;
	if (text == "hexagon")
		return CellGeometry::hexagon;
	return std::nullopt;
}

} // namespace cellplan
