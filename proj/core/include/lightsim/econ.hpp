#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lightsim/model.hpp"

namespace lightsim {

enum class TariffKind { Flat, Tiered };
enum class BillingWindow { Monthly, Quarterly, Annual };

BillingWindow parse_billing_window(std::string_view name);
std::string_view to_string(BillingWindow window);
int windows_per_year(BillingWindow window);

/// Upper bound of a block, in kWh per billing window; empty means unbounded.
struct TariffTier {
  std::optional<double> up_to_kwh;
  double rate_eur_per_kwh = 0.0;
};

struct Tariff {
  TariffKind kind = TariffKind::Flat;
  double flat_rate_eur_per_kwh = 0.0;
  std::vector<TariffTier> tiers;
  BillingWindow window = BillingWindow::Annual;
};

/// 0.3048 EUR/kWh flat.
Tariff german_flat_tariff();
/// First 125 kWh per window at 0.014 EUR/kWh, remainder at 0.033 EUR/kWh.
Tariff algerian_tiered_tariff(BillingWindow window = BillingWindow::Quarterly);

std::vector<Violation> check_invariants(const Tariff& tariff, const std::string& path);

/// Cost of one year of energy. Tiered tariffs bill each window separately;
/// monthly_kwh (12 values) gives the per-window split, otherwise the annual
/// energy is spread uniformly. base_load_kwh is the rest of the household's
/// annual consumption: it occupies the lower tiers first and is not itself
/// charged. Throws DomainError for negative energy.
double energy_cost(double annual_energy_kwh, const Tariff& tariff,
                   std::optional<std::span<const double>> monthly_kwh = std::nullopt,
                   double base_load_kwh = 0.0);

struct CashflowParams {
  int horizon_years = 10;
  double discount_rate = 0.05;
  double initial_investment_eur = 0.0;
  double annual_inflow_eur = 0.0;
};

std::vector<Violation> check_invariants(const CashflowParams& params, const std::string& path);

/// Years to recover the investment. Empty when the inflow is not positive
/// (never pays back); zero for a free installation.
std::optional<double> payback(double initial_eur, double annual_inflow_eur);

/// Inflows discounted over years 1..n minus the initial investment.
double npv(const CashflowParams& params);

/// Discounted inflows over years 1..n; equals npv + initial investment.
double adi(const CashflowParams& params);

/// Rate in (-0.99, 10] at which npv vanishes, by bisection. Empty for free
/// installations and when npv has no sign change on the bracket.
std::optional<double> irr(const CashflowParams& params);

/// Yearly saving relative to the reference scenario; negative when the
/// scenario costs more to run.
double annual_inflow(double scenario_cost_eur, double reference_cost_eur);

struct EmissionFactors {
  double co2_kg_per_kwh = 0.516;
  double no2_g_per_kwh = 0.44;
  double so2_g_per_kwh = 0.290;
  double co_g_per_kwh = 0.230;
  double ch4_g_per_kwh = 0.184;
};

struct Emissions {
  double co2_kg = 0.0;
  double no2_g = 0.0;
  double so2_g = 0.0;
  double co_g = 0.0;
  double ch4_g = 0.0;
};

EmissionFactors german_grid_emissions();
std::vector<Violation> check_invariants(const EmissionFactors& factors, const std::string& path);

Emissions emissions(double annual_energy_kwh, const EmissionFactors& factors);

struct MetricsReport {
  double annual_energy_kwh = 0.0;
  double annual_cost_eur = 0.0;
  double capex_eur = 0.0;
  double annual_inflow_eur = 0.0;
  std::optional<double> payback_years;
  double npv_eur = 0.0;
  std::optional<double> irr;
  double adi_eur = 0.0;
  Emissions emissions;
};

struct EconomicAssumptions {
  int horizon_years = 10;
  double discount_rate = 0.05;
  double base_load_kwh = 0.0;
};

/// Full metric set for one scenario given the reference scenario's annual cost.
MetricsReport evaluate_metrics(double annual_energy_kwh, std::span<const double> monthly_kwh,
                               double capex_eur, double reference_cost_eur, const Tariff& tariff,
                               const EmissionFactors& factors,
                               const EconomicAssumptions& assumptions = {});

}  // namespace lightsim
