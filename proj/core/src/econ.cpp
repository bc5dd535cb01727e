#include "lightsim/econ.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "lightsim/errors.hpp"

namespace lightsim {

BillingWindow parse_billing_window(std::string_view name) {
  if (name == "monthly") return BillingWindow::Monthly;
  if (name == "quarterly") return BillingWindow::Quarterly;
  if (name == "annual") return BillingWindow::Annual;
  throw ConfigError("unknown billing window '" + std::string(name) + "'");
}

std::string_view to_string(BillingWindow window) {
  switch (window) {
    case BillingWindow::Monthly:
      return "monthly";
    case BillingWindow::Quarterly:
      return "quarterly";
    case BillingWindow::Annual:
      return "annual";
  }
  return "?";
}

int windows_per_year(BillingWindow window) {
  switch (window) {
    case BillingWindow::Monthly:
      return 12;
    case BillingWindow::Quarterly:
      return 4;
    case BillingWindow::Annual:
      return 1;
  }
  return 1;
}

Tariff german_flat_tariff() { return Tariff{TariffKind::Flat, 0.3048, {}, BillingWindow::Annual}; }

Tariff algerian_tiered_tariff(BillingWindow window) {
  return Tariff{TariffKind::Tiered, 0.0, {{125.0, 0.014}, {std::nullopt, 0.033}}, window};
}

std::vector<Violation> check_invariants(const Tariff& tariff, const std::string& path) {
  std::vector<Violation> out;
  if (tariff.kind == TariffKind::Flat) {
    if (!(tariff.flat_rate_eur_per_kwh >= 0.0)) out.push_back({path + "/rate", "rate must be >= 0"});
    return out;
  }
  if (tariff.tiers.empty()) out.push_back({path + "/tiers", "tiered tariff needs at least one tier"});
  double prev = 0.0;
  for (std::size_t i = 0; i < tariff.tiers.size(); ++i) {
    const auto& t = tariff.tiers[i];
    const std::string tp = path + "/tiers/" + std::to_string(i);
    if (!(t.rate_eur_per_kwh >= 0.0)) out.push_back({tp + "/rate", "rate must be >= 0"});
    const bool last = i + 1 == tariff.tiers.size();
    if (last && t.up_to_kwh) out.push_back({tp + "/up_to_kwh", "last tier must be unbounded"});
    if (!last && !t.up_to_kwh) out.push_back({tp + "/up_to_kwh", "only the last tier may be unbounded"});
    if (t.up_to_kwh) {
      if (!(*t.up_to_kwh > prev))
        out.push_back({tp + "/up_to_kwh", "tier thresholds must be strictly increasing"});
      prev = *t.up_to_kwh;
    }
  }
  return out;
}

namespace {

double tiered_window_cost(double kwh, const std::vector<TariffTier>& tiers) {
  double cost = 0.0;
  double lower = 0.0;
  for (const auto& tier : tiers) {
    if (kwh <= lower) break;
    const double upper = tier.up_to_kwh.value_or(std::numeric_limits<double>::infinity());
    cost += (std::min(kwh, upper) - lower) * tier.rate_eur_per_kwh;
    lower = upper;
  }
  return cost;
}

}  // namespace

double energy_cost(double annual_energy_kwh, const Tariff& tariff,
                   std::optional<std::span<const double>> monthly_kwh, double base_load_kwh) {
  if (!(annual_energy_kwh >= 0.0)) throw DomainError("energy must be >= 0");
  if (!(base_load_kwh >= 0.0)) throw DomainError("base load must be >= 0");
  if (tariff.kind == TariffKind::Flat) return annual_energy_kwh * tariff.flat_rate_eur_per_kwh;

  std::array<double, 12> months{};
  if (monthly_kwh) {
    if (monthly_kwh->size() != 12) throw DomainError("monthly breakdown needs 12 values");
    double sum = 0.0;
    for (std::size_t m = 0; m < 12; ++m) {
      if (!((*monthly_kwh)[m] >= 0.0)) throw DomainError("energy must be >= 0");
      months[m] = (*monthly_kwh)[m];
      sum += months[m];
    }
    if (std::abs(sum - annual_energy_kwh) > 1e-9 * std::max(1.0, annual_energy_kwh))
      throw DomainError("monthly breakdown does not sum to the annual energy");
  } else {
    months.fill(annual_energy_kwh / 12.0);
  }

  const int windows = windows_per_year(tariff.window);
  const std::size_t months_per_window = static_cast<std::size_t>(12 / windows);
  const double base = base_load_kwh / windows;
  double cost = 0.0;
  for (int w = 0; w < windows; ++w) {
    double kwh = 0.0;
    for (std::size_t m = 0; m < months_per_window; ++m)
      kwh += months[static_cast<std::size_t>(w) * months_per_window + m];
    cost += tiered_window_cost(base + kwh, tariff.tiers) - tiered_window_cost(base, tariff.tiers);
  }
  return cost;
}

std::vector<Violation> check_invariants(const CashflowParams& params, const std::string& path) {
  std::vector<Violation> out;
  if (params.horizon_years < 1) out.push_back({path + "/horizon_years", "must be >= 1"});
  if (!(params.discount_rate > -1.0)) out.push_back({path + "/discount_rate", "must be > -1"});
  return out;
}

std::optional<double> payback(double initial_eur, double annual_inflow_eur) {
  if (!(initial_eur >= 0.0)) throw DomainError("initial investment must be >= 0");
  if (initial_eur == 0.0) return 0.0;
  if (!(annual_inflow_eur > 0.0)) return std::nullopt;
  return initial_eur / annual_inflow_eur;
}

double adi(const CashflowParams& p) {
  if (p.horizon_years < 1 || !(p.discount_rate > -1.0)) throw DomainError("invalid cash-flow parameters");
  double sum = 0.0;
  double discount = 1.0;
  const double growth = 1.0 + p.discount_rate;
  for (int k = 1; k <= p.horizon_years; ++k) {
    discount /= growth;
    sum += p.annual_inflow_eur * discount;
  }
  return sum;
}

double npv(const CashflowParams& p) { return adi(p) - p.initial_investment_eur; }

std::optional<double> irr(const CashflowParams& params) {
  if (!(params.initial_investment_eur > 0.0)) return std::nullopt;
  CashflowParams probe = params;
  auto f = [&probe](double r) {
    probe.discount_rate = r;
    return npv(probe);
  };
  double lo = -0.99;
  double hi = 10.0;
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;

  double best = lo;
  double best_abs = std::abs(f_lo);
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (std::abs(f_mid) < best_abs) {
      best = mid;
      best_abs = std::abs(f_mid);
    }
    if (f_mid == 0.0) break;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-9 && best_abs < 1e-9) break;
  }
  return best;
}

double annual_inflow(double scenario_cost_eur, double reference_cost_eur) {
  if (!(scenario_cost_eur >= 0.0) || !(reference_cost_eur >= 0.0))
    throw DomainError("costs must be >= 0");
  return reference_cost_eur - scenario_cost_eur;
}

EmissionFactors german_grid_emissions() { return EmissionFactors{}; }

std::vector<Violation> check_invariants(const EmissionFactors& f, const std::string& path) {
  std::vector<Violation> out;
  auto nonneg = [&](double v, const char* key) {
    if (!(v >= 0.0)) out.push_back({path + "/" + key, "must be >= 0"});
  };
  nonneg(f.co2_kg_per_kwh, "co2_kg_per_kwh");
  nonneg(f.no2_g_per_kwh, "no2_g_per_kwh");
  nonneg(f.so2_g_per_kwh, "so2_g_per_kwh");
  nonneg(f.co_g_per_kwh, "co_g_per_kwh");
  nonneg(f.ch4_g_per_kwh, "ch4_g_per_kwh");
  return out;
}

Emissions emissions(double kwh, const EmissionFactors& f) {
  if (!(kwh >= 0.0)) throw DomainError("energy must be >= 0");
  return {kwh * f.co2_kg_per_kwh, kwh * f.no2_g_per_kwh, kwh * f.so2_g_per_kwh,
          kwh * f.co_g_per_kwh, kwh * f.ch4_g_per_kwh};
}

MetricsReport evaluate_metrics(double annual_energy_kwh, std::span<const double> monthly_kwh,
                               double capex_eur, double reference_cost_eur, const Tariff& tariff,
                               const EmissionFactors& factors,
                               const EconomicAssumptions& assumptions) {
  MetricsReport m;
  m.annual_energy_kwh = annual_energy_kwh;
  m.annual_cost_eur = energy_cost(annual_energy_kwh, tariff,
                                  monthly_kwh.empty() ? std::nullopt
                                                      : std::optional<std::span<const double>>(monthly_kwh),
                                  assumptions.base_load_kwh);
  m.capex_eur = capex_eur;
  m.annual_inflow_eur = annual_inflow(m.annual_cost_eur, reference_cost_eur);
  m.payback_years = payback(capex_eur, m.annual_inflow_eur);
  const CashflowParams params{assumptions.horizon_years, assumptions.discount_rate, capex_eur,
                              m.annual_inflow_eur};
  m.npv_eur = npv(params);
  m.adi_eur = adi(params);
  m.irr = irr(params);
  m.emissions = emissions(annual_energy_kwh, factors);
  return m;
}

}  // namespace lightsim
