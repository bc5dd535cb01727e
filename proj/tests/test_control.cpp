#include <gtest/gtest.h>

#include <random>

#include "lightsim/control.hpp"
#include "lightsim/errors.hpp"

using namespace lightsim;

TEST(InteriorDaylight, DaylightFactorProduct) {
  EXPECT_DOUBLE_EQ(interior_daylight(50000.0, 0.02), 1000.0);
  EXPECT_EQ(interior_daylight(0.0, 0.02), 0.0);
  EXPECT_EQ(interior_daylight(80000.0, 0.0), 0.0);
  EXPECT_THROW(interior_daylight(-1.0, 0.02), DomainError);
  EXPECT_THROW(interior_daylight(100.0, 1.5), DomainError);
}

TEST(DimFactor, Examples) {
  EXPECT_EQ(dim_factor(DaylightMode::HarvestDim, 300.0, 300.0).value(), 0.0);
  EXPECT_EQ(dim_factor(DaylightMode::HarvestDim, 0.0, 300.0).value(), 1.0);
  EXPECT_EQ(dim_factor(DaylightMode::Harvest, 150.0, 300.0).value(), 1.0);
  EXPECT_DOUBLE_EQ(dim_factor(DaylightMode::HarvestDim, 150.0, 300.0).value(), 0.5);
  EXPECT_EQ(dim_factor(DaylightMode::Harvest, 300.0, 300.0).value(), 0.0);
  EXPECT_EQ(dim_factor(DaylightMode::None, 1e6, 300.0).value(), 1.0);
  EXPECT_THROW(dim_factor(DaylightMode::Harvest, 10.0, 0.0), DomainError);
}

TEST(DimFactor, Properties) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lux(0.0, 2000.0);
  std::uniform_real_distribution<double> set(1.0, 1000.0);
  for (int i = 0; i < 20000; ++i) {
    const double d = lux(rng);
    const double d2 = d + lux(rng);
    const double s = set(rng);
    const double dim = dim_factor(DaylightMode::HarvestDim, d, s).value();
    const double onoff = dim_factor(DaylightMode::Harvest, d, s).value();
    ASSERT_LE(dim, onoff);
    ASSERT_GE(dim, 0.0);
    ASSERT_LE(dim, 1.0);
    ASSERT_LE(dim_factor(DaylightMode::HarvestDim, d2, s).value(), dim);
    ASSERT_LE(dim_factor(DaylightMode::Harvest, d2, s).value(), onoff);
  }
  // A huge setpoint turns harvesting into a no-op.
  EXPECT_NEAR(dim_factor(DaylightMode::HarvestDim, 500.0, 1e12).value(), 1.0, 1e-9);
  EXPECT_EQ(dim_factor(DaylightMode::Harvest, 500.0, 1e12).value(), 1.0);
}

TEST(PowerFraction, RangeChecked) {
  EXPECT_THROW(PowerFraction(1.1), DomainError);
  EXPECT_THROW(PowerFraction(-0.1), DomainError);
  EXPECT_EQ(PowerFraction::full().value(), 1.0);
  EXPECT_EQ(PowerFraction::off().value(), 0.0);
}

TEST(PowerFractionOp, Composition) {
  const ControlFeatures md{DaylightMode::HarvestDim, OccupancyMode::MotionDetection};
  EXPECT_DOUBLE_EQ(power_fraction(md, 0.75, PowerFraction(0.4)).value(), 0.3);
  EXPECT_EQ(power_fraction(md, 0.0, PowerFraction(0.9)).value(), 0.0);
  const ControlFeatures baseline{};
  EXPECT_EQ(power_fraction(baseline, 0.0, PowerFraction::full()).value(), 1.0);
  const ControlFeatures dh{DaylightMode::Harvest, OccupancyMode::None};
  EXPECT_DOUBLE_EQ(power_fraction(dh, 0.0, PowerFraction(0.25)).value(), 0.25);
}

TEST(PowerFractionOp, MonotoneInBothInputs) {
  const ControlFeatures f{DaylightMode::HarvestDim, OccupancyMode::Schedule};
  for (double g = 0.0; g <= 1.0; g += 0.125) {
    for (double a = 0.0; a <= 1.0; a += 0.125) {
      const double v = power_fraction(f, g, PowerFraction(a)).value();
      if (g + 0.125 <= 1.0) EXPECT_LE(v, power_fraction(f, g + 0.125, PowerFraction(a)).value());
      if (a + 0.125 <= 1.0) EXPECT_LE(v, power_fraction(f, g, PowerFraction(a + 0.125)).value());
    }
  }
}

TEST(HarvestSwitch, ZeroBandMatchesDimFactor) {
  HarvestSwitch sw;
  for (double d : {0.0, 299.0, 300.0, 450.0, 299.9, 10.0}) {
    EXPECT_EQ(sw.update(d, 300.0), dim_factor(DaylightMode::Harvest, d, 300.0));
  }
}

TEST(HarvestSwitch, BandSuppressesChatter) {
  HarvestSwitch sw(50.0);
  EXPECT_EQ(sw.update(310.0, 300.0).value(), 0.0);
  EXPECT_EQ(sw.update(280.0, 300.0).value(), 0.0);  // inside the band, stays off
  EXPECT_EQ(sw.update(249.0, 300.0).value(), 1.0);
  EXPECT_EQ(sw.update(290.0, 300.0).value(), 1.0);  // below setpoint, stays on
  EXPECT_THROW(HarvestSwitch(-1.0), DomainError);
}
