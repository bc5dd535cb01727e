#pragma once

#include <vector>

#include "lightsim/config.hpp"
#include "lightsim/report.hpp"
#include "lightsim/study.hpp"

namespace lightsim {

/// Grades a finished two-city study against the published findings: the
/// scheduling and motion-detection savings, daylight-harvesting ordering,
/// sunshine calibration, tariff gap, emission factors, cash-flow identities
/// and device costs. Check ids are "1" to "9"; an id may span several rows
/// (one per city) and passes only if all of its rows pass. The cities are
/// looked up by name ("Algiers", "Stuttgart"); a missing city fails its rows.
std::vector<CheckResult> reproduction_checks(const StudyConfig& config, const StudyResult& study);

/// True iff every row passes.
bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace lightsim
