#pragma once

#include "json.hpp"
#include "momtail/config.hpp"
#include "momtail/eigensolve.hpp"
#include "momtail/potentials.hpp"

namespace momtail {

/// Runs the tail checks for one state and returns the JSON report.
///
/// Every state gets the two-route jump check and the exponent rule. States
/// whose expansion terms all sit at one location are gated on power-law fits of each
/// nonvanishing component (exponent and extrapolated coefficient); the
/// pointwise envelope deviation is reported alongside. States with several
/// locations are gated on a term ladder at ladder_p: phi minus all lower
/// orders must match each of the first two nonzero orders.
/// report["passed"] is the conjunction of all gating checks.
nlohmann::json verify_report(const PotentialSpec& spec, const BoundState& state,
                             const VerifyOptions& options = {});

}  // namespace momtail
