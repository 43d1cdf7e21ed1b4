#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "momtail/asymptotics.hpp"
#include "momtail/eigensolve.hpp"
#include "momtail/momentum.hpp"
#include "momtail/potentials.hpp"
#include "momtail/tailfit.hpp"

namespace momtail {

/// %.17g: round-trips every double.
std::string format_number(double value);

using ExtraColumn = std::pair<std::string, std::vector<double>>;

/// Columns p, phi_re, phi_im, abs_phi2, then any extra columns in order.
void write_samples_csv(std::ostream& out, const MomentumSamples& samples,
                       const std::vector<ExtraColumn>& extra = {});

/// Columns order, location, jump, coefficient_re, coefficient_im.
void write_prediction_csv(std::ostream& out, const TailPrediction& prediction);

/// Reads {"kind": ..., "parameters": {...}, "hbar": 1, "mass": 1}.
/// Throws ConfigError for malformed input and InvalidSpec for bad values.
PotentialSpec potential_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PotentialSpec& spec);

nlohmann::json to_json(const DerivativeJet& jet);
nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const Agreement& agreement);

Parity parse_parity(const std::string& text);

}  // namespace momtail
