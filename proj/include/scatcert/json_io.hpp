#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "scatcert/certifier.hpp"
#include "scatcert/mc_oracle.hpp"
#include "scatcert/potential.hpp"
#include "scatcert/scattering.hpp"
#include "scatcert/two_body.hpp"

namespace scatcert {

// Insertion-ordered so that reports are byte-stable.
using Json = nlohmann::ordered_json;

/// Field names: kind, V0, R0, R_inner, sigma, terms[{V0, sigma}], r, v, parts.
/// Throws Error(Config) on a malformed description.
RadialPotential potential_from_json(const Json& j);
/// Throws Error(Config) on I/O or parse failure.
RadialPotential load_potential(const std::filesystem::path& path);

Json to_json(const RadialPotential& p);
Json to_json(const ScatteringLength& length);
Json to_json(const TwoBodyResult& result);
Json to_json(const BoundEvaluation& e);
Json to_json(const Certificate& cert);
Json to_json(const MCEstimate& e);

/// Finite numbers as-is, non-finite ones as null.
Json number(double x);

}  // namespace scatcert
