#include "scatcert/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "scatcert/error.hpp"

namespace scatcert {

namespace {

double get_number(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::Config, std::string("potential: missing \"") + key + "\"");
  const auto& x = j.at(key);
  if (!x.is_number()) throw Error(ErrorCode::Config, std::string("potential: \"") + key + "\" must be a number");
  return x.get<double>();
}

double get_number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? get_number(j, key) : fallback;
}

std::vector<double> get_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(ErrorCode::Config, std::string("potential: \"") + key + "\" must be an array");
  }
  std::vector<double> out;
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) throw Error(ErrorCode::Config, std::string("potential: non-numeric entry in \"") + key + "\"");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

RadialPotential potential_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorCode::Config, "potential: expected an object with a string \"kind\"");
  }
  PotentialKind kind;
  try {
    kind = potential_kind_from_string(j.at("kind").get<std::string>());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  try {
    switch (kind) {
      case PotentialKind::zero:
        return RadialPotential::zero();
      case PotentialKind::square_well:
        return RadialPotential::square_well(get_number(j, "V0"), get_number(j, "R0"),
                                            get_number_or(j, "R_inner", 0.0));
      case PotentialKind::barrier:
        return RadialPotential::barrier(get_number(j, "V0"), get_number(j, "R0"),
                                        get_number_or(j, "R_inner", 0.0));
      case PotentialKind::gaussian:
        return RadialPotential::gaussian(get_number(j, "V0"), get_number(j, "sigma"));
      case PotentialKind::sum_of_gaussians: {
        if (!j.contains("terms") || !j.at("terms").is_array()) {
          throw Error(ErrorCode::Config, "potential: \"terms\" must be an array");
        }
        std::vector<GaussianTerm> terms;
        for (const auto& t : j.at("terms")) terms.push_back({get_number(t, "V0"), get_number(t, "sigma")});
        return RadialPotential::sum_of_gaussians(std::move(terms));
      }
      case PotentialKind::tabulated:
        return RadialPotential::tabulated(get_array(j, "r"), get_array(j, "v"));
      case PotentialKind::sum: {
        if (!j.contains("parts") || !j.at("parts").is_array()) {
          throw Error(ErrorCode::Config, "potential: \"parts\" must be an array");
        }
        std::vector<RadialPotential> parts;
        for (const auto& p : j.at("parts")) parts.push_back(potential_from_json(p));
        return RadialPotential::sum(std::move(parts));
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Config, std::string("potential: ") + e.what());
  }
  throw Error(ErrorCode::Config, "potential: unhandled kind");
}

RadialPotential load_potential(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Config, path.string() + ": " + e.what());
  }
  return potential_from_json(j);
}

Json to_json(const RadialPotential& p) {
  Json j;
  j["kind"] = std::string(to_string(p.kind()));
  switch (p.kind()) {
    case PotentialKind::zero:
      break;
    case PotentialKind::square_well:
    case PotentialKind::barrier:
      j["V0"] = p.depth();
      j["R0"] = p.radius();
      if (p.inner_radius() > 0.0) j["R_inner"] = p.inner_radius();
      break;
    case PotentialKind::gaussian:
      j["V0"] = p.depth();
      j["sigma"] = p.sigma();
      break;
    case PotentialKind::sum_of_gaussians:
      j["terms"] = Json::array();
      for (const auto& t : p.terms()) j["terms"].push_back({{"V0", t.depth}, {"sigma", t.sigma}});
      break;
    case PotentialKind::tabulated:
      j["r"] = p.samples_r();
      j["v"] = p.samples_v();
      break;
    case PotentialKind::sum:
      j["parts"] = Json::array();
      for (const auto& part : p.parts()) j["parts"].push_back(to_json(part));
      break;
  }
  return j;
}

Json to_json(const ScatteringLength& s) {
  Json j;
  j["a"] = s.minus_infinity ? Json(nullptr) : number(s.a);
  j["method_variational"] = s.method_variational ? number(*s.method_variational) : Json(nullptr);
  j["method_shooting"] = number(s.method_shooting);
  j["discrepancy"] = number(s.discrepancy);
  j["tolerance"] = s.tolerance;
  j["consistent"] = s.consistent;
  j["minus_infinity"] = s.minus_infinity;
  j["node"] = s.node;
  j["extrapolation"] = s.extrapolation;
  j["richardson_order"] = s.richardson_order;
  j["a_R_curve"] = Json::array();
  for (const auto& [R, aR] : s.a_R_curve) j["a_R_curve"].push_back({R, number(aR)});
  return j;
}

Json to_json(const TwoBodyResult& r) {
  Json j;
  j["E2"] = r.E2;
  j["bound_state"] = r.bound_state_exists;
  j["lowest_dirichlet"] = r.lowest_dirichlet;
  const auto& g = r.grid_report;
  j["grid"] = {{"r_max", g.r_max},
               {"n", g.n},
               {"raw", {g.raw[0], g.raw[1], g.raw[2]}},
               {"extrapolated_coarse", g.extrapolated_coarse},
               {"extrapolated_fine", g.extrapolated_fine}};
  return j;
}

Json to_json(const BoundEvaluation& e) {
  Json j;
  j["N"] = e.N;
  j["L"] = e.L;
  j["B"] = e.B;
  j["terms"] = {{"main", e.term_main}, {"kinetic", e.term_kinetic}, {"threebody", e.term_threebody}};
  j["I_L"] = e.I_L;
  j["quadrature_error"] = e.quadrature_error;
  return j;
}

Json to_json(const Certificate& c) {
  Json j;
  j["potential"] = to_json(c.potential);
  j["a"] = number(c.a);
  j["R"] = c.R;
  j["b"] = c.b;
  j["c"] = c.c;
  j["profile"] = std::string(to_string(c.profile));
  j["N"] = c.bound.N;
  j["L"] = c.bound.L;
  j["B"] = c.bound.B;
  j["terms"] = {{"main", c.bound.term_main},
                {"kinetic", c.bound.term_kinetic},
                {"threebody", c.bound.term_threebody}};
  j["error_budget"] = c.error_budget;
  j["verified"] = c.verified;
  j["node"] = c.node;
  j["candidates_evaluated"] = c.sweep.size();
  return j;
}

Json to_json(const MCEstimate& e) {
  Json j;
  j["N"] = e.N;
  j["L"] = e.L;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["energy"] = e.value;
  j["stderr"] = e.std_error;
  j["norm"] = e.norm;
  j["norm_stderr"] = e.norm_std_error;
  j["laplacian_energy"] = e.laplacian_value;
  j["laplacian_stderr"] = e.laplacian_std_error;
  j["gradient_identity_mean"] = e.gradient_identity_mean;
  j["batches"] = e.batches;
  j["resamples"] = e.resamples;
  return j;
}

}  // namespace scatcert
