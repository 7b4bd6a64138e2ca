#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "scatcert/cli.hpp"

using namespace scatcert;
using doctest::Approx;

namespace {

RunConfig config_for(const char* file) {
  RunConfig c;
  c.potential = std::filesystem::path(SCATCERT_TEST_DATA) / file;
  return c;
}

}  // namespace

TEST_CASE("scatlen") {
  auto r = cmd_scatlen(config_for("well.json"));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["a"].get<double>() == Approx(oracle::square_well_a(4, 1)).epsilon(1e-6));
  for (const char* key : {"a", "a_R_curve", "b", "c", "R", "discrepancy", "config", "timestamp"}) {
    CHECK(r.report.contains(key));
  }
  CHECK(r.report["config"]["tol"] == 1e-6);

  auto z = cmd_scatlen(config_for("zero.json"));
  CHECK(z.exit_code == kExitOk);
  CHECK(std::abs(z.report["a"].get<double>()) < 1e-15);

  auto bad = cmd_scatlen(config_for("malformed.json"));
  CHECK(bad.exit_code == kExitConfig);
  CHECK(bad.report["message"].get<std::string>().find("parse error") != std::string::npos);

  auto missing = cmd_scatlen(config_for("does_not_exist.json"));
  CHECK(missing.exit_code == kExitConfig);
}

TEST_CASE("twobody") {
  auto deep = cmd_twobody(config_for("deep_well.json"));
  CHECK(deep.exit_code == kExitOk);
  CHECK(deep.report["bound_state"] == true);
  CHECK(deep.report["E2"].get<double>() == Approx(oracle::square_well_E2(12, 1)).epsilon(1e-7));
  auto well = cmd_twobody(config_for("well.json"));
  CHECK(well.report["E2"] == 0.0);
  CHECK(well.report["bound_state"] == false);
  CHECK(cmd_twobody(config_for("zero.json")).report["E2"] == 0.0);
}

TEST_CASE("certify exit codes") {
  auto well = cmd_certify(config_for("well.json"));
  CHECK(well.exit_code == kExitOk);
  CHECK(well.report["verified"] == true);
  CHECK(well.report["B"].get<double>() + well.report["error_budget"].get<double>() < 0.0);
  for (const char* key : {"potential", "a", "R", "b", "c", "profile", "N", "L", "B", "terms", "error_budget"}) {
    CHECK(well.report.contains(key));
  }

  auto barrier = cmd_certify(config_for("barrier.json"));
  CHECK(barrier.exit_code == kExitNotCertifiable);

  auto deep = cmd_certify(config_for("deep_well.json"));
  CHECK(deep.exit_code == kExitNotCertifiable);
  CHECK(deep.report["node"] == true);
  CHECK(deep.report["scattering"]["node"] == true);

  auto capped = config_for("well.json");
  capped.l_max = 64.0;
  CHECK(cmd_certify(capped).exit_code == kExitSearchExhausted);
}

TEST_CASE("validate-mc") {
  auto c = config_for("well.json");
  c.samples = 4000;
  c.lattice_N = {2, 3};
  c.lattice_L = {5.0, 10.0};
  auto ok = cmd_validate_mc(c);
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.report["points"].size() == 4);

  c.samples = 0;
  CHECK(cmd_validate_mc(c).exit_code == kExitConfig);

  // -10% on the kinetic term: free particles at N = 2 then violate the bound,
  // because int |grad g|^2 exceeds 0.9 ||[g Delta g]_-||_1 for the cos^2 bump.
  auto fault = config_for("zero.json");
  fault.samples = 100000;
  fault.lattice_N = {2};
  fault.lattice_L = {5.0};
  CHECK(cmd_validate_mc(fault).exit_code == kExitOk);
  fault.kinetic_scale = 0.9;
  auto bad = cmd_validate_mc(fault);
  CHECK(bad.exit_code == kExitChainViolation);
  CHECK(bad.report["violations"].size() == 1);
}

TEST_CASE("reruns are byte-identical apart from the timestamp") {
  auto c = config_for("well.json");
  c.samples = 2000;
  c.lattice_N = {3};
  c.lattice_L = {5.0};
  for (auto fn : {cmd_scatlen, cmd_twobody, cmd_certify, cmd_validate_mc}) {
    const auto a = strip_timestamp(fn(c).report).dump(2);
    const auto b = strip_timestamp(fn(c).report).dump(2);
    CHECK(a == b);
  }
}

TEST_CASE("report artifacts") {
  auto c = config_for("well.json");
  const auto dir = std::filesystem::temp_directory_path() / "scatcert_report_test";
  std::filesystem::remove_all(dir);
  c.out = dir;
  c.l_max = 4096.0;
  auto r = cmd_report(c);
  CHECK(r.exit_code == kExitOk);
  for (const char* f : {"summary.txt", "a_R_curve.csv", "bound_sweep.csv"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  std::ifstream csv(dir / "bound_sweep.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("L,N,B,", 0) == 0);
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows > 10);
  std::filesystem::remove_all(dir);
}
