#include "scatcert/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "scatcert/error.hpp"

namespace scatcert {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void validate(const RunConfig& c) {
  if (c.potential.empty()) throw Error(ErrorCode::Config, "--potential is required");
  if (!(c.tol > 0.0)) throw Error(ErrorCode::Config, "--tol must be positive");
  if (c.samples <= 0) throw Error(ErrorCode::Config, "--samples must be positive");
  if (c.l_max && !(*c.l_max > 0.0)) throw Error(ErrorCode::Config, "--l-max must be positive");
  if (c.grid_n < 64) throw Error(ErrorCode::Config, "grid size must be at least 64");
  if (c.lattice_N.empty() || c.lattice_L.empty()) throw Error(ErrorCode::Config, "empty MC lattice");
}

CertifyConfig certify_config(const RunConfig& c) {
  CertifyConfig cc;
  cc.profile = c.profile;
  cc.L_max = c.l_max;
  cc.tol = c.tol;
  cc.grid_n = c.grid_n;
  return cc;
}

LimitOptions limit_options(const RunConfig& c) {
  LimitOptions o;
  o.tol = c.tol;
  o.grid_n = c.grid_n;
  return o;
}

Json config_echo(const RunConfig& c, const RadialPotential& v) {
  const CertifyConfig cc = certify_config(c);
  Json j;
  j["potential_path"] = c.potential.string();
  j["potential"] = to_json(v);
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["l_max"] = c.l_max ? Json(*c.l_max) : Json(nullptr);
  j["tol"] = c.tol;
  j["grid_n"] = c.grid_n;
  j["R_schedule"] = default_R_schedule(v);
  j["profile"] = std::string(to_string(c.profile));
  j["L_schedule"] = {{"base", "R"}, {"min_exponent", cc.L_min_exponent}, {"max_exponent", cc.L_max_exponent}};
  j["N_rule"] = {{"window", "[ceil(L), floor(L^1.5)]"}, {"samples", cc.N_samples}, {"extra", "round(L^1.25)"}};
  j["b_margin_frac"] = cc.b_margin_frac;
  j["lattice_N"] = c.lattice_N;
  j["lattice_L"] = c.lattice_L;
  return j;
}

Json envelope(const char* command, std::string_view status) {
  Json j;
  j["command"] = command;
  j["status"] = std::string(status);
  return j;
}

void finish(Json& report, const RunConfig& c, const RadialPotential& v) {
  report["config"] = config_echo(c, v);
  report["timestamp"] = utc_timestamp();
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Inconsistent: return kExitInconsistent;
    case ErrorCode::NotCertifiable: return kExitNotCertifiable;
    case ErrorCode::SearchExhausted: return kExitSearchExhausted;
    default: return kExitConfig;
  }
}

// Loads the potential and runs body; numerical errors become an error report.
CommandResult guarded(const char* command, const RunConfig& config,
                      const std::function<CommandResult(const RadialPotential&)>& body) {
  std::optional<RadialPotential> loaded;
  try {
    validate(config);
    loaded = load_potential(config.potential);
  } catch (const Error& e) {
    CommandResult r;
    r.exit_code = exit_code_for(e.code());
    r.report = envelope(command, to_string(e.code()));
    r.report["message"] = e.what();
    return r;
  }
  const RadialPotential& v = *loaded;
  try {
    CommandResult r = body(v);
    finish(r.report, config, v);
    return r;
  } catch (const Error& e) {
    CommandResult r;
    r.exit_code = exit_code_for(e.code());
    r.report = envelope(command, to_string(e.code()));
    r.report["message"] = e.what();
    finish(r.report, config, v);
    return r;
  }
}

// Radius, b and c reported next to a: the certifier's radius when a < 0,
// otherwise the smallest exterior radius.
Json solution_summary(const RadialPotential& v, const ScatteringLength& length, const RunConfig& c) {
  Json j;
  if (length.minus_infinity) {
    j["R"] = nullptr;
    j["b"] = nullptr;
    j["c"] = nullptr;
    return j;
  }
  const auto factory = [&](double R) {
    return solve_a_R(v, R, RadialGrid::for_potential(v, R, c.grid_n));
  };
  std::optional<ScatteringSolution> sol;
  if (!length.node && std::isfinite(length.a) && length.a < 0.0) {
    try {
      sol = find_negative_b_radius(v, length, default_b_schedule(v), factory).second;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SearchExhausted) throw;
    }
  }
  if (!sol) sol = factory(default_match_radius(v));
  j["R"] = sol->R;
  j["b"] = sol->b;
  j["c"] = sol->c;
  return j;
}

// Solution used for the MC chain check: the certifier's when available,
// otherwise the one at the smallest exterior radius (the bound holds for any
// admissible phi).
CertifierContext chain_context(const RadialPotential& v, const RunConfig& c) {
  const auto length = limit_a(v, default_R_schedule(v), limit_options(c));
  try {
    return prepare_certifier(v, length, certify_config(c));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotCertifiable && e.code() != ErrorCode::SearchExhausted) throw;
    if (length.minus_infinity) throw;
  }
  const double R = default_match_radius(v);
  auto sol = std::make_shared<const ScatteringSolution>(
      solve_a_R(v, R, RadialGrid::for_potential(v, R, c.grid_n)));
  auto h = std::make_shared<const HProfile>(build_h(sol, v));
  return CertifierContext{v, length, sol, build_trial_profile(c.profile), h, l1_norm(v)};
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

}  // namespace

Json strip_timestamp(Json report) {
  report.erase("timestamp");
  return report;
}

CommandResult cmd_scatlen(const RunConfig& config) {
  return guarded("scatlen", config, [&](const RadialPotential& v) {
    const auto length = limit_a(v, default_R_schedule(v), limit_options(config));
    CommandResult r;
    r.report = envelope("scatlen", "ok");
    r.report.update(to_json(length));
    r.report.update(solution_summary(v, length, config));
    r.report["integral_v"] = integral_v(v);
    r.report["l1_norm"] = number(l1_norm(v));
    const auto check = check_assumptions(v);
    r.report["assumptions"] = {{"pass", check.pass}, {"message", check.message}};
    return r;
  });
}

CommandResult cmd_twobody(const RunConfig& config) {
  return guarded("twobody", config, [&](const RadialPotential& v) {
    CommandResult r;
    r.report = envelope("twobody", "ok");
    r.report.update(to_json(ground_state_energy(v)));
    return r;
  });
}

CommandResult cmd_certify(const RunConfig& config) {
  return guarded("certify", config, [&](const RadialPotential& v) {
    const auto length = limit_a(v, default_R_schedule(v), limit_options(config));
    CommandResult r;
    try {
      const auto cfg = certify_config(config);
      const auto cert = search_certificate(prepare_certifier(v, length, cfg), cfg);
      r.report = envelope("certify", "ok");
      r.report.update(to_json(cert));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotCertifiable && e.code() != ErrorCode::SearchExhausted) throw;
      r.exit_code = exit_code_for(e.code());
      r.report = envelope("certify", to_string(e.code()));
      r.report["message"] = e.what();
      r.report["potential"] = to_json(v);
    }
    r.report["scattering"] = to_json(length);
    r.report["node"] = length.node;
    return r;
  });
}

CommandResult cmd_validate_mc(const RunConfig& config) {
  return guarded("validate-mc", config, [&](const RadialPotential& v) {
    for (int n : config.lattice_N) {
      if (n < 2 || n > kMaxMCParticles) throw Error(ErrorCode::Config, "lattice N must lie in [2, 8]");
    }
    const auto ctx = chain_context(v, config);
    CommandResult r;
    Json points = Json::array();
    Json violations = Json::array();
    for (double L : config.lattice_L) {
      const auto first = first_term(*ctx.h, autocorrelation_g2(ctx.profile, L));
      for (int N : config.lattice_N) {
        auto bound = bound_B(N, L, ctx.profile, first, *ctx.sol, ctx.v_l1);
        bound.term_kinetic *= config.kinetic_scale;
        bound.B = bound.term_main + bound.term_kinetic + bound.term_threebody;
        const auto est = mc_energy(v, *ctx.sol, ctx.profile, N, L, config.samples, config.seed);
        const double slack = bound.B + 3.0 * est.std_error - est.value;
        Json p = to_json(est);
        p["bound"] = bound.B;
        p["slack"] = slack;
        p["ok"] = slack >= 0.0;
        points.push_back(p);
        if (slack < 0.0) violations.push_back({{"N", N}, {"L", L}, {"energy", est.value}, {"stderr", est.std_error}, {"bound", bound.B}});
      }
    }
    r.exit_code = violations.empty() ? kExitOk : kExitChainViolation;
    r.report = envelope("validate-mc", violations.empty() ? "ok" : "ChainViolation");
    r.report["R"] = ctx.sol->R;
    r.report["b"] = ctx.sol->b;
    r.report["c"] = ctx.sol->c;
    r.report["points"] = points;
    r.report["violations"] = violations;
    return r;
  });
}

CommandResult cmd_report(const RunConfig& config) {
  const std::filesystem::path dir = config.out.value_or("report");
  return guarded("report", config, [&](const RadialPotential& v) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Config, "cannot create " + dir.string() + ": " + ec.message());

    const auto length = limit_a(v, default_R_schedule(v), limit_options(config));
    const auto two = ground_state_energy(v);
    std::optional<SweepResult> sweep;
    std::optional<CertifierContext> ctx;
    std::string status = "ok";
    std::string note;
    try {
      ctx = prepare_certifier(v, length, certify_config(config));
      sweep = sweep_bounds(*ctx, certify_config(config), false);
      if (!sweep->first_certified) status = "SearchExhausted";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotCertifiable && e.code() != ErrorCode::SearchExhausted) throw;
      status = std::string(to_string(e.code()));
      note = e.what();
    }

    std::ofstream curve(dir / "a_R_curve.csv");
    curve << "R,a_R\n" << std::setprecision(17);
    for (const auto& [R, aR] : length.a_R_curve) curve << R << ',' << aR << '\n';

    std::ofstream csv(dir / "bound_sweep.csv");
    csv << "L,N,B,term_main,term_kinetic,term_threebody,quadrature_error,certified\n"
        << std::setprecision(17);
    if (sweep) {
      for (const auto& p : sweep->points) {
        const auto& e = p.eval;
        csv << e.L << ',' << e.N << ',' << e.B << ',' << e.term_main << ',' << e.term_kinetic << ','
            << e.term_threebody << ',' << e.quadrature_error << ',' << (p.certified ? 1 : 0) << '\n';
      }
    }

    std::ofstream txt(dir / "summary.txt");
    txt << "potential       " << to_json(v).dump() << '\n';
    txt << "integral of v   " << fmt(integral_v(v)) << '\n';
    txt << "scattering len  "
        << (length.minus_infinity ? std::string("-inf (no minimizer)") : fmt(length.a)) << '\n';
    if (length.method_variational) txt << "  variational   " << fmt(*length.method_variational) << '\n';
    txt << "  shooting      " << fmt(length.method_shooting) << '\n';
    txt << "  extrapolation " << length.extrapolation << '\n';
    txt << "  node          " << (length.node ? "yes" : "no") << '\n';
    txt << "two-body E2     " << fmt(two.E2) << (two.bound_state_exists ? " (bound)" : " (no bound state)") << '\n';
    if (ctx) {
      txt << "radius R        " << fmt(ctx->sol->R) << '\n';
      txt << "b               " << fmt(ctx->sol->b) << '\n';
      txt << "c               " << fmt(ctx->sol->c) << '\n';
    }
    if (sweep && sweep->first_certified) {
      const auto& e = sweep->points[*sweep->first_certified].eval;
      txt << "certificate     N = " << e.N << ", L = " << fmt(e.L) << ", B = " << fmt(e.B)
          << " (error " << fmt(e.quadrature_error) << ")\n";
    } else {
      txt << "certificate     none (" << (note.empty() ? status : note) << ")\n";
    }
    if (sweep) txt << "sweep points    " << sweep->points.size() << '\n';

    CommandResult r;
    r.report = envelope("report", status);
    r.report["directory"] = dir.string();
    r.report["files"] = {"summary.txt", "a_R_curve.csv", "bound_sweep.csv", "report.json"};
    r.report["scattering"] = to_json(length);
    r.report["twobody"] = to_json(two);
    if (sweep && sweep->first_certified) r.report["certificate"] = to_json(sweep->points[*sweep->first_certified].eval);
    return r;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Scattering length, two-body threshold and N-body bound-state certificates"};
  app.require_subcommand(1);
  RunConfig config;
  std::string out, potential;
  double l_max = 0.0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--potential", potential, "Potential description (JSON)")->required();
    sub->add_option("--out", out, "Output file (report: directory)");
    sub->add_option("--seed", config.seed, "RNG seed");
    sub->add_option("--samples", config.samples, "Monte-Carlo samples per lattice point");
    sub->add_option("--l-max", l_max, "Largest L in the certificate schedule");
    sub->add_option("--tol", config.tol, "Scattering-length tolerance");
  };
  struct Entry {
    const char* name;
    const char* help;
    CommandResult (*fn)(const RunConfig&);
  };
  const Entry entries[] = {
      {"scatlen", "Scattering length by two independent routes", cmd_scatlen},
      {"twobody", "Two-body ground-state energy", cmd_twobody},
      {"certify", "Search for (N, L) with a negative energy bound", cmd_certify},
      {"validate-mc", "Monte-Carlo check of the bound on a small lattice", cmd_validate_mc},
      {"report", "Summary plus CSV of the a_R curve and the bound sweep", cmd_report},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  config.potential = potential;
  if (!out.empty()) config.out = out;
  for (auto& [sub, entry] : subs) {
    if (sub->parsed() && sub->count("--l-max") > 0) config.l_max = l_max;
  }

  for (auto& [sub, entry] : subs) {
    if (!sub->parsed()) continue;
    try {
      const CommandResult r = entry->fn(config);
      const std::string text = r.report.dump(2) + "\n";
      if (config.out && sub->get_name() != "report") {
        std::ofstream f(*config.out);
        if (!f) throw Error(ErrorCode::Config, "cannot write " + config.out->string());
        f << text;
      } else if (sub->get_name() == "report") {
        std::ofstream f(config.out.value_or("report") / "report.json");
        f << text;
        std::cout << text;
      } else {
        std::cout << text;
      }
      if (r.report.contains("message")) std::cerr << r.report["message"].get<std::string>() << '\n';
      return r.exit_code;
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return exit_code_for(e.code());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfig;
    }
  }
  return kExitConfig;
}

}  // namespace scatcert
