// Command-line front end: coherence evaluation, Naimark construction,
// channel checks, conversion fidelities and landscape sweeps over JSON
// inputs. Machine-readable JSON goes to stdout, diagnostics to stderr.

#include "povmcoh/io.hpp"
#include "povmcoh/random.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <numbers>

using namespace povmcoh;

namespace {

struct GlobalOpts {
  double tol = 1e-9;
  double feas_threshold = 1e-7;
  int max_iters = 200;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string format = "json";
};

NaimarkExtension build_extension(const Povm &p, const std::string &kind,
                                 std::uint64_t seed) {
  if (kind == "canonical")
    return canonical_extension(canonical_kraus(p), seed);
  if (kind == "minimal")
    return minimal_extension(p, seed);
  throw ValidationError("unknown extension kind: " + kind);
}

GridSpec parse_grid(const std::string &spec) {
  const auto sep = spec.find('x');
  if (sep == std::string::npos)
    throw ValidationError("grid must look like 181x91 (phi x theta)");
  GridSpec grid;
  grid.n_phi = std::stoi(spec.substr(0, sep));
  grid.n_theta = std::stoi(spec.substr(sep + 1));
  if (grid.n_phi < 1 || grid.n_theta < 1)
    throw ValidationError("grid sizes must be positive");
  return grid;
}

int run_trine_suite(const GlobalOpts &opts, const std::string &povm_path);

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"POVM-based coherence toolkit"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand
  app.set_config("--config");

  GlobalOpts opts;
  app.add_option("--tol", opts.tol, "solver tolerance")->capture_default_str();
  app.add_option("--feas-threshold", opts.feas_threshold,
                 "feasibility slack threshold")
      ->capture_default_str();
  app.add_option("--max-iters", opts.max_iters, "solver iteration limit")
      ->capture_default_str();
  app.add_option("--seed", opts.seed, "random seed for completions/restarts")
      ->capture_default_str();
  app.add_option("--threads", opts.threads,
                 "worker threads for landscapes (0 = all cores)")
      ->capture_default_str();
  app.add_option("--format", opts.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::string povm_path, state_path, channel_path, target_path, out_path;
  std::string kind = "minimal", mode = "coherence", grid_spec = "181x91";
  bool include_choi = false;

  auto *coherence_cmd =
      app.add_subcommand("coherence", "relative entropy of POVM coherence");
  coherence_cmd->add_option("--povm", povm_path, "POVM JSON file")->required();
  coherence_cmd->add_option("--state", state_path, "state JSON file")
      ->required();

  auto *naimark_cmd =
      app.add_subcommand("naimark", "construct a Naimark extension");
  naimark_cmd->add_option("--povm", povm_path)->required();
  naimark_cmd->add_option("--kind", kind, "minimal or canonical")
      ->check(CLI::IsMember({"minimal", "canonical"}));

  auto *pic_cmd = app.add_subcommand(
      "pic-check", "decide whether a channel is POVM-incoherent");
  pic_cmd->add_option("--povm", povm_path)->required();
  pic_cmd->add_option("--channel", channel_path, "channel JSON (Kraus list)")
      ->required();
  pic_cmd->add_option("--kind", kind)->check(
      CLI::IsMember({"minimal", "canonical"}));
  pic_cmd->add_flag("--choi", include_choi, "include the feasible Choi matrix");

  auto *fmax_cmd = app.add_subcommand(
      "fmax", "maximal conversion fidelity under free operations");
  fmax_cmd->add_option("--povm", povm_path)->required();
  fmax_cmd->add_option("--initial", state_path, "initial state JSON")
      ->required();
  fmax_cmd->add_option("--target", target_path, "target state JSON")
      ->required();
  fmax_cmd->add_option("--kind", kind)->check(
      CLI::IsMember({"minimal", "canonical"}));

  auto *landscape_cmd =
      app.add_subcommand("landscape", "sphere sweep of coherence or fidelity");
  landscape_cmd->add_option("--povm", povm_path)->required();
  landscape_cmd->add_option("--mode", mode, "coherence or conversion")
      ->check(CLI::IsMember({"coherence", "conversion"}));
  landscape_cmd->add_option("--state", state_path,
                            "initial state (conversion mode)");
  landscape_cmd->add_option("--grid", grid_spec, "phi x theta, e.g. 181x91");
  landscape_cmd->add_option("--out", out_path, "output file (default stdout)");
  landscape_cmd->add_option("--kind", kind)->check(
      CLI::IsMember({"minimal", "canonical"}));

  auto *suite_cmd = app.add_subcommand(
      "trine-suite", "self-check of the published trine results");
  suite_cmd->add_option("--povm", povm_path,
                        "use this POVM instead of the built-in trine");

  CLI11_PARSE(app, argc, argv);

  try {
    if (coherence_cmd->parsed()) {
      const Povm p = povm_from_json(load_json_file(povm_path));
      const PovmDiagnostics diag = validate(p);
      if (!diag.ok)
        throw ValidationError("invalid POVM: " + diag.message);
      const DensityMatrix rho = state_from_json(load_json_file(state_path));
      const CoherenceReport report = c_rel_povm(rho, p);
      std::cout << coherence_report_to_json(report).dump(2) << "\n";
    } else if (naimark_cmd->parsed()) {
      const Povm p = povm_from_json(load_json_file(povm_path));
      const NaimarkExtension x = build_extension(p, kind, opts.seed);
      const ExtensionDiagnostics diag = validate_extension(x, p);
      if (!diag.ok)
        throw std::runtime_error("constructed extension failed validation: " +
                                 diag.message);
      std::cerr << "extension ok, max residual " << diag.max_residual << "\n";
      std::cout << extension_to_json(x).dump(2) << "\n";
    } else if (pic_cmd->parsed()) {
      const Povm p = povm_from_json(load_json_file(povm_path));
      const auto kraus = kraus_from_json(load_json_file(channel_path));
      const NaimarkExtension x = build_extension(p, kind, opts.seed);
      PicOptions popt;
      popt.solver_tol = opts.tol;
      popt.feas_threshold = opts.feas_threshold;
      popt.max_iterations = opts.max_iters;
      const PicVerdict verdict =
          pic_feasibility(process_from_kraus(kraus), x, popt);
      std::cout << pic_verdict_to_json(verdict, include_choi).dump(2) << "\n";
    } else if (fmax_cmd->parsed()) {
      const Povm p = povm_from_json(load_json_file(povm_path));
      const DensityMatrix rho = state_from_json(load_json_file(state_path));
      const DensityMatrix sigma = state_from_json(load_json_file(target_path));
      const NaimarkExtension x = build_extension(p, kind, opts.seed);
      PicOptions popt;
      popt.solver_tol = opts.tol;
      popt.max_iterations = opts.max_iters;
      const PicContext ctx(x);
      const FmaxResult result = fmax(rho, sigma, ctx, popt);
      Json out;
      out["fmax"] = result.value;
      out["solver_status"] =
          result.solver_status == SdpStatus::optimal ? "optimal" : "inexact";
      std::cout << out.dump(2) << "\n";
    } else if (landscape_cmd->parsed()) {
      const Povm p = povm_from_json(load_json_file(povm_path));
      const GridSpec grid = parse_grid(grid_spec);
      std::vector<LandscapeSample> samples;
      const auto start = std::chrono::steady_clock::now();
      if (mode == "coherence") {
        samples = coherence_landscape(p, grid, opts.threads);
      } else {
        if (state_path.empty())
          throw ValidationError("conversion mode needs --state");
        const DensityMatrix rho = state_from_json(load_json_file(state_path));
        const PicContext ctx(build_extension(p, kind, opts.seed));
        samples = conversion_landscape(rho, ctx, grid, opts.threads);
      }
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      std::cerr << samples.size() << " samples in " << elapsed << "s\n";
      const bool csv = opts.format == "csv" ||
                       (out_path.size() > 4 &&
                        out_path.substr(out_path.size() - 4) == ".csv");
      const std::string payload =
          csv ? landscape_to_csv(samples) : landscape_to_json(samples).dump(2);
      if (out_path.empty())
        std::cout << payload << "\n";
      else
        save_text_file(out_path, payload);
    } else if (suite_cmd->parsed()) {
      return run_trine_suite(opts, povm_path);
    }
  } catch (const ValidationError &e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

namespace {

struct SuiteReport {
  Json checks = Json::array();
  int failed = 0;

  void add(const std::string &name, bool ok, const std::string &detail = "") {
    Json j;
    j["name"] = name;
    j["ok"] = ok;
    if (!detail.empty())
      j["detail"] = detail;
    checks.push_back(j);
    if (!ok)
      ++failed;
    std::cerr << (ok ? "[PASS] " : "[FAIL] ") << name
              << (detail.empty() ? "" : ": " + detail) << "\n";
  }
};

int run_trine_suite(const GlobalOpts &opts, const std::string &povm_path) {
  constexpr double kLog2Of3 = 1.5849625007211562;
  SuiteReport report;
  const auto start = std::chrono::steady_clock::now();

  Povm trine = trine_povm();
  if (!povm_path.empty()) {
    const Povm supplied = povm_from_json(load_json_file(povm_path));
    const PovmDiagnostics diag = validate(supplied);
    report.add("supplied POVM is a valid POVM", diag.ok, diag.message);
    bool matches = diag.ok && supplied.outcomes() == 3 && supplied.dim() == 2;
    if (matches)
      for (int i = 0; i < 3; ++i)
        matches = matches &&
                  (supplied.effect(i) - trine.effect(i)).norm() < 1e-9;
    report.add("supplied POVM equals the trine", matches);
    if (report.failed > 0) {
      Json out;
      out["passed"] = report.checks.size() - report.failed;
      out["failed"] = report.failed;
      out["checks"] = report.checks;
      std::cout << out.dump(2) << "\n";
      return 1;
    }
    trine = supplied;
  }

  report.add("trine POVM validates", validate(trine).ok);

  const NaimarkExtension minimal = minimal_extension(trine, opts.seed);
  report.add("minimal extension has dimension 3", minimal.d_prime == 3);
  report.add("minimal extension validates", validate_extension(minimal, trine).ok);
  const NaimarkExtension canonical =
      canonical_extension(canonical_kraus(trine), opts.seed);
  report.add("canonical extension has dimension 6", canonical.d_prime == 6);
  report.add("canonical extension validates",
             validate_extension(canonical, trine).ok);

  CVector zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  const double c0 = c_rel_povm(PureState(zero).projector(), trine).value;
  const double c1 = c_rel_povm(PureState(one).projector(), trine).value;
  report.add("C(|0>) = log2(3)", std::abs(c0 - kLog2Of3) < 1e-8);
  report.add("C(|1>) = log2(3)", std::abs(c1 - kLog2Of3) < 1e-8);

  const DensityMatrix mixed(CMatrix::Identity(2, 2) / 2.0);
  report.add("C(1/2) = log2(3) - 1",
             std::abs(c_rel_povm(mixed, trine).value - (kLog2Of3 - 1.0)) < 1e-8);
  const MinCoherenceResult min = min_coherence_qubit(trine);
  report.add("minimum sits at the maximally mixed state",
             min.r.r.norm() < 1e-5);

  bool antipodal_ok = true;
  for (const auto &dir : trine_directions()) {
    const DensityMatrix anti = bloch_to_density({Eigen::Vector3d(-dir)});
    antipodal_ok =
        antipodal_ok && std::abs(c_rel_povm(anti, trine).value - 1.0) < 1e-8;
  }
  report.add("antipodal pure states have coherence 1", antipodal_ok);

  {
    Rng rng(opts.seed + 1);
    const DensityMatrix rho = random_density(2, rng);
    const CMatrix lifted = direct_sum_embed(rho.matrix(), 3);
    const CMatrix dephased = block_dephase(lifted, minimal.projectors);
    CMatrix expect(3, 3);
    const Complex r12 = rho.matrix()(0, 1), r21 = rho.matrix()(1, 0);
    expect << 1.0, r12, r21, r21, 1.0, r12, r12, r21, 1.0;
    expect /= 3.0;
    report.add("dephased embedded state matches the closed form",
               (dephased - expect).norm() < 1e-9);
  }

  {
    Rng rng(opts.seed + 2);
    RVector p(3);
    p << 0.5, 0.3, 0.2;
    std::vector<CMatrix> effects;
    for (int i = 0; i < 3; ++i)
      effects.push_back(p(i) * CMatrix::Identity(2, 2));
    const Povm trivial(2, effects);
    bool ok = true;
    for (int t = 0; t < 10; ++t)
      ok = ok && std::abs(c_rel_povm(random_density(2, rng), trivial).value -
                          shannon_entropy(p)) < 1e-9;
    report.add("trivial POVM has constant coherence H(p)", ok);
  }

  const PicContext ctx(minimal);
  PicOptions popt;
  popt.solver_tol = opts.tol;
  popt.feas_threshold = opts.feas_threshold;
  popt.max_iterations = opts.max_iters;

  const auto frees = trine_incoherent_unitaries();
  const auto derived = derive_incoherent_unitaries(minimal);
  bool derived_ok = derived.size() == frees.size();
  for (const auto &d : derived) {
    double closest = 1e9;
    for (const auto &f : frees)
      closest = std::min(closest, unitary_distance_up_to_phase(d, f));
    derived_ok = derived_ok && closest < 1e-9;
  }
  report.add("derived free unitaries match the published list", derived_ok);

  bool frees_feasible = true;
  for (const auto &u : frees)
    frees_feasible =
        frees_feasible &&
        pic_feasibility(process_from_kraus({u}), ctx, popt).feasible;
  report.add("all six free unitaries pass the feasibility SDP", frees_feasible);

  report.add("measurement map is POVM-incoherent",
             pic_feasibility(process_from_kraus(canonical_kraus(trine).ops),
                             ctx, popt)
                 .feasible);

  const CMatrix rz = rotation_unitary({0, 0, 1}, std::numbers::pi / 5.0);
  const PicVerdict outside = pic_feasibility(process_from_kraus({rz}), ctx, popt);
  report.add("a rotation outside the symmetry group is rejected",
             !outside.feasible && outside.slack < -1e-4);

  {
    Rng rng(opts.seed + 3);
    bool ok = true;
    for (int t = 0; t < 5; ++t) {
      const DensityMatrix sigma = random_density(2, rng);
      ok = ok && fmax(PureState(zero).projector(), sigma, ctx, popt).value >=
                     1.0 - 1e-5;
    }
    report.add("every state is reachable from |0>", ok);
  }

  {
    CVector amps(2);
    amps << std::cos(std::numbers::pi / 8), std::sin(std::numbers::pi / 8);
    const DensityMatrix rho = PureState(amps).projector();
    bool orbit_ok = true;
    for (const auto &u : frees) {
      const DensityMatrix target(u * rho.matrix() * u.adjoint());
      orbit_ok = orbit_ok && fmax(rho, target, ctx, popt).value >= 1.0 - 1e-5;
    }
    report.add("unit fidelity on the orbit of psi(pi/8)", orbit_ok);
    const double off = fmax(rho, PureState(zero).projector(), ctx, popt).value;
    report.add("conversion toward |0> stays below 1", off <= 1.0 - 1e-3);
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  Json out;
  out["passed"] = report.checks.size() - report.failed;
  out["failed"] = report.failed;
  out["runtime_seconds"] = elapsed;
  out["checks"] = report.checks;
  std::cout << out.dump(2) << "\n";
  std::cerr << "trine suite: " << (report.checks.size() - report.failed) << "/"
            << report.checks.size() << " checks passed in " << elapsed << "s\n";
  return report.failed == 0 ? 0 : 1;
}

} // namespace
