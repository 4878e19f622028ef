#include "dppt/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "dppt/errors.hpp"
#include "dppt/io.hpp"
#include "dppt/presets.hpp"
#include "dppt/rng.hpp"
#include "dppt/sampling.hpp"
#include "dppt/tail_experiments.hpp"
#include "dppt/version.hpp"

namespace dppt {

namespace {

namespace fs = std::filesystem;

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!obj.is_object())
    throw validation_error(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw validation_error("unknown key \"" + key + "\" in " + where);
  }
}

struct LoadedKernel {
  bool continuous = false;
  SpectralKernel spectral;  // continuous only
  Matrix matrix;            // discrete only

  int sites() const { return matrix.rows(); }
};

LoadedKernel load_kernel(const json& spec) {
  LoadedKernel out;
  if (spec.contains("matrix")) {
    require_keys(spec, {"matrix"}, "kernel");
    out.matrix = matrix_from_json(spec.at("matrix"));
    if (!out.matrix.square() || !is_symmetric(out.matrix, 1e-10))
      throw validation_error("kernel matrix must be square symmetric");
    return out;
  }
  if (spec.contains("spectral")) {
    require_keys(spec, {"spectral"}, "kernel");
    SpectralKernel k = kernel_from_json(spec.at("spectral"));
    if (k.space.is_discrete()) {
      out.matrix = kernel_matrix(k);
      return out;
    }
    out.continuous = true;
    out.spectral = std::move(k);
    return out;
  }

  const std::string preset = spec.at("preset").get<std::string>();
  if (preset == "constant-rank1") {
    require_keys(spec, {"preset"}, "kernel");
    out.continuous = true;
    out.spectral = preset_constant_rank1();
  } else if (preset == "fourier-projection") {
    require_keys(spec, {"preset", "rank", "max_degree"}, "kernel");
    out.continuous = true;
    out.spectral = preset_fourier_projection(spec.at("rank").get<int>(),
                                             spec.value("max_degree", 32));
  } else if (preset == "legendre") {
    require_keys(spec, {"preset", "eigenvalues"}, "kernel");
    out.continuous = true;
    out.spectral =
        preset_legendre(spec.at("eigenvalues").get<std::vector<double>>());
  } else if (preset == "diag") {
    require_keys(spec, {"preset", "probs"}, "kernel");
    out.matrix = preset_diag(spec.at("probs").get<std::vector<double>>());
  } else if (preset == "discretized-sine") {
    require_keys(spec, {"preset", "n", "bandwidth"}, "kernel");
    out.matrix = preset_discretized_sine(spec.at("n").get<int>(),
                                         spec.value("bandwidth", 0.3));
  } else {
    throw validation_error("unknown kernel preset: " + preset);
  }
  return out;
}

// partition spec: an integer (uniform interval cells / near-equal discrete
// blocks) or an explicit partition object
Partition load_partition(const json& spec, const GroundSpace& space) {
  if (spec.is_number_integer()) {
    const int m = spec.get<int>();
    return space.is_discrete() ? Partition::discrete_blocks(space, m)
                               : Partition::uniform_interval(space, m);
  }
  Partition p = partition_from_json(spec);
  if (!(p.space() == space))
    throw validation_error("partition space does not match the kernel");
  return p;
}

SpectralKernel as_spectral(const LoadedKernel& kernel) {
  return kernel.continuous ? kernel.spectral
                           : spectral_from_matrix(kernel.matrix);
}

struct RunContext {
  json config;          // effective config (seed override applied)
  std::string hash;     // sha256 of the canonical config text
  fs::path out_dir;
  std::vector<std::string> outputs;
};

void stamp(json& j, const RunContext& ctx) {
  j["config_hash"] = ctx.hash;
  j["version"] = kVersion;
}

void write_text(RunContext& ctx, const std::string& name,
                const std::string& text) {
  fs::create_directories(ctx.out_dir);
  std::ofstream out(ctx.out_dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + name);
  out << text;
  ctx.outputs.push_back(name);
}

void write_json(RunContext& ctx, const std::string& name, const json& j) {
  write_text(ctx, name, j.dump(2) + "\n");
}

void write_manifest(RunContext& ctx, const std::string& command) {
  json manifest = {{"command", command},
                   {"config", ctx.config},
                   {"config_hash", ctx.hash},
                   {"version", kVersion},
                   {"outputs", ctx.outputs}};
  write_json(ctx, "manifest.json", manifest);
}

std::string csv_header(const RunContext& ctx) {
  return "# config_hash=" + ctx.hash + " version=" + kVersion + "\n";
}

std::uint64_t require_seed(const json& config) {
  if (!config.contains("seed"))
    throw validation_error("stochastic command needs a seed");
  return config.at("seed").get<std::uint64_t>();
}

// discrete matrix for sampling-side commands; continuous kernels pass
// through their own discretization
Matrix sampling_matrix(const LoadedKernel& kernel, const json& config) {
  if (!kernel.continuous) return kernel.matrix;
  if (!config.contains("grid_cells"))
    throw validation_error("continuous kernel needs grid_cells");
  const int grid = config.at("grid_cells").get<int>();
  const double max_leakage = config.value("max_leakage", 1e-6);
  return discretize_for_sampling(kernel.spectral, grid, max_leakage).q;
}

int cmd_transfer(RunContext& ctx, bool verify_only) {
  require_keys(ctx.config,
               {"schema_version", "kernel", "partition", "tol", "max_degree",
                "seed"},
               "config");
  const LoadedKernel loaded = load_kernel(ctx.config.at("kernel"));
  const SpectralKernel kernel = as_spectral(loaded);
  const Partition partition =
      load_partition(ctx.config.at("partition"), kernel.space);
  const double tol = ctx.config.at("tol").get<double>();
  const int max_degree = ctx.config.value("max_degree", 32);

  const TransferredKernel q = transfer_kernel(kernel, partition, tol, max_degree);
  const TransferenceReport report = verify_transference(kernel, partition, q);

  json report_json = {{"tv", report.tv},
                      {"leakage", report.leakage},
                      {"bound", report.bound},
                      {"spectrum_gap", report.spectrum_gap},
                      {"imag_residue", report.imag_residue},
                      {"rank", kernel.rank()},
                      {"cells", partition.size()},
                      {"pass", report.pass}};
  stamp(report_json, ctx);

  if (!verify_only) {
    json q_json = to_json(q);
    stamp(q_json, ctx);
    write_json(ctx, "Q.json", q_json);
    write_json(ctx, "report.json", report_json);
    write_manifest(ctx, "transfer");
  } else {
    write_json(ctx, "verify.json", report_json);
    write_manifest(ctx, "verify");
  }

  const bool ok = report.pass &&
                  report.spectrum_gap <= q.leakage + 1e-8 &&
                  report.imag_residue <= 1e-9;
  if (!ok)
    throw tolerance_error("transference verification bounds not met",
                          report.tv, report.bound);
  return 0;
}

int cmd_count_law(RunContext& ctx) {
  require_keys(ctx.config, {"schema_version", "kernel", "partition", "seed"},
               "config");
  const LoadedKernel loaded = load_kernel(ctx.config.at("kernel"));

  CountLaw law;
  if (loaded.continuous) {
    const Partition partition =
        load_partition(ctx.config.at("partition"), loaded.spectral.space);
    law = joint_law(loaded.spectral, partition.cells());
  } else {
    const Partition partition = load_partition(
        ctx.config.at("partition"), GroundSpace::discrete(loaded.sites()));
    std::vector<std::vector<int>> blocks;
    for (const auto& c : partition.cells()) blocks.push_back(c.site_list());
    law = joint_law(loaded.matrix, blocks);
  }

  json law_json = to_json(law);
  stamp(law_json, ctx);
  write_json(ctx, "law.json", law_json);
  write_text(ctx, "law.csv", csv_header(ctx) + law_to_csv(law));
  write_manifest(ctx, "count-law");

  if (law.imag_residue > 1e-9)
    throw tolerance_error("count law inversion residue too large",
                          law.imag_residue, 1e-9);
  return 0;
}

int cmd_sample(RunContext& ctx) {
  require_keys(ctx.config,
               {"schema_version", "kernel", "seed", "n_samples", "grid_cells",
                "max_leakage"},
               "config");
  const LoadedKernel loaded = load_kernel(ctx.config.at("kernel"));
  const std::int64_t n_samples = ctx.config.at("n_samples").get<std::int64_t>();
  if (n_samples <= 0) throw validation_error("n_samples must be positive");
  const std::uint64_t seed = require_seed(ctx.config);

  const Matrix q = sampling_matrix(loaded, ctx.config);
  std::vector<double> midpoints;
  if (loaded.continuous)
    midpoints = grid_midpoints(loaded.spectral.space,
                               ctx.config.at("grid_cells").get<int>());

  const DppSampler sampler(q);
  RngStream rng(seed, 0);
  std::ostringstream lines;
  lines.precision(17);
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const PointConfiguration config = sampler.sample(rng);
    for (std::size_t j = 0; j < config.sites.size(); ++j) {
      if (j) lines << ",";
      if (loaded.continuous)
        lines << midpoints[config.sites[j]];
      else
        lines << config.sites[j];
    }
    lines << "\n";
  }
  write_text(ctx, "samples.csv", csv_header(ctx) + lines.str());
  write_manifest(ctx, "sample");
  return 0;
}

int cmd_tail_sweep(RunContext& ctx) {
  require_keys(ctx.config,
               {"schema_version", "kernel", "seed", "near", "radii", "method",
                "n_samples", "grid_cells", "max_leakage"},
               "config");
  const LoadedKernel loaded = load_kernel(ctx.config.at("kernel"));

  TailPlan plan;
  plan.kernel = loaded.continuous ? sampling_matrix(loaded, ctx.config)
                                  : loaded.matrix;
  plan.near = ctx.config.at("near").get<std::vector<int>>();
  plan.radii = ctx.config.at("radii").get<std::vector<int>>();
  plan.n_samples = ctx.config.value("n_samples", std::int64_t{0});

  const std::string method = ctx.config.value("method", std::string{"exact"});
  std::vector<SweepRow> rows;
  if (method == "exact") {
    rows = tail_mixing_sweep_exact(plan);
  } else if (method == "mc") {
    plan.seed = require_seed(ctx.config);
    rows = tail_mixing_sweep_mc(plan);
  } else {
    throw validation_error("method must be \"exact\" or \"mc\"");
  }

  std::ostringstream csv;
  csv.precision(17);
  csv << csv_header(ctx)
      << "radius,estimate,std_error,baseline,n_effective\n";
  for (const auto& r : rows)
    csv << r.radius << "," << r.estimate << "," << r.std_error << ","
        << r.baseline << "," << r.n_effective << "\n";
  write_text(ctx, "sweep.csv", csv.str());
  write_manifest(ctx, "tail-sweep");
  return 0;
}

CountPredicate load_event(const json& spec) {
  require_keys(spec, {"kind", "coords", "threshold"}, "event");
  CountPredicate event;
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "threshold")
    event.kind = CountPredicate::Kind::Threshold;
  else if (kind == "parity")
    event.kind = CountPredicate::Kind::Parity;
  else
    throw validation_error("event kind must be \"threshold\" or \"parity\"");
  event.coords = spec.at("coords").get<std::vector<int>>();
  if (event.coords.empty()) throw validation_error("event needs coordinates");
  event.threshold = spec.value("threshold", 1);
  return event;
}

int cmd_levy(RunContext& ctx) {
  require_keys(ctx.config,
               {"schema_version", "kernel", "seed", "ladder", "event",
                "n_samples", "grid_cells", "max_leakage"},
               "config");
  const LoadedKernel loaded = load_kernel(ctx.config.at("kernel"));
  const Matrix q = loaded.continuous ? sampling_matrix(loaded, ctx.config)
                                     : loaded.matrix;

  const json& ladder_spec = ctx.config.at("ladder");
  require_keys(ladder_spec, {"initial_cells", "levels", "factor"}, "ladder");
  const int initial = ladder_spec.at("initial_cells").get<int>();
  const int levels = ladder_spec.at("levels").get<int>();
  const int factor = ladder_spec.value("factor", 2);
  const Partition base =
      Partition::discrete_blocks(GroundSpace::discrete(q.rows()), initial);
  const auto ladder = partition_ladder(base, levels, factor);

  const CountPredicate event = load_event(ctx.config.at("event"));
  for (int c : event.coords)
    if (c < 0 || c >= ladder.back().size())
      throw validation_error("event coordinate outside the finest level");

  const std::int64_t n_samples = ctx.config.at("n_samples").get<std::int64_t>();
  RngStream rng(require_seed(ctx.config), 2);
  const auto rows = levy_convergence(q, ladder, event, n_samples, rng);

  std::ostringstream csv;
  csv.precision(17);
  csv << csv_header(ctx)
      << "level,error,std_error,n_strata,pooled_strata\n";
  for (const auto& r : rows)
    csv << r.level << "," << r.error << "," << r.std_error << ","
        << r.n_strata << "," << r.pooled_strata << "\n";
  write_text(ctx, "levy.csv", csv.str());
  write_manifest(ctx, "levy");
  return 0;
}

int dispatch(const std::string& command, const std::string& config_path,
             std::optional<std::uint64_t> seed_override,
             const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) throw validation_error("cannot read config " + config_path);
  json config;
  try {
    config = json::parse(in);
  } catch (const json::exception& e) {
    throw validation_error(std::string{"config is not valid JSON: "} + e.what());
  }
  if (!config.is_object()) throw validation_error("config must be an object");
  if (config.value("schema_version", -1) != 1)
    throw validation_error("config needs schema_version 1");
  if (seed_override) config["seed"] = *seed_override;

  RunContext ctx;
  ctx.config = config;
  ctx.hash = sha256_hex(canonical_dump(config));
  ctx.out_dir = out_dir;

  if (command == "transfer") return cmd_transfer(ctx, false);
  if (command == "verify") return cmd_transfer(ctx, true);
  if (command == "count-law") return cmd_count_law(ctx);
  if (command == "sample") return cmd_sample(ctx);
  if (command == "tail-sweep") return cmd_tail_sweep(ctx);
  if (command == "levy") return cmd_levy(ctx);
  throw validation_error("unknown command " + command);
}

int fail(const std::string& type, const std::string& message, int code) {
  const json err = {{"error", {{"type", type}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"transference experiments for determinantal point processes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  int threads = 1;

  const std::vector<std::string> names{"transfer", "sample",     "count-law",
                                       "verify",   "tail-sweep", "levy"};
  const std::vector<std::string> blurbs{
      "discretize a kernel onto a partition and verify the count laws",
      "draw configurations from a kernel",
      "exact joint cell-count distribution",
      "check transference bounds without writing the kernel",
      "far-field mixing sweep",
      "0-1-law convergence along a partition ladder"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--config", config_path, "JSON run configuration")
        ->required();
    sub->add_option("--seed", seed_override, "override the config seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "reserved; runs are single-threaded")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    return fail("validation", e.what(), 1);
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), config_path,
                    seed_override, out_dir);
  } catch (const tolerance_error& e) {
    return fail("tolerance", e.what(), 2);
  } catch (const validation_error& e) {
    return fail("validation", e.what(), 1);
  } catch (const std::domain_error& e) {
    return fail("validation", e.what(), 1);
  } catch (const json::exception& e) {
    return fail("validation", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 3);
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"dppt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace dppt
