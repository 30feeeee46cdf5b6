#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "mrfcut/dimacs.hpp"
#include "mrfcut/filters.hpp"
#include "mrfcut/layers.hpp"
#include "mrfcut/maxflow.hpp"
#include "mrfcut/noise.hpp"
#include "mrfcut/pnm.hpp"
#include "mrfcut/qnet.hpp"
#include "mrfcut/report.hpp"
#include "mrfcut/synthetic.hpp"
#include "verify.hpp"

namespace mrfcut::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Solver flags shared by mincut, restore and bench.
struct SolverFlags {
  std::string solver = "baseline";
  std::string strategy = "auto";
  int tile = 64;
  int cell_size = 1024;
  int fallback = 4096;
  int max_levels = 64;

  void attach(CLI::App& app) {
    app.add_option("--solver", solver, "Min-cut back-end")
        ->check(CLI::IsMember({"baseline", "mnfc"}))
        ->capture_default_str();
    app.add_option("--strategy", strategy, "MNFC partition strategy")
        ->check(CLI::IsMember({"auto", "tiles", "ranges", "pyramidal"}))
        ->capture_default_str();
    app.add_option("--tile", tile, "MNFC tile side in pixels")->capture_default_str();
    app.add_option("--cell-size", cell_size, "MNFC cell size for generic networks")
        ->capture_default_str();
    app.add_option("--fallback", fallback, "Solve directly below this many unresolved nodes")
        ->capture_default_str();
    app.add_option("--max-levels", max_levels, "MNFC level cap")->capture_default_str();
  }

  SolverOptions options(int threads) const {
    SolverOptions o;
    o.kind = solver == "mnfc" ? SolverKind::mnfc : SolverKind::baseline;
    o.threads = threads;
    o.mnfc.tile_side = tile;
    o.mnfc.cell_size = cell_size;
    o.mnfc.fallback_threshold = fallback;
    o.mnfc.max_levels = max_levels;
    if (strategy == "tiles") o.mnfc.strategy = PartitionStrategy::tiles;
    if (strategy == "ranges") o.mnfc.strategy = PartitionStrategy::ranges;
    if (strategy == "pyramidal") o.mnfc.strategy = PartitionStrategy::pyramidal;
    return o;
  }

  json to_json() const {
    return {{"solver", solver},        {"strategy", strategy}, {"tile", tile},
            {"cell_size", cell_size},  {"fallback", fallback}, {"max_levels", max_levels}};
  }
};

/// Energy flags shared by restore and bench.
struct EnergyFlags {
  double lambda = 1.0;
  double beta = 0.4;
  std::int64_t scale = 65536;
  int neighborhood = 4;

  void attach(CLI::App& app) {
    app.add_option("--lambda", lambda, "Data weight (decimal, scaled by --scale)")
        ->capture_default_str();
    app.add_option("--beta", beta, "Smoothness weight (decimal, scaled by --scale)")
        ->capture_default_str();
    app.add_option("--scale", scale, "Fixed-point scale for lambda and beta")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--neighborhood", neighborhood, "4 or 8")
        ->check(CLI::IsMember({4, 8}))
        ->capture_default_str();
  }

  EnergyParams params() const {
    return uniform_params(lambda, beta, scale,
                          neighborhood == 8 ? Neighborhood::eight : Neighborhood::four);
  }

  json to_json(const EnergyParams& p) const {
    return {{"lambda", lambda},       {"beta", beta},           {"scale", scale},
            {"lambda_scaled", p.lambda}, {"beta_scaled", p.beta}, {"neighborhood", neighborhood}};
  }
};

void emit(const json& report, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write report " + path);
  f << report.dump(2) << '\n';
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("MINCUT_RESTORE_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("MINCUT_RESTORE_THREADS must be a positive integer, got '") +
                     env + "'");
  }
  return 1;
}

std::optional<GridShape> parse_grid(const std::string& text) {
  if (text.empty()) return std::nullopt;
  GridShape g;
  char x1 = 0;
  char x2 = 0;
  std::istringstream in(text);
  in >> g.width >> x1 >> g.height;
  if (!in || x1 != 'x') throw InputError("--grid expects WxH or WxHxL, got '" + text + "'");
  if (in >> x2) {
    if (x2 != 'x' || !(in >> g.layers)) throw InputError("--grid expects WxH or WxHxL");
  }
  return g;
}

const GrayImage& only_gray(const AnyImage& img, const char* what) {
  if (const auto* g = std::get_if<GrayImage>(&img)) return *g;
  throw InputError(std::string(what) + " must be a grayscale image");
}

std::vector<GrayImage> channels_of(const AnyImage& img) {
  if (const auto* g = std::get_if<GrayImage>(&img)) return {*g};
  const auto& c = std::get<ColorImage>(img);
  return {c.channel(0), c.channel(1), c.channel(2)};
}

AnyImage from_channels(std::vector<GrayImage> ch) {
  if (ch.size() == 1) return std::move(ch[0]);
  return ColorImage(std::move(ch[0]), std::move(ch[1]), std::move(ch[2]));
}

/// Metrics summed over channels.
Metrics combined_metrics(const AnyImage& a, const AnyImage& b) {
  const auto ca = channels_of(a);
  const auto cb = channels_of(b);
  if (ca.size() != cb.size()) throw InputError("images differ in channel count");
  Metrics total;
  for (std::size_t k = 0; k < ca.size(); ++k) {
    const Metrics m = metrics(ca[k], cb[k]);
    total.pixels += m.pixels;
    total.differing += m.differing;
    total.abs_error += m.abs_error;
  }
  if (total.pixels > 0) {
    total.error_rate = static_cast<double>(total.differing) / static_cast<double>(total.pixels);
    total.mae = static_cast<double>(total.abs_error) / static_cast<double>(total.pixels);
  }
  return total;
}

// ---- mincut ---------------------------------------------------------------

struct MincutCmd {
  std::string input;
  std::string out;
  std::string report;
  std::string grid;
  std::string pick = "minimal";
  int threads = 0;
  SolverFlags solver;

  void attach(CLI::App& app) {
    app.add_option("input", input, "DIMACS max-flow file")->required();
    app.add_option("--out", out, "Write 'node value' labels (DIMACS node ids)");
    app.add_option("--report", report, "Write the JSON report here instead of stdout");
    app.add_option("--grid", grid, "Node layout WxH[xL] enabling tile partitions");
    app.add_option("--pick", pick, "Canonical cut to return")
        ->check(CLI::IsMember({"minimal", "maximal"}))
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (default $MINCUT_RESTORE_THREADS or 1)");
    solver.attach(app);
  }

  int run(std::ostream& out_stream) const {
    std::ifstream in(input);
    if (!in) throw InputError("cannot open " + input);
    const ParsedDimacs parsed = parse_dimacs_with_ids(in);
    const auto t0 = Clock::now();
    const GNetwork g = normalize_to_G(parsed.network);
    const CutSolution cut =
        solve_min_cut(g, solver.options(resolve_threads(threads)),
                      pick == "maximal" ? CutPick::maximal : CutPick::minimal, parse_grid(grid));
    const double wall = ms_since(t0);
    if (!out.empty()) {
      std::ofstream f(out);
      if (!f) throw InputError("cannot write " + out);
      for (std::size_t i = 0; i < cut.x.size(); ++i)
        f << parsed.usual_file_ids[i] << ' ' << int{cut.x[i]} << '\n';
    }
    json r = make_report("mincut");
    r["parameters"] = solver.to_json();
    r["parameters"]["pick"] = pick;
    r["input"] = input;
    r["nodes"] = parsed.network.num_usual;
    r["arcs"] = parsed.network.arcs.size();
    r["cut_value"] = cut.cut_value;
    r["source_side"] = std::count(cut.x.begin(), cut.x.end(), 1);
    r["levels"] = levels_json(cut.levels);
    r["wall_ms"] = wall;
    emit(r, report, out_stream);
    return kOk;
  }
};

// ---- restore --------------------------------------------------------------

struct RestoreCmd {
  std::string input;
  std::string out;
  std::string report;
  std::string truth;
  std::string model = "u1";
  int levels = 0;
  int threads = 0;
  std::int64_t max_arcs = kDefaultQArcLimit;
  SolverFlags solver;
  EnergyFlags energy;

  void attach(CLI::App& app) {
    app.add_option("input", input, "PGM/PPM image to restore")->required();
    app.add_option("--out", out, "Restored image path")->required();
    app.add_option("--model", model, "binary (L=2), u1 or u2")
        ->check(CLI::IsMember({"binary", "u1", "u2"}))
        ->capture_default_str();
    app.add_option("--levels", levels, "Expected number of gray levels L (checked)");
    app.add_option("--truth", truth, "Ground truth image for metrics");
    app.add_option("--report", report, "Write the JSON report here instead of stdout");
    app.add_option("--threads", threads, "Worker threads (default $MINCUT_RESTORE_THREADS or 1)");
    app.add_option("--max-arcs", max_arcs, "Arc cap for the u2 layer network")
        ->capture_default_str();
    solver.attach(app);
    energy.attach(app);
  }

  int run(std::ostream& out_stream) const {
    const AnyImage noisy = read_image(std::filesystem::path(input));
    const auto channels = channels_of(noisy);
    const std::int32_t l = channels.front().levels();
    if (levels > 0 && levels != l)
      throw InputError("image has " + std::to_string(l) + " levels, --levels says " +
                       std::to_string(levels));
    if (model == "binary" && l != 2) throw InputError("binary model needs a two-level image");
    const EnergyParams p = energy.params();
    const SolverOptions opts = solver.options(resolve_threads(threads));

    const auto t0 = Clock::now();
    std::vector<GrayImage> restored;
    std::int64_t initial = 0;
    std::int64_t final_energy = 0;
    json levels_out = json::array();
    for (const GrayImage& y : channels) {
      const bool squared = model == "u2";
      initial += squared ? eval_U2(y, y, p) : eval_U1(y, y, p);
      Restoration r = squared ? minimize_U2(y, p, opts, max_arcs) : minimize_U1(y, p, opts);
      final_energy += r.energy;
      for (const auto& lv : r.levels)
        if (!lv.empty()) levels_out.push_back(levels_json(lv));
      restored.push_back(std::move(r.x));
    }
    const double wall = ms_since(t0);
    const AnyImage result = from_channels(std::move(restored));
    write_image(result, std::filesystem::path(out));

    json r = make_report("restore");
    r["parameters"] = solver.to_json();
    r["parameters"].update(energy.to_json(p));
    r["parameters"]["model"] = model;
    r["input"] = input;
    r["width"] = channels.front().width();
    r["height"] = channels.front().height();
    r["levels_count"] = l;
    r["channels"] = channels.size();
    r["energy_initial"] = initial;
    r["energy_final"] = final_energy;
    r["mnfc_levels"] = std::move(levels_out);
    r["wall_ms"] = wall;
    if (!truth.empty()) {
      const AnyImage t = read_image(std::filesystem::path(truth));
      r["metrics"] = {{"noisy", metrics_json(combined_metrics(noisy, t))},
                      {"restored", metrics_json(combined_metrics(result, t))}};
    }
    emit(r, report, out_stream);
    return kOk;
  }
};

// ---- noise ----------------------------------------------------------------

struct NoiseCmd {
  std::string input;
  std::string out;
  std::string report;
  std::string kind = "bernoulli";
  double p = 0.3;
  double rate = 0.0;
  std::uint64_t seed = 1;

  void attach(CLI::App& app) {
    app.add_option("input", input, "PGM/PPM image")->required();
    app.add_option("--out", out, "Noisy image path")->required();
    app.add_option("--kind", kind, "bernoulli or exponential")
        ->check(CLI::IsMember({"bernoulli", "exponential"}))
        ->capture_default_str();
    app.add_option("--p", p, "Flip probability")->capture_default_str();
    app.add_option("--rate", rate, "Exponential rate (default 8/L)");
    app.add_option("--seed", seed, "PRNG seed (mt19937_64); 0 draws one")->capture_default_str();
    app.add_option("--report", report, "Write the JSON report here instead of stdout");
  }

  int run(std::ostream& out_stream) const {
    const AnyImage img = read_image(std::filesystem::path(input));
    NoiseSpec spec;
    spec.kind = kind == "bernoulli" ? NoiseKind::bernoulli_flip : NoiseKind::exponential_additive;
    spec.p = p;
    if (rate != 0.0) spec.rate = rate;
    spec.seed = seed;
    AnyImage noisy;
    if (const auto* g = std::get_if<GrayImage>(&img))
      noisy = apply_noise(*g, spec);
    else
      noisy = apply_noise(std::get<ColorImage>(img), spec);
    write_image(noisy, std::filesystem::path(out));
    json r = make_report("noise");
    r["parameters"] = {{"kind", kind}, {"seed", seed}};
    if (spec.kind == NoiseKind::bernoulli_flip)
      r["parameters"]["p"] = p;
    else
      r["parameters"]["rate"] = spec.rate.value_or(8.0 / channels_of(img).front().levels());
    r["metrics"] = metrics_json(combined_metrics(noisy, img));
    emit(r, report, out_stream);
    return kOk;
  }
};

// ---- filter ---------------------------------------------------------------

struct FilterCmd {
  std::string input;
  std::string out;
  std::string report;
  std::string truth;
  std::string kind = "median";

  void attach(CLI::App& app) {
    app.add_option("input", input, "PGM/PPM image")->required();
    app.add_option("--out", out, "Filtered image path")->required();
    app.add_option("--kind", kind, "3x3 average or median")
        ->check(CLI::IsMember({"average", "median"}))
        ->capture_default_str();
    app.add_option("--truth", truth, "Ground truth image for metrics");
    app.add_option("--report", report, "Write the JSON report here instead of stdout");
  }

  int run(std::ostream& out_stream) const {
    const AnyImage img = read_image(std::filesystem::path(input));
    std::vector<GrayImage> out_ch;
    for (const GrayImage& ch : channels_of(img))
      out_ch.push_back(kind == "average" ? moving_average_3x3(ch) : moving_median_3x3(ch));
    const AnyImage result = from_channels(std::move(out_ch));
    write_image(result, std::filesystem::path(out));
    json r = make_report("filter");
    r["parameters"] = {{"kind", kind}};
    if (!truth.empty()) {
      const AnyImage t = read_image(std::filesystem::path(truth));
      r["metrics"] = {{"input", metrics_json(combined_metrics(img, t))},
                      {"filtered", metrics_json(combined_metrics(result, t))}};
    }
    emit(r, report, out_stream);
    return kOk;
  }
};

// ---- verify ---------------------------------------------------------------

struct VerifyCmd {
  std::string suite = "small";
  std::string report;
  std::uint64_t seed = 1;
  int threads = 0;

  void attach(CLI::App& app) {
    app.add_option("--suite", suite, "Check suite")
        ->check(CLI::IsMember({"small"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "Instance generator seed")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (default $MINCUT_RESTORE_THREADS or 1)");
    app.add_option("--report", report, "Write the JSON report here instead of stdout");
  }

  int run(std::ostream& out_stream) const {
    json r = make_report("verify");
    r["parameters"] = {{"suite", suite}, {"seed", seed}};
    const json result = run_small_suite(seed, resolve_threads(threads));
    r.update(result);
    emit(r, report, out_stream);
    return result.at("ok").get<bool>() ? kOk : kMismatch;
  }
};

// ---- bench ----------------------------------------------------------------

struct BenchCmd {
  std::string input;
  std::string report;
  int size = 256;
  double p = 0.3;
  std::uint64_t seed = 1;
  int threads = 0;
  SolverFlags solver;
  EnergyFlags energy;

  void attach(CLI::App& app) {
    app.add_option("input", input, "Binary PGM (default: synthetic scene with flip noise)");
    app.add_option("--size", size, "Side of the synthetic scene")->capture_default_str();
    app.add_option("--p", p, "Flip probability for the synthetic scene")->capture_default_str();
    app.add_option("--seed", seed, "Noise seed")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (default $MINCUT_RESTORE_THREADS or 1)");
    app.add_option("--report", report, "Write the JSON report here instead of stdout");
    solver.attach(app);
    energy.attach(app);
  }

  int run(std::ostream& out_stream) const {
    GrayImage y;
    if (!input.empty()) {
      y = only_gray(read_image(std::filesystem::path(input)), "bench input");
      if (!y.is_binary()) throw InputError("bench needs a binary image");
    } else {
      NoiseSpec spec;
      spec.p = p;
      spec.seed = seed;
      y = apply_noise(binary_scene(size, size), spec);
    }
    const EnergyParams params = energy.params();
    const GNetwork g = build_binary_map_network(y, params);
    const GridShape grid{y.width(), y.height(), 1};

    SolverOptions base_opts;
    auto t0 = Clock::now();
    const CutSolution base = solve_min_cut(g, base_opts, CutPick::minimal, grid);
    const double base_ms = ms_since(t0);

    SolverOptions mnfc_opts = solver.options(resolve_threads(threads));
    mnfc_opts.kind = SolverKind::mnfc;
    t0 = Clock::now();
    const CutSolution multi = solve_min_cut(g, mnfc_opts, CutPick::minimal, grid);
    const double mnfc_ms = ms_since(t0);

    json r = make_report("bench");
    r["parameters"] = solver.to_json();
    r["parameters"].update(energy.to_json(params));
    r["parameters"]["threads"] = mnfc_opts.threads;
    r["width"] = y.width();
    r["height"] = y.height();
    r["baseline"] = {{"cut_value", base.cut_value}, {"wall_ms", base_ms}};
    r["mnfc"] = {{"cut_value", multi.cut_value},
                 {"wall_ms", mnfc_ms},
                 {"levels", levels_json(multi.levels)}};
    const bool agree = base.cut_value == multi.cut_value && base.x == multi.x;
    r["agree"] = agree;
    emit(r, report, out_stream);
    return agree ? kOk : kMismatch;
  }
};

// ---- synth ----------------------------------------------------------------

struct SynthCmd {
  std::string out;
  std::string kind = "binary";
  int width = 64;
  int height = 64;
  int levels = 256;
  int low = 20;
  int high = 180;

  void attach(CLI::App& app) {
    app.add_option("--out", out, "Output PGM path")->required();
    app.add_option("--kind", kind, "binary or gray")
        ->check(CLI::IsMember({"binary", "gray"}))
        ->capture_default_str();
    app.add_option("--width", width)->capture_default_str();
    app.add_option("--height", height)->capture_default_str();
    app.add_option("--levels", levels, "L for gray scenes")->capture_default_str();
    app.add_option("--low", low, "Darkest region value")->capture_default_str();
    app.add_option("--high", high, "Brightest region value")->capture_default_str();
  }

  int run(std::ostream&) const {
    const GrayImage img = kind == "binary" ? binary_scene(height, width)
                                           : gray_scene(height, width, levels, low, high);
    write_image(AnyImage(img), std::filesystem::path(out));
    return kOk;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact min-cut and Ising image restoration"};
  app.name("mrfcut");
  app.require_subcommand(1);

  MincutCmd mincut;
  RestoreCmd restore;
  NoiseCmd noise;
  FilterCmd filter;
  VerifyCmd verify;
  BenchCmd bench;
  SynthCmd synth;
  auto* c_mincut = app.add_subcommand("mincut", "Minimum s-t cut of a DIMACS network");
  auto* c_restore = app.add_subcommand("restore", "Exact MAP restoration (binary, U1 or U2)");
  auto* c_noise = app.add_subcommand("noise", "Seeded Bernoulli or exponential noise");
  auto* c_filter = app.add_subcommand("filter", "3x3 moving average or median");
  auto* c_verify = app.add_subcommand("verify", "Cross-check solvers against enumeration");
  auto* c_bench = app.add_subcommand("bench", "Baseline vs multiresolution timing and stats");
  auto* c_synth = app.add_subcommand("synth", "Write a synthetic test scene");
  mincut.attach(*c_mincut);
  restore.attach(*c_restore);
  noise.attach(*c_noise);
  filter.attach(*c_filter);
  verify.attach(*c_verify);
  bench.attach(*c_bench);
  synth.attach(*c_synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (c_mincut->parsed()) return mincut.run(out);
    if (c_restore->parsed()) return restore.run(out);
    if (c_noise->parsed()) return noise.run(out);
    if (c_filter->parsed()) return filter.run(out);
    if (c_verify->parsed()) return verify.run(out);
    if (c_bench->parsed()) return bench.run(out);
    if (c_synth->parsed()) return synth.run(out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const LimitError& e) {
    err << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace mrfcut::cli
