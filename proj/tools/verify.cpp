#include "verify.hpp"

#include <functional>
#include <random>
#include <string>

#include "mrfcut/layers.hpp"
#include "mrfcut/maxflow.hpp"
#include "mrfcut/mnfc.hpp"
#include "mrfcut/oracle.hpp"
#include "mrfcut/qnet.hpp"

namespace mrfcut::cli {

namespace {

using Rng = std::mt19937_64;

std::int64_t draw(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

GNetwork random_network(Rng& rng, std::int32_t n) {
  std::vector<Capacity> lambda(static_cast<std::size_t>(n));
  std::vector<std::uint8_t> y(static_cast<std::size_t>(n));
  std::vector<BetaArc> arcs;
  for (std::int32_t i = 0; i < n; ++i) {
    lambda[i] = draw(rng, 0, 9);
    y[i] = static_cast<std::uint8_t>(draw(rng, 0, 1));
    for (std::int32_t j = 0; j < n; ++j)
      if (i != j && draw(rng, 0, 9) < 3) arcs.push_back({i, j, draw(rng, 1, 9)});
  }
  return GNetwork(n, std::move(lambda), std::move(y), std::move(arcs), draw(rng, 0, 3));
}

GrayImage random_image(Rng& rng, std::int32_t h, std::int32_t w, std::int32_t levels) {
  PixelMatrix<std::int32_t> m(h, w);
  for (std::int64_t i = 0; i < m.size(); ++i) m.data()[i] = static_cast<std::int32_t>(draw(rng, 0, levels - 1));
  return GrayImage(std::move(m), levels);
}

EnergyParams random_params(Rng& rng, std::int32_t h, std::int32_t w, bool per_pixel_lambda) {
  EnergyParams p;
  p.lambda = draw(rng, 16, 64);
  if (per_pixel_lambda) {
    PixelMatrix<Capacity> lam(h, w);
    for (std::int64_t i = 0; i < lam.size(); ++i) lam.data()[i] = draw(rng, 16, 64);
    p.lambda_map = std::move(lam);
  }
  for (int k = 0; k < 2; ++k) {
    PixelMatrix<Capacity> b(h, w);
    for (std::int64_t i = 0; i < b.size(); ++i) b.data()[i] = draw(rng, 16, 32);
    p.beta_maps.push_back(std::move(b));
  }
  return p;
}

Labeling coordinate_extreme(const std::vector<Labeling>& xs, bool take_max) {
  Labeling out = xs.front();
  for (const auto& x : xs)
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = take_max ? std::max(out[i], x[i]) : std::min(out[i], x[i]);
  return out;
}

struct Check {
  std::string name;
  int instances;
  std::function<bool(Rng&)> run;  // true when the instance agrees
};

}  // namespace

nlohmann::json run_small_suite(std::uint64_t seed, int threads) {
  const std::vector<Check> checks = {
      {"mincut_vs_enumeration", 100,
       [](Rng& rng) {
         const GNetwork g = random_network(rng, static_cast<std::int32_t>(draw(rng, 0, 10)));
         const CutOracle o = brute_min_cut(g);
         const FlowResult fr = max_flow(g);
         return fr.max_flow_value() + g.offset() == o.value &&
                min_cut_minimal(fr) == coordinate_extreme(o.argmins, false) &&
                min_cut_maximal(fr) == coordinate_extreme(o.argmins, true);
       }},
      {"mnfc_vs_enumeration", 60,
       [threads](Rng& rng) {
         const GNetwork g = random_network(rng, static_cast<std::int32_t>(draw(rng, 1, 12)));
         MnfcConfig cfg;
         cfg.strategy = PartitionStrategy::ranges;
         cfg.cell_size = static_cast<std::int32_t>(draw(rng, 1, 4));
         cfg.fallback_threshold = 2;
         cfg.worker_count = threads;
         const CutOracle o = brute_min_cut(g);
         const MnfcResult r = run_mnfc(g, cfg);
         return r.cut_value == o.value && r.x == coordinate_extreme(o.argmins, false);
       }},
      {"u1_vs_enumeration", 60,
       [threads](Rng& rng) {
         const auto h = static_cast<std::int32_t>(draw(rng, 1, 2));
         const auto w = static_cast<std::int32_t>(draw(rng, 1, 4));
         const GrayImage y = random_image(rng, h, w, static_cast<std::int32_t>(draw(rng, 2, 4)));
         const EnergyParams p = random_params(rng, h, w, false);
         SolverOptions opts;
         opts.kind = draw(rng, 0, 1) ? SolverKind::mnfc : SolverKind::baseline;
         opts.mnfc.tile_side = 1;
         opts.mnfc.fallback_threshold = 1;
         opts.threads = threads;
         return minimize_U1(y, p, opts).energy == brute_min_U1(y, p).value;
       }},
      {"u2_vs_enumeration", 60,
       [threads](Rng& rng) {
         const auto h = static_cast<std::int32_t>(draw(rng, 1, 2));
         const auto w = static_cast<std::int32_t>(draw(rng, 1, 3));
         const GrayImage y = random_image(rng, h, w, static_cast<std::int32_t>(draw(rng, 2, 4)));
         const EnergyParams p = random_params(rng, h, w, true);
         SolverOptions opts;
         opts.kind = draw(rng, 0, 1) ? SolverKind::mnfc : SolverKind::baseline;
         opts.mnfc.tile_side = 1;
         opts.mnfc.fallback_threshold = 1;
         opts.threads = threads;
         return minimize_U2(y, p, opts).energy == brute_min_U2(y, p).value;
       }},
      {"binary_u1_equals_u2", 40,
       [](Rng& rng) {
         const auto h = static_cast<std::int32_t>(draw(rng, 1, 3));
         const auto w = static_cast<std::int32_t>(draw(rng, 1, 3));
         const GrayImage x = random_image(rng, h, w, 2);
         const GrayImage y = random_image(rng, h, w, 2);
         const EnergyParams p = random_params(rng, h, w, false);
         return eval_U1(x, y, p) == eval_U2(x, y, p) &&
                minimize_U1(y, p, {}).energy == minimize_U2(y, p, {}).energy;
       }},
  };

  nlohmann::json report = nlohmann::json::object();
  bool ok = true;
  Rng rng(seed);
  for (const Check& c : checks) {
    int mismatches = 0;
    for (int k = 0; k < c.instances; ++k)
      if (!c.run(rng)) ++mismatches;
    ok = ok && mismatches == 0;
    report[c.name] = {{"instances", c.instances}, {"mismatches", mismatches}};
  }
  return {{"checks", report}, {"ok", ok}};
}

}  // namespace mrfcut::cli
