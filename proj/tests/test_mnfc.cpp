#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "generators.hpp"
#include "mrfcut/maxflow.hpp"
#include "mrfcut/mnfc.hpp"
#include "mrfcut/oracle.hpp"

using namespace mrfcut;
using namespace mrfcut::testing;

namespace {

Capacity baseline_value(const GNetwork& g) { return max_flow(g).max_flow_value() + g.offset(); }

GNetwork constant_image_network(std::int32_t side, Capacity lambda, Capacity beta) {
  EnergyParams p;
  p.lambda = lambda;
  p.beta = beta;
  return build_binary_map_network(BinaryImage(side, side, 2, 1), p);
}

void check_partition(const Partition& part, const std::vector<NodeIndex>& nodes) {
  std::vector<NodeIndex> seen;
  for (const auto& cell : part.cells) {
    CHECK(!cell.empty());
    seen.insert(seen.end(), cell.begin(), cell.end());
  }
  std::sort(seen.begin(), seen.end());
  CHECK(seen == nodes);
}

std::vector<NodeIndex> iota_nodes(std::int32_t n) {
  std::vector<NodeIndex> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("partition_level") {
  const GNetwork g = constant_image_network(8, 2, 1);
  MnfcConfig cfg;
  cfg.grid = GridShape{8, 8, 1};
  cfg.tile_side = 4;
  cfg.fallback_threshold = 10;
  const auto all = iota_nodes(64);

  SUBCASE("8x8 grid in 4x4 tiles") {
    const Partition p = partition_level(all, g, cfg);
    REQUIRE(p.cells.size() == 4);
    for (const auto& cell : p.cells) CHECK(cell.size() == 16);
    check_partition(p, all);
    CHECK(p.cells[0] == std::vector<NodeIndex>{0, 1, 2, 3, 8, 9, 10, 11, 16, 17, 18, 19, 24, 25,
                                               26, 27});
  }
  SUBCASE("small unresolved sets form one cell") {
    const std::vector<NodeIndex> few{1, 5, 9, 13, 20, 40, 63};
    const Partition p = partition_level(few, g, cfg);
    REQUIRE(p.cells.size() == 1);
    CHECK(p.cells[0] == few);
  }
  SUBCASE("holes are excluded") {
    std::vector<NodeIndex> holes;
    for (NodeIndex v = 0; v < 64; ++v)
      if (v % 3 != 0) holes.push_back(v);
    check_partition(partition_level(holes, g, cfg), holes);
  }
  SUBCASE("even levels shift the tiles") {
    const Partition p = partition_level(all, g, cfg, 2);
    check_partition(p, all);
    CHECK(p.cells.size() == 9);
  }
  SUBCASE("ranges and pyramidal") {
    MnfcConfig r = cfg;
    r.strategy = PartitionStrategy::ranges;
    r.cell_size = 10;
    const Partition pr = partition_level(all, g, r);
    CHECK(pr.cells.size() == 7);
    check_partition(pr, all);
    r.strategy = PartitionStrategy::pyramidal;
    const Partition pp = partition_level(all, g, r, 3);
    CHECK(pp.cells.size() == 8);
    check_partition(pp, all);
  }
  SUBCASE("tiles need a grid") {
    MnfcConfig bad = cfg;
    bad.grid.reset();
    bad.strategy = PartitionStrategy::tiles;
    CHECK_THROWS_AS(partition_level(all, g, bad), InputError);
    bad.grid = GridShape{4, 4, 1};
    CHECK_THROWS_AS(partition_level(all, g, bad), InputError);
  }
}

TEST_CASE("fix_nodes") {
  const std::vector<NodeIndex> cell{0, 1, 2};
  CHECK(fix_nodes(cell, Labeling{0, 0, 1}, Labeling{0, 1, 1}) ==
        std::vector<FixedNode>{{0, 0}, {2, 1}});
  CHECK(fix_nodes(cell, Labeling{0, 1, 1}, Labeling{0, 1, 1}).size() == 3);
  CHECK(fix_nodes(cell, Labeling{0, 0, 0}, Labeling{1, 1, 1}).empty());
  CHECK_THROWS_AS(fix_nodes(cell, Labeling{1, 0, 0}, Labeling{0, 1, 1}), InputError);
}

TEST_CASE("local estimates") {
  SUBCASE("interior of a constant region is decided") {
    const GNetwork g = constant_image_network(8, 2, 1);
    const std::vector<std::int8_t> none(64, -1);
    const std::vector<NodeIndex> cell{18, 19, 20, 26, 27, 28, 34, 35, 36};
    const LocalEstimates e = local_estimates(g, cell, none);
    CHECK(e.x0 == Labeling(9, 1));
    CHECK(e.x1 == Labeling(9, 1));
    CHECK(e.counts.nodes == 9);
    CHECK(e.counts.boundary_arcs == 24);
  }
  SUBCASE("an isolated zero-lambda node stays open") {
    const GNetwork g(1, {0}, {0}, {});
    const std::vector<std::int8_t> none(1, -1);
    const std::vector<NodeIndex> cell{0};
    const LocalEstimates e = local_estimates(g, cell, none);
    CHECK(e.x0 == Labeling{0});
    CHECK(e.x1 == Labeling{1});
  }
}

TEST_CASE("check_fixable_subset") {
  // Node 0 under test; node 1 carries the boundary coupling of 1 in one direction.
  const std::vector<NodeIndex> d{0};
  CHECK(check_fixable_subset(GNetwork(2, {2, 1}, {1, 0}, {{0, 1, 1}}), d) ==
        Fixability::fixable_to_1);
  CHECK(check_fixable_subset(GNetwork(2, {2, 1}, {0, 0}, {{1, 0, 1}}), d) ==
        Fixability::fixable_to_0);
  CHECK(check_fixable_subset(GNetwork(2, {2, 1}, {0, 0}, {}), std::vector<NodeIndex>{}) ==
        Fixability::undecided);
  // Strong incoming coupling: the subtracted term decides, not the added one.
  CHECK(check_fixable_subset(GNetwork(2, {2, 1}, {1, 0}, {{1, 0, 3}}), d) ==
        Fixability::fixable_to_1);
  CHECK(check_fixable_subset(GNetwork(2, {2, 1}, {1, 0}, {{0, 1, 3}}), d) ==
        Fixability::undecided);
}

TEST_CASE("check_fixable_subset agrees with flipping the subset") {
  // Under the all-zeros frontier D prefers 1 iff cut(D=1) <= cut(D=0); under
  // the all-ones frontier D prefers 0 iff cut(D=1) >= cut(D=0).
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::int32_t>(uniform(rng, 2, 9));
    const GNetwork g = random_gnetwork(rng, n, 0.4);
    std::vector<NodeIndex> cell;
    Labeling zeros_d1(static_cast<std::size_t>(n), 0);
    Labeling ones_d0(static_cast<std::size_t>(n), 1);
    for (NodeIndex i = 0; i < n; ++i) {
      if (uniform(rng, 0, 1)) {
        cell.push_back(i);
        zeros_d1[i] = 1;
        ones_d0[i] = 0;
      }
    }
    if (cell.empty()) continue;
    const Labeling all_zero(static_cast<std::size_t>(n), 0);
    const Labeling all_one(static_cast<std::size_t>(n), 1);
    const bool to_one = cut_capacity(g, zeros_d1) <= cut_capacity(g, all_zero);
    const bool to_zero = cut_capacity(g, all_one) >= cut_capacity(g, ones_d0);
    Fixability expected = Fixability::undecided;
    if (to_one && !to_zero) expected = Fixability::fixable_to_1;
    if (to_zero && !to_one) expected = Fixability::fixable_to_0;
    CHECK(check_fixable_subset(g, cell) == expected);

    // Strict preference decides at least one node of the cell.
    const std::vector<std::int8_t> none(static_cast<std::size_t>(n), -1);
    const LocalEstimates e = local_estimates(g, cell, none);
    if (cut_capacity(g, zeros_d1) < cut_capacity(g, all_zero))
      CHECK(std::count(e.x0.begin(), e.x0.end(), 1) > 0);
    if (cut_capacity(g, all_one) > cut_capacity(g, ones_d0))
      CHECK(std::count(e.x1.begin(), e.x1.end(), 0) > 0);
  }
}

TEST_CASE("run_mnfc on a constant image fixes everything at level 1") {
  const GNetwork g = constant_image_network(16, 2, 1);
  MnfcConfig cfg;
  cfg.grid = GridShape{16, 16, 1};
  cfg.tile_side = 4;
  cfg.fallback_threshold = 8;
  const MnfcResult r = run_mnfc(g, cfg);
  CHECK(r.x == Labeling(256, 1));
  REQUIRE(r.levels.size() == 1);
  CHECK(r.levels[0].fixed_fraction == 1.0);
  CHECK(r.levels[0].cells.size() == 16);
  CHECK(!r.fell_back);
  CHECK(r.cut_value == baseline_value(g));
}

TEST_CASE("run_mnfc matches the baseline on random networks") {
  Rng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const GNetwork g = random_gnetwork(rng, 50, 0.06, 20);
    MnfcConfig cfg;
    cfg.strategy = PartitionStrategy::ranges;
    cfg.cell_size = 10;
    cfg.fallback_threshold = 5;
    const MnfcResult r = run_mnfc(g, cfg);
    REQUIRE(r.cut_value == baseline_value(g));
    CHECK(cut_capacity(g, r.x) == r.cut_value);
    CHECK(r.x == min_cut_minimal(max_flow(g)));
    cfg.pick = CutPick::maximal;
    CHECK(run_mnfc(g, cfg).x == min_cut_maximal(max_flow(g)));
  }
}

TEST_CASE("run_mnfc falls back when no node can be fixed") {
  const GNetwork g(2, {1, 1}, {1, 0}, {{0, 1, 3}, {1, 0, 3}});
  MnfcConfig cfg;
  cfg.strategy = PartitionStrategy::ranges;
  cfg.cell_size = 1;
  cfg.fallback_threshold = 1;
  const MnfcResult r = run_mnfc(g, cfg);
  CHECK(r.fell_back);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0].fixed == 0);
  CHECK(r.levels[1].direct);
  CHECK(r.cut_value == baseline_value(g));
  CHECK(r.cut_value == brute_min_cut(g).value);
}

TEST_CASE("pyramidal partitions climb instead of falling back") {
  const GNetwork g(2, {1, 1}, {1, 0}, {{0, 1, 3}, {1, 0, 3}});
  MnfcConfig cfg;
  cfg.strategy = PartitionStrategy::pyramidal;
  cfg.fallback_threshold = 1;
  const MnfcResult r = run_mnfc(g, cfg);
  CHECK(!r.fell_back);
  CHECK(r.cut_value == baseline_value(g));
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const GNetwork h = random_gnetwork(rng, 40, 0.08, 20);
    CHECK(run_mnfc(h, cfg).cut_value == baseline_value(h));
  }
}

TEST_CASE("fixed nodes keep their value and results ignore worker counts") {
  Rng rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    const GNetwork g = random_grid_gnetwork(rng, 24, 24, 4, 2, 0.4);
    MnfcConfig cfg;
    cfg.grid = GridShape{24, 24, 1};
    cfg.tile_side = 6;
    cfg.fallback_threshold = 4;
    const MnfcResult one = run_mnfc(g, cfg);
    const Labeling lo = min_cut_minimal(max_flow(g));
    CHECK(one.x == lo);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (one.fixed_level[i] > 0) {
        const FlowResult fr = max_flow(g);
        CHECK(min_cut_minimal(fr)[i] == min_cut_maximal(fr)[i]);
      }
    }
    std::int64_t fixed_total = 0;
    for (const LevelStats& s : one.levels) {
      CHECK(s.fixed_fraction >= 0.0);
      CHECK(s.fixed_fraction <= 1.0);
      fixed_total += s.fixed;
    }
    CHECK(fixed_total == 24 * 24);
    for (const int workers : {2, 8}) {
      cfg.worker_count = workers;
      const MnfcResult many = run_mnfc(g, cfg);
      CHECK(many.x == one.x);
      CHECK(many.fixed_level == one.fixed_level);
    }
  }
}

TEST_CASE("max_levels caps the iteration") {
  Rng rng(12);
  const GNetwork g = random_grid_gnetwork(rng, 16, 16, 3, 2, 0.5);
  MnfcConfig cfg;
  cfg.grid = GridShape{16, 16, 1};
  cfg.tile_side = 2;
  cfg.fallback_threshold = 1;
  cfg.max_levels = 1;
  const MnfcResult r = run_mnfc(g, cfg);
  CHECK(r.levels.size() <= 2);
  CHECK(r.cut_value == baseline_value(g));
}

TEST_CASE("config validation") {
  const GNetwork g = constant_image_network(4, 2, 1);
  MnfcConfig cfg;
  cfg.tile_side = 0;
  CHECK_THROWS_AS(run_mnfc(g, cfg), InputError);
  cfg = MnfcConfig{};
  cfg.fallback_threshold = 0;
  CHECK_THROWS_AS(run_mnfc(g, cfg), InputError);
}
