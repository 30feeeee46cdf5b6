#include <doctest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "mrfcut/filters.hpp"
#include "mrfcut/layers.hpp"
#include "mrfcut/noise.hpp"
#include "mrfcut/pnm.hpp"
#include "mrfcut/qnet.hpp"

using namespace mrfcut;
using namespace mrfcut::testing;

namespace {

AnyImage parse(const std::string& bytes) {
  std::istringstream in(bytes);
  return read_image(in);
}

std::string encode(const GrayImage& img, bool ascii) {
  std::ostringstream out;
  write_image(img, out, ascii);
  return out.str();
}

}  // namespace

TEST_CASE("PGM and PPM reading") {
  SUBCASE("P5 maxval 255") {
    const AnyImage img = parse(std::string("P5\n2 1\n255\n") + '\x00' + '\xff');
    const auto& g = std::get<GrayImage>(img);
    CHECK(g.levels() == 256);
    CHECK(g(0, 1) == 255);
  }
  SUBCASE("P2 and P5 agree, comments allowed") {
    const auto a = std::get<GrayImage>(parse("P2\n# a comment\n3 2\n7\n0 1 2\n3 4 7\n"));
    std::string raw = "P5 3 2 7\n";
    for (const char c : {0, 1, 2, 3, 4, 7}) raw.push_back(c);
    CHECK(a == std::get<GrayImage>(parse(raw)));
    CHECK(a.levels() == 8);
  }
  SUBCASE("P6") {
    std::string raw = "P6\n2 1\n3\n";
    for (const char c : {0, 1, 2, 3, 2, 1}) raw.push_back(c);
    const ColorImage c = std::get<ColorImage>(parse(raw));
    CHECK(c.channel(0).at(1) == 3);
    CHECK(c.channel(2).at(0) == 2);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse("P4\n1 1\n"), InputError);
    CHECK_THROWS_AS(parse("P5\n2 2\n255\nab"), InputError);
    CHECK_THROWS_AS(parse("P5\n2 2\n"), InputError);
    CHECK_THROWS_AS(parse("P5\n2 2\n65535\n"), InputError);
    CHECK_THROWS_AS(parse("P2\n2 1\n3\n1 9\n"), InputError);
    CHECK_THROWS_AS(parse("P2\n0 1\n3\n"), InputError);
    CHECK_THROWS_AS(parse("P2\n2 1\n3\n1 x\n"), InputError);
  }
}

TEST_CASE("image write/read round trip") {
  Rng rng(21);
  for (const std::int32_t levels : {2, 16, 256}) {
    const GrayImage img = random_image(rng, 5, 7, levels);
    for (const bool ascii : {false, true})
      CHECK(std::get<GrayImage>(parse(encode(img, ascii))) == img);
  }
  const ColorImage c(random_image(rng, 3, 4, 100), random_image(rng, 3, 4, 100),
                     random_image(rng, 3, 4, 100));
  std::ostringstream out;
  write_image(c, out);
  CHECK(std::get<ColorImage>(parse(out.str())) == c);
  CHECK_THROWS_AS(encode(GrayImage(1, 1, 300), false), InputError);
}

TEST_CASE("Bernoulli flip noise") {
  const BinaryImage img = binary_scene(64, 64);
  NoiseSpec spec;
  spec.seed = 7;
  CHECK(apply_noise(img, spec) == img);
  spec.p = 1.0;
  const GrayImage flipped = apply_noise(img, spec);
  CHECK(flipped.pixels() == (1 - img.pixels().array()).matrix());
  spec.p = 0.3;
  const GrayImage noisy = apply_noise(img, spec);
  const double rate = metrics(noisy, img).error_rate;
  CHECK(std::abs(rate - 0.3) <= 4 * std::sqrt(0.3 * 0.7 / 4096));
  CHECK(apply_noise(img, spec) == noisy);
  spec.seed = 8;
  CHECK(!(apply_noise(img, spec) == noisy));
  CHECK_THROWS_AS(apply_noise(GrayImage(2, 2, 3), spec), InputError);
  spec.p = 1.5;
  CHECK_THROWS_AS(apply_noise(img, spec), InputError);
}

TEST_CASE("seeded noise is pinned to the engine") {
  // mt19937_64 is fully specified, so these draws are the same everywhere.
  CHECK(unit_uniform(0) == 0.0);
  CHECK(unit_uniform(~std::uint64_t{0}) < 1.0);
  NoiseSpec spec;
  spec.p = 0.5;
  spec.seed = 5489;
  const GrayImage out = apply_noise(BinaryImage(1, 8, 2, 0), spec);
  std::mt19937_64 engine(5489);
  for (std::int64_t i = 0; i < 8; ++i) CHECK(out.at(i) == (unit_uniform(engine()) < 0.5 ? 1 : 0));
}

TEST_CASE("exponential additive noise") {
  const GrayImage img = gray_scene(64, 64, 256, 20, 180);
  NoiseSpec spec;
  spec.kind = NoiseKind::exponential_additive;
  spec.seed = 3;
  const GrayImage noisy = apply_noise(img, spec);
  CHECK((noisy.pixels().array() >= img.pixels().array()).all());
  // Mean of round(Exp(8 / 256)) is close to 32.
  const double mean = static_cast<double>(metrics(noisy, img).abs_error) / 4096.0;
  CHECK(mean == doctest::Approx(32.0).epsilon(0.1));
  CHECK(apply_noise(img, spec) == noisy);
  spec.rate = 0.01;
  const GrayImage clamped = apply_noise(GrayImage(4, 4, 4, 3), spec);
  CHECK(clamped == GrayImage(4, 4, 4, 3));
  spec.rate = -1.0;
  CHECK_THROWS_AS(apply_noise(img, spec), InputError);
}

TEST_CASE("3x3 filters") {
  const GrayImage flat(5, 6, 10, 4);
  CHECK(moving_average_3x3(flat) == flat);
  CHECK(moving_median_3x3(flat) == flat);

  GrayImage spike(5, 5, 256, 0);
  spike.set(2, 2, 255);
  CHECK(moving_median_3x3(spike) == GrayImage(5, 5, 256, 0));
  const GrayImage avg = moving_average_3x3(spike);
  CHECK(avg(2, 2) == 28);  // round(255 / 9)
  CHECK(avg(1, 1) == 28);
  CHECK(avg(0, 0) == 0);

  // Replicate padding: a corner value counts four times in its own window.
  GrayImage corner(3, 3, 256, 0);
  corner.set(0, 0, 90);
  CHECK(moving_average_3x3(corner)(0, 0) == 40);
}

TEST_CASE("filters commute with shifts away from the border") {
  Rng rng(12);
  const GrayImage img = random_image(rng, 12, 12, 50);
  PixelMatrix<std::int32_t> shifted = img.pixels();
  shifted.block(0, 1, 12, 11) = img.pixels().block(0, 0, 12, 11);
  const GrayImage s(shifted, 50);
  for (const auto f : {&moving_average_3x3, &moving_median_3x3}) {
    const GrayImage a = f(img);
    const GrayImage b = f(s);
    CHECK(b.pixels().block(1, 2, 10, 9) == a.pixels().block(1, 1, 10, 9));
  }
}

TEST_CASE("metrics") {
  const GrayImage a(2, 2, 8, 1);
  CHECK(metrics(a, a).error_rate == 0.0);
  CHECK(metrics(a, a).mae == 0.0);
  CHECK(metrics(BinaryImage(3, 3, 2, 0), BinaryImage(3, 3, 2, 1)).error_rate == 1.0);
  GrayImage b = a;
  b.set(1, 1, 4);
  const Metrics m = metrics(a, b);
  CHECK(m.error_rate == 0.25);
  CHECK(m.mae == 0.75);
  CHECK_THROWS_AS(metrics(a, GrayImage(2, 3, 8)), InputError);
}

TEST_CASE("restore_color works channel by channel") {
  Rng rng(44);
  EnergyParams p;
  p.lambda = 3;
  p.beta = 2;
  const GrayImage ch = random_image(rng, 4, 4, 5);
  const ColorImage same(ch, ch, ch);
  for (const Model m : {Model::u1, Model::u2}) {
    const ColorImage out = restore_color(same, p, m, SolverOptions{});
    CHECK(out.channel(0) == out.channel(1));
    CHECK(out.channel(1) == out.channel(2));
  }
  const ColorImage flat(GrayImage(3, 3, 5, 1), GrayImage(3, 3, 5, 4), GrayImage(3, 3, 5, 0));
  CHECK(restore_color(flat, p, Model::u2, SolverOptions{}) == flat);
  const ColorImage mixed(random_image(rng, 4, 4, 5), random_image(rng, 4, 4, 5),
                         random_image(rng, 4, 4, 5));
  const ColorImage u1 = restore_color(mixed, p, Model::u1, SolverOptions{});
  const ColorImage u2 = restore_color(mixed, p, Model::u2, SolverOptions{});
  for (int k = 0; k < 3; ++k) {
    CHECK(u1.channel(k) == minimize_U1(mixed.channel(k), p, SolverOptions{}).x);
    CHECK(u2.channel(k) == minimize_U2(mixed.channel(k), p, SolverOptions{}).x);
  }
}

TEST_CASE("color images need matching channels") {
  CHECK_THROWS_AS(ColorImage(GrayImage(2, 2, 4), GrayImage(2, 3, 4), GrayImage(2, 2, 4)),
                  InputError);
  CHECK_THROWS_AS(ColorImage(GrayImage(2, 2, 4), GrayImage(2, 2, 5), GrayImage(2, 2, 4)),
                  InputError);
}
