#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "lexfield/config.hpp"
#include "lexfield/errors.hpp"
#include "lexfield/space.hpp"

using namespace lexfield;
using testutil::rel_error;

TEST_CASE("gaussian kernel closed forms") {
  const KernelSpec g{KernelKind::gaussian};
  CHECK(kernel_eval(g, 0.0, 1.0) == 1.0);
  CHECK(kernel_eval(g, 1.0, 1.0) == doctest::Approx(0.6065306597126334).epsilon(1e-12));
  CHECK(kernel_eval(g, 10.0, 1.0) < 1e-20);
  CHECK(kernel_eval(g, 2.0, 2.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("exponential and inverse-power kernels") {
  const KernelSpec e{KernelKind::exponential};
  CHECK(kernel_eval(e, 0.0, 1.0) == 1.0);
  CHECK(kernel_eval(e, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  KernelSpec p{KernelKind::inverse_power};
  p.power = 2.0;
  CHECK(kernel_eval(p, 0.0, 1.0) == 1.0);
  CHECK(kernel_eval(p, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  p.power = 3.0;
  CHECK(kernel_eval(p, 2.0, 1.0) == doctest::Approx(std::pow(5.0, -1.5)).epsilon(1e-14));
}

TEST_CASE("kernel domain errors") {
  const KernelSpec g{KernelKind::gaussian};
  CHECK_THROWS_AS(kernel_eval(g, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(kernel_eval(g, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(kernel_eval(g, 1.0, -2.0), DomainError);
  KernelSpec p{KernelKind::inverse_power};
  p.power = 0.5;
  CHECK_THROWS_AS(kernel_eval(p, 1.0, 1.0), DomainError);
}

TEST_CASE("kernels are normalized at zero and monotone") {
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> radius(0.0, 6.0);
  std::uniform_real_distribution<double> width(0.1, 3.0);
  for (const KernelKind kind :
       {KernelKind::gaussian, KernelKind::exponential, KernelKind::inverse_power}) {
    KernelSpec k{kind};
    for (int i = 0; i < 200; ++i) {
      const double sigma = width(gen);
      CHECK(kernel_eval(k, 0.0, sigma) == 1.0);
      double r1 = radius(gen);
      double r2 = radius(gen);
      if (r1 > r2) std::swap(r1, r2);
      CHECK(kernel_eval(k, r1, sigma) >= kernel_eval(k, r2, sigma));
      const double v = kernel_eval(k, r2, sigma);
      CHECK(v >= 0.0);  // deep tails may underflow to zero
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("gaussian width scaling") {
  const KernelSpec g{KernelKind::gaussian};
  std::mt19937 gen(32);
  std::uniform_real_distribution<double> dist(0.1, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double r = dist(gen);
    const double sigma = dist(gen);
    const double c = dist(gen);
    CHECK(rel_error(kernel_eval(g, c * r, c * sigma), kernel_eval(g, r, sigma)) < 1e-12);
  }
}

TEST_CASE("default interaction kernels") {
  const FieldConfig cfg;
  CHECK(cfg.kappa2 == 1.0);
  CHECK(cfg.kappa3 == 0.1);
  CHECK(pair_kernel_value(cfg, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(triple_kernel_value(cfg, 1.0, 2.0, 3.0) ==
        doctest::Approx(std::exp(-7.0)).epsilon(1e-14));
  // permutation invariance of the reduction
  CHECK(triple_kernel_value(cfg, 3.0, 1.0, 2.0) == triple_kernel_value(cfg, 1.0, 2.0, 3.0));
}

TEST_CASE("space validation") {
  CHECK_NOTHROW(validate_space(SemanticSpace{1}));
  CHECK_NOTHROW(validate_space(SemanticSpace{64}));
  CHECK_THROWS_AS(validate_space(SemanticSpace{0}), DomainError);
  CHECK_THROWS_AS(validate_space(SemanticSpace{-3}), DomainError);
}

TEST_CASE("word and phrase validation") {
  Word w = testutil::word("ok", {0.0, 1.0});
  CHECK_NOTHROW(validate_word(w));

  w.strength = -1.0;
  CHECK_THROWS_AS(validate_word(w), DomainError);
  w.strength = 0.0;  // zero-strength words are legal inputs
  CHECK_NOTHROW(validate_word(w));

  w.width = 0.0;
  CHECK_THROWS_AS(validate_word(w), DomainError);
  w.width = 1.0;
  w.stability = 1.5;
  CHECK_THROWS_AS(validate_word(w), DomainError);
  w.stability = 1.0;
  CHECK_NOTHROW(validate_word(w));

  CHECK_THROWS_AS(validate_phrase(Phrase{}), DomainError);
  Phrase mixed;
  mixed.words.push_back(testutil::word("a", {0.0}));
  mixed.words.push_back(testutil::word("b", {0.0, 1.0}));
  CHECK_THROWS_AS(validate_phrase(mixed), DimensionMismatch);
}

TEST_CASE("region validation") {
  CHECK_NOTHROW(Region::grid({-1.0, -1.0}, {1.0, 1.0}, 16));
  CHECK_THROWS_AS(Region::grid({1.0}, {-1.0}, 16), DomainError);
  CHECK_THROWS_AS(Region::grid({0.0}, {0.0}, 16), DomainError);
  CHECK_THROWS_AS(Region::grid({0.0, 0.0}, {1.0}, 16), DimensionMismatch);
  CHECK_THROWS_AS(Region::grid({0.0}, {1.0}, 0), DomainError);
  CHECK_THROWS_AS(Region::monte_carlo({0.0}, {1.0}, 0), DomainError);
  const Region r = Region::grid({-1.0, 0.0}, {3.0, 2.0}, 4);
  CHECK(r.volume() == doctest::Approx(8.0));
}

TEST_CASE("config parsing applies values and defaults") {
  const Config def = parse_config("{}");
  CHECK(def.dim == 0);
  CHECK(def.field.kappa2 == 1.0);
  CHECK(def.field.kappa3 == 0.1);
  CHECK(def.field.pair_sigma == 1.0);
  CHECK(def.field.triple_sigma == 1.0);
  CHECK(def.field.unary_kernel.kind == KernelKind::gaussian);

  const Config cfg = parse_config(R"({
    "dim": 3,
    "unary_kernel": {"kind": "inverse-power", "params": {"power": 3}},
    "kappa2": 0.5,
    "kappa3": 0.0,
    "pair_sigma": 2.0,
    "triple_sigma": 0.25
  })");
  CHECK(cfg.dim == 3);
  CHECK(cfg.field.unary_kernel.kind == KernelKind::inverse_power);
  CHECK(cfg.field.unary_kernel.power == 3.0);
  CHECK(cfg.field.kappa2 == 0.5);
  CHECK(cfg.field.kappa3 == 0.0);
  CHECK(cfg.field.pair_sigma == 2.0);
  CHECK(cfg.field.triple_sigma == 0.25);
}

TEST_CASE("config rejects unknown keys by name") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"kapa2": 1.0})"),
                       doctest::Contains("kapa2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"unary_kernel": {"kind": "gaussian", "foo": 1}})"),
                       doctest::Contains("foo"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"unary_kernel": {"kind": "gaussian", "params": {"bar": 1}}})"),
      doctest::Contains("bar"), ParseError);
}

TEST_CASE("config rejects malformed input") {
  CHECK_THROWS_AS(parse_config("not json"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"dim": -1})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"dim": 1.5})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"kappa2": "x"})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"unary_kernel": {"kind": "triangular"}})"), DomainError);
  CHECK_THROWS_AS(parse_config(R"({"pair_sigma": -1.0})"), DomainError);
}
