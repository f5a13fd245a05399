#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hv/algebra.hpp"

using namespace hv;

namespace {

LieElement lie(std::initializer_list<std::pair<Generator, Rat>> terms) {
  LieElement e;
  for (const auto& [g, c] : terms) add_term(e, g, c);
  return e;
}

}  // namespace

TEST_CASE("defining brackets, mirror") {
  auto k = AlgebraKind::MirrorHV;
  // [d_2, d_-2] = 4 d_0 + (1/2) c1
  CHECK(bracket(k, gen_d(2), gen_d(-2)) ==
        lie({{gen_d(0), rat(4)}, {gen_c1(), rat(1, 2)}}));
  // [h_{1/2}, h_{-1/2}] = (1/2) c2
  CHECK(bracket(k, gen_h2(1), gen_h2(-1)) == lie({{gen_c2(), rat(1, 2)}}));
  // centrals commute
  CHECK(bracket(k, gen_c1(), gen_d(5)).empty());
  CHECK(bracket(k, gen_c2(), gen_h2(7)).empty());
  // no anomaly in the mirror [d, h] bracket
  CHECK(bracket(k, gen_d(1), gen_h2(-3)) == lie({{gen_h2(-1), rat(3, 2)}}));
}

TEST_CASE("defining brackets, twisted") {
  auto k = AlgebraKind::TwistedHV;
  // [d_1, h_-1] = h_0 + 2 cbar2
  CHECK(bracket(k, gen_d(1), gen_h2(-2)) ==
        lie({{gen_h2(0), rat(1)}, {gen_c2(), rat(2)}}));
  // [h_1, h_-1] = cbar3
  CHECK(bracket(k, gen_h2(2), gen_h2(-2)) == lie({{gen_c3(), rat(1)}}));
  // [d_m, d_n] central term
  CHECK(bracket(k, gen_d(3), gen_d(-3)) ==
        lie({{gen_d(0), rat(6)}, {gen_c1(), rat(2)}}));
}

TEST_CASE("generator validity") {
  CHECK(valid_for(AlgebraKind::MirrorHV, gen_h2(-3)));
  CHECK_FALSE(valid_for(AlgebraKind::MirrorHV, gen_h2(2)));
  CHECK_FALSE(valid_for(AlgebraKind::MirrorHV, gen_c3()));
  CHECK(valid_for(AlgebraKind::TwistedHV, gen_h2(2)));
  CHECK_FALSE(valid_for(AlgebraKind::TwistedHV, gen_h2(3)));
  CHECK_THROWS_AS(bracket(AlgebraKind::MirrorHV, gen_h2(2), gen_d(0)),
                  InvalidGenerator);
}

TEST_CASE("token round trip") {
  for (const char* tok : {"d:0", "d:-7", "h:-3/2", "h:5/2", "h:4", "c1", "c2", "c3"})
    CHECK(gen_token(gen_parse(tok)) == tok);
  CHECK_THROWS_AS(gen_parse("h:2/2"), InvalidGenerator);
  CHECK_THROWS_AS(gen_parse("q:1"), InvalidGenerator);
  CHECK_THROWS_AS(gen_parse("d:x"), InvalidGenerator);
}

TEST_CASE("bracket_lin bilinearity and antisymmetry") {
  auto k = AlgebraKind::MirrorHV;
  LieElement x = lie({{gen_d(1), rat(1)}, {gen_d(2), rat(1)}});
  LieElement y = lie({{gen_d(-1), rat(1)}});
  // [d_1 + d_2, d_-1] = 2 d_0 + 3 d_1
  CHECK(bracket_lin(k, x, y) == lie({{gen_d(0), rat(2)}, {gen_d(1), rat(3)}}));
  CHECK(bracket_lin(k, x, x).empty());
  CHECK(bracket_lin(k, LieElement{}, y).empty());
}

TEST_CASE("jacobi identity sweep on |degree| <= 4") {
  for (auto kind : {AlgebraKind::MirrorHV, AlgebraKind::TwistedHV}) {
    auto gens = generators_up_to(kind, 4);
    for (const auto& x : gens)
      for (const auto& y : gens)
        for (const auto& z : gens)
          REQUIRE(jacobi_defect(kind, x, y, z).empty());
  }
}

TEST_CASE("antisymmetry and degree additivity sweep") {
  for (auto kind : {AlgebraKind::MirrorHV, AlgebraKind::TwistedHV}) {
    auto gens = generators_up_to(kind, 5);
    for (const auto& x : gens)
      for (const auto& y : gens) {
        LieElement b = bracket(kind, x, y);
        CHECK(lie_add(b, bracket(kind, y, x)).empty());
        for (const auto& [g, c] : b) {
          if (g.is_central())
            CHECK(x.degree2() + y.degree2() == 0);
          else
            CHECK(g.degree2() == x.degree2() + y.degree2());
        }
      }
  }
}
