#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "halo/field.hpp"
#include "halo/haar.hpp"

using namespace halo;

namespace {

double box_mass(const HaarConfig& cfg) {
  return (cfg.x_hi - cfg.x_lo) * (1.0 / cfg.y_lo - 1.0 / cfg.y_hi);
}

}  // namespace

TEST_CASE("haar measure of a coordinate box, theta fiber normalized to 1", "[haar]") {
  HaarConfig cfg;
  cfg.x_lo = -2.0;
  cfg.x_hi = 3.0;
  cfg.y_lo = 0.5;
  cfg.y_hi = 4.0;
  cfg.nx = 96;
  cfg.ny = 256;
  cfg.ntheta = 8;
  cfg.rule = Rule::simpson;
  const double total = haar_integrate([](const Mat2&) { return 1.0; }, cfg);
  REQUIRE(std::fabs(total - box_mass(cfg)) < 1e-9 * box_mass(cfg));
}

TEST_CASE("theta factor integrates against dtheta / 2 pi", "[haar]") {
  HaarConfig cfg;
  cfg.x_lo = -1.0;
  cfg.x_hi = 1.0;
  cfg.y_lo = 0.5;
  cfg.y_hi = 2.0;
  cfg.nx = 64;
  cfg.ny = 64;
  cfg.ntheta = 16;
  cfg.rule = Rule::simpson;
  // F(g) = cos^2(theta(g)) recovered through the factorization of the node
  // matrix; fiber average is 1/2.
  const double total = haar_integrate(
      [](const Mat2& g) {
        const IwasawaCoords c = iwasawa_decompose(SL2Element(g));
        const double cc = std::cos(c.theta);
        return cc * cc;
      },
      cfg);
  REQUIRE(std::fabs(total - 0.5 * box_mass(cfg)) < 1e-8 * box_mass(cfg));
}

TEST_CASE("group integral of a point function factors through the plane", "[haar]") {
  // F(g) = phi(g.i) with phi supported inside the common box: the group
  // integral with fiber mass 1 equals the plane integral, here evaluated on
  // deliberately different grids and trusted to 1e-5.
  const Field phi = product_bump(0.2, 0.1, 1.1, 0.8, 1.3);

  HaarConfig hc;
  hc.x_lo = -1.5;
  hc.x_hi = 1.9;
  hc.y_lo = std::exp(-0.85);
  hc.y_hi = std::exp(1.05);
  hc.nx = 200;
  hc.ny = 200;
  hc.ntheta = 12;
  hc.rule = Rule::simpson;
  const double lifted =
      haar_integrate([&](const Mat2& g) { return phi.eval(mobius_apply(g, uhp_i())); }, hc);

  AreaQuadConfig qc;
  qc.rect = RectDomain(hc.x_lo, hc.x_hi, hc.y_lo, hc.y_hi);
  qc.nx = 352;
  qc.ny = 352;
  qc.rule = Rule::simpson;
  const double projected = quotient_integral(phi.eval, qc);

  REQUIRE(projected > 0.1);
  REQUIRE(std::fabs(lifted - projected) < 1e-5 * projected);
}

TEST_CASE("conjugation by orthogonal elements preserves the group integral", "[haar]") {
  // not right-rotation-invariant: the theta fiber enters through a cosine
  const Field phi = radial_bump(uhp_i(), 1.1, 1.0);
  auto F = [&](const Mat2& g) {
    const UhpPoint z = mobius_apply(g, uhp_i());
    const IwasawaCoords c = iwasawa_decompose(SL2Element(g));
    return phi.eval(z) * (1.0 + 0.5 * std::cos(c.theta + 0.4));
  };

  HaarConfig cfg;
  cfg.x_lo = -1.5;
  cfg.x_hi = 1.5;
  cfg.y_lo = std::exp(-1.2);
  cfg.y_hi = std::exp(1.2);
  cfg.nx = 192;
  cfg.ny = 192;
  cfg.ntheta = 24;
  cfg.rule = Rule::simpson;

  for (const Mat2& u : {rotation(std::numbers::pi / 3.0).mat(), reflection(0.0),
                        reflection(std::numbers::pi / 5.0)}) {
    const auto [direct, conjugated] = check_unimodular(F, u, cfg);
    REQUIRE(direct > 0.01);
    REQUIRE(std::fabs(direct - conjugated) < 2e-5 * std::fabs(direct));
  }
}

TEST_CASE("haar quadrature rejects invalid boxes and conjugators", "[haar]") {
  HaarConfig bad;
  bad.y_lo = 0.0;
  REQUIRE_THROWS_AS(haar_integrate([](const Mat2&) { return 1.0; }, bad),
                    std::invalid_argument);
  HaarConfig ok;
  REQUIRE_THROWS_AS(
      check_unimodular([](const Mat2&) { return 1.0; }, Mat2(1.0, 1.0, 0.0, 1.0), ok),
      std::invalid_argument);
}
