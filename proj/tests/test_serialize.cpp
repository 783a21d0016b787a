#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "halo/serialize.hpp"

using namespace halo;

namespace {

bool same_kernel(const KernelMeasure& a, const KernelMeasure& b, int probes = 257) {
  if (a.has_density() != b.has_density()) return false;
  if (a.has_density()) {
    for (int k = 0; k < probes; ++k) {
      const double t = (k + 0.25) * 2.0 * std::numbers::pi / probes;
      if (std::fabs(a.density(t) - b.density(t)) > 1e-15) return false;
    }
  }
  if (a.atoms().size() != b.atoms().size()) return false;
  for (std::size_t i = 0; i < a.atoms().size(); ++i) {
    if (a.atoms()[i].theta != b.atoms()[i].theta) return false;
    if (a.atoms()[i].weight != b.atoms()[i].weight) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("kernel JSON round trips", "[serialize]") {
  SECTION("uniform with atoms") {
    KernelMeasure km = KernelMeasure::uniform(1.75, 512);
    km.add_atom(0.4, -0.25).add_atom(3.1, 0.5);
    const json j = kernel_to_json(km);
    REQUIRE(j.at("density").at("kind") == "uniform");
    REQUIRE(j.at("nodes") == 512);
    REQUIRE(j.at("atoms").size() == 2);
    REQUIRE(same_kernel(km, kernel_from_json(j)));
  }
  SECTION("cosine") {
    const KernelMeasure km = KernelMeasure::cosine(0.8, 1.1, 256);
    const json j = kernel_to_json(km);
    REQUIRE(j.at("density").at("amplitude") == 0.8);
    REQUIRE(same_kernel(km, kernel_from_json(j)));
  }
  SECTION("table") {
    const KernelMeasure km = KernelMeasure::table({1.0, -2.0, 0.5, 3.0, 0.0}, 128);
    REQUIRE(same_kernel(km, kernel_from_json(kernel_to_json(km))));
  }
  SECTION("purely atomic") {
    KernelMeasure km;
    km.add_atom(0.0, 1.0).add_atom(2.0, -0.5);
    const json j = kernel_to_json(km);
    REQUIRE(j.at("density").is_null());
    REQUIRE(same_kernel(km, kernel_from_json(j)));
  }
  SECTION("zero kernel") {
    const json j = kernel_to_json(KernelMeasure::zero());
    const KernelMeasure back = kernel_from_json(j);
    REQUIRE_FALSE(back.has_density());
    REQUIRE(back.atoms().empty());
    REQUIRE(kernel_l1_norm(back) == 0.0);
  }
}

TEST_CASE("custom kernels serialize as sampled tables", "[serialize]") {
  const KernelMeasure km =
      KernelMeasure::custom([](double t) { return 1.0 + 0.5 * std::sin(t); }, 1024);
  const json j = kernel_to_json(km);
  REQUIRE(j.at("density").at("kind") == "table");
  REQUIRE(j.at("density").at("values").size() == 1024);
  const KernelMeasure back = kernel_from_json(j);
  // table interpolation reproduces the original at the sample midpoints
  for (int k = 0; k < 1024; k += 37) {
    const double t = (k + 0.5) * 2.0 * std::numbers::pi / 1024;
    REQUIRE(std::fabs(back.density(t) - km.density(t)) < 1e-15);
  }
  // and the l1 norms agree to interpolation accuracy
  REQUIRE(std::fabs(kernel_l1_norm(back) - kernel_l1_norm(km)) < 1e-6);
}

TEST_CASE("malformed kernel JSON is rejected", "[serialize]") {
  REQUIRE_THROWS_AS(kernel_from_json(json::array()), std::invalid_argument);
  REQUIRE_THROWS_AS(kernel_from_json(json::parse(R"({"density":{"kind":"gauss"}})")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(kernel_from_json(json::parse(R"({"atoms":[[0.1]]})")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(kernel_from_json(json::parse(R"({"atoms":[[7.0,1.0]]})")),
                    std::invalid_argument);  // theta outside [0, 2pi)
  REQUIRE_THROWS_AS(
      kernel_from_json(json::parse(R"({"density":{"kind":"uniform"}})")),
      json::exception);  // missing mass
  REQUIRE_THROWS_AS(
      kernel_from_json(json::parse(R"({"density":{"kind":"uniform","mass":"x"}})")),
      json::exception);
}

TEST_CASE("atom JSON round trips exactly", "[serialize]") {
  const Atom a = make_radial_atom(UhpPoint(-0.3, 1.7), 1.2, 0.45);
  const json j = atom_to_json(a);
  const Atom back = atom_from_json(j);
  REQUIRE(back.ball.center.re == a.ball.center.re);
  REQUIRE(back.ball.center.im == a.ball.center.im);
  REQUIRE(back.ball.radius == a.ball.radius);
  REQUIRE(back.pieces.size() == a.pieces.size());
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    REQUIRE(back.pieces[i].r_in == a.pieces[i].r_in);
    REQUIRE(back.pieces[i].r_out == a.pieces[i].r_out);
    REQUIRE(back.pieces[i].value == a.pieces[i].value);
  }
}

TEST_CASE("malformed atom JSON is rejected", "[serialize]") {
  REQUIRE_THROWS_AS(atom_from_json(json::parse(R"(["not","an","object"])")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(atom_from_json(json::parse(R"({"center":[0.0],"radius":1,"pieces":[]})")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      atom_from_json(json::parse(
          R"({"center":[0.0,1.0],"radius":1.0,"pieces":[]})")),
      std::invalid_argument);  // no pieces
  REQUIRE_THROWS_AS(
      atom_from_json(json::parse(
          R"({"center":[0.0,-1.0],"radius":1.0,"pieces":[{"r_in":0,"r_out":1,"value":1}]})")),
      std::invalid_argument);  // center below the axis
  REQUIRE_THROWS_AS(
      atom_from_json(json::parse(
          R"({"center":[0.0,1.0],"radius":1.0,"pieces":[{"r_in":0,"r_out":2,"value":1}]})")),
      std::invalid_argument);  // piece escapes the ball
  REQUIRE_THROWS_AS(
      atom_from_json(json::parse(R"({"center":[0.0,1.0],"radius":1.0})")),
      json::exception);  // pieces key missing entirely
}

TEST_CASE("decomposition JSON round trips", "[serialize]") {
  AtomicDecomposition d;
  d.terms.push_back({0.75, make_radial_atom(UhpPoint(0.2, 1.0), 0.9, 0.3)});
  d.terms.push_back({-1.5, make_radial_atom(UhpPoint(-0.6, 2.2), 1.4, 0.7)});
  const AtomicDecomposition back = decomposition_from_json(decomposition_to_json(d));
  REQUIRE(back.terms.size() == 2);
  REQUIRE(h1_upper_bound(back) == h1_upper_bound(d));
  for (int k = 0; k < 40; ++k) {
    const UhpPoint z(-2.0 + 0.1 * k, 0.5 + 0.09 * k);
    REQUIRE(decomposition_value(back, z) == decomposition_value(d, z));
  }
  REQUIRE_THROWS_AS(decomposition_from_json(json::parse(R"({"no_terms":[]})")),
                    json::exception);
}
