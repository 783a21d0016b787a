// Command line front end. Subcommands:
//   eval          apply an angular kernel to a field at listed points
//   norm          check the L^p contraction bound for a kernel/field pair
//   verify-atoms  validate an atomic decomposition, optionally through a kernel
//   doubling      ball areas, doubling ratios, optional Monte Carlo cross-check
//   weil          group-integral vs quotient-integral consistency
//
// All subcommands read a JSON config carrying "schema": 1 and write JSON (or
// CSV with --format csv) to stdout or --out. Exit codes: 0 success, 1 a
// computation ran but a numerical check failed, 2 bad usage or bad config.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halo/halo.hpp"

namespace {

using halo::json;

struct CliOptions {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  int nodes = 0;
  bool seed_set = false;
  bool nodes_set = false;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* csv_bool(bool b) { return b ? "true" : "false"; }

// JSON has no literal for infinities, so non-finite numbers are emitted as
// strings; everything finite stays a number.
json num_or_str(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0.0 ? "inf" : "-inf";
}

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open '" + path + "'");
  json cfg = json::parse(is);
  if (!cfg.is_object() || !cfg.contains("schema") || cfg.at("schema") != 1)
    throw std::invalid_argument("config: requires \"schema\": 1");
  return cfg;
}

halo::UhpPoint point_from_json(const json& a) {
  if (!a.is_array() || a.size() != 2)
    throw std::invalid_argument("point: expected [re, im]");
  return halo::UhpPoint(a[0].get<double>(), a[1].get<double>());
}

halo::Field field_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("field: expected an object");
  const std::string type = j.at("type").get<std::string>();
  if (type == "product_bump")
    return halo::product_bump(j.at("x0").get<double>(), j.at("t0").get<double>(),
                              j.at("wx").get<double>(), j.at("wt").get<double>(),
                              j.value("amplitude", 1.0));
  if (type == "radial_bump")
    return halo::radial_bump(point_from_json(j.at("center")), j.at("radius").get<double>(),
                             j.value("amplitude", 1.0));
  if (type == "ball_indicator")
    return halo::ball_indicator(
        halo::HypBall(point_from_json(j.at("center")), j.at("radius").get<double>()));
  if (type == "gaussian")
    return halo::gaussian_field(point_from_json(j.at("center")), j.value("amplitude", 1.0),
                                j.at("rate").get<double>());
  throw std::invalid_argument("field: unknown type '" + type + "'");
}

double exponent_from_json(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return halo::kLpInfinity;
    throw std::invalid_argument("exponent: expected a number or \"inf\"");
  }
  return v.get<double>();
}

json exponent_to_json(double p) {
  return std::isinf(p) ? json("inf") : json(p);
}

int run_eval(const json& cfg, const CliOptions& opt, std::string& text) {
  halo::KernelMeasure km = halo::kernel_from_json(cfg.at("kernel"));
  if (opt.nodes_set) km = km.with_nodes(opt.nodes);
  const halo::Field f = field_from_json(cfg.at("field"));
  const json& pts = cfg.at("points");
  if (!pts.is_array() || pts.empty())
    throw std::invalid_argument("eval: \"points\" must be a non-empty array");

  json rows = json::array();
  std::ostringstream csv;
  csv << "x,y,value\n";
  for (const json& pj : pts) {
    const halo::UhpPoint z = point_from_json(pj);
    const double v = halo::hausdorff_apply(km, f.eval, z);
    rows.push_back({{"point", {z.re, z.im}}, {"value", v}});
    csv << fmt(z.re) << ',' << fmt(z.im) << ',' << fmt(v) << '\n';
  }
  if (opt.format == "csv") {
    text = csv.str();
  } else {
    const json out = {{"schema", 1},
                      {"command", "eval"},
                      {"kernel_l1", halo::kernel_l1_norm(km)},
                      {"results", rows}};
    text = out.dump(2) + "\n";
  }
  return 0;
}

int run_norm(const json& cfg, const CliOptions& opt, std::string& text) {
  halo::KernelMeasure km = halo::kernel_from_json(cfg.at("kernel"));
  if (opt.nodes_set) km = km.with_nodes(opt.nodes);
  const halo::Field f = field_from_json(cfg.at("field"));
  const json& pj = cfg.at("exponents");
  if (!pj.is_array() || pj.empty())
    throw std::invalid_argument("norm: \"exponents\" must be a non-empty array");
  std::vector<double> ps;
  for (const json& v : pj) ps.push_back(exponent_from_json(v));

  halo::OrbitQuadConfig base;
  if (cfg.contains("grid")) {
    const json& g = cfg.at("grid");
    base.nr = g.value("nr", base.nr);
    base.nphi = g.value("nphi", base.nphi);
  }

  const std::vector<halo::LpBoundCase> cases =
      halo::verify_lp_bound_matrix({km}, {f}, ps, base);

  bool all_pass = true;
  json rows = json::array();
  std::ostringstream csv;
  csv << "p,f_norm,hf_norm,kernel_l1,bound,ratio,pass\n";
  for (const halo::LpBoundCase& c : cases) {
    const halo::LpBoundReport& r = c.report;
    all_pass = all_pass && r.pass;
    rows.push_back({{"p", exponent_to_json(r.p)},
                    {"f_norm", r.f_norm},
                    {"hf_norm", r.hf_norm},
                    {"kernel_l1", r.kernel_l1},
                    {"bound", r.bound},
                    {"ratio", num_or_str(r.ratio)},
                    {"pass", r.pass}});
    csv << fmt(r.p) << ',' << fmt(r.f_norm) << ',' << fmt(r.hf_norm) << ','
        << fmt(r.kernel_l1) << ',' << fmt(r.bound) << ',' << fmt(r.ratio) << ','
        << csv_bool(r.pass) << '\n';
  }
  if (opt.format == "csv") {
    text = csv.str();
  } else {
    const json out = {
        {"schema", 1}, {"command", "norm"}, {"all_pass", all_pass}, {"cases", rows}};
    text = out.dump(2) + "\n";
  }
  return all_pass ? 0 : 1;
}

int run_verify_atoms(const json& cfg, const CliOptions& opt, std::string& text) {
  const json& hj = cfg.at("hardy");
  const double b = hj.at("b").get<double>();
  const double tau = hj.value("tau", 2.0);
  const double tol = hj.value("check_tol", 1e-9);
  const double growth = halo::growth_constant(tau, b);
  const halo::HardyConfig hcfg(b, tau, growth, tol);

  halo::AtomicDecomposition d;
  if (cfg.contains("decomposition")) {
    d = halo::decomposition_from_json(cfg.at("decomposition"));
  } else if (cfg.contains("family")) {
    const json& fam = cfg.at("family");
    const int count = fam.at("count").get<int>();
    std::uint64_t seed = fam.value("seed", 1ULL);
    if (opt.seed_set) seed = opt.seed;
    for (const halo::Atom& a : halo::random_atom_family(seed, count, b))
      d.terms.push_back({1.0, a});
  } else {
    throw std::invalid_argument("verify-atoms: needs \"decomposition\" or \"family\"");
  }

  bool all_pass = true;
  json rows = json::array();
  std::ostringstream csv;
  csv << "index,coef,support_ok,size_ok,mean_ok,size_slack,mean_residual\n";
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    const halo::AtomCheckReport rep = halo::atom_check(d.terms[i].atom, hcfg);
    all_pass = all_pass && rep.pass();
    rows.push_back({{"index", i},
                    {"coef", d.terms[i].coef},
                    {"support_ok", rep.support_ok},
                    {"size_ok", rep.size_ok},
                    {"mean_ok", rep.mean_ok},
                    {"size_slack", num_or_str(rep.size_slack)},
                    {"mean_residual", num_or_str(rep.mean_residual)}});
    csv << i << ',' << fmt(d.terms[i].coef) << ',' << csv_bool(rep.support_ok) << ','
        << csv_bool(rep.size_ok) << ',' << csv_bool(rep.mean_ok) << ','
        << fmt(rep.size_slack) << ',' << fmt(rep.mean_residual) << '\n';
  }

  json out = {{"schema", 1},
              {"command", "verify-atoms"},
              {"growth", growth},
              {"h1_bound", halo::h1_upper_bound(d)},
              {"atoms", rows}};

  if (cfg.contains("kernel")) {
    const halo::KernelMeasure km = halo::kernel_from_json(cfg.at("kernel"));
    const double l1 = halo::kernel_l1_norm(km);
    const halo::AtomicDecomposition image = halo::hausdorff_on_decomposition(km, d);
    bool image_pass = true;
    for (const halo::AtomTerm& t : image.terms)
      image_pass = image_pass && halo::atom_check(t.atom, hcfg).pass();
    const double in_bound = l1 * halo::h1_upper_bound(d);
    const double out_bound = halo::h1_upper_bound(image);
    const bool bound_ok = out_bound <= in_bound + 1e-12 * std::max(1.0, in_bound);
    all_pass = all_pass && image_pass && bound_ok;
    out["image"] = {{"kernel_l1", l1},
                    {"h1_bound", out_bound},
                    {"input_bound", in_bound},
                    {"atoms_pass", image_pass},
                    {"bound_ok", bound_ok}};
  }

  out["all_pass"] = all_pass;
  text = opt.format == "csv" ? csv.str() : out.dump(2) + "\n";
  return all_pass ? 0 : 1;
}

int run_doubling(const json& cfg, const CliOptions& opt, std::string& text) {
  const json& rj = cfg.at("radii");
  if (!rj.is_array() || rj.empty())
    throw std::invalid_argument("doubling: \"radii\" must be a non-empty array");

  long mc_samples = 0;
  std::uint64_t mc_seed = 1;
  if (cfg.contains("mc")) {
    mc_samples = cfg.at("mc").at("samples").get<long>();
    mc_seed = cfg.at("mc").value("seed", 1ULL);
    if (opt.seed_set) mc_seed = opt.seed;
  }

  bool all_pass = true;
  json rows = json::array();
  std::ostringstream csv;
  csv << "r,area_closed,area_quad,rel_error,doubling";
  if (mc_samples > 0) csv << ",mc_value,mc_std_error,mc_sigma";
  csv << ",pass\n";

  std::size_t idx = 0;
  for (const json& rv : rj) {
    const double r = rv.get<double>();
    const halo::HypBall ball(halo::uhp_i(), r);
    const double closed = halo::ball_area_closed_form(r);
    const double quad = halo::ball_area(ball);
    const double rel = std::fabs(quad - closed) / closed;
    const double ratio = halo::doubling_ratio(r);
    bool ok = rel <= 1e-9;

    json row = {{"r", r},
                {"area_closed", closed},
                {"area_quad", quad},
                {"rel_error", rel},
                {"doubling", ratio}};
    csv << fmt(r) << ',' << fmt(closed) << ',' << fmt(quad) << ',' << fmt(rel) << ','
        << fmt(ratio);

    if (mc_samples > 0) {
      const halo::EuclideanCircle ec = halo::euclidean_circle(ball);
      const halo::RectDomain rect(ec.center_x - 1.01 * ec.radius,
                                  ec.center_x + 1.01 * ec.radius,
                                  0.99 * (ec.center_y - ec.radius),
                                  1.01 * (ec.center_y + ec.radius));
      const halo::McEstimate est = halo::hyp_area_mc(
          [&ball](const halo::UhpPoint& z) { return ball.contains(z) ? 1.0 : 0.0; },
          rect, mc_samples, mc_seed + 7919 * idx);
      const double sigma =
          est.std_error > 0.0 ? std::fabs(est.value - closed) / est.std_error
                              : halo::kLpInfinity;
      ok = ok && sigma <= 4.0;
      row["mc_value"] = est.value;
      row["mc_std_error"] = est.std_error;
      row["mc_sigma"] = num_or_str(sigma);
      csv << ',' << fmt(est.value) << ',' << fmt(est.std_error) << ',' << fmt(sigma);
    }

    row["pass"] = ok;
    all_pass = all_pass && ok;
    rows.push_back(row);
    csv << ',' << csv_bool(ok) << '\n';
    ++idx;
  }

  // optional growth-constant sweep: sup over r in (0, b] of the tau-ball to
  // ball area ratio; at tau = 2 this must coincide with doubling_ratio(b)
  json growth_rows = json::array();
  if (cfg.contains("growth")) {
    const json& gj = cfg.at("growth");
    const double tau = gj.at("tau").get<double>();
    const json& bs = gj.at("b_values");
    if (!bs.is_array() || bs.empty())
      throw std::invalid_argument("doubling: \"growth.b_values\" must be a non-empty array");
    csv << "\ntau,b,constant,pass\n";
    for (const json& bv : bs) {
      const double b = bv.get<double>();
      const double g = halo::growth_constant(tau, b);
      bool ok = std::isfinite(g) && g >= 1.0;
      if (tau == 2.0) ok = ok && std::fabs(g - halo::doubling_ratio(b)) <= 1e-9 * g;
      growth_rows.push_back({{"tau", tau}, {"b", b}, {"constant", g}, {"pass", ok}});
      csv << fmt(tau) << ',' << fmt(b) << ',' << fmt(g) << ',' << csv_bool(ok) << '\n';
      all_pass = all_pass && ok;
    }
  }

  if (opt.format == "csv") {
    text = csv.str();
  } else {
    json out = {
        {"schema", 1}, {"command", "doubling"}, {"all_pass", all_pass}, {"rows", rows}};
    if (!growth_rows.empty()) out["growth"] = growth_rows;
    text = out.dump(2) + "\n";
  }
  return all_pass ? 0 : 1;
}

int run_weil(const json& cfg, const CliOptions& opt, std::string& text) {
  const halo::Field f = field_from_json(cfg.at("field"));
  const double tol = cfg.value("tolerance", 1e-5);

  halo::RectDomain rect = cfg.contains("box")
                              ? halo::RectDomain(cfg.at("box").at("x_lo").get<double>(),
                                                 cfg.at("box").at("x_hi").get<double>(),
                                                 cfg.at("box").at("y_lo").get<double>(),
                                                 cfg.at("box").at("y_hi").get<double>())
                              : halo::support_rect(f, 1.0);

  halo::HaarConfig hcfg;
  hcfg.x_lo = rect.x_lo;
  hcfg.x_hi = rect.x_hi;
  hcfg.y_lo = rect.y_lo;
  hcfg.y_hi = rect.y_hi;
  hcfg.nx = 192;
  hcfg.ny = 192;
  hcfg.ntheta = 16;
  hcfg.rule = halo::Rule::simpson;
  if (cfg.contains("haar")) {
    const json& h = cfg.at("haar");
    hcfg.nx = h.value("nx", hcfg.nx);
    hcfg.ny = h.value("ny", hcfg.ny);
    hcfg.ntheta = h.value("ntheta", hcfg.ntheta);
  }

  halo::AreaQuadConfig qcfg;
  qcfg.rect = rect;
  qcfg.nx = 512;
  qcfg.ny = 512;
  qcfg.rule = halo::Rule::simpson;
  if (cfg.contains("quotient")) {
    const json& q = cfg.at("quotient");
    qcfg.nx = q.value("nx", qcfg.nx);
    qcfg.ny = q.value("ny", qcfg.ny);
  }

  const halo::UhpPoint i = halo::uhp_i();
  const double via_group = halo::haar_integrate(
      [&](const halo::Mat2& g) { return f.eval(halo::mobius_apply(g, i)); }, hcfg);
  const double via_quotient = halo::quotient_integral(f.eval, qcfg);
  const double scale = std::max(std::fabs(via_quotient), 1e-300);
  const double rel = std::fabs(via_group - via_quotient) / scale;
  const bool pass = rel <= tol;

  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "group_integral,quotient_integral,rel_error,tolerance,pass\n"
        << fmt(via_group) << ',' << fmt(via_quotient) << ',' << fmt(rel) << ','
        << fmt(tol) << ',' << csv_bool(pass) << '\n';
    text = csv.str();
  } else {
    const json out = {{"schema", 1},          {"command", "weil"},
                      {"group_integral", via_group}, {"quotient_integral", via_quotient},
                      {"rel_error", rel},     {"tolerance", tol},
                      {"pass", pass}};
    text = out.dump(2) + "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"angular Hausdorff operators on the hyperbolic upper half-plane"};
  app.require_subcommand(1);

  CliOptions opt;
  app.add_option("--config", opt.config_path, "JSON config file (requires \"schema\": 1)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", opt.out_path, "write output to this file instead of stdout");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  CLI::Option* seed_opt =
      app.add_option("--seed", opt.seed, "override the random seed in the config");
  CLI::Option* nodes_opt =
      app.add_option("--nodes", opt.nodes, "override the kernel's angular node count")
          ->check(CLI::PositiveNumber);

  CLI::App* c_eval =
      app.add_subcommand("eval", "apply a kernel to a field at listed points");
  CLI::App* c_norm =
      app.add_subcommand("norm", "check the L^p contraction bound for a kernel/field pair");
  CLI::App* c_atoms =
      app.add_subcommand("verify-atoms", "validate an atomic decomposition");
  CLI::App* c_doubling =
      app.add_subcommand("doubling", "ball areas and doubling ratios");
  CLI::App* c_weil =
      app.add_subcommand("weil", "group integral vs quotient integral consistency");
  for (CLI::App* sub : {c_eval, c_norm, c_atoms, c_doubling, c_weil}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  opt.seed_set = seed_opt->count() > 0;
  opt.nodes_set = nodes_opt->count() > 0;

  try {
    const json cfg = load_config(opt.config_path);
    std::string text;
    int rc = 2;
    if (c_eval->parsed()) rc = run_eval(cfg, opt, text);
    else if (c_norm->parsed()) rc = run_norm(cfg, opt, text);
    else if (c_atoms->parsed()) rc = run_verify_atoms(cfg, opt, text);
    else if (c_doubling->parsed()) rc = run_doubling(cfg, opt, text);
    else if (c_weil->parsed()) rc = run_weil(cfg, opt, text);

    if (opt.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream os(opt.out_path, std::ios::binary);
      if (!os) throw std::invalid_argument("cannot open output file '" + opt.out_path + "'");
      os << text;
    }
    return rc;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
