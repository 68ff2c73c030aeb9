// Command-line front end: closed-form and oracle Harnack distances, disc
// certificates with end-to-end verification reports, and Hausdorff-content
// estimates for point files.
//
// Exit codes are part of the interface:
//   0  success
//   2  configuration or validation failure (message names the field)
//   3  numeric failure (search did not converge)
//   4  certification failure: measured content exceeded the certified budget

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minorant/minorant.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::vector<double> parse_coords(const std::string& text, const std::string& name, int expected) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw minorant::ValidationError(name + ": cannot parse coordinate '" + part + "'");
    }
  }
  if (expected > 0 && static_cast<int>(coords.size()) != expected) {
    throw minorant::ValidationError(name + ": expected " + std::to_string(expected) +
                                    " comma-separated coordinates, got " +
                                    std::to_string(coords.size()));
  }
  return coords;
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& known) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      throw minorant::ValidationError("config: unknown key '" + where + item.key() + "'");
    }
  }
}

double require_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw minorant::ValidationError("config: missing key '" + where + key + "'");
  if (!obj[key].is_number()) {
    throw minorant::ValidationError("config: '" + where + key + "' must be a number");
  }
  return obj[key].get<double>();
}

minorant::Gauge parse_gauge(const json& gauge) {
  if (!gauge.is_object()) throw minorant::ValidationError("config: 'gauge' must be an object");
  if (!gauge.contains("kind") || !gauge["kind"].is_string()) {
    throw minorant::ValidationError("config: 'gauge.kind' must be \"power\" or \"tabulated\"");
  }
  const std::string kind = gauge["kind"].get<std::string>();
  if (kind == "power") {
    reject_unknown_keys(gauge, "gauge.", {"kind", "B", "p"});
    return minorant::Gauge::power(require_number(gauge, "gauge.", "B"),
                                  require_number(gauge, "gauge.", "p"));
  }
  if (kind == "tabulated") {
    reject_unknown_keys(gauge, "gauge.", {"kind", "table"});
    if (!gauge.contains("table") || !gauge["table"].is_array()) {
      throw minorant::ValidationError("config: 'gauge.table' must be an array of [t, h] pairs");
    }
    std::vector<minorant::Gauge::Sample> samples;
    for (const auto& row : gauge["table"]) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
        throw minorant::ValidationError("config: 'gauge.table' rows must be [t, h] number pairs");
      }
      samples.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    return minorant::Gauge::tabulated(std::move(samples));
  }
  throw minorant::ValidationError("config: 'gauge.kind' must be \"power\" or \"tabulated\", got '" +
                                  kind + "'");
}

struct CertifyConfig {
  double R = 0.0;
  double s0 = 0.0;
  double r = 0.0;
  json gauge_echo;
  std::optional<minorant::Gauge> gauge;
  std::vector<minorant::Zero> zeros;
  minorant::PolarGrid grid;
  std::uint64_t seed = 0;
  std::string out = "report.json";
};

CertifyConfig parse_certify_config(const json& cfg) {
  if (!cfg.is_object()) throw minorant::ValidationError("config: top level must be an object");
  reject_unknown_keys(cfg, "", {"problem", "gauge", "zeros", "grid", "seed", "out"});

  CertifyConfig out;
  if (!cfg.contains("problem") || !cfg["problem"].is_object()) {
    throw minorant::ValidationError("config: missing object 'problem'");
  }
  const json& prob = cfg["problem"];
  reject_unknown_keys(prob, "problem.", {"R", "s0", "r"});
  out.R = require_number(prob, "problem.", "R");
  out.s0 = require_number(prob, "problem.", "s0");
  out.r = require_number(prob, "problem.", "r");

  if (!cfg.contains("gauge")) throw minorant::ValidationError("config: missing object 'gauge'");
  out.gauge_echo = cfg["gauge"];
  out.gauge = parse_gauge(cfg["gauge"]);

  if (!cfg.contains("zeros") || !cfg["zeros"].is_array()) {
    throw minorant::ValidationError("config: 'zeros' must be an array of [re, im, multiplicity]");
  }
  for (const auto& row : cfg["zeros"]) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() ||
        !row[2].is_number_integer()) {
      throw minorant::ValidationError("config: 'zeros' rows must be [re, im, multiplicity]");
    }
    out.zeros.push_back(minorant::Zero{{row[0].get<double>(), row[1].get<double>()},
                                       row[2].get<int>()});
  }

  if (!cfg.contains("grid") || !cfg["grid"].is_object()) {
    throw minorant::ValidationError("config: missing object 'grid'");
  }
  const json& grid = cfg["grid"];
  reject_unknown_keys(grid, "grid.", {"radii", "angles"});
  out.grid.radial = static_cast<int>(require_number(grid, "grid.", "radii"));
  out.grid.angular = static_cast<int>(require_number(grid, "grid.", "angles"));

  if (cfg.contains("seed")) {
    if (!cfg["seed"].is_number_integer()) {
      throw minorant::ValidationError("config: 'seed' must be an integer");
    }
    out.seed = cfg["seed"].get<std::uint64_t>();
  }
  if (cfg.contains("out")) {
    if (!cfg["out"].is_string()) throw minorant::ValidationError("config: 'out' must be a string");
    out.out = cfg["out"].get<std::string>();
  }
  return out;
}

json certificate_to_json(const minorant::BoundCertificate& cert,
                         const std::optional<double>& power_budget) {
  json terms;
  terms["harnack_term"] = cert.terms.harnack_term;
  terms["annulus_term"] = cert.terms.annulus_term;
  terms["gauge_term"] = cert.terms.gauge_term;
  json out;
  out["boundary_sup"] = cert.boundary_sup;
  out["terms"] = terms;
  out["lower_bound"] = cert.lower_bound.finite_value();
  out["content_budget"] = cert.content_budget;
  out["simplified_budget"] = cert.simplified_budget;
  if (power_budget) out["power_content_budget"] = *power_budget;
  json prov;
  for (const auto& [key, formula] : cert.provenance) prov[key] = formula;
  if (power_budget) prov["power_content_budget"] = "content_budget / B";
  out["provenance"] = prov;
  return out;
}

void write_rays_csv(const std::string& path, const minorant::SubharmonicSample& sample,
                    const minorant::DiscProblem& prob, int radial) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw minorant::ValidationError("cannot open series file '" + path + "' for writing");
  os << "angle,radius,re,im,u,pointwise_lower_bound\n";
  const minorant::Dimension plane(2);
  const auto restricted =
      sample.riesz().restricted_to(minorant::Ball{minorant::Point{0.0, 0.0}, prob.R()});
  const double two_pi = 2.0 * std::numbers::pi;
  const auto nudge_off_zeros = [&](std::complex<double> z, double angle) {
    // Keep ray nodes off the zeros themselves, as the verification grid does.
    for (int attempt = 0; attempt < 8; ++attempt) {
      double min_gap = std::numeric_limits<double>::infinity();
      for (const auto& zk : sample.zeros()) min_gap = std::min(min_gap, std::abs(z - zk.location));
      if (min_gap >= 1e-9) break;
      z += std::polar(1e-9, angle + 0.5 * std::numbers::pi);
    }
    return z;
  };
  for (int ray = 0; ray < 8; ++ray) {
    const double angle = two_pi * ray / 8;
    for (int i = 0; i < radial; ++i) {
      const double rho = prob.R() * i / radial;
      const std::complex<double> z = nudge_off_zeros(std::polar(rho, angle), angle);
      const double u = sample.evaluate_raw(z);
      const minorant::ExtendedReal bound = minorant::pointwise_lower_bound(
          plane, prob.R(), minorant::Point{z.real(), z.imag()}, 2.0 * prob.R(),
          prob.boundary_sup(), restricted);
      os << format_double(angle) << ',' << format_double(rho) << ',' << format_double(z.real())
         << ',' << format_double(z.imag()) << ',' << format_double(u) << ','
         << format_double(bound.as_double()) << '\n';
    }
  }
}

void write_exceptional_csv(const std::string& path, const minorant::VerificationReport& report) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw minorant::ValidationError("cannot open series file '" + path + "' for writing");
  os << "re,im,u,certificate_lower_bound\n";
  const double lb = report.certificate.lower_bound.finite_value();
  for (std::size_t i = 0; i < report.exceptional_points.size(); ++i) {
    const auto& z = report.exceptional_points[i];
    os << format_double(z.real()) << ',' << format_double(z.imag()) << ','
       << format_double(report.exceptional_values[i]) << ',' << format_double(lb) << '\n';
  }
}

int cmd_harnack(int d_value, double radius, const std::string& x_text,
                const std::optional<std::string>& y_text, double tolerance) {
  const minorant::Dimension d(d_value);
  const minorant::Point x = parse_coords(x_text, "x", d_value);
  const double nx = minorant::euclid_norm(x);
  if (!(nx < radius)) {
    throw minorant::DomainError("x outside ball: |x| = " + std::to_string(nx) +
                                " >= r = " + std::to_string(radius));
  }

  std::printf("d: %d\n", d_value);
  std::printf("radius: %.17g\n", radius);

  double reference = 0.0;
  if (y_text) {
    const minorant::Point y = parse_coords(*y_text, "y", d_value);
    const double ny = minorant::euclid_norm(y);
    if (!(ny < radius)) {
      throw minorant::DomainError("y outside ball: |y| = " + std::to_string(ny) +
                                  " >= r = " + std::to_string(radius));
    }
    const auto triangle = minorant::ball_pair_upper(d, radius, x, y);
    reference = triangle.value;
    std::printf("triangle_upper_bound: %.17g\n", triangle.value);
    if (d_value == 2) {
      const std::complex<double> xz(x[0] / radius, x[1] / radius);
      const std::complex<double> yz(y[0] / radius, y[1] / radius);
      const auto oracle = minorant::poisson_disc_distance(xz, yz, tolerance);
      std::printf("poisson_oracle: %.17g\n", oracle.value);
      std::printf("triangle_minus_oracle: %.17g\n", reference - oracle.value);
    } else {
      std::printf("poisson_oracle: unavailable for point pairs with d != 2\n");
    }
    return 0;
  }

  const auto formula = minorant::ball_center_distance(d, radius, nx);
  reference = formula.value;
  std::printf("ball_center_distance: %.17g\n", formula.value);
  std::printf("triangle_upper_bound: %.17g\n", formula.value);
  if (d_value >= 2) {
    const auto oracle = minorant::ball_center_poisson_oracle(d, nx / radius, tolerance);
    std::printf("poisson_oracle: %.17g\n", oracle.value);
    std::printf("oracle_delta: %.17g\n", oracle.value - reference);
  } else {
    std::printf("poisson_oracle: unavailable for d = 1\n");
  }
  return 0;
}

int cmd_certify(const std::string& config_path, const std::optional<std::string>& out_override,
                const std::optional<std::uint64_t>& seed_override, double tolerance) {
  std::ifstream is(config_path);
  if (!is) throw minorant::ValidationError("cannot open config file '" + config_path + "'");
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::exception& e) {
    throw minorant::ValidationError(std::string("config: JSON parse failure: ") + e.what());
  }
  CertifyConfig config = parse_certify_config(cfg);
  if (out_override) config.out = *out_override;
  if (seed_override) config.seed = *seed_override;

  const auto sample = minorant::make_log_poly(config.zeros);
  const double sup = minorant::boundary_sup(sample, 512, 1e-9);
  const minorant::DiscProblem prob(config.R, config.s0, config.r, *config.gauge, sup);

  minorant::VerificationOptions options;
  options.tolerance = tolerance;
  options.seed = config.seed;
  const auto report = minorant::run_verification(sample, prob, config.grid, options);

  std::optional<double> power_budget;
  if (config.gauge->kind() == minorant::Gauge::Kind::power && config.gauge->multiplier() > 0.0 &&
      config.gauge->degree() <= 2.0) {
    power_budget = minorant::power_content_budget(prob);
  }

  const std::filesystem::path out_path(config.out);
  const std::string stem = (out_path.parent_path() / out_path.stem()).string();
  const std::string rays_path = stem + "_rays.csv";
  const std::string exceptional_path = stem + "_exceptional.csv";
  write_rays_csv(rays_path, sample, prob, config.grid.radial);
  write_exceptional_csv(exceptional_path, report);

  json doc;
  doc["command"] = "certify";
  json config_echo;
  config_echo["problem"] = {{"R", config.R}, {"s0", config.s0}, {"r", config.r}};
  config_echo["gauge"] = config.gauge_echo;
  json zeros_echo = json::array();
  for (const auto& z : config.zeros) {
    zeros_echo.push_back({z.location.real(), z.location.imag(), z.multiplicity});
  }
  config_echo["zeros"] = zeros_echo;
  config_echo["grid"] = {{"radii", config.grid.radial}, {"angles", config.grid.angular}};
  config_echo["seed"] = config.seed;
  doc["config"] = config_echo;
  doc["certificate"] = certificate_to_json(report.certificate, power_budget);

  json verification;
  verification["grid"] = {{"radii", report.grid.radial}, {"angles", report.grid.angular}};
  verification["tolerance"] = report.tolerance;
  verification["pointwise_checked"] = report.pointwise_checked;
  verification["pointwise_violations"] = report.pointwise_violations;
  verification["pointwise_worst_slack"] = report.pointwise_worst_slack;
  verification["sample_points_checked"] = report.sample_points_checked;
  verification["exceptional_count"] = static_cast<long>(report.exceptional_points.size());
  json content;
  content["value"] = report.measured_content.value;
  const char* method = "greedy";
  if (report.measured_content.method == minorant::CoverEstimate::Method::single_ball) {
    method = "single_ball";
  } else if (report.measured_content.method == minorant::CoverEstimate::Method::exhaustive_small) {
    method = "exhaustive_small";
  }
  content["method"] = method;
  content["cover_balls"] = static_cast<long>(report.measured_content.cover.size());
  verification["measured_content"] = content;
  verification["content_budget"] = report.content_budget;
  verification["budget_margin"] = report.budget_margin;
  verification["certified"] = report.budget_respected && report.pointwise_violations == 0;
  doc["verification"] = verification;
  doc["series"] = {{"rays", rays_path}, {"exceptional", exceptional_path}};

  std::ofstream os(config.out, std::ios::binary);
  if (!os) throw minorant::ValidationError("cannot open report file '" + config.out + "' for writing");
  os << doc.dump(2) << '\n';
  os.close();

  std::printf("report: %s\n", config.out.c_str());
  std::printf("lower_bound: %.17g\n", report.certificate.lower_bound.finite_value());
  std::printf("pointwise_violations: %ld\n", report.pointwise_violations);
  std::printf("measured_content: %.17g\n", report.measured_content.value);
  std::printf("content_budget: %.17g\n", report.content_budget);

  if (!report.budget_respected) {
    std::fprintf(stderr, "minorant: certification failure: measured content %.17g exceeds budget %.17g\n",
                 report.measured_content.value, report.content_budget);
    return 4;
  }
  return 0;
}

int cmd_content(const std::string& points_path, double B, double p,
                const std::optional<std::string>& table_path, double r) {
  std::ifstream is(points_path);
  if (!is) throw minorant::ValidationError("cannot open points file '" + points_path + "'");
  std::vector<minorant::Point> points;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto coords = parse_coords(line, "points line " + std::to_string(line_no), 2);
    points.push_back(minorant::Point{coords[0], coords[1]});
  }

  minorant::Gauge gauge = minorant::Gauge::power(B, p);
  if (table_path) {
    std::ifstream ts(*table_path);
    if (!ts) throw minorant::ValidationError("cannot open gauge table '" + *table_path + "'");
    std::vector<minorant::Gauge::Sample> samples;
    int row = 0;
    while (std::getline(ts, line)) {
      ++row;
      if (line.empty()) continue;
      const auto coords = parse_coords(line, "gauge table line " + std::to_string(row), 2);
      samples.push_back({coords[0], coords[1]});
    }
    gauge = minorant::Gauge::tabulated(std::move(samples));
  }

  const auto estimate = minorant::content_upper(points, gauge, r);
  const char* method = "greedy";
  if (estimate.method == minorant::CoverEstimate::Method::single_ball) method = "single_ball";
  if (estimate.method == minorant::CoverEstimate::Method::exhaustive_small) method = "exhaustive_small";
  std::printf("points: %zu\n", points.size());
  std::printf("content_upper: %.17g\n", estimate.value);
  std::printf("method: %s\n", method);
  std::printf("cover_balls: %zu\n", estimate.cover.size());
  for (const auto& ball : estimate.cover) {
    std::printf("ball: center=(%.17g,%.17g) radius=%.17g gauge_cost=%.17g\n", ball.center[0],
                ball.center[1], ball.radius, gauge(ball.radius));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minorant: lower-bound certificates for subharmonic functions on the disc"};
  app.set_version_flag("--version", std::string("minorant ") + minorant::kVersion);
  app.require_subcommand(1);

  // harnack
  auto* harnack = app.add_subcommand("harnack", "Harnack distances on balls: formula vs oracle");
  int d_value = 2;
  double radius = 1.0;
  std::string x_text;
  std::string y_text;
  bool y_given = false;
  double tolerance = 1e-9;
  harnack->add_option("--d", d_value, "ambient dimension")->capture_default_str();
  harnack->add_option("--r", radius, "ball radius")->capture_default_str();
  harnack->add_option("--x", x_text, "point, comma-separated coordinates")->required();
  harnack->add_option("--y", y_text, "second point (default: the center)")
      ->each([&](const std::string&) { y_given = true; });
  harnack->add_option("--tolerance", tolerance, "oracle search tolerance")->capture_default_str();

  // certify
  auto* certify = app.add_subcommand("certify", "run the disc certificate and verification");
  std::string config_path;
  std::string out_path;
  bool out_given = false;
  std::uint64_t seed_value = 0;
  bool seed_given = false;
  double certify_tolerance = 1e-9;
  certify->add_option("--config", config_path, "JSON problem configuration")->required();
  certify->add_option("--out", out_path, "report path (overrides config)")
      ->each([&](const std::string&) { out_given = true; });
  certify->add_option("--seed", seed_value, "perturbation seed (overrides config)")
      ->each([&](const std::string&) { seed_given = true; });
  certify->add_option("--tolerance", certify_tolerance, "pointwise check tolerance")
      ->capture_default_str();

  // content
  auto* content = app.add_subcommand("content", "Hausdorff content upper estimate of a point file");
  std::string points_path;
  double gauge_B = 1.0;
  double gauge_p = 1.0;
  std::string table_path;
  bool table_given = false;
  double content_r = 0.5;
  content->add_option("--points", points_path, "points file, one 're,im' per line")->required();
  content->add_option("--B", gauge_B, "power gauge multiplier")->capture_default_str();
  content->add_option("--p", gauge_p, "power gauge degree")->capture_default_str();
  content->add_option("--table", table_path, "tabulated gauge file, 't,h' per line")
      ->each([&](const std::string&) { table_given = true; });
  content->add_option("--r", content_r, "cover radius cap")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (harnack->parsed()) {
      return cmd_harnack(d_value, radius, x_text,
                         y_given ? std::optional<std::string>(y_text) : std::nullopt, tolerance);
    }
    if (certify->parsed()) {
      return cmd_certify(config_path,
                         out_given ? std::optional<std::string>(out_path) : std::nullopt,
                         seed_given ? std::optional<std::uint64_t>(seed_value) : std::nullopt,
                         certify_tolerance);
    }
    if (content->parsed()) {
      return cmd_content(points_path, gauge_B, gauge_p,
                         table_given ? std::optional<std::string>(table_path) : std::nullopt,
                         content_r);
    }
  } catch (const minorant::NumericError& e) {
    std::fprintf(stderr, "minorant: numeric failure: %s (bracket [%.17g, %.17g])\n", e.what(),
                 e.bracket_low(), e.bracket_high());
    return 3;
  } catch (const minorant::Error& e) {
    std::fprintf(stderr, "minorant: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "minorant: %s\n", e.what());
    return 2;
  }
  return 0;
}
