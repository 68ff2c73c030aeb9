#pragma once

// Shared helpers for the unit and acceptance suites: independent quadrature
// and covering oracles (deliberately coded apart from the library paths they
// check), a deterministic generator, and a small subprocess runner for
// exercising the CLI.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "minorant/minorant.hpp"

namespace testsupport {

// xorshift-style generator, unrelated to the library's splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 2685821657736338717ull + 1ull) {}

  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

// Composite-trapezoid integration with Richardson refinement, stopping when
// two successive halvings agree to `tol`. Independent of the library's
// adaptive Simpson.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  int n = 64;
  double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  double trap = sum * h;
  double previous_romberg = trap;
  for (int level = 0; level < 16; ++level) {
    double add = 0.0;
    for (int i = 0; i < n; ++i) add += f(a + (i + 0.5) * h);
    const double next_trap = 0.5 * trap + 0.5 * h * add;
    const double romberg = (4.0 * next_trap - trap) / 3.0;
    n *= 2;
    h *= 0.5;
    trap = next_trap;
    if (level > 2 && std::abs(romberg - previous_romberg) <= tol * (1.0 + std::abs(romberg))) {
      return romberg;
    }
    previous_romberg = romberg;
  }
  return previous_romberg;
}

// Direct quadrature of the integrated counting function: integrates
// radial mass / t^{d-1} piecewise between the atom radii (where the radial
// counting function is constant), recomputing the radial mass from scratch.
inline double counting_quadrature_oracle(const minorant::AtomicMeasure& mu,
                                         const minorant::Point& x, double r, int d, double tol) {
  std::vector<double> radii;
  for (const auto& atom : mu.atoms()) {
    const double rho = minorant::euclid_dist(atom.location, x);
    if (rho > 0.0 && rho < r) radii.push_back(rho);
  }
  radii.push_back(r);
  std::sort(radii.begin(), radii.end());

  const auto radial_mass = [&](double t) {
    double sum = 0.0;
    for (const auto& atom : mu.atoms()) {
      if (minorant::euclid_dist(atom.location, x) <= t) sum += atom.mass;
    }
    return sum;
  };
  const auto integrand = [&](double t) { return radial_mass(t) / std::pow(t, d - 1); };

  // Below the smallest atom radius the radial mass vanishes, so integration
  // starts there. Each piece is opened by a hair at both ends so the step
  // discontinuities of the radial mass sit strictly outside; the slivers
  // contribute O(1e-12) of the piece, below the comparison tolerances.
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    const double width = radii[i + 1] - radii[i];
    const double eps = 1e-12 * width;
    total += integrate(integrand, radii[i] + eps, radii[i + 1] - eps, tol);
  }
  return std::max(1, d - 2) * total;
}

// Brute-force boundary scan: plain max of u over n equispaced circle angles.
inline double boundary_scan_max(const minorant::SubharmonicSample& sample, int n) {
  double best = -std::numeric_limits<double>::infinity();
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < n; ++j) {
    best = std::max(best, sample.evaluate_raw(std::polar(1.0, two_pi * j / n)));
  }
  return best;
}

// Exact minimum-cost cover over an explicit candidate list by exhaustive
// recursion with branch-and-bound; independent check of the library's
// subset DP. Usable for up to ~6 points.
struct OracleBall {
  std::uint32_t mask = 0;
  double cost = 0.0;
};

inline void cover_search(const std::vector<OracleBall>& balls, std::uint32_t full,
                         std::uint32_t covered, double cost, double& best) {
  if (cost >= best) return;
  if (covered == full) {
    best = cost;
    return;
  }
  std::uint32_t lowest_uncovered = 0;
  while (covered & (1u << lowest_uncovered)) ++lowest_uncovered;
  for (const auto& b : balls) {
    if (b.mask & (1u << lowest_uncovered)) {
      cover_search(balls, full, covered | b.mask, cost + b.cost, best);
    }
  }
}

inline double min_cover_cost_oracle(const std::vector<minorant::Point>& target,
                                    const minorant::Gauge& g, double r) {
  std::vector<minorant::Point> centers = target;
  for (std::size_t i = 0; i < target.size(); ++i) {
    for (std::size_t j = i + 1; j < target.size(); ++j) {
      minorant::Point mid(target[i].size());
      for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (target[i][k] + target[j][k]);
      centers.push_back(mid);
    }
  }
  std::vector<OracleBall> balls;
  double rho = r;
  for (int k = 0; k <= 12; ++k) {
    for (const auto& c : centers) {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < target.size(); ++i) {
        if (minorant::euclid_dist(c, target[i]) <= rho) mask |= (1u << i);
      }
      if (mask != 0) balls.push_back({mask, g(rho)});
    }
    rho *= 0.5;
  }
  const std::uint32_t full = (1u << target.size()) - 1u;
  double best = std::numeric_limits<double>::infinity();
  cover_search(balls, full, 0, 0.0, best);
  return best;
}

// --- CLI process helpers ---------------------------------------------------

inline std::string& cli_path() {
  static std::string path = "minorant";
  return path;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  os << content;
}

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("minorant_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

inline RunResult run_cli(const std::string& args, const std::filesystem::path& workdir,
                         const std::string& env_prefix = "") {
  const auto out_file = workdir / "stdout.txt";
  const auto err_file = workdir / "stderr.txt";
  const std::string command = "cd '" + workdir.string() + "' && " + env_prefix + "'" + cli_path() +
                              "' " + args + " > stdout.txt 2> stderr.txt";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_file);
  result.err = read_file(err_file);
  return result;
}

inline std::string segment_points_csv(int count) {
  std::ostringstream ss;
  for (int i = 0; i < count; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g,0\n", static_cast<double>(i) / (count - 1));
    ss << buf;
  }
  return ss.str();
}

}  // namespace testsupport
