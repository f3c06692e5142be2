// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "netdesign/certificates.hpp"
#include "netdesign/design.hpp"
#include "netdesign/equilibrium.hpp"
#include "netdesign/errors.hpp"
#include "netdesign/perturbation.hpp"
#include "netdesign/random_networks.hpp"
#include "netdesign/rationality.hpp"
#include "test_util.hpp"

using namespace netdesign;
using namespace netdesign::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Every equilibrium computed below, for the rationality criterion.
struct Registered {
  NetworkGame game;
  EquilibriumResult eq;
  std::string origin;
};
std::vector<Registered> registry;

void record(const NetworkGame& game, const EquilibriumResult& eq, const std::string& origin) {
  // Interior solutions with negative entries are not equilibria on x >= 0.
  if (eq.x.size() && eq.x.minCoeff() < -kTolNonneg) return;
  registry.push_back({game, eq, origin});
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

DesignProblem three_player_problem() {
  return DesignProblem(three_player_a(), {{{0, 1}, -2.0}, {{2, 0}, -3.0}, {{1, 2}, 2.0}},
                       {{1, 0}, {0, 2}, {2, 1}});
}

// Mixed tolerance 1e-3 * max(1, |printed|); g32 is printed to five figures.
bool near_printed(double value, double printed) {
  return std::abs(value - printed) <= 1e-3 * std::max(1.0, std::abs(printed));
}

bool matches_printed_branch(const DesignSolution& s) {
  const Matrix& g = s.adjacency.matrix();
  bool x_ok = true;
  for (int i = 0; i < 3; ++i) x_ok = x_ok && near_printed(s.x_star(i), three_player_x()(i));
  return near_printed(g(1, 0), 1.18042) && near_printed(g(0, 2), -0.273107) &&
         near_printed(g(2, 1), 37.229) && x_ok;
}

Outcome c1_three_player() {
  const NetworkGame game(AdjacencyMatrix(three_player_matrix()), three_player_a());
  const auto eq = solve_ne_interior(game);
  const CoincidenceCheck cc = check_coincidence(game);
  record(game, eq, "c1");
  const double err = (eq.x - three_player_x()).cwiseAbs().maxCoeff();
  return {err <= 1e-3 && cc.residual_orth <= 5e-3,
          "max|x - printed| = " + fmt("%.2e", err) +
              ", residual_orth = " + fmt("%.2e", cc.residual_orth)};
}

Outcome c2_design() {
  bool pass = true;
  int branches = 0;
  double g32_gap = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DesignOptions options;
    options.seed = seed;
    options.starts = 64;
    const DesignReport report = design_solve(three_player_problem(), options);
    bool exact = false, printed = false;
    for (const DesignSolution& s : report.solutions) {
      exact = exact || std::max(s.residual_ne, s.residual_orth) <= 1e-8;
      if (matches_printed_branch(s)) {
        printed = true;
        g32_gap = std::abs(s.adjacency(2, 1) - 37.229);
      }
      const NetworkGame game(s.adjacency, three_player_a());
      record(game, solve_ne_interior(game), "c2");
    }
    branches = std::max(branches, static_cast<int>(report.solutions.size()));
    pass = pass && exact && printed;
  }
  return {pass, "seeds 0-4, up to " + std::to_string(branches) +
                    " branch(es) per seed, |g32 - printed| = " + fmt("%.1e", g32_gap)};
}

Outcome c3_two_players() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> link(-2.0, 2.0);
  std::uniform_real_distribution<double> benefit(0.1, 2.0);
  int coincident = 0, singular = 0, designs = 0;
  double worst_product = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Matrix g = Matrix::Zero(2, 2);
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) {
      double w;
      do w = link(rng); while (std::abs(w) < 0.05);
      g(i, j) = w;
    }
    const Vector a{{benefit(rng), benefit(rng)}};
    try {
      if (check_coincidence(NetworkGame(AdjacencyMatrix(g), a)).holds) ++coincident;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kSingularSystem) throw;
      ++singular;
    }
    DesignOptions options;
    options.seed = trial;
    options.starts = 16;
    const DesignReport report = design_solve(DesignProblem(a, {}, {{0, 1}, {1, 0}}), options);
    for (const DesignSolution& s : report.solutions) {
      ++designs;
      worst_product =
          std::max(worst_product, std::abs(s.adjacency(0, 1)) * std::abs(s.adjacency(1, 0)));
    }
  }
  return {coincident == 0 && worst_product <= 1e-6,
          std::to_string(coincident) + " coincident, " + std::to_string(singular) +
              " singular, max |g12 g21| = " + fmt("%.1e", worst_product) + " over " +
              std::to_string(designs) + " designs"};
}

Outcome c4_symmetric() {
  double worst_ga = 0.0, worst_x = 0.0, worst_cost = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    const Vector a = Vector::Ones(n);
    const DesignSolution s = symmetric_design(a, seed);
    const NetworkGame game(s.adjacency, a);
    const auto ne = solve_ne_interior(game);
    const auto so = solve_social_interior(game);
    record(game, ne, "c4");
    worst_ga = std::max(worst_ga, (s.adjacency.matrix() * a).cwiseAbs().maxCoeff());
    worst_x = std::max(worst_x, (s.x_star - a).cwiseAbs().maxCoeff());
    const double c_ne = social_cost(game, ne.x), c_so = social_cost(game, so.x);
    worst_cost = std::max(worst_cost, std::abs(c_ne - c_so) / std::max(1.0, std::abs(c_so)));
  }
  return {worst_ga <= 1e-12 && worst_x == 0.0 && worst_cost <= 1e-12,
          "max|Ga| = " + fmt("%.1e", worst_ga) + ", max cost gap = " + fmt("%.1e", worst_cost)};
}

Outcome c5_certificates() {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> scale(0.05, 1.0);
  double worst_spread = 0.0;
  auto run_family = [&](const std::function<bool(const AdjacencyMatrix&)>& passes) {
    int accepted = 0;
    while (accepted < 50) {
      const int n = 2 + static_cast<int>(rng() % 5);
      const AdjacencyMatrix g(random_adjacency_inf(rng, n, scale(rng)));
      if (!passes(g)) continue;
      ++accepted;
      const NetworkGame game(g, random_vector(rng, n, -1.0, 2.0));
      std::optional<Vector> first;
      for (int start = 0; start < 10; ++start) {
        const auto eq = solve_vi(game, ViTarget::kNe, random_vector(rng, n, 0.0, 5.0));
        record(game, eq, "c5");
        if (!first) first = eq.x;
        worst_spread = std::max(worst_spread, (eq.x - *first).cwiseAbs().maxCoeff());
      }
    }
  };
  run_family([](const AdjacencyMatrix& g) { return cert_strong_monotone(g).holds; });
  run_family([](const AdjacencyMatrix& g) { return cert_block_p(g).holds; });

  int chain_violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 7;
    const AdjacencyMatrix g(random_adjacency_inf(rng, n, 1.2 * scale(rng)));
    const bool block = cert_block_p(g).holds;
    const bool gersh = cert_gershgorin(g).holds;
    const bool gamma = p_matrix_check(GammaMatrix(g).matrix());
    if ((block && !gersh) || (gersh && !gamma)) ++chain_violations;
  }
  return {worst_spread <= 1e-6 && chain_violations == 0,
          "max spread over 10 starts = " + fmt("%.1e", worst_spread) + ", chain violations = " +
              std::to_string(chain_violations) + "/500"};
}

Outcome c6_oracle() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> scale(0.0, 0.4);
  double worst_gap = 0.0, worst_comp = 0.0;
  int interior = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    const NetworkGame game(AdjacencyMatrix(random_adjacency_inf(rng, n, scale(rng))),
                           random_vector(rng, n, 0.5, 2.0));
    const auto vi = solve_vi(game, ViTarget::kNe, Vector::Zero(n));
    const auto lin = solve_ne_interior(game);
    record(game, vi, "c6");
    if (lin.x.minCoeff() >= 0.0) {
      ++interior;
      worst_gap = std::max(worst_gap, (vi.x - lin.x).cwiseAbs().maxCoeff());
    } else {
      worst_comp = std::max(worst_comp, vi.complementarity_residual);
    }
  }
  return {worst_gap <= 1e-8 && worst_comp <= 1e-10,
          std::to_string(interior) + "/100 interior, max gap = " + fmt("%.1e", worst_gap) +
              ", max complementarity = " + fmt("%.1e", worst_comp)};
}

Outcome c7_continuity() {
  const NetworkGame base(AdjacencyMatrix(four_node_symmetric()), Vector::Ones(4));
  auto run = [&](std::vector<double> grid) {
    return sweep({base, four_node_pattern(), std::move(grid), SweepSolver::kInterior});
  };
  const SweepReport wide = run(linear_grid(-0.6, 0.6, 121));
  bool flagged = false;
  for (const SweepRow& row : wide.rows) {
    flagged = flagged || !row.feasible;
    if (row.feasible) {
      const NetworkGame game(
          AdjacencyMatrix(four_node_symmetric() + row.delta * four_node_pattern()),
          Vector::Ones(4));
      record(game, solve_ne_interior(game), "c7");
    }
  }
  const auto interval = feasible_interval(wide, 0.0);
  if (!interval) return {false, "no feasible region around delta = 0"};
  const auto [lo, hi] = *interval;
  const double coarse = max_adjacent_cost_jump(run(linear_grid(lo, hi, 13)), lo, hi);
  const double fine = max_adjacent_cost_jump(run(linear_grid(lo, hi, 121)), lo, hi);
  const double ratio = fine > 0.0 ? coarse / fine : INFINITY;
  return {flagged && ratio >= 5.0,
          "feasible [" + fmt("%.2f", lo) + ", " + fmt("%.2f", hi) + "], jump ratio " +
              fmt("%.2f", ratio) + (flagged ? ", infeasible regime flagged" : ", nothing flagged")};
}

Outcome c8_rationality() {
  int players = 0, failures = 0;
  double worst_gap = 0.0;
  std::string first_failure;
  for (const Registered& r : registry) {
    try {
      const IrReport report = ir_check(r.game, r.eq);
      for (const PlayerRationality& p : report.players) {
        ++players;
        worst_gap = std::max(worst_gap, p.identity_gap);
        if (!p.rational) ++failures;
      }
    } catch (const Error& e) {
      ++failures;
      if (first_failure.empty()) first_failure = r.origin + ": " + e.what();
    }
  }
  std::string detail = std::to_string(registry.size()) + " equilibria, " +
                       std::to_string(players) + " players, max identity gap " +
                       fmt("%.1e", worst_gap);
  if (!first_failure.empty()) detail += "; first failure " + first_failure;
  return {failures == 0 && !registry.empty(), detail};
}

Outcome c9_random() {
  ErConfig dense;
  dense.n = 100;
  dense.p = 0.3;
  dense.samples = 200;
  dense.seed = 9;
  const SingularityStats d = singularity_stats(dense);
  const CoincidenceScan scan = coincidence_feasibility_scan(dense, Vector::Ones(100));
  ErConfig sparse = dense;
  sparse.p = 0.001;
  const SingularityStats s = singularity_stats(sparse);
  return {d.fraction_singular <= 0.01 && scan.coincident == 0 && s.fraction_singular >= 0.99,
          "p=0.3: singular " + fmt("%.3f", d.fraction_singular) + ", coincident " +
              std::to_string(scan.coincident) + "; p=0.001: singular " +
              fmt("%.3f", s.fraction_singular)};
}

Outcome c10_spectral() {
  std::mt19937_64 rng(1010);
  int passed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 10;
    const Matrix r = random_adjacency(rng, n, -3.0, 3.0) +
                     Matrix(random_vector(rng, n, -3.0, 3.0).asDiagonal());
    if (spectral_facts_selftest(Matrix(0.5 * (r + r.transpose())))) ++passed;
  }
  return {passed == 100, std::to_string(passed) + "/100 matrices"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds; <= 0 means none
    Outcome (*run)();
  };
  // Rationality runs last so the registry holds everything produced before it.
  const Criterion criteria[] = {
      {1, "three-player example regression", 0.1, c1_three_player},
      {2, "design recovery", 10.0, c2_design},
      {3, "two-player impossibility", 0.0, c3_two_players},
      {4, "symmetric design", 0.0, c4_symmetric},
      {5, "uniqueness certificates", 0.0, c5_certificates},
      {6, "oracle equivalence", 0.0, c6_oracle},
      {7, "continuity sweep", 0.0, c7_continuity},
      {9, "random networks", 60.0, c9_random},
      {10, "spectral self-test", 0.0, c10_spectral},
      {8, "individual rationality", 0.0, c8_rationality},
  };
  int failed = 0;
  std::string lines[11];
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      out.pass = false;
      out.detail += "; over the " + fmt("%g", c.time_limit) + " s limit";
    }
    if (!out.pass) ++failed;
    char head[96];
    std::snprintf(head, sizeof head, "%s criterion %2d  %-32s ", out.pass ? "PASS" : "FAIL",
                  c.id, c.name);
    lines[c.id] = head + out.detail + " (" + fmt("%.3f", secs) + " s)";
  }
  for (int id = 1; id <= 10; ++id) std::printf("%s\n", lines[id].c_str());
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
