#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "netdesign/certificates.hpp"
#include "netdesign/design.hpp"
#include "netdesign/equilibrium.hpp"
#include "netdesign/errors.hpp"
#include "netdesign/format.hpp"
#include "netdesign/game_io.hpp"
#include "netdesign/perturbation.hpp"
#include "netdesign/random_networks.hpp"
#include "netdesign/rationality.hpp"

namespace netdesign {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSingular = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitIrrational = 4;
constexpr int kExitSolver = 5;

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(round12(v(i)));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i))));
  return out;
}

json to_json(const EquilibriumResult& r) {
  return {{"kind", std::string(to_string(r.kind))},
          {"x", to_json(r.x)},
          {"stationarity_residual", round12(r.stationarity_residual)},
          {"complementarity_residual", round12(r.complementarity_residual)},
          {"interior", r.interior},
          {"iterations", r.iterations}};
}

json to_json(const Certificate& c) {
  json details = json::object();
  for (const auto& [k, v] : c.details) details[k] = round12(v);
  return {{"name", std::string(to_string(c.name))},
          {"margin", round12(c.margin)},
          {"holds", c.holds},
          {"details", details}};
}

json to_json(const DesignSolution& s) {
  return {{"branch_id", s.branch_id},
          {"g", to_json(s.adjacency.matrix())},
          {"x", to_json(s.x_star)},
          {"residual_ne", round12(s.residual_ne)},
          {"residual_orth", round12(s.residual_orth)}};
}

WeightLaw parse_weights(const std::string& spec) {
  if (spec == "unit") return UnitWeights{};
  auto two_numbers = [&](const std::string& body) {
    const auto comma = body.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument, "--weights expects two comma-separated numbers");
    }
    try {
      return std::pair{std::stod(body.substr(0, comma)), std::stod(body.substr(comma + 1))};
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "--weights: cannot parse '" + body + "'");
    }
  };
  if (spec.rfind("uniform:", 0) == 0) {
    const auto [lo, hi] = two_numbers(spec.substr(8));
    return UniformWeights{lo, hi};
  }
  if (spec.rfind("gaussian:", 0) == 0) {
    const auto [mu, sigma] = two_numbers(spec.substr(9));
    return GaussianWeights{mu, sigma};
  }
  throw Error(ErrorKind::kInvalidArgument,
              "--weights must be unit, uniform:lo,hi or gaussian:mu,sigma");
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kParse:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kIndexOutOfRange:
      return kExitInput;
    case ErrorKind::kSingularSystem:
      return kExitSingular;
    case ErrorKind::kNoSolutionFound:
      return kExitNoSolution;
    default:
      return kExitSolver;
  }
}

struct Flags {
  std::string game, problem, pattern, out_path;
  std::string kind = "ne";
  bool constrained = false;
  int starts = 64;
  std::uint64_t seed = 0;
  double from = -0.6, to = 0.6;
  int steps = 120;
  int n = 10;
  double p = 0.5;
  int samples = 100;
  std::string weights = "unit";
  bool directed = false;
  double rank_tol = 1e-10;
};

int cmd_solve(const Flags& f, std::ostream& out) {
  const GameDocument doc = read_game_file(f.game);
  EquilibriumResult result;
  if (doc.is_public_goods()) {
    if (f.constrained) {
      throw Error(ErrorKind::kInvalidArgument,
                  "--constrained is not available for public-goods games");
    }
    const PublicGoodsGame game = doc.public_goods_game();
    result = f.kind == "ne" ? solve_ne_pg(game) : solve_social_pg(game);
  } else {
    const NetworkGame game = doc.network_game();
    const ViTarget target = f.kind == "ne" ? ViTarget::kNe : ViTarget::kSocial;
    if (f.constrained) {
      result = solve_vi(game, target, Vector::Zero(game.size()));
    } else {
      result = target == ViTarget::kNe ? solve_ne_interior(game) : solve_social_interior(game);
    }
  }
  out << to_json(result).dump(2) << "\n";
  return kExitOk;
}

int cmd_design(const Flags& f, std::ostream& out) {
  const DesignProblem problem = read_problem_file(f.problem);
  DesignOptions options;
  options.starts = f.starts;
  options.seed = f.seed;
  const DesignReport report = design_solve(problem, options);
  json sols = json::array();
  for (const DesignSolution& s : report.solutions) sols.push_back(to_json(s));
  json negative = json::array();
  for (const DesignSolution& s : report.negative_solutions) negative.push_back(to_json(s));
  const json doc = {{"solutions", sols},
                    {"negative_solutions", negative},
                    {"failed_starts", report.failed_starts},
                    {"best_residual", round12(report.best_residual)}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_certify(const Flags& f, std::ostream& out) {
  const GameDocument doc = read_game_file(f.game);
  const AdjacencyMatrix& g = doc.g;
  json certs = json::array();
  certs.push_back(to_json(cert_strong_monotone(g)));
  certs.push_back(to_json(cert_block_p(g)));
  if (g.size() <= kMaxPMatrixSize) {
    certs.push_back(to_json(cert_gamma_p(g)));
  } else {
    certs.push_back({{"name", std::string(to_string(CertificateName::kGammaPMatrix))},
                     {"margin", nullptr},
                     {"holds", false},
                     {"details", {{"skipped", "n exceeds the enumeration limit"}}}});
  }
  certs.push_back(to_json(cert_gershgorin(g)));
  const auto [spectral, rowsum] = cert_continuity(g);
  certs.push_back(to_json(spectral));
  certs.push_back(to_json(rowsum));
  out << json{{"certificates", certs}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_perturb(const Flags& f, std::ostream& out) {
  const GameDocument doc = read_game_file(f.game);
  const Matrix pattern = read_pattern_file(f.pattern);
  if (f.steps < 1) throw Error(ErrorKind::kInvalidArgument, "--steps must be >= 1");
  if (!(f.from < f.to)) throw Error(ErrorKind::kInvalidArgument, "--from must be < --to");
  SweepConfig config{doc.network_game(), pattern, linear_grid(f.from, f.to, f.steps + 1),
                     f.constrained ? SweepSolver::kConstrained : SweepSolver::kInterior};
  out << sweep_csv(sweep(config));
  return kExitOk;
}

int cmd_random(const Flags& f, std::ostream& out) {
  ErConfig config;
  config.n = f.n;
  config.p = f.p;
  config.samples = f.samples;
  config.seed = f.seed;
  config.weights = parse_weights(f.weights);
  config.directed = f.directed;
  const SingularityStats stats = singularity_stats(config, f.rank_tol);
  const CoincidenceScan scan =
      coincidence_feasibility_scan(config, Vector::Ones(config.n), 1e-8, f.rank_tol);
  out << random_stats_csv(config, stats, scan);
  return kExitOk;
}

int cmd_ir_check(const Flags& f, std::ostream& out) {
  const NetworkGame game = read_game_file(f.game).network_game();
  EquilibriumResult eq = solve_ne_interior(game);
  const bool outside_box =
      game.upper() && (eq.x.array() > game.upper()->array()).any();
  if (!eq.interior || outside_box) {
    eq = solve_vi(game, ViTarget::kNe, Vector::Zero(game.size()));
  }
  const IrReport report = ir_check(game, eq);
  json players = json::array();
  for (size_t i = 0; i < report.players.size(); ++i) {
    const PlayerRationality& p = report.players[i];
    players.push_back({{"player", i + 1},
                       {"cost_at_eq", round12(p.cost_at_eq)},
                       {"cost_opt_out", round12(p.cost_opt_out)},
                       {"rational", p.rational}});
  }
  const json doc = {{"equilibrium", to_json(eq)},
                    {"players", players},
                    {"all_rational", report.all_rational()}};
  out << doc.dump(2) << "\n";
  return report.all_rational() ? kExitOk : kExitIrrational;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibria, social optima and network design for linear-quadratic network games"};
  app.require_subcommand(1);
  Flags f;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", f.out_path, "Write output to this file instead of stdout");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve for the Nash equilibrium or social optimum");
  solve->add_option("--game", f.game, "Game file")->required();
  solve->add_option("--kind", f.kind, "ne or social")
      ->check(CLI::IsMember({"ne", "social"}));
  solve->add_flag("--constrained", f.constrained, "Enforce x >= 0 (variational inequality)");
  add_out(solve);

  CLI::App* design = app.add_subcommand("design", "Find networks whose NE is socially optimal");
  design->add_option("--problem", f.problem, "Design problem file")->required();
  design->add_option("--starts", f.starts, "Multi-start count")->check(CLI::PositiveNumber);
  design->add_option("--seed", f.seed, "RNG seed");
  add_out(design);

  CLI::App* certify = app.add_subcommand("certify", "Report uniqueness and continuity certificates");
  certify->add_option("--game", f.game, "Game file")->required();
  add_out(certify);

  CLI::App* perturb = app.add_subcommand("perturb", "Sweep G + delta * pattern; CSV output");
  perturb->add_option("--game", f.game, "Game file")->required();
  perturb->add_option("--pattern", f.pattern, "Perturbation pattern file")->required();
  perturb->add_option("--from", f.from, "First delta");
  perturb->add_option("--to", f.to, "Last delta");
  perturb->add_option("--steps", f.steps, "Number of grid intervals");
  perturb->add_flag("--constrained", f.constrained, "Use the nonnegativity-constrained solver");
  add_out(perturb);

  CLI::App* random = app.add_subcommand("random", "Singularity statistics of Erdos-Renyi networks");
  random->add_option("--n", f.n, "Nodes")->required();
  random->add_option("--p", f.p, "Edge probability")->required();
  random->add_option("--samples", f.samples, "Sample count")->required();
  random->add_option("--seed", f.seed, "RNG seed")->required();
  random->add_option("--weights", f.weights, "unit | uniform:lo,hi | gaussian:mu,sigma");
  random->add_flag("--directed", f.directed, "Sample each direction independently");
  random->add_option("--rank-tol", f.rank_tol, "Relative singular-value threshold");
  add_out(random);

  CLI::App* ir = app.add_subcommand("ir-check", "Individual rationality at the equilibrium");
  ir->add_option("--game", f.game, "Game file")->required();
  add_out(ir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (solve->parsed()) code = cmd_solve(f, buffer);
    else if (design->parsed()) code = cmd_design(f, buffer);
    else if (certify->parsed()) code = cmd_certify(f, buffer);
    else if (perturb->parsed()) code = cmd_perturb(f, buffer);
    else if (random->parsed()) code = cmd_random(f, buffer);
    else if (ir->parsed()) code = cmd_ir_check(f, buffer);
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e);
  }

  if (f.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(f.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << f.out_path << "\n";
      return kExitInput;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace netdesign
