// momtail: bound states, momentum-space wavefunctions and their power-law tails.
//
//   momtail solve     --config run.json
//   momtail transform --config run.json --grid log:1:1000:40 --out data/
//   momtail predict   --config run.json
//   momtail verify    --config run.json
//   momtail figure 1 --out data/
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or config error,
// 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "momtail/asymptotics.hpp"
#include "momtail/config.hpp"
#include "momtail/eigensolve.hpp"
#include "momtail/error.hpp"
#include "momtail/momentum.hpp"
#include "momtail/serialize.hpp"
#include "momtail/specfun.hpp"
#include "momtail/verify.hpp"

namespace {

using namespace momtail;
using nlohmann::json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config;
  std::string out;
  std::string grid;
  std::optional<int> n;
  std::string parity;
  int figure = 0;
};

RunConfig resolve(const Options& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (o.n) c.n = *o.n;
  if (!o.parity.empty()) c.parity = parse_parity(o.parity);
  if (!o.grid.empty()) c.grid = parse_grid_spec(o.grid);
  return c;
}

const PotentialSpec& require_potential(const RunConfig& c) {
  if (!c.potential) throw ConfigError("a potential is required (--config with a \"potential\" entry)");
  return *c.potential;
}

BoundState solve_config(const RunConfig& c) {
  const PotentialSpec& spec = require_potential(c);
  return solve(spec, c.n.value_or(first_state_index(spec)), c.parity);
}

// Writes to <out>/<name> when --out is given, else to stdout.
void emit(const Options& o, const std::string& name, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(o.out);
  const auto path = std::filesystem::path(o.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
  std::cerr << "wrote " << path.string() << '\n';
}

bool has_classical_density(const PotentialSpec& spec) {
  return spec.get_if<Bouncer>() != nullptr || spec.get_if<SymmetricLinear>() != nullptr;
}

std::vector<ExtraColumn> classical_column(const PotentialSpec& spec, const BoundState& state,
                                          const std::vector<double>& grid) {
  if (!has_classical_density(spec)) return {};
  std::vector<double> v;
  for (double p : grid) v.push_back(classical_momentum_density(state, p));
  return {{"classical_density", v}};
}

int cmd_solve(const Options& o) {
  const RunConfig c = resolve(o);
  const PotentialSpec& spec = require_potential(c);
  const BoundState state = solve_config(c);
  json table = json::array();
  for (const auto& jet : state.derivative_table) table.push_back(to_json(jet));
  json report = {{"potential", to_json(spec)},
                 {"state",
                  {{"n", state.index},
                   {"parity", std::string(to_string(state.parity))},
                   {"energy", state.energy},
                   {"normalization", normalization_integral(state)},
                   {"momentum_scale", state.momentum_scale}}},
                 {"derivative_table", table}};
  emit(o, "solve.json", report.dump(2) + "\n");
  return 0;
}

int cmd_transform(const Options& o) {
  const RunConfig c = resolve(o);
  const PotentialSpec& spec = require_potential(c);
  const BoundState state = solve_config(c);
  const auto grid = c.grid ? c.grid->points() : log_grid(state.momentum_scale, 1e3, 40);
  const MomentumSamples samples = transform(spec, state, grid);
  std::ostringstream csv;
  write_samples_csv(csv, samples, classical_column(spec, state, grid));
  emit(o, "phi.csv", csv.str());
  return 0;
}

int cmd_predict(const Options& o) {
  const RunConfig c = resolve(o);
  const PotentialSpec& spec = require_potential(c);
  const BoundState state = solve_config(c);
  const TailPrediction prediction = predict_tail(state, discontinuities(spec));
  std::ostringstream csv;
  write_prediction_csv(csv, prediction);
  emit(o, "prediction.csv", csv.str());

  std::ostream& summary = o.out.empty() ? std::cerr : std::cout;
  summary << spec.kind_name() << " n=" << state.index << " parity=" << to_string(state.parity)
          << " E=" << format_number(state.energy) << '\n'
          << "  |phi(p)| ~ C p^-" << prediction.leading_exponent
          << ", C = " << format_number(prediction.leading_coefficient()) << '\n';
  for (const auto& t : prediction.terms) {
    if (t.jump == 0.0) continue;
    summary << "  order " << t.order << " at x = " << format_number(t.location)
            << ": jump " << format_number(t.jump) << '\n';
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const RunConfig c = resolve(o);
  const PotentialSpec& spec = require_potential(c);
  const BoundState state = solve_config(c);
  const json report = verify_report(spec, state, c.verify);
  emit(o, "verify.json", report.dump(2) + "\n");
  return report.at("passed").get<bool>() ? 0 : kExitVerifyFailed;
}

void write_csv(const Options& o, const std::string& name, const MomentumSamples& samples,
               const std::vector<ExtraColumn>& extra) {
  std::ostringstream csv;
  write_samples_csv(csv, samples, extra);
  emit(o, name, csv.str());
}

// Bouncer n = 10: real and imaginary parts of |phi|^2 against the classical box.
int figure_one(const Options& o) {
  const RunConfig c = resolve(o);
  const PotentialSpec spec(Bouncer{0.5});
  const BoundState state = solve(spec, c.n.value_or(10));
  const auto grid = c.grid ? c.grid->points() : linear_grid(-10.0, 10.0, 801);
  const MomentumSamples s = phi_quadrature(state, grid);
  std::vector<double> re2, im2, classical, half;
  for (std::size_t i = 0; i < s.size(); ++i) {
    re2.push_back(s.phi_re[i] * s.phi_re[i]);
    im2.push_back(s.phi_im[i] * s.phi_im[i]);
    classical.push_back(classical_momentum_density(state, grid[i]));
    half.push_back(0.5 * classical.back());
  }
  write_csv(o, "figure1.csv", s,
            {{"re_abs2", re2}, {"im_abs2", im2}, {"classical_density", classical}, {"classical_half", half}});
  return 0;
}

// Symmetric linear n = 11, even and odd, on log scales with the leading tails.
int figure_two(const Options& o) {
  const RunConfig c = resolve(o);
  const PotentialSpec spec(SymmetricLinear{0.5});
  const auto records = discontinuities(spec);
  for (Parity parity : {Parity::even, Parity::odd}) {
    const BoundState state = solve(spec, c.n.value_or(11), parity);
    const auto grid = c.grid ? c.grid->points() : log_grid(0.1, 1e3, 40);
    const MomentumSamples s = phi_quadrature(state, grid);
    const TailPrediction prediction = predict_tail(state, records);
    std::vector<double> tail;
    for (double p : grid) tail.push_back(std::norm(prediction.leading_sum(p)));
    write_csv(o, std::string("figure2_") + std::string(to_string(parity)) + ".csv", s,
              {{"tail_abs_phi2", tail}});
  }
  return 0;
}

int cmd_figure(const Options& o) {
  if (o.figure == 1) return figure_one(o);
  if (o.figure == 2) return figure_two(o);
  throw ConfigError("figure must be 1 or 2");
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON run configuration");
  sub->add_option("--out", o.out, "output directory (default: stdout)");
  sub->add_option("--grid", o.grid, "momentum grid, linear:min:max:count or log:min:max:per_decade");
  sub->add_option("--n", o.n, "state index");
  sub->add_option("--parity", o.parity, "even or odd (symmetric linear potential)")
      ->check(CLI::IsMember({"even", "odd"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momtail: momentum-space tails of 1D bound states"};
  app.require_subcommand(1);
  Options o;
  int (*command)(const Options&) = nullptr;

  auto* solve_cmd = app.add_subcommand("solve", "solve for the bound state and report it");
  auto* transform_cmd = app.add_subcommand("transform", "write phi(p) on a grid as CSV");
  auto* predict_cmd = app.add_subcommand("predict", "predicted large-p expansion terms");
  auto* verify_cmd = app.add_subcommand("verify", "check predicted tails against phi(p)");
  auto* figure_cmd = app.add_subcommand("figure", "write figure data (1: bouncer, 2: symmetric linear)");
  for (auto* sub : {solve_cmd, transform_cmd, predict_cmd, verify_cmd, figure_cmd}) add_common(sub, o);
  figure_cmd->add_option("which", o.figure, "1 or 2")->required()->check(CLI::IsMember({1, 2}));

  solve_cmd->callback([&] { command = cmd_solve; });
  transform_cmd->callback([&] { command = cmd_transform; });
  predict_cmd->callback([&] { command = cmd_predict; });
  verify_cmd->callback([&] { command = cmd_verify; });
  figure_cmd->callback([&] { command = cmd_figure; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    return command(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidSpec& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoSuchState& e) {
    std::cerr << "no such state: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoBoundState& e) {
    std::cerr << "no bound state: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitUsage;
  }
}
