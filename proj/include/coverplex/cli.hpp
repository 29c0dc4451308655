#pragma once

// Command-line front end. `run` takes the argument list (without the program
// name) and explicit streams so it can be driven in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coverplex/cover_decomp.hpp"
#include "coverplex/generate.hpp"
#include "coverplex/io.hpp"
#include "coverplex/oracle_verify.hpp"
#include "coverplex/planar_cover.hpp"
#include "coverplex/rsc.hpp"
#include "coverplex/svg.hpp"

namespace coverplex::cli {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_all(in);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  return read_all(f);
}

/// Parses JSON, reporting syntax errors with 1-based line and column.
inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    size_t limit = std::min(text.size(), e.byte == 0 ? size_t{0} : e.byte - 1);
    for (size_t k = 0; k < limit; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << origin << ":" << line << ":" << col << ": malformed JSON (" << e.what() << ")";
    throw InputError(os.str());
  }
}

inline json load(const std::string& path, std::istream& in) {
  return parse_json(read_source(path, in), path.empty() || path == "-" ? "<stdin>" : path);
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out_path + "'");
  f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

struct Options {
  std::string in, out, instance, schedule, result;
  std::optional<std::int64_t> stop_at;
  std::uint64_t seed = 1;
  std::string format = "json";
  // generators
  int n = 20, m = 20;
  std::int64_t d_max = 8;
  std::string family = "uniform";
  std::string polygon = "square";
  std::int64_t scale = 1;
  std::int64_t count = 200;
  std::int64_t side = 100;
  std::int64_t k = 0;
  std::int64_t universe = 20;
  std::int64_t horizon = 0;
  int vertex = 0;
  std::int64_t level = 0;
};

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"coverplex: cover decomposition and sensor cover scheduling"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* c) {
    c->add_option("--in", o.in, "input JSON (default stdin)");
    c->add_option("--out", o.out, "output file (default stdout)");
  };

  auto* rsc_cmd = app.add_subcommand("rsc", "restricted strip cover");
  rsc_cmd->require_subcommand(1);
  auto* rsc_solve = rsc_cmd->add_subcommand("solve", "greedy schedule");
  add_io(rsc_solve);
  rsc_solve->add_option("--stop-at", o.stop_at, "stop once the duration reaches this value");
  auto* rsc_verify = rsc_cmd->add_subcommand("verify", "check a schedule");
  rsc_verify->add_option("--instance", o.instance)->required();
  rsc_verify->add_option("--schedule", o.schedule)->required();
  rsc_verify->add_option("--stop-at", o.stop_at);
  rsc_verify->add_option("--out", o.out);
  auto* rsc_oracle = rsc_cmd->add_subcommand("oracle", "exact optimum for tiny instances");
  add_io(rsc_oracle);
  rsc_oracle->add_option("--horizon", o.horizon, "search cap (default: the load)");

  auto* dec = app.add_subcommand("decomp", "multi-cover decomposition");
  dec->require_subcommand(1);
  auto* dec_points = dec->add_subcommand("points", "color points against heavy wedges");
  add_io(dec_points);
  auto* dec_trans = dec->add_subcommand("translates", "partition translates (points are centers)");
  add_io(dec_trans);
  auto* dec_verify = dec->add_subcommand("verify", "check a coloring");
  dec_verify->add_option("--instance", o.instance)->required();
  dec_verify->add_option("--result", o.result)->required();
  dec_verify->add_option("--out", o.out);

  auto* plan = app.add_subcommand("plan", "planar sensor cover");
  plan->require_subcommand(1);
  auto* plan_solve = plan->add_subcommand("solve", "compute a schedule");
  add_io(plan_solve);
  auto* plan_verify = plan->add_subcommand("verify", "simulate a schedule");
  plan_verify->add_option("--instance", o.instance)->required();
  plan_verify->add_option("--schedule", o.schedule)->required();
  plan_verify->add_option("--out", o.out);

  auto* gen = app.add_subcommand("gen", "seeded instance generators");
  gen->require_subcommand(1);
  auto add_seed = [&](CLI::App* c) {
    c->add_option("--seed", o.seed);
    c->add_option("--out", o.out);
  };
  auto* gen_rsc = gen->add_subcommand("rsc", "strip cover instance");
  add_seed(gen_rsc);
  gen_rsc->add_option("--n", o.n);
  gen_rsc->add_option("--m", o.m);
  gen_rsc->add_option("--d-max", o.d_max);
  gen_rsc->add_option("--family", o.family)->check(CLI::IsMember({"uniform", "nested"}));
  auto* gen_points = gen->add_subcommand("points", "uniform point cloud decomposition instance");
  add_seed(gen_points);
  gen_points->add_option("--polygon", o.polygon);
  gen_points->add_option("--scale", o.scale);
  gen_points->add_option("--count", o.count);
  gen_points->add_option("--side", o.side);
  gen_points->add_option("--k", o.k, "level (default: 256 * vertices)");
  auto* gen_planar = gen->add_subcommand("planar", "clustered translates");
  add_seed(gen_planar);
  gen_planar->add_option("--polygon", o.polygon);
  gen_planar->add_option("--scale", o.scale);
  gen_planar->add_option("--count", o.count, "number of sensors");
  gen_planar->add_option("--universe", o.universe);
  gen_planar->add_option("--side", o.side);
  gen_planar->add_option("--d-max", o.d_max);

  auto* plot = app.add_subcommand("plot", "figures");
  plot->require_subcommand(1);
  auto* plot_curve = plot->add_subcommand("curve", "level curve of a decomposition instance");
  add_io(plot_curve);
  plot_curve->add_option("--vertex", o.vertex);
  plot_curve->add_option("--level", o.level, "default: the instance's k");
  plot_curve->add_option("--format", o.format)->check(CLI::IsMember({"json", "svg"}));
  auto* plot_coloring = plot->add_subcommand("coloring", "colored points");
  plot_coloring->add_option("--instance", o.instance)->required();
  plot_coloring->add_option("--result", o.result)->required();
  plot_coloring->add_option("--out", o.out);
  auto* plot_schedule = plot->add_subcommand("schedule", "strip cover schedule");
  plot_schedule->add_option("--instance", o.instance)->required();
  plot_schedule->add_option("--schedule", o.schedule)->required();
  plot_schedule->add_option("--out", o.out);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (o.format == "json" && plot_curve->parsed() && plot_curve->count("--format") == 0) o.format = "svg";

  try {
    if (rsc_solve->parsed()) {
      auto inst = io::parse_rsc_instance(detail::load(o.in, in));
      auto g = rsc::greedy_schedule(inst, o.stop_at);
      detail::emit(detail::dump(io::to_json(g.schedule, g.M, rsc::load(inst).L)), o.out, out);
      return kOk;
    }
    if (rsc_verify->parsed()) {
      auto inst = io::parse_rsc_instance(detail::load(o.instance, in));
      auto sched = io::parse_schedule(detail::load(o.schedule, in));
      auto rep = verify_rsc(inst, sched, o.stop_at);
      detail::emit(detail::dump(to_json(rep)), o.out, out);
      return rep.ok() ? kOk : kVerifyFailed;
    }
    if (rsc_oracle->parsed()) {
      auto inst = io::parse_rsc_instance(detail::load(o.in, in));
      std::int64_t L = rsc::load(inst).L;
      std::int64_t h = o.horizon > 0 ? o.horizon : L;
      std::int64_t opt = rsc_opt_bruteforce(inst, h);
      detail::emit(detail::dump(json{{"OPT", opt}, {"L", L}, {"horizon", h}}), o.out, out);
      return kOk;
    }
    if (dec_points->parsed()) {
      auto d = io::parse_decomposition_instance(detail::load(o.in, in));
      auto res = decompose_points(d.polygon, d.points, d.k);
      detail::emit(detail::dump(io::to_json(res)), o.out, out);
      return kOk;
    }
    if (dec_trans->parsed()) {
      auto d = io::parse_decomposition_instance(detail::load(o.in, in));
      auto res = decompose_translates(d.polygon, d.points, d.k);
      detail::emit(detail::dump(io::to_json(res)), o.out, out);
      return kOk;
    }
    if (dec_verify->parsed()) {
      auto d = io::parse_decomposition_instance(detail::load(o.instance, in));
      auto c = io::parse_coloring(detail::load(o.result, in));
      auto rep = verify_coloring(d.polygon, d.points, c.colors, c.T, d.k);
      detail::emit(detail::dump(to_json(rep)), o.out, out);
      return rep.ok() ? kOk : kVerifyFailed;
    }
    if (plan_solve->parsed()) {
      auto inst = io::parse_planar_instance(detail::load(o.in, in));
      auto res = plan_schedule(inst);
      auto rep = verify_planar(inst, res.schedule);
      json j = io::to_json(res.schedule, rep.achieved.value_or(0), res.L);
      j["trivial"] = res.trivial;
      j["certified"] = res.certified;
      j["beta"] = res.grid.beta;
      j["k_cell"] = res.k_cell;
      detail::emit(detail::dump(j), o.out, out);
      return kOk;
    }
    if (plan_verify->parsed()) {
      auto inst = io::parse_planar_instance(detail::load(o.instance, in));
      json sj = detail::load(o.schedule, in);
      auto sched = io::parse_schedule(sj);
      std::optional<std::int64_t> claimed;
      if (sj.contains("M") && sj["M"].is_number_integer()) claimed = sj["M"].get<std::int64_t>();
      auto rep = verify_planar(inst, sched, claimed);
      detail::emit(detail::dump(to_json(rep)), o.out, out);
      return rep.ok() ? kOk : kVerifyFailed;
    }
    if (gen_rsc->parsed()) {
      auto inst = o.family == "nested" ? gen::rsc_nested(o.n, o.m, o.d_max, o.seed)
                                       : gen::rsc_uniform(o.n, o.m, o.d_max, o.seed);
      detail::emit(detail::dump(io::to_json(inst)), o.out, out);
      return kOk;
    }
    if (gen_points->parsed()) {
      io::DecompositionInstance d;
      d.polygon = gen::polygon_family(o.polygon, o.scale);
      d.points = gen::uniform_points(static_cast<size_t>(o.count), o.side, o.seed);
      d.k = o.k > 0 ? o.k : 256 * d.polygon.size();
      detail::emit(detail::dump(io::to_json(d)), o.out, out);
      return kOk;
    }
    if (gen_planar->parsed()) {
      auto inst = gen::planar_clustered(gen::polygon_family(o.polygon, o.scale), static_cast<size_t>(o.count),
                                        static_cast<size_t>(o.universe), o.side, o.d_max, o.seed);
      detail::emit(detail::dump(io::to_json(inst)), o.out, out);
      return kOk;
    }
    if (plot_curve->parsed()) {
      auto d = io::parse_decomposition_instance(detail::load(o.in, in));
      if (o.vertex < 0 || o.vertex >= d.polygon.size()) throw InputError("vertex index out of range");
      WedgeFrame frame(d.polygon, o.vertex, d.points);
      std::int64_t r = o.level > 0 ? o.level : d.k;
      LevelCurve curve = build_level_curve(frame, r);
      if (o.format == "json")
        detail::emit(detail::dump(io::to_json(curve, frame)), o.out, out);
      else
        detail::emit(svg::plot_curve(d.points, curve, frame), o.out, out);
      return kOk;
    }
    if (plot_coloring->parsed()) {
      auto d = io::parse_decomposition_instance(detail::load(o.instance, in));
      auto c = io::parse_coloring(detail::load(o.result, in));
      detail::emit(svg::plot_coloring(d.points, c.colors), o.out, out);
      return kOk;
    }
    if (plot_schedule->parsed()) {
      auto inst = io::parse_rsc_instance(detail::load(o.instance, in));
      auto sched = io::parse_schedule(detail::load(o.schedule, in));
      detail::emit(svg::plot_schedule(inst, sched), o.out, out);
      return kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const io::SchemaError& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "error: no command\n";
  return kInputError;
}

}  // namespace coverplex::cli
