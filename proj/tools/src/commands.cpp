#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "yoro/analysis.hpp"
#include "yoro/dimacs.hpp"
#include "yoro/error.hpp"
#include "yoro/pipeline.hpp"
#include "yoro/transform.hpp"
#include "yoro_cli/cli.hpp"
#include "yoro_cli/render.hpp"

namespace yoro::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + path);
  os << content;
  if (!os) throw IoError("failed writing " + path);
}

struct ProblemFlags {
  std::string input;
  std::string catalog;
  std::size_t width = 0;
  std::size_t height = 0;
  std::string ordering = "tile-freq";
  std::uint64_t seed = 0;
  bool periodic = true;
  std::optional<bool> input_periodic;
  bool nbhd = false;
  std::string path_tiles;
  bool negate = false;
  bool jw_pad = false;
};

struct SolveFlags {
  std::string phase = "true-first";
  std::string decision = "asc";
  std::string solver = "builtin";
  std::string solver_cmd;
  std::optional<std::uint64_t> timeout_ms;
  std::optional<std::uint64_t> max_decisions;
  std::optional<std::uint64_t> max_conflicts;
};

void add_problem_flags(CLI::App* app, ProblemFlags& f) {
  app->add_option("--input", f.input, "Example grid (one character per tile)")->required()->check(CLI::ExistingFile);
  app->add_option("--catalog", f.catalog, "Tile catalog JSON (fixes tile order and colors)")
      ->check(CLI::ExistingFile);
  app->add_option("--width", f.width, "Output width (default: input width)");
  app->add_option("--height", f.height, "Output height (default: input height)");
  app->add_option("--ordering", f.ordering, "Decision ordering")
      ->check(CLI::IsMember({"trivial", "uniform", "tile-freq", "nbhd-freq"}))
      ->capture_default_str();
  app->add_option("--seed", f.seed, "Seed for the pre-rolled ordering")->capture_default_str();
  app->add_flag("--periodic,!--no-periodic", f.periodic, "Wrap output boundaries (default on)");
  app->add_flag("--input-periodic,!--no-input-periodic", f.input_periodic,
                "Wrap the example when analyzing it (default: same as output)");
  app->add_flag("--nbhd", f.nbhd, "Neighborhood-level encoding");
  app->add_option("--path-tiles", f.path_tiles, "Symbols of path tiles; requires a monotone path (0,0)->(W-1,H-1)");
  app->add_flag("--negate", f.negate, "Negate every literal before solving");
  app->add_flag("--jw-pad", f.jw_pad, "Pad Jeroslow-Wang activities so activity(v) <= activity(-v)");
}

void add_solve_flags(CLI::App* app, SolveFlags& f) {
  app->add_option("--phase", f.phase, "Built-in solver phase")
      ->check(CLI::IsMember({"true-first", "false-first"}))
      ->capture_default_str();
  app->add_option("--decision", f.decision, "Built-in solver decision rule")
      ->check(CLI::IsMember({"asc", "jw"}))
      ->capture_default_str();
  app->add_option("--solver", f.solver, "builtin or external")
      ->check(CLI::IsMember({"builtin", "external"}))
      ->capture_default_str();
  app->add_option("--solver-cmd", f.solver_cmd, "External solver command; {cnf} is replaced by the DIMACS path");
  app->add_option("--timeout-ms", f.timeout_ms, "External solver timeout");
  app->add_option("--max-decisions", f.max_decisions, "Built-in solver decision limit");
  app->add_option("--max-conflicts", f.max_conflicts, "Built-in solver conflict limit");
}

SolverConfig solver_config(const SolveFlags& f) {
  SolverConfig c;
  c.phase = parse_phase(f.phase);
  c.decision_rule = f.decision == "jw" ? DecisionRule::StaticJeroslowWang : DecisionRule::AscendingIndex;
  c.limits.max_decisions = f.max_decisions;
  c.limits.max_conflicts = f.max_conflicts;
  return c;
}

std::set<TileId> parse_path_tiles(const std::string& symbols, const TileCatalog& catalog) {
  std::set<TileId> out;
  for (char c : symbols) {
    auto id = catalog.find(c);
    if (!id) throw UnknownTileError(std::string("--path-tiles: symbol '") + c + "' is not in the catalog");
    out.insert(*id);
  }
  return out;
}

struct Problem {
  TileGrid input;
  TileCatalog catalog;
  AdjacencyModel model;
  GenerateOptions options;
};

Problem load_problem(const ProblemFlags& pf, const SolveFlags* sf) {
  Problem p;
  std::optional<TileCatalog> fixed;
  if (!pf.catalog.empty()) fixed = parse_catalog_json(read_file(pf.catalog));
  auto parsed = parse_grid(read_file(pf.input), fixed, pf.input_periodic.value_or(pf.periodic));
  p.input = std::move(parsed.first);
  p.catalog = std::move(parsed.second);
  p.model = analyze(p.input, p.catalog.size());

  auto& o = p.options;
  o.encode.width = pf.width ? pf.width : p.input.width;
  o.encode.height = pf.height ? pf.height : p.input.height;
  o.encode.periodic = pf.periodic;
  o.encode.neighborhood_level = pf.nbhd;
  if (!pf.path_tiles.empty()) o.encode.path = PathSpec{parse_path_tiles(pf.path_tiles, p.catalog)};
  o.strategy = parse_ordering_strategy(pf.ordering);
  o.seed = pf.seed;
  o.negate = pf.negate;
  o.jw_pad = pf.jw_pad;
  if (sf) {
    o.solver = solver_config(*sf);
    if (sf->solver == "external") {
      if (sf->solver_cmd.empty()) throw InvalidArgument("--solver external requires --solver-cmd");
      ExternalSolverOptions ext;
      ext.command_template = sf->solver_cmd;
      if (sf->timeout_ms) ext.timeout = std::chrono::milliseconds(*sf->timeout_ms);
      o.external = std::move(ext);
    }
  }
  return p;
}

std::vector<std::string> dimacs_comments(const ProblemFlags& pf, const GenerateOptions& o) {
  std::vector<std::string> c;
  c.push_back("yoro seed=" + std::to_string(o.seed) + " strategy=" + std::string(to_string(o.strategy)));
  std::ostringstream dims;
  dims << "grid " << o.encode.width << "x" << o.encode.height << (o.encode.periodic ? " periodic" : " bounded")
       << (o.encode.neighborhood_level ? " nbhd" : "") << (o.encode.path ? " path=" + pf.path_tiles : "")
       << (o.negate ? " negated" : "") << (o.jw_pad ? " jw-padded" : "");
  c.push_back(dims.str());
  return c;
}

std::string stats_line(const GenerateResult& r, const Problem& p) {
  std::ostringstream s;
  s << "status=" << to_string(r.report.status) << " decisions=" << r.report.stats.decisions
    << " propagations=" << r.report.stats.propagations << " conflicts=" << r.report.stats.conflicts
    << " time_ms=" << r.report.stats.elapsed.count() * 1000.0;
  if (r.grid) {
    auto freq = tile_frequencies(*r.grid, p.catalog.size());
    auto target = tile_distribution(p.model);
    for (TileId t = 0; t < p.catalog.size(); ++t) s << " freq_" << p.catalog.symbol(t) << "=" << freq[t];
    s << " l1=" << l1_distance(freq, target).l1;
  }
  return s.str();
}

// Returns an exit code; reports the failure on err.
int check_result(const GenerateResult& r, std::ostream& err) {
  if (r.report.status == SolveStatus::Unsat) {
    err << "yoro: no tiling satisfies the constraints (UNSAT)\n";
    return kExitUnsat;
  }
  if (r.report.status == SolveStatus::LimitExceeded) {
    err << "yoro: solver limit exceeded before a solution was found\n";
    return kExitUnsat;
  }
  if (!r.adjacency_ok || !r.path_ok) {
    err << "yoro: decoded grid fails verification (" << (r.adjacency_ok ? "" : "adjacency ")
        << (r.path_ok ? "" : "path") << ")\n";
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_generate(const ProblemFlags& pf, const SolveFlags& sf, const std::string& out_path,
                 const std::string& png_path, std::size_t scale, const std::string& dimacs_out,
                 const std::string& ordering_out, std::ostream& out, std::ostream& err) {
  Problem p = load_problem(pf, &sf);
  GenerateResult r = generate(p.model, p.options);
  if (!dimacs_out.empty()) write_file(dimacs_out, write_dimacs(r.problem.solver_formula, dimacs_comments(pf, p.options)));
  if (!ordering_out.empty()) write_file(ordering_out, format_ordering(r.problem.ordering));
  for (const auto& w : r.problem.encoding.warnings) err << "yoro: warning: " << w << "\n";
  err << stats_line(r, p) << "\n";

  int code = check_result(r, err);
  if (!r.grid) return code;
  const std::string text = format_grid(*r.grid, p.catalog);
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  if (!png_path.empty()) {
    RenderOptions ro;
    ro.scale = scale;
    if (p.options.encode.path) {
      if (auto path = find_dirt_path(*r.grid, p.options.encode.path->path_tiles)) ro.overlay = *path;
    }
    write_png(png_path, *r.grid, p.catalog, ro);
  }
  return code;
}

int cmd_batch(const ProblemFlags& pf, const SolveFlags& sf, std::size_t runs, std::size_t jobs,
              const std::string& csv_path, bool timing, std::ostream& out, std::ostream& err) {
  if (runs == 0) throw InvalidArgument("--runs must be at least 1");
  Problem p = load_problem(pf, &sf);
  std::vector<std::optional<GenerateResult>> results(runs);
  std::vector<std::string> failures(runs);

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < runs; i += stride) {
      GenerateOptions o = p.options;
      o.seed = p.options.seed + i;
      try {
        results[i] = generate(p.model, o);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, runs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
  }

  int code = kExitOk;
  std::vector<RunRecord> records;
  for (std::size_t i = 0; i < runs; ++i) {
    const auto seed = p.options.seed + i;
    if (!failures[i].empty()) throw Error("seed " + std::to_string(seed) + ": " + failures[i]);
    const auto& r = *results[i];
    int c = check_result(r, err);
    if (c != kExitOk) {
      err << "yoro: seed " << seed << " failed\n";
      code = std::max(code, c);
      if (!r.grid) continue;
    }
    records.push_back({seed, *r.grid, r.report.stats});
  }
  BatchReportOptions bo;
  bo.include_timing = timing;
  const std::string csv = batch_report(records, tile_distribution(p.model), p.catalog, bo);
  if (csv_path.empty())
    out << csv;
  else
    write_file(csv_path, csv);
  return code;
}

int cmd_encode(const ProblemFlags& pf, const std::string& out_path, const std::string& ordering_out,
               std::ostream& out, std::ostream& err) {
  Problem p = load_problem(pf, nullptr);
  PreparedProblem prep = prepare(p.model, p.options);
  for (const auto& w : prep.encoding.warnings) err << "yoro: warning: " << w << "\n";
  const std::string text = write_dimacs(prep.solver_formula, dimacs_comments(pf, p.options));
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  if (!ordering_out.empty()) write_file(ordering_out, format_ordering(prep.ordering));
  return kExitOk;
}

int cmd_transform(const std::string& in_path, const std::string& out_path, bool negate, bool pad,
                  std::ostream& out) {
  CnfFormula f = read_dimacs(read_file(in_path));
  std::vector<std::string> comments;
  if (negate) {
    f = negate_all(f);
    comments.push_back("transform negate");
  }
  if (pad) {
    auto padded = jw_pad(f);
    comments.push_back("transform jw-pad original_vars=" + std::to_string(padded.original_vars) +
                       " clauses_added=" + std::to_string(padded.clauses_added));
    f = std::move(padded.formula);
  }
  const std::string text = write_dimacs(f, comments);
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  return kExitOk;
}

int cmd_render(const std::string& grid_path, const std::string& catalog_path, const std::string& png_path,
               std::size_t scale, const std::string& path_tiles, std::ostream& out) {
  std::optional<TileCatalog> fixed;
  if (!catalog_path.empty()) fixed = parse_catalog_json(read_file(catalog_path));
  auto [grid, catalog] = parse_grid(read_file(grid_path), fixed);
  RenderOptions ro;
  ro.scale = scale;
  if (!path_tiles.empty()) {
    if (auto path = find_dirt_path(grid, parse_path_tiles(path_tiles, catalog))) ro.overlay = *path;
  }
  out << render_ascii(grid, catalog, ro);
  if (!png_path.empty()) write_png(png_path, grid, catalog, ro);
  return kExitOk;
}

int cmd_solve(const std::string& cnf_path, const SolveFlags& sf, std::ostream& out) {
  CnfFormula f = read_dimacs(read_file(cnf_path));
  SolveReport r = solve(f, solver_config(sf));
  if (r.status == SolveStatus::Unsat) {
    out << "s UNSATISFIABLE\n";
    return kExitUnsat;
  }
  if (r.status == SolveStatus::LimitExceeded) {
    out << "s UNKNOWN\n";
    return kExitUnsat;
  }
  out << "s SATISFIABLE\n";
  std::size_t k = 0;
  for (Literal lit : r.model) {
    if (k % 16 == 0) out << (k ? "\nv" : "v");
    out << ' ' << lit;
    ++k;
  }
  out << (k ? "\nv 0\n" : "v 0\n");
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tile-grid generation via SAT with pre-rolled decision orderings"};
  app.name("yoro");
  app.require_subcommand(1);

  ProblemFlags pf;
  SolveFlags sf;

  auto* gen = app.add_subcommand("generate", "Generate one output grid");
  add_problem_flags(gen, pf);
  add_solve_flags(gen, sf);
  std::string out_path, png_path, dimacs_out, ordering_out;
  std::size_t scale = 8;
  gen->add_option("--out", out_path, "Output grid file (default: stdout)");
  gen->add_option("--png", png_path, "Also render a PNG");
  gen->add_option("--scale", scale, "PNG pixels per tile")->capture_default_str();
  gen->add_option("--dimacs-out", dimacs_out, "Write the formula given to the solver");
  gen->add_option("--ordering-out", ordering_out, "Write the decision ordering (one variable per line)");

  auto* batch = app.add_subcommand("batch", "Generate one grid per seed and report statistics as CSV");
  add_problem_flags(batch, pf);
  add_solve_flags(batch, sf);
  std::size_t runs = 10, jobs = 1;
  std::string csv_path;
  bool timing = false;
  batch->add_option("--runs", runs, "Number of seeds: seed, seed+1, ...")->capture_default_str();
  batch->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  batch->add_option("--csv", csv_path, "CSV output file (default: stdout)");
  batch->add_flag("--timing", timing, "Add an elapsed_ms column");

  auto* enc = app.add_subcommand("encode", "Write the renumbered DIMACS formula");
  add_problem_flags(enc, pf);
  std::string enc_out, enc_ordering;
  enc->add_option("--out", enc_out, "DIMACS output file (default: stdout)");
  enc->add_option("--ordering-out", enc_ordering, "Decision ordering file; line k is the original id of variable k");

  auto* tr = app.add_subcommand("transform", "DIMACS-to-DIMACS phase transforms");
  std::string tr_in, tr_out;
  bool tr_negate = false, tr_pad = false;
  tr->add_option("--in", tr_in, "Input DIMACS")->required()->check(CLI::ExistingFile);
  tr->add_option("--out", tr_out, "Output DIMACS (default: stdout)");
  tr->add_flag("--negate", tr_negate, "Negate every literal");
  tr->add_flag("--jw-pad", tr_pad, "Pad Jeroslow-Wang activities (applied after --negate)");

  auto* rd = app.add_subcommand("render", "Render a grid file as text or PNG");
  std::string rd_grid, rd_catalog, rd_png, rd_path;
  std::size_t rd_scale = 8;
  rd->add_option("--grid", rd_grid, "Grid file")->required()->check(CLI::ExistingFile);
  rd->add_option("--catalog", rd_catalog, "Tile catalog JSON")->check(CLI::ExistingFile);
  rd->add_option("--png", rd_png, "PNG output file");
  rd->add_option("--scale", rd_scale, "Pixels per tile")->capture_default_str();
  rd->add_option("--path-tiles", rd_path, "Highlight a monotone path of these symbols");

  auto* sv = app.add_subcommand("solve", "Solve a DIMACS file; prints s/v lines");
  std::string sv_cnf;
  sv->add_option("cnf", sv_cnf, "DIMACS file")->required()->check(CLI::ExistingFile);
  sv->add_option("--phase", sf.phase, "Phase")->check(CLI::IsMember({"true-first", "false-first"}));
  sv->add_option("--decision", sf.decision, "Decision rule")->check(CLI::IsMember({"asc", "jw"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(pf, sf, out_path, png_path, scale, dimacs_out, ordering_out, out, err);
    if (batch->parsed()) return cmd_batch(pf, sf, runs, jobs, csv_path, timing, out, err);
    if (enc->parsed()) return cmd_encode(pf, enc_out, enc_ordering, out, err);
    if (tr->parsed()) return cmd_transform(tr_in, tr_out, tr_negate, tr_pad, out);
    if (rd->parsed()) return cmd_render(rd_grid, rd_catalog, rd_png, rd_scale, rd_path, out);
    if (sv->parsed()) return cmd_solve(sv_cnf, sf, out);
  } catch (const AdapterError& e) {
    err << "yoro: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "yoro: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "yoro: internal error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitUsage;
}

}  // namespace yoro::cli
