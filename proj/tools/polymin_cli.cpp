// Command-line front end. Talks to the library only through polymin.h.
#include <polymin/polymin.h>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Failure {
  pm_status status;
  std::string message;
};

void check(pm_status s) {
  if (s != PM_OK) throw Failure{s, pm_last_error()};
}

struct PolylineDeleter {
  void operator()(pm_polyline* p) const { pm_polyline_free(p); }
};
struct DocumentDeleter {
  void operator()(pm_document* d) const { pm_document_free(d); }
};
struct ResultDeleter {
  void operator()(pm_result* r) const { pm_result_free(r); }
};
using Polyline = std::unique_ptr<pm_polyline, PolylineDeleter>;
using Document = std::unique_ptr<pm_document, DocumentDeleter>;
using Result = std::unique_ptr<pm_result, ResultDeleter>;

std::string take(char* s) {
  std::string out(s ? s : "");
  pm_string_free(s);
  return out;
}

std::optional<pm_format> parse_format(const std::string& name) {
  if (name == "csv") return PM_FORMAT_CSV;
  if (name == "wkt") return PM_FORMAT_WKT;
  if (name == "geojson" || name == "json") return PM_FORMAT_GEOJSON;
  return std::nullopt;
}

pm_format format_for(const std::string& explicit_name, const std::string& path) {
  if (!explicit_name.empty()) {
    if (auto f = parse_format(explicit_name)) return *f;
    throw Failure{PM_ERR_INVALID_ARGUMENT, "unknown format '" + explicit_name + "'"};
  }
  if (path.empty() || path == "-") return PM_FORMAT_CSV;
  std::string ext = std::filesystem::path(path).extension().string();
  if (!ext.empty()) ext.erase(0, 1);
  return parse_format(ext).value_or(PM_FORMAT_CSV);
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{PM_ERR_INVALID_ARGUMENT, "cannot open '" + path + "'"};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{PM_ERR_INVALID_ARGUMENT, "cannot write '" + path + "'"};
  out << text;
}

Document load(const std::string& path, const std::string& format) {
  const std::string text = read_input(path);
  pm_document* doc = nullptr;
  check(pm_document_parse(text.data(), text.size(), format_for(format, path), &doc));
  return Document(doc);
}

Document empty_document() {
  pm_document* doc = nullptr;
  check(pm_document_create(&doc));
  return Document(doc);
}

std::string render(const pm_polyline* source, const pm_polyline* result,
                   const pm_compress_options* candidates) {
  char* svg = nullptr;
  check(pm_render_svg(source, result, candidates, &svg));
  return take(svg);
}

std::string svg_path(const std::string& base, std::size_t index, std::size_t count) {
  if (count == 1) return base;
  std::filesystem::path p(base);
  const std::string stem = p.stem().string() + "_" + std::to_string(index);
  return (p.parent_path() / (stem + p.extension().string())).string();
}

// Writes `doc` in the requested output format; "svg" renders each pair.
struct Output {
  std::string path = "-";
  std::string format;

  void emit(const pm_document* doc, const std::vector<std::pair<const pm_polyline*, const pm_polyline*>>& pairs,
            const std::string& input_path) const {
    if (format == "svg") {
      if (pairs.size() != 1)
        throw Failure{PM_ERR_INVALID_ARGUMENT, "svg output needs exactly one polyline"};
      write_output(path, render(pairs[0].first, pairs[0].second, nullptr));
      return;
    }
    const pm_format f =
        format.empty() ? (path != "-" ? format_for("", path) : format_for("", input_path))
                       : format_for(format, "");
    char* text = nullptr;
    check(pm_document_serialize(doc, f, &text));
    write_output(path, take(text));
  }
};

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("-o,--output", out.path, "Output path ('-' for stdout)");
  cmd->add_option("--output-format", out.format, "csv, wkt, geojson or svg")
      ->check(CLI::IsMember({"csv", "wkt", "geojson", "svg"}));
}

struct CompressArgs {
  std::string input = "-";
  std::string format;
  Output out;
  std::string mode = "free";
  std::string svg;
  bool closed = false;
  bool no_prune = false;
  bool strip = false;
  bool forbid_sharp = false;
  bool dedup = false;
  bool svg_candidates = false;
  bool quiet = false;
  pm_compress_options opts{};
};

int run_compress(CompressArgs& a) {
  Document doc = load(a.input, a.format);
  pm_compress_options o = a.opts;
  o.prune = a.no_prune ? 0 : 1;
  o.closed = a.closed ? 1 : 0;
  o.strip_zero_segments = a.strip ? 1 : 0;
  o.forbid_sharp = a.forbid_sharp ? 1 : 0;
  o.dedup_candidates = a.dedup ? 1 : 0;
  o.mode = a.mode == "ortho" ? PM_MODE_ORTHO : a.mode == "diag45" ? PM_MODE_DIAG45 : PM_MODE_FREE;

  Document result_doc = empty_document();
  std::vector<Polyline> sources;
  std::vector<Polyline> results;
  const std::size_t count = pm_document_count(doc.get());
  for (std::size_t i = 0; i < count; ++i) {
    pm_polyline* src = nullptr;
    check(pm_document_get(doc.get(), i, &src));
    sources.emplace_back(src);
    pm_result* r = nullptr;
    check(pm_compress(src, &o, &r));
    Result res(r);
    pm_polyline* poly = nullptr;
    check(pm_result_polyline(res.get(), &poly));
    results.emplace_back(poly);
    check(pm_document_add(result_doc.get(), poly, pm_document_id(doc.get(), i)));
    if (!a.quiet) {
      std::fprintf(stderr, "%s: %zu -> %zu vertices, %zu segments, sse %.9g", pm_document_id(doc.get(), i),
                   pm_polyline_size(src), pm_polyline_size(poly), pm_result_segments(res.get()),
                   pm_result_sse(res.get()));
      if (o.mode != PM_MODE_FREE) std::fprintf(stderr, ", rotation %.6g deg", pm_result_rotation_deg(res.get()));
      std::fputc('\n', stderr);
    }
  }

  std::vector<std::pair<const pm_polyline*, const pm_polyline*>> pairs;
  for (std::size_t i = 0; i < count; ++i) pairs.emplace_back(sources[i].get(), results[i].get());
  a.out.emit(result_doc.get(), pairs, a.input);
  if (!a.svg.empty()) {
    for (std::size_t i = 0; i < count; ++i)
      write_output(svg_path(a.svg, i, count),
                   render(sources[i].get(), results[i].get(), a.svg_candidates ? &o : nullptr));
  }
  return 0;
}

struct BaselineArgs {
  std::string input = "-";
  std::string format;
  double tolerance = 1.0;
  Output out;
};

int run_baseline(BaselineArgs& a) {
  Document doc = load(a.input, a.format);
  Document result_doc = empty_document();
  std::vector<Polyline> sources, results;
  const std::size_t count = pm_document_count(doc.get());
  for (std::size_t i = 0; i < count; ++i) {
    pm_polyline* src = nullptr;
    check(pm_document_get(doc.get(), i, &src));
    sources.emplace_back(src);
    pm_polyline* dp = nullptr;
    check(pm_douglas_peucker(src, a.tolerance, &dp));
    results.emplace_back(dp);
    check(pm_document_add(result_doc.get(), dp, pm_document_id(doc.get(), i)));
  }
  std::vector<std::pair<const pm_polyline*, const pm_polyline*>> pairs;
  for (std::size_t i = 0; i < count; ++i) pairs.emplace_back(sources[i].get(), results[i].get());
  a.out.emit(result_doc.get(), pairs, a.input);
  return 0;
}

struct GenerateArgs {
  std::size_t n = 1000;
  double sigma = 0.25;
  double radius = 1.0;
  double sweep = 90.0;
  double noise = 0.01;
  std::uint64_t seed = 1;
  Output out;
};

int emit_generated(pm_polyline* raw, const Output& out) {
  Polyline poly(raw);
  Document doc = empty_document();
  check(pm_document_add(doc.get(), poly.get(), ""));
  Output o = out;
  if (o.format == "svg") o.format.clear();
  o.emit(doc.get(), {}, "-");
  return 0;
}

struct BenchArgs {
  std::vector<std::size_t> sizes{1000, 2000, 5000, 10000, 20000, 50000};
  std::vector<std::uint64_t> seeds{1};
  std::string output = "-";
  bool no_prune = false;
  pm_compress_options opts{};
};

int run_bench(BenchArgs& a) {
  pm_compress_options o = a.opts;
  o.prune = a.no_prune ? 0 : 1;
  char* csv = nullptr;
  double slope = NAN;
  check(pm_bench(a.sizes.data(), a.sizes.size(), a.seeds.data(), a.seeds.size(), &o, &csv,
                 &slope));
  write_output(a.output, take(csv));
  if (std::isfinite(slope)) std::fprintf(stderr, "log-log slope: %.4f\n", slope);
  return 0;
}

void add_solver_options(CLI::App* cmd, pm_compress_options& o) {
  cmd->add_option("-t,--tolerance", o.tolerance, "Maximum deviation T")->check(CLI::PositiveNumber);
  cmd->add_option("--q", o.q, "Lattice error as a fraction of T")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--directions", o.directions, "Directions in the zigzag tables")
      ->check(CLI::Range(4, 1 << 16));
  cmd->add_option("--endpoint-dirs", o.endpoint_dirs, "Endpoint region: 4 rectangle, 8 octagon")
      ->check(CLI::IsMember({4, 8}));
  cmd->add_option("--densify", o.densify, "Split source segments longer than L");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-vertex polyline compression"};
  app.set_version_flag("--version", std::string(pm_version()));
  app.require_subcommand(1);

  CompressArgs ca;
  pm_compress_options_init(&ca.opts);
  auto* compress = app.add_subcommand("compress", "Compress polylines within a tolerance");
  compress->add_option("input", ca.input, "Input file ('-' or omitted for stdin)");
  compress->add_option("--format", ca.format, "Input format: csv, wkt or geojson")
      ->check(CLI::IsMember({"csv", "wkt", "geojson"}));
  add_output_options(compress, ca.out);
  add_solver_options(compress, ca.opts);
  compress->add_option("--mode", ca.mode, "free, ortho or diag45")
      ->check(CLI::IsMember({"free", "ortho", "diag45"}));
  compress->add_flag("--closed", ca.closed, "Treat inputs as closed polylines");
  compress->add_flag("--no-prune", ca.no_prune, "Disable lower-bound pruning");
  compress->add_flag("--strip-zero-segments", ca.strip, "Drop zero-length segments (ortho modes)");
  compress->add_flag("--forbid-sharp", ca.forbid_sharp, "diag45: forbid 135 degree turns");
  compress->add_flag("--dedup-candidates", ca.dedup, "Drop locations shared by both neighbours");
  compress->add_option("--rotation-step", ca.opts.rotation_step_deg, "Rotation sweep step (degrees)")
      ->check(CLI::PositiveNumber);
  compress->add_option("--svg", ca.svg, "Also write an SVG plot to PATH");
  compress->add_flag("--svg-candidates", ca.svg_candidates, "Draw candidate locations in the SVG");
  compress->add_flag("--quiet", ca.quiet, "No per-polyline summary on stderr");

  BaselineArgs ba;
  auto* baseline = app.add_subcommand("baseline-dp", "Douglas-Peucker simplification");
  baseline->add_option("input", ba.input, "Input file ('-' or omitted for stdin)");
  baseline->add_option("--format", ba.format, "Input format: csv, wkt or geojson")
      ->check(CLI::IsMember({"csv", "wkt", "geojson"}));
  baseline->add_option("-t,--tolerance", ba.tolerance, "Tolerance")->check(CLI::PositiveNumber);
  add_output_options(baseline, ba.out);

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Synthetic polylines");
  generate->require_subcommand(1);
  auto* brownian = generate->add_subcommand("brownian", "Gaussian random walk from the origin");
  brownian->add_option("-n,--n", ga.n, "Vertex count")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  brownian->add_option("--sigma", ga.sigma, "Increment standard deviation");
  brownian->add_option("--seed", ga.seed, "Random seed");
  add_output_options(brownian, ga.out);
  auto* arc = generate->add_subcommand("arc", "Circular arc with disk noise");
  arc->add_option("--radius", ga.radius, "Arc radius")->check(CLI::PositiveNumber);
  arc->add_option("--sweep", ga.sweep, "Sweep angle (degrees)");
  arc->add_option("-n,--n", ga.n, "Vertex count")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  arc->add_option("--noise", ga.noise, "Noise disk radius")->check(CLI::NonNegativeNumber);
  arc->add_option("--seed", ga.seed, "Random seed");
  add_output_options(arc, ga.out);

  BenchArgs bench_args;
  pm_compress_options_init(&bench_args.opts);
  auto* bench = app.add_subcommand("bench", "Time solves on Brownian inputs");
  bench->add_option("--sizes", bench_args.sizes, "Vertex counts")->delimiter(',');
  bench->add_option("--seeds", bench_args.seeds, "Seeds")->delimiter(',');
  bench->add_option("-o,--output", bench_args.output, "CSV output path");
  bench->add_flag("--no-prune", bench_args.no_prune, "Disable lower-bound pruning");
  add_solver_options(bench, bench_args.opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*compress) return run_compress(ca);
    if (*baseline) return run_baseline(ba);
    if (*brownian) {
      pm_polyline* p = nullptr;
      check(pm_generate_brownian(ga.n, ga.sigma, ga.seed, &p));
      return emit_generated(p, ga.out);
    }
    if (*arc) {
      pm_polyline* p = nullptr;
      check(pm_generate_arc(ga.radius, ga.sweep, ga.n, ga.noise, ga.seed, &p));
      return emit_generated(p, ga.out);
    }
    if (*bench) return run_bench(bench_args);
  } catch (const Failure& f) {
    std::cerr << "polymin: " << f.message << '\n';
    switch (f.status) {
      case PM_ERR_PARSE:
        return 2;
      case PM_ERR_NO_SOLUTION:
        return 3;
      default:
        return 1;
    }
  }
  return 1;
}
