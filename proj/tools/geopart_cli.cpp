#include "geopart/convex_decomp.hpp"
#include "geopart/corpus.hpp"
#include "geopart/disjoint_cover.hpp"
#include "geopart/io.hpp"
#include "geopart/render.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

using namespace geopart;

namespace {

enum Exit { kOk = 0, kInvalidInput = 2, kSolverFail = 3, kInvariant = 4 };

// Raised when a solver result fails its own checker.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string out;
  std::string epsilon = "1";
  std::string delta;
  int lambda = 6;
  int ell_max = SeparatorBudget{}.ell_max;
  long max_candidates = SeparatorBudget{}.max_candidates;
  std::uint64_t seed = 0;
  std::string mu = "0";
  int k_max = -1;
  bool verbose = false;
  bool timing = false;
  int count = 10;
  int max_vertices = 14;
  int max_holes = 2;
  int samples = 0;
};

Rational rational_flag(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--") + name + ": " + e.what());
  }
}

SeparatorBudget budget_from(const Options& o) {
  SeparatorBudget b;
  b.lambda = o.lambda;
  b.ell_max = o.ell_max;
  b.max_candidates = o.max_candidates;
  b.seed = o.seed;
  if (!o.delta.empty()) b.delta = rational_flag(o.delta, "delta");
  return b;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
}

void check(const ValidationReport& rep) {
  if (!rep.ok) throw InvariantError(rep.violation);
}

int finish(const Options& o, ResultDocument& doc, std::chrono::steady_clock::time_point start) {
  if (o.timing) {
    doc.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  check(verify_document(doc));
  emit(o, to_json(doc));
  if (doc.failed) std::cerr << doc.solver << ": FAIL\n";
  return doc.failed ? kSolverFail : kOk;
}

void set_decomposition(ResultDocument& doc, const ConvexDecomposition& dec) {
  doc.decomposition = dec;
  doc.counts["pieces"] = static_cast<long>(dec.pieces.size());
  doc.counts["diagonals"] = static_cast<long>(dec.added_diagonals.size());
}

int run_polygon(const std::string& solver, const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto poly = parse_polygon_json(read_text_file(o.input));
  ResultDocument doc;
  doc.solver = solver;
  doc.polygon = poly;
  doc.counts["vertices"] = poly.vertex_count();
  doc.counts["holes"] = static_cast<long>(poly.holes.size());
  if (solver == "hm") {
    set_decomposition(doc, hertel_mehlhorn(poly));
  } else if (solver == "exact") {
    const int k_max = o.k_max >= 0 ? o.k_max : static_cast<int>(hertel_mehlhorn(poly).pieces.size());
    doc.config["k_max"] = std::to_string(k_max);
    if (auto dec = exact_decompose(poly, k_max)) {
      set_decomposition(doc, *dec);
    } else {
      doc.failed = true;
    }
  } else {
    DecomposeConfig cfg;
    cfg.epsilon = rational_flag(o.epsilon, "epsilon");
    cfg.budget = budget_from(o);
    cfg.derive_delta = o.delta.empty();
    cfg.verbose = o.verbose;
    const auto res = decompose(poly, cfg);
    doc.config["epsilon"] = format_rational(res.epsilon);
    doc.config["delta"] = format_rational(res.delta);
    doc.config["lambda"] = std::to_string(o.lambda);
    doc.config["ell_max"] = std::to_string(o.ell_max);
    doc.config["max_candidates"] = std::to_string(o.max_candidates);
    doc.config["seed"] = std::to_string(o.seed);
    doc.counts["alpha_cap"] = res.alpha_cap;
    doc.counts["max_level"] = res.max_level;
    doc.stats = res.stats;
    if (o.verbose) {
      for (const auto& line : res.log) std::cerr << line << "\n";
    }
    if (res.result) {
      set_decomposition(doc, *res.result);
    } else {
      doc.failed = true;
    }
  }
  return finish(o, doc, start);
}

int run_samples(const std::string& solver, const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const Rational mu = rational_flag(o.mu, "mu");
  std::optional<SampleSet> samples;
  try {
    samples.emplace(parse_samples_csv(read_text_file(o.input)), mu);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  BasisStats bstats;
  const Basis basis = build_basis(*samples, &bstats);
  ResultDocument doc;
  doc.solver = solver;
  doc.samples = samples->points3();
  doc.mu = mu;
  doc.config["mu"] = format_rational(mu);
  doc.counts["samples"] = samples->size();
  doc.counts["basis"] = basis.size();
  doc.counts["subsets"] = bstats.subsets;
  if (o.verbose) {
    std::cerr << "basis: " << basis.size() << " triangles from " << bstats.subsets << " subsets, "
              << bstats.invalid << " invalid candidates\n";
  }
  if (solver == "basis") {
    for (const auto& t : basis.triangles()) doc.triangles.push_back(t.tri);
    return finish(o, doc, start);
  }
  CompcoverConfig cfg;
  cfg.budget = budget_from(o);
  cfg.derive_delta = o.delta.empty();
  const auto inst = CoverInstance::full(*samples, basis);
  const auto res = compcover(inst, *samples, basis, cfg);
  doc.config["delta"] = format_rational(res.delta);
  doc.config["lambda"] = std::to_string(o.lambda);
  doc.config["ell_max"] = std::to_string(o.ell_max);
  doc.config["max_candidates"] = std::to_string(o.max_candidates);
  doc.config["seed"] = std::to_string(o.seed);
  doc.counts["depth_cap"] = res.depth_cap;
  doc.counts["max_level"] = res.max_level;
  doc.stats = res.stats;
  if (!res.result) {
    doc.failed = true;
    return finish(o, doc, start);
  }
  check(check_disjoint_cover(*res.result, basis, *samples, inst.points));
  doc.counts["triangles"] = res.result->size();
  if (solver == "cover") {
    for (int id : res.result->triangle_ids) doc.triangles.push_back(basis[id].tri);
  } else {
    doc.patches = lift_cover(*res.result, basis);
    doc.counts["patches"] = static_cast<long>(doc.patches.size());
  }
  return finish(o, doc, start);
}

int run_verify(const Options& o) {
  const auto doc = parse_result_document(read_text_file(o.input));
  const auto rep = verify_document(doc);
  if (!rep.ok) {
    std::cerr << "verify: " << rep.violation;
    for (int i : rep.indices) std::cerr << " " << i;
    std::cerr << "\n";
    return kInvariant;
  }
  std::cout << "verify: ok (" << doc.solver << (doc.failed ? ", FAIL document" : "") << ")\n";
  return kOk;
}

int run_render(const Options& o) {
  const auto doc = parse_result_document(read_text_file(o.input));
  try {
    emit(o, doc.planar() ? render_svg(doc) : render_obj(doc));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return kOk;
}

int run_gen(const Options& o) {
  std::mt19937_64 rng(o.seed);
  if (o.samples > 0) {
    emit(o, samples_to_csv(random_samples(rng, o.samples, 4 * o.samples, 2)));
    return kOk;
  }
  CorpusOptions opts;
  opts.max_vertices = o.max_vertices;
  opts.max_holes = o.max_holes;
  std::vector<PolygonWithHoles> corpus;
  try {
    corpus = generate_corpus(o.seed, o.count, opts);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (o.out.empty()) {
    for (const auto& p : corpus) std::cout << polygon_to_json(p);
    return kOk;
  }
  std::filesystem::create_directories(o.out);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "poly_%04zu.json", i);
    write_text_file(std::filesystem::path(o.out) / name, polygon_to_json(corpus[i]));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex decomposition of polygons with holes and disjoint triangle covers of sampled surfaces"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output file (stdout by default)");
    sub->add_flag("--verbose", o.verbose, "Diagnostics on stderr");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Input file")->required();
    sub->add_option("--epsilon", o.epsilon, "Target error")->capture_default_str();
    sub->add_option("--delta", o.delta, "Separator balance slack (derived when omitted)");
    sub->add_option("--lambda", o.lambda, "Base-case threshold")->capture_default_str();
    sub->add_option("--ell-max", o.ell_max, "Longest separator cycle")->capture_default_str();
    sub->add_option("--max-candidates", o.max_candidates, "Candidates per node")->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed echoed into the result")->capture_default_str();
    sub->add_option("--mu", o.mu, "Vertical error bound")->capture_default_str();
    sub->add_flag("--timing", o.timing, "Record wall time in the result");
    add_common(sub);
  };

  auto* exact = app.add_subcommand("exact", "Minimum convex decomposition by exhaustive search");
  add_solver(exact);
  exact->add_option("--k-max", o.k_max, "Largest piece count to search (default: Hertel-Mehlhorn count)");
  auto* hm = app.add_subcommand("hm", "Hertel-Mehlhorn decomposition");
  add_solver(hm);
  auto* dec = app.add_subcommand("decompose", "Separator-based recursive decomposition");
  add_solver(dec);
  auto* basis = app.add_subcommand("basis", "Basis triangles of a sample set");
  add_solver(basis);
  auto* cover = app.add_subcommand("cover", "Disjoint cover of the samples by valid triangles");
  add_solver(cover);
  auto* lift = app.add_subcommand("lift", "Cover lifted to planar patches");
  add_solver(lift);
  auto* verify = app.add_subcommand("verify", "Re-check a result document");
  verify->add_option("input", o.input, "Result document")->required();
  add_common(verify);
  auto* render = app.add_subcommand("render", "SVG of planar results, OBJ of lifted patches");
  render->add_option("input", o.input, "Result document")->required();
  add_common(render);
  auto* gen = app.add_subcommand("gen", "Seeded random polygons or samples");
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_option("--count", o.count, "Polygons to generate")->capture_default_str();
  gen->add_option("--max-vertices", o.max_vertices)->capture_default_str();
  gen->add_option("--max-holes", o.max_holes)->capture_default_str();
  gen->add_option("--samples", o.samples, "Generate a sample CSV of this size instead");
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    for (const char* name : {"exact", "hm", "decompose"}) {
      if (app.got_subcommand(name)) return run_polygon(name, o);
    }
    for (const char* name : {"basis", "cover", "lift"}) {
      if (app.got_subcommand(name)) return run_samples(name, o);
    }
    if (app.got_subcommand("verify")) return run_verify(o);
    if (app.got_subcommand("render")) return run_render(o);
    if (app.got_subcommand("gen")) return run_gen(o);
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kInvariant;
  }
  return kInvalidInput;
}
