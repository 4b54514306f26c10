// medalg: construct, analyze, and verify finite median algebras, walls,
// intrinsic uniformities/topologies, and symbolic compactifications.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "medalg/harness.hpp"
#include "medalg/io.hpp"
#include "medalg/periodic.hpp"
#include "medalg/roller.hpp"
#include "medalg/topology.hpp"
#include "medalg/uniformity.hpp"
#include "medalg/walls.hpp"

using nlohmann::json;
using namespace medalg;

namespace {

json report_to_json(const TheoremReport& r) {
  json j;
  j["check"] = r.check_id;
  j["instance"] = r.instance_id;
  j["pass"] = r.pass;
  j["skipped"] = r.skipped;
  j["witness"] = r.witness;
  j["millis"] = r.millis;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot open " + path + " for writing");
  out << text;
}

int cmd_verify(std::uint64_t seed, const std::vector<std::string>& checks,
               const std::string& out_path, int threads) {
  CorpusSpec spec;
  spec.seed = seed;
  auto corpus = build_default_corpus(spec);
  auto reports = run_registry(corpus, checks, threads);

  std::map<std::string, std::array<int, 3>> tally;  // pass, fail, skip
  for (const auto& r : reports) {
    auto& t = tally[r.check_id];
    if (r.skipped)
      ++t[2];
    else if (r.pass)
      ++t[0];
    else
      ++t[1];
  }
  std::cout << "corpus: " << corpus.size() << " instances (seed " << seed << ")\n";
  for (const auto& [id, t] : tally)
    std::cout << (t[1] ? "FAIL " : "ok   ") << id << ": " << t[0] << " pass, " << t[1]
              << " fail, " << t[2] << " skipped\n";

  if (!out_path.empty()) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    write_text(out_path, arr.dump(2) + "\n");
  }

  for (const auto& r : reports)
    if (!r.skipped && !r.pass) {
      std::cout << "first failure: " << r.check_id << " on " << r.instance_id << "\n"
                << r.witness << "\n";
      return 1;
    }
  return 0;
}

json analyze_to_json(const FiniteMedianAlgebra& a) {
  json j;
  j["n"] = a.size();
  j["provenance"] = to_string(a.provenance());
  j["rank"] = rank(a);
  j["walls"] = walls(a).count();
  j["adjacent_pairs"] = int(a.adjacent_pairs().size());
  j["chain_intervals"] = int(chain_structure(a).chain_pairs.size());

  auto t2 = t2m_check(a);
  j["t2m"] = t2.pass;
  if (t2.pass && !t2.witnesses.empty()) {
    const auto& w = t2.witnesses.front();
    j["t2m_witness"] = {{"x", a.label_string(w.x)},
                        {"y", a.label_string(w.y)},
                        {"u", a.label_string(w.u)},
                        {"v", a.label_string(w.v)}};
  }
  j["tau_m_discrete"] = tau_m(a).discrete();
  json isolating = json::array();
  for (int x = 0; x < std::min(a.size(), 8); ++x)
    isolating.push_back(min_isolating_branches(a, x));
  j["min_isolating_branches"] = std::move(isolating);
  if (walls(a).count() <= 40) j["roller_orientations"] = int(consistent_orientations(a).size());
  j["algebra"] = algebra_to_json(a);
  return j;
}

int cmd_analyze(const std::string& file, const std::string& format, const std::string& out_path) {
  FiniteMedianAlgebra a = load_algebra_file(file);
  json j = analyze_to_json(a);
  if (format == "structured") {
    std::string text = j.dump(2) + "\n";
    if (!out_path.empty())
      write_text(out_path, text);
    else
      std::cout << text;
    return 0;
  }
  std::cout << "elements:        " << j["n"] << "\n"
            << "provenance:      " << j["provenance"].get<std::string>() << "\n"
            << "rank:            " << j["rank"] << "\n"
            << "walls:           " << j["walls"] << "\n"
            << "adjacent pairs:  " << j["adjacent_pairs"] << "\n"
            << "chain intervals: " << j["chain_intervals"] << "\n";
  std::cout << "separated (t2m): " << (j["t2m"].get<bool>() ? "yes" : "no");
  if (j.contains("t2m_witness"))
    std::cout << "  e.g. pair (" << j["t2m_witness"]["x"].get<std::string>() << ","
              << j["t2m_witness"]["y"].get<std::string>() << ") via chain ["
              << j["t2m_witness"]["u"].get<std::string>() << ","
              << j["t2m_witness"]["v"].get<std::string>() << "]";
  std::cout << "\n";
  std::cout << "tau_m discrete:  " << (j["tau_m_discrete"].get<bool>() ? "yes" : "no") << "\n";
  std::cout << "isolating sets:  " << j["min_isolating_branches"].dump()
            << (a.size() > 8 ? " (first 8 elements)" : "") << "\n";
  if (j.contains("roller_orientations"))
    std::cout << "orientations:    " << j["roller_orientations"] << "\n";
  if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_roller(const std::string& spec) {
  SymbolicCompactification s = parse_symbolic_spec(spec);
  std::cout << "boundary: " << s.boundary_description() << "\n";
  return 0;
}

int cmd_embed_interval(const std::string& file, int x, int y) {
  FiniteMedianAlgebra a = load_algebra_file(file);
  if (x < 0 || y < 0 || x >= a.size() || y >= a.size()) {
    std::cerr << "error: endpoints outside the carrier\n";
    return 2;
  }
  auto emb = interval_chain_embedding(a, x, y);
  std::cout << "interval [" << a.label_string(x) << "," << a.label_string(y) << "]: "
            << emb.members.size() << " elements, " << emb.colouring.oriented.size()
            << " separating walls, " << emb.colouring.classes.size() << " chain classes\n";
  for (std::size_t i = 0; i < emb.colouring.classes.size(); ++i) {
    std::cout << "class " << i << ":";
    for (int wi : emb.colouring.classes[i])
      std::cout << " minus=" << emb.colouring.oriented[wi].minus.count() << "el";
    std::cout << "\n";
  }
  for (std::size_t i = 0; i < emb.members.size(); ++i) {
    std::cout << a.label_string(emb.members[i]) << " -> (";
    for (std::size_t c = 0; c < emb.coords[i].size(); ++c)
      std::cout << (c ? "," : "") << emb.coords[i][c];
    std::cout << ")\n";
  }
  std::cout << "injective: " << (emb.injective ? "yes" : "no")
            << "; median-preserving: " << (emb.median_preserving ? "yes" : "no") << "\n";
  return emb.injective && emb.median_preserving ? 0 : 1;
}

int cmd_demo(const std::string& name) {
  if (name == "cube3-shadows") {
    FiniteMedianAlgebra c = make_hypercube(3);
    auto at = [&](int a, int b, int d) { return c.index_of_label({a, b, d}); };
    Element x = at(0, 0, 0), y = at(1, 1, 0), z = at(1, 0, 0);
    auto show = [&](const char* tag, const SubsetMask& m) {
      std::cout << tag << " = {";
      bool first = true;
      m.for_each([&](int e) {
        std::cout << (first ? "" : ", ") << c.label_string(e);
        first = false;
      });
      std::cout << "}\n";
    };
    std::cout << "3-cube, x=(0,0,0), y=(1,1,0), z=(1,0,0)\n";
    show("shadow of y lit from x ", shadow(c, y, x));
    show("branch                 ", branch(c, y, x));
    show("shadow of y lit from z ", shadow(c, y, z));
    show("branch                 ", branch(c, y, z));
    std::cout << "the two branches differ: [x,y] is a square, not a chain\n";
    return 0;
  }
  if (name == "square-nonconvex") {
    FiniteMedianAlgebra c = make_hypercube(2);
    auto at = [&](int a, int b) { return c.index_of_label({a, b}); };
    std::cout << "2-cube: med((1,0),(1,1),(0,1)) = "
              << c.label_string(c.med(at(1, 0), at(1, 1), at(0, 1))) << "\n";
    SubsetMask s(c.size());
    s.set(at(0, 0));
    s.set(at(1, 0));
    s.set(at(0, 1));
    std::cout << "{(0,0),(1,0),(0,1)} convex? " << (is_convex(c, s) ? "yes" : "no") << "\n";
    std::cout << "hull = all " << convex_hull(c, s).count() << " vertices\n";
    return 0;
  }
  if (name == "starlet") {
    const int n = 6;
    FiniteMedianAlgebra st = make_starlet(n);
    std::cout << "starlet(" << n << "): median of any three distinct points = center\n";
    std::cout << "degree of center: " << st.adjacency()[0].size() << "\n";
    std::cout << "branches needed to isolate the center: " << min_isolating_branches(st, 0) << "\n";
    std::cout << "branches needed to isolate a leaf:     " << min_isolating_branches(st, 1) << "\n";
    auto s = SymbolicCompactification::starlet(n);
    std::cout << "compactified boundary: " << s.boundary_description() << "\n";
    return 0;
  }
  if (name == "periodic-square") {
    PeriodicBiSequence x("01"), y("1");
    std::cout << "periodic sequences x=[01], y=[1] differ at one residue\n";
    auto sq = periodic_square_witness(x, y);
    std::cout << "square inside [x,y]: ";
    for (int i = 0; i < 4; ++i) std::cout << (i ? ", " : "") << "[" << sq.corner[i].to_string() << "]";
    std::cout << "\nverified 2-cube: " << (verify_periodic_square(x, y, sq) ? "yes" : "no") << "\n";
    std::cout << "so no nontrivial interval here is a chain\n";
    return 0;
  }
  if (name == "zline-ends") {
    auto s = parse_symbolic_spec("zline");
    std::cout << "boundary: " << s.boundary_description() << "\n";
    return 0;
  }
  std::cerr << "error: unknown demo '" << name
            << "' (want cube3-shadows | square-nonconvex | starlet | periodic-square | zline-ends)\n";
  return 2;
}

FiniteMedianAlgebra algebra_from_spec(const std::string& spec, std::uint64_t seed) {
  std::vector<std::string> tok;
  std::stringstream ss(spec);
  std::string t;
  while (std::getline(ss, t, ':')) tok.push_back(t);
  if (tok.empty()) throw Error("bad-spec", "empty spec");

  auto parse_int = [&](const std::string& s) {
    try {
      return std::stoi(s);
    } catch (...) {
      throw Error("bad-spec", "cannot parse number '" + s + "' in spec '" + spec + "'");
    }
  };
  auto parse_grid = [&](const std::string& dims) {
    std::vector<int> lens;
    std::stringstream ds(dims);
    std::string d;
    while (std::getline(ds, d, 'x')) lens.push_back(parse_int(d));
    if (lens.empty()) throw Error("bad-spec", "grid needs dimensions like 3x3");
    FiniteMedianAlgebra acc = make_chain(lens[0]);
    for (std::size_t i = 1; i < lens.size(); ++i) acc = make_product(acc, make_chain(lens[i]));
    return acc;
  };

  if (tok[0] == "cube" && tok.size() == 2) return make_hypercube(parse_int(tok[1]));
  if (tok[0] == "chain" && tok.size() == 2) return make_chain(parse_int(tok[1]));
  if (tok[0] == "starlet" && tok.size() == 2) return make_starlet(parse_int(tok[1]));
  if (tok[0] == "grid" && tok.size() == 2) return parse_grid(tok[1]);
  if (tok[0] == "closure" && tok.size() == 4) {
    FiniteMedianAlgebra ambient;
    if (tok[1] == "cube")
      ambient = make_hypercube(parse_int(tok[2]));
    else if (tok[1] == "grid")
      ambient = parse_grid(tok[2]);
    else
      throw Error("bad-spec", "closure ambient must be cube or grid");
    CorpusSpec cs;
    cs.seed = seed;
    return random_subalgebra(cs, ambient, parse_int(tok[3]), 0);
  }
  throw Error("bad-spec",
              "unknown spec '" + spec +
                  "' (want cube:K | chain:K | starlet:N | grid:AxB | closure:cube:K:S | closure:grid:AxB:S)");
}

int cmd_gen(const std::string& spec, const std::string& from_report, const std::string& out_path,
            std::uint64_t seed) {
  if (spec.empty() == from_report.empty()) {
    std::cerr << "error: pass exactly one of --spec or --from-report\n";
    return 2;
  }
  std::string text;
  if (!spec.empty()) {
    text = save_algebra(algebra_from_spec(spec, seed));
  } else {
    std::ifstream in(from_report);
    if (!in) {
      std::cerr << "error: cannot open " << from_report << "\n";
      return 2;
    }
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      std::cerr << "error: report parse: " << e.what() << "\n";
      return 2;
    }
    if (!j.contains("algebra")) {
      std::cerr << "error: report has no embedded algebra\n";
      return 2;
    }
    text = j["algebra"].dump(2) + "\n";
  }
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"median algebra toolkit"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the theorem registry on the seeded corpus");
  std::uint64_t seed = 42;
  std::vector<std::string> checks;
  std::string out_path;
  int threads = 0;
  verify->add_option("--seed", seed, "corpus seed");
  verify->add_option("--checks", checks, "comma-separated check ids")->delimiter(',');
  verify->add_option("--out", out_path, "write the structured report here");
  verify->add_option("--threads", threads, "worker threads (default: MEDALG_THREADS or hardware)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "summarize an algebra file");
  std::string analyze_file, analyze_format = "text", analyze_out;
  analyze->add_option("file", analyze_file, "algebra file")->required();
  analyze->add_option("--format", analyze_format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  analyze->add_option("--out", analyze_out, "write the structured report here");

  // roller
  auto* roller = app.add_subcommand("roller", "describe a symbolic compactification");
  std::string symbolic;
  roller->add_option("--symbolic", symbolic, "zline | chain:k | starlet:n | products with x, ^")
      ->required();

  // embed-interval
  auto* embed = app.add_subcommand("embed-interval", "chain colouring and embedding of an interval");
  std::string embed_file;
  int embed_x = 0, embed_y = 0;
  embed->add_option("file", embed_file)->required();
  embed->add_option("x", embed_x, "first endpoint (element index)")->required();
  embed->add_option("y", embed_y, "second endpoint (element index)")->required();

  // demo
  auto* demo = app.add_subcommand("demo", "run a fixed worked example");
  std::string demo_name;
  demo->add_option("name", demo_name,
                   "cube3-shadows | square-nonconvex | starlet | periodic-square | zline-ends")
      ->required();

  // gen
  auto* gen = app.add_subcommand("gen", "emit an algebra file");
  std::string gen_spec, gen_from_report, gen_out;
  std::uint64_t gen_seed = 42;
  gen->add_option("--spec", gen_spec, "cube:K | chain:K | starlet:N | grid:AxB | closure:...");
  gen->add_option("--from-report", gen_from_report, "re-emit the algebra embedded in a report");
  gen->add_option("--out", gen_out, "output file (default stdout)");
  gen->add_option("--seed", gen_seed, "seed for closure specs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(seed, checks, out_path, threads);
    if (analyze->parsed()) return cmd_analyze(analyze_file, analyze_format, analyze_out);
    if (roller->parsed()) return cmd_roller(symbolic);
    if (embed->parsed()) return cmd_embed_interval(embed_file, embed_x, embed_y);
    if (demo->parsed()) return cmd_demo(demo_name);
    if (gen->parsed()) return cmd_gen(gen_spec, gen_from_report, gen_out, gen_seed);
  } catch (const Error& e) {
    std::cerr << "error (" << e.code << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
