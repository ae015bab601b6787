#include "tfdg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tfdg/checks.hpp"
#include "tfdg/textio.hpp"
#include "tfdg/ultrafilter.hpp"
#include "tfdg/ultrapower.hpp"
#include "tfdg/underlying.hpp"

namespace tfdg {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Request {
  std::string spec_path;
  std::string oracle = "multiples";
  std::string rank;          // empty: use the family's rank
  uint64_t resolution = 0;   // 0: use the family's period
  std::string out_path;
  bool underlying = false;
  std::string kind = "arc";
  std::string predicate;
  std::vector<std::string> names;
  int samples = 100;
  uint64_t seed = 2026;
};

/// Everything a subcommand needs once the spec file is loaded and the
/// defaults are resolved against the family.
struct Session {
  SpecFile file;
  std::unique_ptr<Oracle> oracle;
  uint64_t resolution = 1;
  Rank rank = Rank::finite(0);

  const FamilySpec& family() const {
    if (!file.family.has_value()) {
      throw std::runtime_error("the spec file declares no family block");
    }
    return *file.family;
  }

  const EPSequence& sequence(const std::string& name) const {
    const EPSequence* s = file.find_sequence(name);
    if (s == nullptr) {
      throw std::runtime_error("no sequence named '" + name +
                               "' in the spec file");
    }
    return *s;
  }
};

Session open_session(const Request& req, bool needs_family) {
  Session s;
  s.file = parse_spec(read_file(req.spec_path));
  s.oracle = make_oracle(req.oracle);
  if (s.file.family.has_value()) {
    const FamilySpec& fam = *s.file.family;
    s.resolution = req.resolution != 0 ? req.resolution : fam.period();
    s.rank = req.rank.empty() ? fam.rank() : parse_rank(req.rank);
  } else {
    if (needs_family) {
      throw std::runtime_error("the spec file declares no family block");
    }
    if (req.resolution != 0) s.resolution = req.resolution;
    if (!req.rank.empty()) s.rank = parse_rank(req.rank);
  }
  return s;
}

SeqKind parse_kind(const std::string& text) {
  if (text == "arc") return SeqKind::arc();
  if (text == "end") return SeqKind::arc_end();
  if (text.rfind("ditip:", 0) == 0) {
    return SeqKind::ditip(parse_rank(text.substr(6)));
  }
  throw std::invalid_argument("unknown kind '" + text +
                              "' (use arc, end, or ditip:<rank>)");
}

void write_output(const Request& req, std::ostream& out,
                  const std::string& text) {
  if (req.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(req.out_path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot write '" + req.out_path + "'");
  }
  file << text;
}

int cmd_validate(const Request& req, std::ostream& out) {
  const SpecFile file = parse_spec(read_file(req.spec_path));
  out << "ok: " << file.digraphs.size() << " digraphs, "
      << file.sequences.size() << " sequences, " << file.epsets.size()
      << " epsets\n";
  if (file.family.has_value()) {
    const FamilySpec& fam = *file.family;
    out << "family: rank " << to_string(fam.rank()) << ", period "
        << fam.period() << ", threshold " << fam.threshold() << ", depth "
        << fam.depth() << "\n";
    for (const auto& note : fam.notes()) {
      out << "note: " << note << "\n";
    }
  } else {
    out << "family: none\n";
  }
  return 0;
}

void print_ns_digraph(std::ostream& out, const NsDigraph& d) {
  out << "oracle: " << d.oracle << "\n";
  out << "resolution: " << d.resolution << "\n";
  out << "rank: " << to_string(d.rank) << "\n";
  out << "arc classes: " << d.arcs.size() << "\n";
  for (const auto& rep : d.arcs) {
    out << "  " << class_label(rep, d.resolution) << "\n";
  }
  out << "v0 blocks: " << d.v0.size() << "\n";
  for (size_t k = 0; k < d.levels.size(); ++k) {
    const NsLevel& level = d.levels[k];
    out << "ditip classes at rank " << k << ": " << level.tips.size() << "\n";
    for (size_t i = 0; i < level.tips.size(); ++i) {
      out << "  " << class_label(level.tips[i], d.resolution) << " "
          << to_string(level.polarities[i]) << "\n";
    }
    out << "v" << (k + 1) << " blocks: " << level.vertices.size() << "\n";
  }
  if (d.rank == Rank::omega()) {
    out << "ditip classes at rank warrow: " << d.omega.tips.size() << "\n";
    for (size_t i = 0; i < d.omega.tips.size(); ++i) {
      out << "  " << class_label(d.omega.tips[i], d.resolution) << " "
          << to_string(d.omega.polarities[i]) << "\n";
    }
    out << "vomega blocks: " << d.omega.vertices.size() << "\n";
  }
}

int cmd_build(const Request& req, std::ostream& out) {
  Session s = open_session(req, true);
  const NsDigraph d =
      build_ns_digraph(s.family(), *s.oracle, s.rank, s.resolution);
  print_ns_digraph(out, d);
  return 0;
}

int cmd_query(const Request& req, std::ostream& out) {
  Session s = open_session(req, true);
  const FamilySpec& fam = s.family();
  auto need = [&](size_t n) {
    if (req.names.size() != n) {
      throw std::runtime_error("predicate '" + req.predicate + "' takes " +
                               std::to_string(n) + " sequence name(s), got " +
                               std::to_string(req.names.size()));
    }
  };
  if (req.predicate == "equal") {
    need(2);
    out << (ns_equal(s.sequence(req.names[0]), s.sequence(req.names[1]), fam,
                     *s.oracle)
                ? "true"
                : "false")
        << "\n";
  } else if (req.predicate == "shorted") {
    need(2);
    out << (ns_shorted(s.sequence(req.names[0]), s.sequence(req.names[1]), fam,
                       *s.oracle)
                ? "true"
                : "false")
        << "\n";
  } else if (req.predicate == "polarity") {
    need(1);
    out << to_string(ns_polarity(s.sequence(req.names[0]), fam, *s.oracle))
        << "\n";
  } else if (req.predicate == "vertexof" || req.predicate == "vertex-of") {
    need(1);
    const NsVertex v =
        ns_vertex_of(s.sequence(req.names[0]), fam, *s.oracle, s.resolution);
    out << class_label(v.canonical.rep, s.resolution) << " rank "
        << to_string(v.rank) << "\n";
  } else {
    throw std::runtime_error("unknown predicate '" + req.predicate +
                             "' (use equal, shorted, polarity, or vertexof)");
  }
  return 0;
}

int cmd_enumerate(const Request& req, std::ostream& out) {
  Session s = open_session(req, true);
  const SeqKind kind = parse_kind(req.kind);
  const std::vector<NsElement> classes =
      enumerate_classes(s.family(), *s.oracle, kind, s.resolution);
  out << to_string(kind) << " classes at resolution " << s.resolution << ": "
      << classes.size() << "\n";
  for (const auto& c : classes) {
    out << "  " << class_label(c.rep, s.resolution) << "\n";
  }
  return 0;
}

int cmd_export(const Request& req, std::ostream& out) {
  Session s = open_session(req, true);
  std::string dot;
  if (req.underlying) {
    dot = to_dot(build_ns_graph(s.family(), *s.oracle, s.rank, s.resolution));
  } else {
    dot =
        to_dot(build_ns_digraph(s.family(), *s.oracle, s.rank, s.resolution));
  }
  write_output(req, out, dot);
  return 0;
}

int cmd_check(const Request& req, std::ostream& out) {
  Session s = open_session(req, true);
  const CheckReport report = run_checks(s.family(), *s.oracle, s.resolution,
                                        req.samples, req.seed);
  out << "independence: " << report.independence_passed << "/"
      << report.independence_total << " passed, " << report.skipped
      << " skipped\n";
  if (report.problems.empty()) {
    out << "partitions: ok\n";
  } else {
    out << "partitions: " << report.problems.size() << " problem(s)\n";
    for (const auto& p : report.problems) {
      out << "  " << p << "\n";
    }
  }
  const bool passed =
      report.independence_passed == report.independence_total &&
      report.problems.empty();
  out << (passed ? "check passed\n" : "check failed\n");
  return passed ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Ultrapower construction over eventually periodic digraph families"};
  app.require_subcommand(1);

  Request req;
  const std::string oracle_help =
      "Ultrafilter oracle: multiples, principal:<n0>, or lazyfip:<seed>";
  const std::string resolution_help =
      "Enumeration resolution, a positive multiple of the family period "
      "(default: the period itself)";
  const std::string rank_help =
      "Target rank: a number, warrow, or omega (default: the family's rank)";

  auto add_common = [&](CLI::App* sub, bool with_rank) {
    sub->add_option("spec", req.spec_path, "Spec file path")->required();
    sub->add_option("--oracle", req.oracle, oracle_help);
    sub->add_option("--resolution", req.resolution, resolution_help);
    if (with_rank) sub->add_option("--rank", req.rank, rank_help);
  };

  CLI::App* validate =
      app.add_subcommand("validate", "Parse and validate a spec file");
  validate->add_option("spec", req.spec_path, "Spec file path")->required();

  CLI::App* build = app.add_subcommand(
      "build", "Build the nonstandard digraph and print class counts");
  add_common(build, true);

  CLI::App* query = app.add_subcommand(
      "query", "Evaluate a predicate on named sequences from the spec file");
  add_common(query, false);
  query
      ->add_option("predicate", req.predicate,
                   "One of: equal, shorted, polarity, vertexof")
      ->required();
  query->add_option("names", req.names, "Sequence names from the spec file")
      ->expected(1, 2);

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "List the element classes of one kind at the resolution");
  add_common(enumerate, false);
  enumerate->add_option("--kind", req.kind,
                        "Element kind: arc, end, or ditip:<rank>");

  CLI::App* exp =
      app.add_subcommand("export", "Export the nonstandard digraph as DOT");
  add_common(exp, true);
  exp->add_flag("--underlying", req.underlying,
                "Export the underlying (direction-free) graph instead");
  exp->add_option("--out", req.out_path, "Write to this file instead of stdout");

  CLI::App* check = app.add_subcommand(
      "check", "Run the independence and partition suites on the family");
  add_common(check, false);
  check->add_option("--samples", req.samples,
                    "Independence samples to draw (default 100)");
  check->add_option("--seed", req.seed, "Sampler seed (default 2026)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(req, out);
    if (app.got_subcommand(build)) return cmd_build(req, out);
    if (app.got_subcommand(query)) return cmd_query(req, out);
    if (app.got_subcommand(enumerate)) return cmd_enumerate(req, out);
    if (app.got_subcommand(exp)) return cmd_export(req, out);
    if (app.got_subcommand(check)) return cmd_check(req, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tfdg
