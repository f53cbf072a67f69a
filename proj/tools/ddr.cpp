// Command-line front end: check, lot, diagram.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ddr/check.hpp"
#include "ddr/whitehead.hpp"

namespace {

constexpr int kInputError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ddr::Error(ddr::ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ddr::Error(ddr::ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

struct Input {
  ddr::Presentation presentation;
  std::optional<ddr::Lot> lot;
};

// Presentation files start with `gens:`; anything else is read as a LOT.
Input load_input(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    if (line.compare(start, 5, "gens:") == 0) return {ddr::parse_presentation(text), std::nullopt};
    break;
  }
  auto lot = ddr::parse_lot(text);
  auto p = ddr::lot_presentation(lot);
  return {std::move(p), std::move(lot)};
}

void print_certificate(std::ostream& os, const ddr::Certificate& c) {
  os << "verdict: " << ddr::to_string(c.verdict) << " (" << c.method << ")\n";
  if (!c.note.empty()) os << "  " << c.note << "\n";
  for (const auto& x : c.consequences) os << "  consequence: " << x.statement << "\n";
}

void print_subset(std::ostream& os, const ddr::SubsetReport& sub, const ddr::Presentation& p) {
  os << "S = " << ddr::format_generator_set(sub.certificate.s, p) << "\n";
  for (const auto& a : sub.attempts) {
    os << "  " << a.test << ": " << a.outcome;
    if (!a.reason.empty()) os << " - " << a.reason;
    os << "\n";
  }
  print_certificate(os, sub.certificate);
  for (const auto& c : sub.corroborating) {
    os << "also ";
    print_certificate(os, c);
  }
}

struct CheckArgs {
  std::string file;
  std::string away_from;
  bool all_directions = false;
  std::string tests;
  std::size_t coset_limit = ddr::kDefaultCosetLimit;
  std::string weights;
  std::string json_out;
  std::string diagram;
  std::string subcomplex;
  bool exhaustive = false;
};

int run_check(const CheckArgs& a, bool away_given) {
  auto input = load_input(read_file(a.file));
  const auto& p = input.presentation;
  ddr::CheckConfig config;
  config.lot = std::move(input.lot);
  if (!a.tests.empty()) config.tests = ddr::parse_test_list(a.tests);
  config.coset_limit = a.coset_limit;
  config.exhaustive = a.exhaustive;
  if (!a.weights.empty()) {
    config.weights = ddr::parse_weights(read_file(a.weights), ddr::build_whitehead(p).edge_count());
  }
  if (!a.diagram.empty()) config.diagram = ddr::parse_diagram(read_file(a.diagram), p);
  if (!a.subcomplex.empty()) {
    config.subcomplex = read_file(a.subcomplex);
    ddr::parse_subcomplex(*config.subcomplex, p);
  }
  if (a.all_directions == away_given) {
    throw ddr::Error(ddr::ErrorCode::InvalidArgument, "give exactly one of --away-from and --all-directions");
  }
  const auto report = a.all_directions ? ddr::run_check_all_directions(p, config)
                                       : ddr::run_check(p, ddr::parse_generator_set(a.away_from, p), config);
  if (a.json_out == "-") {
    std::cout << ddr::serialize_report(report, p);
  } else {
    std::cout << "presentation " << report.presentation_digest << "\n";
    for (const auto& sub : report.subsets) print_subset(std::cout, sub, p);
    if (report.combined) {
      std::cout << "all directions\n";
      print_certificate(std::cout, *report.combined);
    }
    if (!a.json_out.empty()) write_output(a.json_out, ddr::serialize_report(report, p));
  }
  return ddr::exit_code(report.verdict());
}

struct LotArgs {
  std::string file;
  std::string sublot;
  bool reorient = false;
  std::string json_out;
};

std::string vertex_list(const ddr::Lot& lot, const std::vector<int>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + lot.name(vs[i]);
  return out + "}";
}

int run_lot(const LotArgs& a) {
  const auto doc = ddr::parse_lot_document(read_file(a.file));
  const auto& lot = doc.lot;
  const auto p = ddr::lot_presentation(lot);
  nlohmann::json j;
  j["schema"] = 1;
  j["lot"] = ddr::serialize_lot(lot);
  int status = 2;

  if (a.reorient) {
    const auto r = ddr::reorient_positive_tree(lot);
    const auto f = ddr::is_forest(ddr::build_whitehead(ddr::lot_presentation(r.lot)), ddr::ViewMode::Positive);
    std::cout << "reoriented (" << r.nodes << " search nodes), positive Whitehead graph "
              << (f.tree() ? "is a tree" : f.forest ? "is a forest" : "has a cycle") << "\n"
              << ddr::serialize_lot(r.lot);
    j["reoriented"] = ddr::serialize_lot(r.lot);
    j["reorient_nodes"] = r.nodes;
    status = f.forest ? 0 : 2;
  }

  std::vector<ddr::SubLot> targets;
  if (!a.sublot.empty()) {
    auto named = std::find_if(doc.sublots.begin(), doc.sublots.end(),
                              [&](const ddr::NamedSubset& n) { return n.name == a.sublot; });
    if (named != doc.sublots.end()) {
      targets.push_back(ddr::make_sub_lot(lot, named->vertices));
    } else {
      std::vector<std::string> names;
      std::stringstream ss(a.sublot);
      for (std::string item; std::getline(ss, item, ',');) names.push_back(item);
      targets.push_back(ddr::make_sub_lot(lot, names));
    }
  } else if (!a.reorient) {
    for (const auto& t : ddr::sub_lots(lot)) {
      std::cout << "sub-LOT " << vertex_list(lot, t.vertices) << (t.maximal_proper ? " maximal proper" : "")
                << "\n";
      if (t.maximal_proper) targets.push_back(t);
    }
  }

  nlohmann::json results = nlohmann::json::array();
  for (const auto& t : targets) {
    const auto c = ddr::certify_lot(lot, t);
    std::cout << "T = " << vertex_list(lot, t.vertices) << "\n";
    if (c.collapsed) std::cout << "collapsed with y = " << c.y << ":\n" << ddr::serialize_lot(*c.collapsed);
    if (!c.failed_hypothesis.empty()) std::cout << "failed hypothesis: " << c.failed_hypothesis << "\n";
    print_certificate(std::cout, c.certificate);
    if (c.aspherical) std::cout << "  K(P) aspherical via " << c.asphericity_method << " on T\n";
    results.push_back(ddr::certificate_to_json(c.certificate, p));
    if (ddr::is_positive(c.certificate.verdict)) status = 0;
  }
  j["certificates"] = results;
  if (!a.json_out.empty()) write_output(a.json_out, j.dump(2) + "\n");
  return status;
}

struct DiagramArgs {
  std::string file;
  std::string pres;
  std::string away_from;
};

int run_diagram(const DiagramArgs& a) {
  const auto p = load_input(read_file(a.pres)).presentation;
  const auto d = ddr::parse_diagram(read_file(a.file), p);
  const auto s = ddr::parse_generator_set(a.away_from, p);
  const auto v = ddr::validate_diagram(d, p);
  std::cout << "valid: " << (v.valid ? "yes" : "no") << "\n";
  for (const auto& problem : v.problems) std::cout << "  " << problem << "\n";
  if (!v.valid) return kInputError;
  std::cout << "euler characteristic: " << v.euler_characteristic << "\n"
            << "closed: " << (v.closed ? "yes" : "no") << ", orientable: " << (v.orientable ? "yes" : "no")
            << ", sphere: " << (v.sphere ? "yes" : "no") << ", disc: " << (v.disc ? "yes" : "no") << "\n";
  const auto folds = ddr::folding_edges(d, p);
  std::cout << "folding edges:";
  for (const auto& f : folds) std::cout << " " << d.edges[f.edge].id << "(" << p.name(d.edges[f.edge].label) << ")";
  std::cout << (folds.empty() ? " none\n" : "\n");
  const auto verdict = ddr::directed_verdict(d, p, s);
  std::cout << "S = " << ddr::format_generator_set(s, p) << ": " << ddr::to_string(verdict) << "\n";
  return verdict == ddr::DiagramVerdict::Refutes ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed diagrammatic reducibility checker"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "certify, refute or decide DR away from S");
  check_cmd->add_option("file", check.file, "presentation or LOT file")->required();
  auto* away = check_cmd->add_option("--away-from", check.away_from, "comma separated generator subset S");
  check_cmd->add_flag("--all-directions", check.all_directions, "test DR in all directions");
  check_cmd->add_option("--tests", check.tests, "comma separated subset of free,onerel,forest,s44,weight,finite");
  check_cmd->add_option("--coset-limit", check.coset_limit, "maximum coset table size")->check(CLI::PositiveNumber);
  check_cmd->add_option("--weights", check.weights, "weights file checked instead of searching");
  check_cmd->add_option("--json", check.json_out, "write the JSON report here ('-' for stdout)");
  check_cmd->add_option("--diagram", check.diagram, "diagram JSON used as refutation evidence");
  check_cmd->add_option("--subcomplex", check.subcomplex, "finite subcomplex used as refutation evidence");
  check_cmd->add_flag("--exhaustive", check.exhaustive, "run every test even after a verdict");

  LotArgs lot;
  auto* lot_cmd = app.add_subcommand("lot", "sub-LOTs, collapse certificates and reorientation");
  lot_cmd->add_option("file", lot.file, "LOT file")->required();
  lot_cmd->add_option("--sublot", lot.sublot, "named sub-LOT from the file, or comma separated vertices");
  lot_cmd->add_flag("--reorient", lot.reorient, "search for a reorientation with a tree W+");
  lot_cmd->add_option("--json", lot.json_out, "write certificates as JSON ('-' for stdout)");

  DiagramArgs diagram;
  auto* diagram_cmd = app.add_subcommand("diagram", "validate a diagram and test it against S");
  diagram_cmd->add_option("file", diagram.file, "diagram JSON")->required();
  diagram_cmd->add_option("--pres", diagram.pres, "presentation file")->required();
  diagram_cmd->add_option("--away-from", diagram.away_from, "comma separated generator subset S")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*check_cmd) return run_check(check, away->count() > 0);
    if (*lot_cmd) return run_lot(lot);
    if (*diagram_cmd) return run_diagram(diagram);
  } catch (const ddr::ParseError& e) {
    std::cerr << "error: " << ddr::to_string(e.code()) << " at line " << e.line() << ", column " << e.column()
              << ": " << e.what() << "\n";
    return kInputError;
  } catch (const ddr::Error& e) {
    std::cerr << "error: " << ddr::to_string(e.code()) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
