#include "ddr/check.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "ddr/rational.hpp"
#include "ddr/smallcancel.hpp"
#include "ddr/whitehead.hpp"

namespace ddr {

using nlohmann::json;

const char* to_string(TestKind t) {
  switch (t) {
    case TestKind::FreeEdge: return "free";
    case TestKind::OneRelator: return "onerel";
    case TestKind::Forest: return "forest";
    case TestKind::S44: return "s44";
    case TestKind::Weight: return "weight";
    case TestKind::Finite: return "finite";
  }
  return "?";
}

TestKind parse_test_kind(std::string_view name) {
  for (auto t : default_tests()) {
    if (name == to_string(t)) return t;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown test '" + std::string(name) + "'");
}

std::vector<TestKind> parse_test_list(std::string_view csv) {
  std::vector<TestKind> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    auto item = csv.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const auto t = parse_test_kind(item);
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty test list");
  return out;
}

const std::vector<TestKind>& default_tests() {
  static const std::vector<TestKind> tests = {TestKind::FreeEdge, TestKind::OneRelator, TestKind::Forest,
                                              TestKind::S44,      TestKind::Weight,     TestKind::Finite};
  return tests;
}

Verdict Report::verdict() const {
  if (all_directions) return combined ? combined->verdict : Verdict::Unknown;
  return subsets.empty() ? Verdict::Unknown : subsets.front().certificate.verdict;
}

namespace {

struct Outcome {
  std::string outcome;
  std::string reason;
  std::optional<Certificate> cert;
};

Certificate blank(const Presentation& p, const GeneratorSet& s) {
  Certificate c;
  c.presentation_digest = presentation_digest(p);
  c.s = s;
  c.method = "none";
  return c;
}

Outcome decisive(Certificate c) {
  std::string outcome = c.verdict == Verdict::DecidedDr      ? "decided_dr"
                        : c.verdict == Verdict::DecidedNotDr ? "decided_not_dr"
                        : c.verdict == Verdict::Refuted      ? "refuted"
                                                             : "certified";
  return {outcome, c.note, std::move(c)};
}

bool exponent_sums_zero(const Presentation& p, std::size_t* bad = nullptr) {
  for (std::size_t i = 0; i < p.relator_count(); ++i) {
    if (word_stats(p.relators()[i]).total_exponent_sum != 0) {
      if (bad) *bad = i;
      return false;
    }
  }
  return true;
}

bool cyclically_reduced(const Presentation& p) {
  return std::all_of(p.relators().begin(), p.relators().end(), [](const Word& w) { return is_cyclically_reduced(w); });
}

Outcome test_free(const Presentation& p, const GeneratorSet& s) {
  const auto free = free_edge_generators(p);
  json witnesses = json::array();
  for (std::size_t i = 0; i < p.relator_count(); ++i) {
    const auto sup = support(p.relators()[i]);
    if (std::includes(s.begin(), s.end(), sup.begin(), sup.end())) continue;
    auto it = std::find_if(sup.begin(), sup.end(), [&](int g) { return !s.contains(g) && free.contains(g); });
    if (it == sup.end()) {
      return {"failed", "relator " + std::to_string(i) + " has no free-edge generator outside S", std::nullopt};
    }
    witnesses.push_back({{"relator", i}, {"generator", p.name(*it)}});
  }
  auto c = blank(p, s);
  c.verdict = Verdict::CertifiedDrAwayFrom;
  c.method = "free_edge";
  c.evidence["witnesses"] = witnesses;
  c.note = "every relator not over S contains a generator outside S that occurs once in P";
  return decisive(std::move(c));
}

Outcome test_onerel(const Presentation& p, const GeneratorSet& s) {
  if (p.relator_count() != 1) return {"not_applicable", "needs exactly one relator", std::nullopt};
  const Word& r = p.relators().front();
  if (!is_cyclically_reduced(r)) return {"failed", "the relator is not cyclically reduced", std::nullopt};
  if (auto d = word_stats(r).proper_power_period) {
    return {"failed", "the relator is a proper power (period " + std::to_string(*d) + ")", std::nullopt};
  }
  auto c = blank(p, s);
  c.verdict = Verdict::CertifiedDrAllDirections;
  c.method = "one_relator";
  c.evidence["relator"] = format_word(r, p);
  c.note = "one cyclically reduced relator that is not a proper power";
  return decisive(std::move(c));
}

Outcome test_forest(const Presentation& p, const GeneratorSet& s) {
  if (s.size() > 1) return {"not_applicable", "the forest test certifies only |S| <= 1", std::nullopt};
  if (!cyclically_reduced(p)) return {"not_applicable", "relators are not cyclically reduced", std::nullopt};
  std::size_t bad = 0;
  if (!exponent_sums_zero(p, &bad)) {
    return {"not_applicable", "relator " + std::to_string(bad) + " has nonzero exponent sum", std::nullopt};
  }
  const auto g = build_whitehead(p);
  for (auto [mode, label] : {std::pair{ViewMode::Positive, "positive"}, std::pair{ViewMode::Negative, "negative"}}) {
    const auto f = is_forest(g, mode);
    if (!f.forest) continue;
    auto c = blank(p, s);
    c.verdict = Verdict::CertifiedDrAwayFrom;
    c.method = "forest";
    c.evidence["view"] = label;
    c.evidence["view_edges"] = f.view_edges;
    c.evidence["components"] = f.components;
    c.note = std::string("exponent sums are zero and the ") + label + " Whitehead graph is a forest";
    return decisive(std::move(c));
  }
  return {"failed", "both the positive and the negative Whitehead graph contain a cycle", std::nullopt};
}

Outcome test_s44(const Presentation& p, const GeneratorSet& s) {
  S44Result r;
  try {
    r = certify_s44(p, s);
  } catch (const Error& e) {
    return {"not_applicable", e.what(), std::nullopt};
  }
  if (!r.certified) {
    return {"failed", r.failed_hypothesis + (r.detail.empty() ? "" : ": " + r.detail), std::nullopt};
  }
  auto c = blank(p, s);
  c.verdict = Verdict::CertifiedDrAwayFrom;
  c.method = "small_cancellation";
  c.evidence["case"] = to_string(*r.fired);
  c.evidence["weights"] = serialize_weights(r.weights->assignment);
  c.note = std::string(to_string(*r.fired)) + " with no two consecutive letters in S";
  return decisive(std::move(c));
}

Outcome test_weight(const Presentation& p, const GeneratorSet& s, const CheckConfig& config) {
  try {
    auto c = blank(p, s);
    c.method = "weight_test";
    if (config.weights) {
      const auto w = verify_weight_test(p, s, *config.weights);
      if (!w.valid()) {
        for (const auto& cond : w.conditions) {
          if (!cond.pass) return {"failed", "supplied weights: " + cond.detail, std::nullopt};
        }
      }
      c.evidence["source"] = "supplied";
      c.evidence["weights"] = serialize_weights(*config.weights);
    } else {
      const auto found = search_weights(p, s);
      if (!found.assignment) {
        return {"failed",
                "the weight system is infeasible after " + std::to_string(found.cuts.size()) +
                    " cycle cuts (Farkas certificate checked)",
                std::nullopt};
      }
      c.evidence["source"] = "search";
      c.evidence["cuts"] = found.cuts.size();
      c.evidence["weights"] = serialize_weights(*found.assignment);
    }
    c.verdict = Verdict::CertifiedDrAwayFrom;
    c.note = "corner weights pass the weight test";
    return decisive(std::move(c));
  } catch (const Error& e) {
    return {"not_applicable", e.what(), std::nullopt};
  }
}

json log_steps(const CollapseLog& log) {
  json steps = json::array();
  for (const auto& st : log.steps) steps.push_back({st.cell, st.edge});
  return steps;
}

std::optional<CollapseLog> log_from_json(const json& evidence) {
  if (!evidence.contains("steps") || !evidence.contains("residual")) return std::nullopt;
  CollapseLog log;
  for (const auto& st : evidence["steps"]) log.steps.push_back({st.at(0).get<std::size_t>(), st.at(1).get<std::int64_t>()});
  log.residual = evidence["residual"].get<std::vector<std::size_t>>();
  log.collapsed = evidence.value("collapsed", false);
  return log;
}

Outcome test_finite(const Presentation& p, const GeneratorSet& s, const CheckConfig& config) {
  FiniteDecision d;
  try {
    d = decide_finite(p, s, config.coset_limit);
  } catch (const Error& e) {
    return {"not_applicable", e.what(), std::nullopt};
  }
  if (d.verdict == FiniteVerdict::Unknown) {
    return {"failed", "coset enumeration exceeded " + std::to_string(config.coset_limit) + " cosets", std::nullopt};
  }
  auto c = blank(p, s);
  c.method = "finite";
  c.evidence["group_order"] = *d.group_order;
  c.evidence["coset_limit"] = config.coset_limit;
  c.evidence["steps"] = log_steps(*d.log);
  c.evidence["residual"] = d.log->residual;
  c.evidence["collapsed"] = d.log->collapsed;
  if (d.verdict == FiniteVerdict::DecidedDr) {
    c.verdict = Verdict::DecidedDr;
    c.note = "the Cayley complex of the order " + std::to_string(*d.group_order) + " group collapses onto P_S cells";
  } else {
    c.verdict = Verdict::DecidedNotDr;
    c.note = "collapse of the order " + std::to_string(*d.group_order) + " Cayley complex gets stuck with " +
             std::to_string(d.log->residual.size()) + " cells left";
  }
  return decisive(std::move(c));
}

Outcome test_diagram(const Presentation& p, const GeneratorSet& s, const SurfaceDiagram& d) {
  DiagramVerdict v;
  try {
    v = directed_verdict(d, p, s);
  } catch (const Error& e) {
    return {"not_applicable", e.what(), std::nullopt};
  }
  if (v == DiagramVerdict::Consistent) {
    return {"failed", "the diagram has no edge outside S or a folding edge outside S", std::nullopt};
  }
  auto c = blank(p, s);
  c.verdict = Verdict::Refuted;
  c.method = "diagram";
  c.evidence["diagram"] = diagram_to_json(d, p);
  c.note = "diagram with an edge outside S but no folding edge outside S";
  return decisive(std::move(c));
}

Outcome test_subcomplex(const Presentation& p, const GeneratorSet& s, const std::string& text) {
  const auto x = parse_subcomplex(text, p);
  auto r = refute_with_subcomplex(x, p, s);
  if (!r) return {"failed", "the subcomplex collapses onto P_S cells", std::nullopt};
  auto c = blank(p, s);
  c.verdict = Verdict::Refuted;
  c.method = "subcomplex";
  c.evidence["subcomplex"] = text;
  c.evidence["steps"] = log_steps(r->log);
  c.evidence["residual"] = r->log.residual;
  c.evidence["collapsed"] = false;
  c.note = "finite subcomplex of the universal cover that does not collapse onto P_S cells";
  return decisive(std::move(c));
}

Outcome test_lot(const Presentation& p, const GeneratorSet& s, const Lot& lot) {
  if (presentation_digest(lot_presentation(lot)) != presentation_digest(p)) {
    return {"not_applicable", "the presentation is not the LOT presentation", std::nullopt};
  }
  const std::vector<int> wanted(s.begin(), s.end());
  const auto all = sub_lots(lot);
  const auto t = std::find_if(all.begin(), all.end(), [&](const SubLot& u) { return u.vertices == wanted; });
  if (t == all.end() || !t->maximal_proper) {
    return {"not_applicable", "S is not the vertex set of a maximal proper sub-LOT", std::nullopt};
  }
  auto cert = certify_lot(lot, *t);
  if (cert.certificate.verdict == Verdict::Unknown) {
    return {"failed", "hypothesis not met: " + cert.failed_hypothesis, std::nullopt};
  }
  return decisive(std::move(cert.certificate));
}

SubsetReport run_subset(const Presentation& p, const GeneratorSet& s, const CheckConfig& config) {
  SubsetReport out;
  out.certificate = blank(p, s);
  out.certificate.note = "no test was decisive";
  bool decided = false;
  std::optional<std::optional<std::string>> sub_dr;

  auto run = [&](const std::string& name, const std::function<Outcome()>& fn) {
    if (decided && !config.exhaustive) {
      out.attempts.push_back({name, "skipped", "an earlier test was decisive"});
      return;
    }
    Outcome o = fn();
    out.attempts.push_back({name, o.outcome, o.reason});
    if (!o.cert) return;
    Certificate c = std::move(*o.cert);
    if (is_positive(c.verdict)) {
      if (!sub_dr) sub_dr = subpresentation_dr(p, s);
      if (*sub_dr) c.evidence["subpresentation_dr"] = **sub_dr;
      c.consequences = derive_consequences(c, p, sub_dr->has_value());
    }
    if (!decided) {
      out.certificate = std::move(c);
      decided = true;
    } else {
      out.corroborating.push_back(std::move(c));
    }
  };

  if (config.diagram) run("diagram", [&] { return test_diagram(p, s, *config.diagram); });
  if (config.subcomplex) run("subcomplex", [&] { return test_subcomplex(p, s, *config.subcomplex); });
  if (config.lot) run("lot", [&] { return test_lot(p, s, *config.lot); });
  for (auto t : config.tests) {
    run(to_string(t), [&]() -> Outcome {
      switch (t) {
        case TestKind::FreeEdge: return test_free(p, s);
        case TestKind::OneRelator: return test_onerel(p, s);
        case TestKind::Forest: return test_forest(p, s);
        case TestKind::S44: return test_s44(p, s);
        case TestKind::Weight: return test_weight(p, s, config);
        case TestKind::Finite: return test_finite(p, s, config);
      }
      return {};
    });
  }
  return out;
}

}  // namespace

std::optional<std::string> subpresentation_dr(const Presentation& p, const GeneratorSet& s) {
  const Presentation q = subpresentation(p, s);
  if (q.relator_count() == 0) return "relator_free";
  if (!cyclically_reduced(q)) return std::nullopt;
  if (q.relator_count() == 1 && !word_stats(q.relators().front()).proper_power_period) return "one_relator";
  if (exponent_sums_zero(q)) {
    const auto g = build_whitehead(q);
    if (is_forest(g, ViewMode::Positive).forest || is_forest(g, ViewMode::Negative).forest) return "forest";
  }
  if (certify_s44(q, {}).certified) return "small_cancellation";
  if (search_weights(q, {}).assignment) return "weight_test";
  return std::nullopt;
}

Report run_check(const Presentation& p, const GeneratorSet& s, const CheckConfig& config) {
  require_proper(s, p);
  Report r;
  r.presentation_digest = presentation_digest(p);
  r.tests = config.tests;
  r.subsets.push_back(run_subset(p, s, config));
  return r;
}

Report run_check_all_directions(const Presentation& p, const CheckConfig& config) {
  Report r;
  r.presentation_digest = presentation_digest(p);
  r.all_directions = true;
  r.tests = config.tests;
  const bool onerel = std::find(config.tests.begin(), config.tests.end(), TestKind::OneRelator) != config.tests.end();
  if (onerel) {
    auto o = test_onerel(p, {});
    if (o.cert) {
      o.cert->all_directions = true;
      o.cert->consequences = derive_consequences(*o.cert, p);
      r.combined = std::move(o.cert);
      if (!config.exhaustive) return r;
    }
  }
  std::vector<Certificate> parts;
  const Certificate* negative = nullptr;
  bool all_positive = true;
  for (int g = 0; g < static_cast<int>(p.generator_count()); ++g) {
    GeneratorSet s = all_generators(p);
    s.erase(g);
    r.subsets.push_back(run_subset(p, s, config));
  }
  for (const auto& sub : r.subsets) {
    all_positive = all_positive && is_positive(sub.certificate.verdict);
    if (!negative && is_negative(sub.certificate.verdict)) negative = &sub.certificate;
  }
  if (r.combined) return r;
  Certificate c = blank(p, {});
  c.all_directions = true;
  c.method = "co_singletons";
  json subs = json::array();
  for (const auto& sub : r.subsets) subs.push_back(certificate_to_json(sub.certificate, p));
  c.evidence["subsets"] = subs;
  if (all_positive) {
    c.verdict = Verdict::CertifiedDrAllDirections;
    c.note = "DR away from every co-singleton";
    c.consequences = derive_consequences(c, p);
  } else if (negative) {
    c.verdict = negative->verdict;
    c.note = "not DR away from " + format_generator_set(negative->s, p);
  } else {
    c.note = "some co-singleton stays undecided";
  }
  r.combined = std::move(c);
  return r;
}

nlohmann::json certificate_to_json(const Certificate& c, const Presentation& p) {
  json j;
  j["digest"] = c.presentation_digest;
  json s = json::array();
  for (int g : c.s) s.push_back(p.name(g));
  j["s"] = s;
  j["all_directions"] = c.all_directions;
  j["verdict"] = to_string(c.verdict);
  j["method"] = c.method;
  j["evidence"] = c.evidence;
  json cons = json::array();
  for (const auto& x : c.consequences) cons.push_back({{"code", x.code}, {"statement", x.statement}});
  j["consequences"] = cons;
  j["note"] = c.note;
  return j;
}

namespace {

Certificate certificate_from_json(const json& j, const Presentation& p) {
  Certificate c;
  c.presentation_digest = j.at("digest").get<std::string>();
  for (const auto& n : j.at("s")) c.s.insert(p.index_of(n.get<std::string>()));
  c.all_directions = j.at("all_directions").get<bool>();
  const auto v = j.at("verdict").get<std::string>();
  for (auto cand : {Verdict::CertifiedDrAwayFrom, Verdict::CertifiedDrAllDirections, Verdict::DecidedDr,
                    Verdict::DecidedNotDr, Verdict::Refuted, Verdict::Unknown}) {
    if (v == to_string(cand)) c.verdict = cand;
  }
  c.method = j.at("method").get<std::string>();
  c.evidence = j.at("evidence");
  for (const auto& x : j.at("consequences")) {
    c.consequences.push_back({x.at("code").get<std::string>(), x.at("statement").get<std::string>()});
  }
  c.note = j.value("note", "");
  return c;
}

json attempts_json(const std::vector<Attempt>& attempts) {
  json out = json::array();
  for (const auto& a : attempts) out.push_back({{"test", a.test}, {"outcome", a.outcome}, {"reason", a.reason}});
  return out;
}

}  // namespace

nlohmann::json report_to_json(const Report& r, const Presentation& p) {
  json j;
  j["schema"] = 1;
  j["tool"] = {{"name", "ddr"}, {"version", "1.0.0"}};
  json relators = json::array();
  for (const auto& w : p.relators()) relators.push_back(format_word(w, p));
  j["presentation"] = {{"digest", r.presentation_digest}, {"generators", p.generators()}, {"relators", relators}};
  j["mode"] = r.all_directions ? "all_directions" : "away_from";
  json tests = json::array();
  for (auto t : r.tests) tests.push_back(to_string(t));
  j["tests"] = tests;
  j["verdict"] = to_string(r.verdict());
  j["combined"] = r.combined ? certificate_to_json(*r.combined, p) : json(nullptr);
  json subsets = json::array();
  for (const auto& sub : r.subsets) {
    json cor = json::array();
    for (const auto& c : sub.corroborating) cor.push_back(certificate_to_json(c, p));
    subsets.push_back({{"certificate", certificate_to_json(sub.certificate, p)},
                       {"corroborating", cor},
                       {"attempts", attempts_json(sub.attempts)}});
  }
  j["subsets"] = subsets;
  return j;
}

std::string serialize_report(const Report& r, const Presentation& p) { return report_to_json(r, p).dump(2) + "\n"; }

int exit_code(Verdict v) {
  if (is_positive(v)) return 0;
  if (is_negative(v)) return 1;
  return 2;
}

std::optional<Lot> lot_from_presentation(const Presentation& p) {
  std::vector<LotEdge> edges;
  for (const auto& r : p.relators()) {
    if (r.size() != 4 || r[0].sign != 1 || r[1].sign != 1 || r[2].sign != -1 || r[3].sign != -1 ||
        r[1].gen != r[3].gen) {
      return std::nullopt;
    }
    edges.push_back({r[0].gen, r[2].gen, r[1].gen});
  }
  try {
    return Lot(p.generators(), std::move(edges));
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

// Union-find cycle check restricted to one polarity.
bool view_is_forest(const WhiteheadGraph& g, int parity) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const auto& e : g.edges()) {
    if (e.a % 2 != parity || e.b % 2 != parity) continue;
    const int a = find(e.a);
    const int b = find(e.b);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool proper_power(const Word& w) {
  for (std::size_t d = 1; d < w.size(); ++d) {
    if (w.size() % d == 0 && rotate(w, d) == w) return true;
  }
  return false;
}

bool weights_pass(const Presentation& p, const GeneratorSet& s, const json& evidence) {
  const auto g = build_whitehead(p);
  const auto w = parse_weights(evidence.at("weights").get<std::string>(), g.edge_count());
  return verify_weight_test(p, s, w).valid();
}

bool check(const Certificate& c, const Presentation& p, std::string& why) {
  const auto& ev = c.evidence;
  const auto& s = c.s;
  if (c.method == "free_edge") {
    std::map<int, int> count;
    for (const auto& r : p.relators()) {
      for (auto l : r) ++count[l.gen];
    }
    std::set<std::size_t> covered;
    for (const auto& w : ev.at("witnesses")) {
      const auto i = w.at("relator").get<std::size_t>();
      const int g = p.index_of(w.at("generator").get<std::string>());
      const auto& r = p.relators().at(i);
      const bool in_r = std::any_of(r.begin(), r.end(), [&](Letter l) { return l.gen == g; });
      if (!in_r || s.contains(g) || count[g] != 1) {
        why = "witness for relator " + std::to_string(i) + " is not a free-edge generator outside S";
        return false;
      }
      covered.insert(i);
    }
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
      const auto& r = p.relators()[i];
      const bool over = std::all_of(r.begin(), r.end(), [&](Letter l) { return s.contains(l.gen); });
      if (!over && !covered.contains(i)) {
        why = "relator " + std::to_string(i) + " has no witness";
        return false;
      }
    }
    return true;
  }
  if (c.method == "one_relator") {
    if (p.relator_count() != 1) return why = "not a one-relator presentation", false;
    const auto& r = p.relators().front();
    if (r.front().gen == r.back().gen && r.front().sign == -r.back().sign) return why = "not cyclically reduced", false;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      if (r[i].gen == r[i + 1].gen && r[i].sign == -r[i + 1].sign) return why = "not freely reduced", false;
    }
    if (proper_power(r)) return why = "proper power", false;
    return true;
  }
  if (c.method == "forest") {
    if (s.size() > 1) return why = "|S| > 1", false;
    for (const auto& r : p.relators()) {
      int sum = 0;
      for (auto l : r) sum += l.sign;
      if (sum != 0) return why = "nonzero exponent sum", false;
    }
    const int parity = ev.at("view").get<std::string>() == "positive" ? 0 : 1;
    if (!view_is_forest(build_whitehead(p), parity)) return why = "the view has a cycle", false;
    return true;
  }
  if (c.method == "small_cancellation") {
    const bool c4 = ev.at("case").get<std::string>() == to_string(SmallCancellationCase::C4T4);
    const auto sc = check_small_cancellation(p, c4 ? 4 : 6, c4 ? 4 : 3);
    if (!sc.cp || !sc.tq) return why = "small cancellation condition fails", false;
    for (const auto& r : p.relators()) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (s.contains(r[i].gen) && s.contains(r[(i + 1) % r.size()].gen)) return why = "consecutive S letters", false;
      }
    }
    if (!weights_pass(p, s, ev)) return why = "weights fail the weight test", false;
    return true;
  }
  if (c.method == "weight_test") {
    if (!weights_pass(p, s, ev)) return why = "weights fail the weight test", false;
    return true;
  }
  if (c.method == "finite") {
    const auto table = coset_enumeration(p, ev.at("coset_limit").get<std::size_t>());
    if (!table || table->element_count() != ev.at("group_order").get<std::size_t>()) {
      return why = "group order not reproduced", false;
    }
    const auto x = build_cayley_complex(*table, p);
    const auto log = log_from_json(ev);
    if (!log || !replay(x, p, s, *log)) return why = "collapse log does not replay", false;
    if (log->collapsed != (c.verdict == Verdict::DecidedDr)) return why = "verdict disagrees with the log", false;
    return true;
  }
  if (c.method == "diagram") {
    const auto d = diagram_from_json(ev.at("diagram"), p);
    if (directed_verdict(d, p, s) != DiagramVerdict::Refutes) return why = "diagram does not refute", false;
    return true;
  }
  if (c.method == "subcomplex") {
    const auto x = parse_subcomplex(ev.at("subcomplex").get<std::string>(), p);
    const auto log = log_from_json(ev);
    if (!log || !replay(x, p, s, *log) || log->collapsed) return why = "subcomplex does not stay stuck", false;
    return true;
  }
  if (c.method == "co_singletons") {
    const auto& subs = ev.at("subsets");
    if (subs.size() != p.generator_count()) return why = "co-singleton list incomplete", false;
    for (int g = 0; g < static_cast<int>(p.generator_count()); ++g) {
      const auto sub = certificate_from_json(subs[g], p);
      GeneratorSet expect = all_generators(p);
      expect.erase(g);
      if (sub.s != expect) return why = "co-singleton " + std::to_string(g) + " has the wrong S", false;
      if (c.verdict == Verdict::CertifiedDrAllDirections && !is_positive(sub.verdict)) {
        return why = "co-singleton " + std::to_string(g) + " is not positive", false;
      }
      if (sub.verdict != Verdict::Unknown && !verify_certificate(sub, p, &why)) return false;
    }
    return true;
  }
  if (c.method == "lot_collapse_forest" || c.method == "lot_collapse_girth") {
    const auto lot = lot_from_presentation(p);
    if (!lot) return why = "not a LOT presentation", false;
    const auto t = make_sub_lot(*lot, s);
    const Lot claimed = parse_lot(ev.at("collapsed").get<std::string>());
    if (!same_lot(collapse(*lot, t, ev.at("y").get<std::string>()), claimed)) {
      return why = "collapsed LOT not reproduced", false;
    }
    if (!lot_properties(*lot).compressed || !lot_properties(claimed).compressed) return why = "not compressed", false;
    const auto g = build_whitehead(lot_presentation(claimed));
    if (c.method == "lot_collapse_forest") {
      const int parity = ev.at("view").get<std::string>() == "positive" ? 0 : 1;
      if (!view_is_forest(g, parity)) return why = "collapsed view has a cycle", false;
    } else {
      const auto girth = min_weight_reduced_cycle(g);
      if (!girth.infinite() && *girth.weight < 4) return why = "reduced girth below four", false;
    }
    return true;
  }
  why = "unknown method '" + c.method + "'";
  return false;
}

}  // namespace

bool verify_certificate(const Certificate& c, const Presentation& p, std::string* why) {
  std::string reason;
  bool ok = false;
  if (c.presentation_digest != presentation_digest(p)) {
    reason = "digest mismatch";
  } else if (c.verdict == Verdict::Unknown) {
    reason = "an UNKNOWN verdict carries no evidence";
  } else {
    try {
      ok = check(c, p, reason);
    } catch (const std::exception& e) {
      reason = e.what();
    }
  }
  if (!ok && why) *why = reason;
  return ok;
}

}  // namespace ddr
