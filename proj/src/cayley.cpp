#include "ddr/cayley.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "text.hpp"

namespace ddr {

GroupTable::GroupTable(const Presentation& p, std::vector<std::vector<int>> action)
    : generators_(p.generator_count()), action_(std::move(action)) {
  const int n = static_cast<int>(action_.size());
  if (n == 0) throw Error(ErrorCode::InconsistentTable, "a group table needs the identity");
  for (const auto& row : action_) {
    if (row.size() != 2 * generators_) throw Error(ErrorCode::InconsistentTable, "row width does not match");
    for (int v : row) {
      if (v < 0 || v >= n) throw Error(ErrorCode::InconsistentTable, "table entry out of range");
    }
  }
  for (int g = 0; g < n; ++g) {
    for (std::size_t c = 0; c < 2 * generators_; ++c) {
      if (action_[action_[g][c]][c ^ 1] != g) {
        throw Error(ErrorCode::InconsistentTable, "inverse columns disagree at element " + std::to_string(g));
      }
    }
  }
  for (int g = 0; g < n; ++g) {
    for (std::size_t r = 0; r < p.relator_count(); ++r) {
      if (act(g, p.relators()[r]) != g) {
        throw Error(ErrorCode::InconsistentTable, "relator " + std::to_string(r) + " moves element " + std::to_string(g));
      }
    }
  }
}

int GroupTable::act(int element, const Word& w) const {
  for (auto l : w) element = act(element, l);
  return element;
}

namespace {

class CosetTable {
 public:
  CosetTable(std::size_t columns, std::size_t limit) : columns_(columns), limit_(limit) { add_row(); }

  bool overflow() const { return overflow_; }
  std::size_t rows() const { return table_.size(); }
  bool alive(int c) const { return parent_[c] == c; }
  int entry(int c, int col) const { return table_[c][col]; }

  int define(int c, int col) {
    if (table_.size() >= limit_) {
      overflow_ = true;
      return -1;
    }
    const int d = add_row();
    table_[c][col] = d;
    table_[d][col ^ 1] = c;
    return d;
  }

  // Scan-and-fill of one relator (as columns) at coset c.
  void scan_and_fill(int c, const std::vector<int>& w) {
    int f = c;
    int b = c;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][w[j] ^ 1] >= 0) b = table_[b][w[j--] ^ 1];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][w[i] ^ 1] = f;
        return;
      }
      if (define(f, w[i]) < 0) return;
    }
  }

  void fill_row(int c) {
    for (int col = 0; col < static_cast<int>(columns_) && !overflow_; ++col) {
      if (table_[c][col] < 0) define(c, col);
    }
  }

  std::vector<std::vector<int>> compact() {
    std::vector<int> number(table_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (alive(static_cast<int>(c))) number[c] = next++;
    }
    std::vector<std::vector<int>> out;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (number[c] < 0) continue;
      std::vector<int> row(columns_);
      for (std::size_t col = 0; col < columns_; ++col) row[col] = number[rep(table_[c][col])];
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  int add_row() {
    table_.emplace_back(columns_, -1);
    parent_.push_back(static_cast<int>(table_.size()) - 1);
    return static_cast<int>(table_.size()) - 1;
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b, std::deque<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      for (int col = 0; col < static_cast<int>(columns_); ++col) {
        const int f = table_[e][col];
        if (f < 0) continue;
        table_[f][col ^ 1] = -1;
        const int e1 = rep(e);
        const int f1 = rep(f);
        if (table_[e1][col] >= 0) {
          merge(f1, table_[e1][col], queue);
        } else if (table_[f1][col ^ 1] >= 0) {
          merge(e1, table_[f1][col ^ 1], queue);
        } else {
          table_[e1][col] = f1;
          table_[f1][col ^ 1] = e1;
        }
      }
    }
  }

  std::size_t columns_;
  std::size_t limit_;
  bool overflow_ = false;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

std::vector<int> word_columns(const Word& w) {
  std::vector<int> out;
  for (auto l : w) out.push_back(2 * l.gen + (l.sign < 0 ? 1 : 0));
  return out;
}

}  // namespace

std::optional<GroupTable> coset_enumeration(const Presentation& p, std::size_t limit) {
  if (limit < 1) throw Error(ErrorCode::InvalidArgument, "coset limit must be at least 1");
  CosetTable table(2 * p.generator_count(), limit);
  std::vector<std::vector<int>> relators;
  for (const auto& r : p.relators()) relators.push_back(word_columns(r));
  for (int c = 0; c < static_cast<int>(table.rows()); ++c) {
    for (const auto& r : relators) {
      if (!table.alive(c)) break;
      table.scan_and_fill(c, r);
      if (table.overflow()) return std::nullopt;
    }
    if (table.alive(c)) table.fill_row(c);
    if (table.overflow()) return std::nullopt;
  }
  auto action = table.compact();
  try {
    return GroupTable(p, std::move(action));
  } catch (const Error&) {
    throw std::logic_error("coset enumeration produced an inconsistent table");
  }
}

CayleyComplex build_cayley_complex(const GroupTable& t, const Presentation& p) {
  if (t.generator_count() != p.generator_count()) {
    throw Error(ErrorCode::InconsistentTable, "table and presentation disagree on generators");
  }
  CayleyComplex x;
  x.vertex_count = t.element_count();
  x.generator_count = p.generator_count();
  const auto n = static_cast<std::int64_t>(p.generator_count());
  for (int g = 0; g < static_cast<int>(t.element_count()); ++g) {
    for (std::size_t r = 0; r < p.relator_count(); ++r) {
      TwoCell cell{g, r, {}};
      int h = g;
      for (auto l : p.relators()[r]) {
        if (l.sign > 0) {
          cell.boundary.push_back(h * n + l.gen);
          h = t.act(h, l);
        } else {
          h = t.act(h, l);
          cell.boundary.push_back(h * n + l.gen);
        }
      }
      if (h != g) throw Error(ErrorCode::InconsistentTable, "relator lift does not close");
      x.cells.push_back(std::move(cell));
    }
  }
  return x;
}

CayleyComplex restrict_cells(const CayleyComplex& x, const std::vector<std::size_t>& cells) {
  CayleyComplex out;
  out.vertex_count = x.vertex_count;
  out.generator_count = x.generator_count;
  for (auto c : cells) out.cells.push_back(x.cells.at(c));
  return out;
}

CayleyComplex parse_subcomplex(std::string_view doc, const Presentation& p) {
  std::map<std::pair<int, int>, int> forward;   // (element, gen) -> image
  std::map<std::pair<int, int>, int> backward;  // (image, gen) -> element
  std::vector<std::pair<int, std::size_t>> cells;
  int max_element = -1;
  auto number = [](const text::Token& tok, std::size_t line) {
    try {
      std::size_t used = 0;
      const long v = std::stol(std::string(tok.text), &used);
      if (used != tok.text.size() || v < 0) throw std::invalid_argument("bad");
      return static_cast<int>(v);
    } catch (const std::exception&) {
      throw ParseError(line, tok.column, "expected a nonnegative integer");
    }
  };
  for (const auto& line : text::lines(doc)) {
    auto toks = text::tokens(line.text);
    if (toks.empty()) continue;
    if (toks[0].text == "table" && toks.size() == 4) {
      const int g = number(toks[1], line.number);
      auto gen = p.find(toks[2].text);
      if (!gen) throw ParseError(line.number, toks[2].column, "unknown generator", ErrorCode::UndeclaredGenerator);
      const int h = number(toks[3], line.number);
      auto [it, fresh] = forward.emplace(std::pair{g, *gen}, h);
      auto [jt, fresh_back] = backward.emplace(std::pair{h, *gen}, g);
      if ((!fresh && it->second != h) || (!fresh_back && jt->second != g)) {
        throw ParseError(line.number, toks[0].column, "table entry contradicts an earlier one",
                         ErrorCode::InconsistentSubcomplex);
      }
      max_element = std::max({max_element, g, h});
    } else if (toks[0].text == "cell" && toks.size() == 3) {
      const int g = number(toks[1], line.number);
      const int r = number(toks[2], line.number);
      if (static_cast<std::size_t>(r) >= p.relator_count()) {
        throw ParseError(line.number, toks[2].column, "relator index out of range", ErrorCode::InconsistentSubcomplex);
      }
      cells.push_back({g, static_cast<std::size_t>(r)});
      max_element = std::max(max_element, g);
    } else {
      throw ParseError(line.number, toks[0].column, "expected `table <g> <gen> <image>` or `cell <g> <relator>`");
    }
  }
  CayleyComplex x;
  x.vertex_count = static_cast<std::size_t>(max_element + 1);
  x.generator_count = p.generator_count();
  const auto n = static_cast<std::int64_t>(p.generator_count());
  for (auto [g, r] : cells) {
    TwoCell cell{g, r, {}};
    int h = g;
    for (auto l : p.relators()[r]) {
      const auto& m = l.sign > 0 ? forward : backward;
      auto it = m.find({h, l.gen});
      if (it == m.end()) {
        throw Error(ErrorCode::InconsistentSubcomplex, "cell (" + std::to_string(g) + ", " + std::to_string(r) +
                                                           ") leaves the partial table");
      }
      if (l.sign > 0) cell.boundary.push_back(h * n + l.gen);
      h = it->second;
      if (l.sign < 0) cell.boundary.push_back(h * n + l.gen);
    }
    if (h != g) {
      throw Error(ErrorCode::InconsistentSubcomplex,
                  "cell (" + std::to_string(g) + ", " + std::to_string(r) + ") does not close");
    }
    x.cells.push_back(std::move(cell));
  }
  return x;
}

namespace {

class Collapser {
 public:
  Collapser(const CayleyComplex& x, const Presentation& p, const GeneratorSet& s) : x_(x), s_(s) {
    const auto over = relators_over(p, s);
    over_s_.assign(p.relator_count(), false);
    for (auto r : over) over_s_[r] = true;
    alive_.assign(x.cells.size(), true);
    for (std::size_t c = 0; c < x.cells.size(); ++c) {
      for (auto e : x.cells[c].boundary) {
        if (over_s_[x.cells[c].relator]) {
          blocked_.insert(e);
        } else {
          ++count_[e];
          incident_[e].push_back(c);
        }
      }
    }
  }

  bool is_free(std::int64_t e) const {
    auto it = count_.find(e);
    return it != count_.end() && it->second == 1 && !blocked_.contains(e) &&
           !s_.contains(x_.edge_generator(e));
  }

  std::optional<std::int64_t> free_edge_of(std::size_t c) const {
    if (!alive_[c] || over_s_[x_.cells[c].relator]) return std::nullopt;
    std::optional<std::int64_t> best;
    for (auto e : x_.cells[c].boundary) {
      if (is_free(e) && (!best || e < *best)) best = e;
    }
    return best;
  }

  void remove(std::size_t c) {
    alive_[c] = false;
    for (auto e : x_.cells[c].boundary) --count_[e];
  }

  // Cells that may have become collapsible after removing c.
  std::vector<std::size_t> touched(std::size_t c) const {
    std::vector<std::size_t> out;
    for (auto e : x_.cells[c].boundary) {
      auto it = incident_.find(e);
      if (it == incident_.end()) continue;
      for (auto d : it->second) {
        if (alive_[d]) out.push_back(d);
      }
    }
    return out;
  }

  CollapseLog finish(std::vector<CollapseStep> steps) const {
    CollapseLog log;
    log.steps = std::move(steps);
    log.collapsed = true;
    for (std::size_t c = 0; c < alive_.size(); ++c) {
      if (!alive_[c]) continue;
      log.residual.push_back(c);
      if (!over_s_[x_.cells[c].relator]) log.collapsed = false;
    }
    return log;
  }

  std::size_t cell_count() const { return alive_.size(); }

 private:
  const CayleyComplex& x_;
  const GeneratorSet& s_;
  std::vector<bool> over_s_;
  std::vector<bool> alive_;
  std::map<std::int64_t, int> count_;
  std::set<std::int64_t> blocked_;
  std::map<std::int64_t, std::vector<std::size_t>> incident_;
};

template <typename Pick>
CollapseLog run_collapse(const CayleyComplex& x, const Presentation& p, const GeneratorSet& s, Pick pick) {
  Collapser state(x, p, s);
  std::set<std::size_t> candidates;
  for (std::size_t c = 0; c < state.cell_count(); ++c) {
    if (state.free_edge_of(c)) candidates.insert(c);
  }
  std::vector<CollapseStep> steps;
  while (!candidates.empty()) {
    const std::size_t c = pick(candidates);
    candidates.erase(c);
    auto e = state.free_edge_of(c);
    if (!e) continue;
    steps.push_back({c, *e});
    state.remove(c);
    for (auto d : state.touched(c)) {
      if (state.free_edge_of(d)) candidates.insert(d);
    }
  }
  return state.finish(std::move(steps));
}

}  // namespace

CollapseLog directed_collapse(const CayleyComplex& x, const Presentation& p, const GeneratorSet& s) {
  return run_collapse(x, p, s, [](const std::set<std::size_t>& c) { return *c.begin(); });
}

CollapseLog directed_collapse_random(const CayleyComplex& x, const Presentation& p, const GeneratorSet& s,
                                     std::mt19937_64& rng) {
  return run_collapse(x, p, s, [&](const std::set<std::size_t>& c) {
    std::uniform_int_distribution<std::size_t> dist(0, c.size() - 1);
    return *std::next(c.begin(), static_cast<std::ptrdiff_t>(dist(rng)));
  });
}

bool replay(const CayleyComplex& x, const Presentation& p, const GeneratorSet& s, const CollapseLog& log) {
  Collapser state(x, p, s);
  for (const auto& step : log.steps) {
    if (step.cell >= state.cell_count()) return false;
    if (!state.free_edge_of(step.cell) || !state.is_free(step.edge)) return false;
    const auto& b = x.cells[step.cell].boundary;
    if (std::find(b.begin(), b.end(), step.edge) == b.end()) return false;
    state.remove(step.cell);
  }
  const auto end = state.finish({});
  return end.residual == log.residual && end.collapsed == log.collapsed;
}

const char* to_string(FiniteVerdict v) {
  switch (v) {
    case FiniteVerdict::DecidedDr: return "DECIDED_DR";
    case FiniteVerdict::DecidedNotDr: return "DECIDED_NOT_DR";
    case FiniteVerdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

FiniteDecision decide_finite(const Presentation& p, const GeneratorSet& s, std::size_t limit) {
  require_proper(s, p);
  FiniteDecision out;
  auto table = coset_enumeration(p, limit);
  if (!table) return out;
  out.group_order = table->element_count();
  const auto x = build_cayley_complex(*table, p);
  out.log = directed_collapse(x, p, s);
  out.verdict = out.log->collapsed ? FiniteVerdict::DecidedDr : FiniteVerdict::DecidedNotDr;
  return out;
}

std::optional<SubcomplexRefutation> refute_with_subcomplex(const CayleyComplex& x, const Presentation& p,
                                                           const GeneratorSet& s) {
  require_generators(s, p);
  for (const auto& c : x.cells) {
    if (c.relator >= p.relator_count()) throw Error(ErrorCode::InconsistentSubcomplex, "cell relator out of range");
  }
  auto log = directed_collapse(x, p, s);
  if (log.collapsed) return std::nullopt;
  return SubcomplexRefutation{std::move(log)};
}

}  // namespace ddr
