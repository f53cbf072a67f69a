#include "ddr/lp.hpp"

#include <stdexcept>

#include "ddr/error.hpp"

namespace ddr::lp {

std::size_t Problem::add(Constraint c) {
  for (const auto& [var, coef] : c.terms) {
    if (var < 0 || static_cast<std::size_t>(var) >= variable_count_) {
      throw Error(ErrorCode::InvalidArgument, "constraint references an unknown variable");
    }
  }
  constraints_.push_back(std::move(c));
  return constraints_.size() - 1;
}

namespace {

class Tableau {
 public:
  explicit Tableau(const Problem& problem) : n_(problem.variable_count()) {
    const auto& rows = problem.constraints();
    m_ = rows.size();

    // Column layout: originals, then one slack/surplus per inequality row,
    // then one artificial per >= or = row, then the right-hand side.
    std::size_t slack_count = 0;
    std::size_t artificial_count = 0;
    std::vector<Relation> rel(m_);
    std::vector<int> flip(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      rel[i] = rows[i].relation;
      if (sgn(rows[i].rhs) < 0) {
        flip[i] = -1;
        if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
        else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
      }
      if (rel[i] != Relation::Equal) ++slack_count;
      if (rel[i] != Relation::LessEqual) ++artificial_count;
    }
    first_artificial_ = n_ + slack_count;
    cols_ = first_artificial_ + artificial_count;
    t_.assign(m_, std::vector<Rational>(cols_ + 1));
    basis_.assign(m_, 0);
    z_.assign(cols_ + 1, Rational(0));

    std::size_t next_slack = n_;
    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = t_[i];
      for (const auto& [var, coef] : rows[i].terms) row[var] += flip[i] * coef;
      row[cols_] = flip[i] * rows[i].rhs;
      if (rel[i] == Relation::LessEqual) {
        row[next_slack] = 1;
        basis_[i] = next_slack++;
      } else {
        if (rel[i] == Relation::GreaterEqual) row[next_slack++] = -1;
        row[next_art] = 1;
        z_[next_art] = 1;
        basis_[i] = next_art++;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= first_artificial_) {
        for (std::size_t j = 0; j <= cols_; ++j) z_[j] -= t_[i][j];
      }
    }
  }

  std::size_t solve() {
    std::size_t pivots = 0;
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(z_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return pivots;
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) throw std::logic_error("phase-one simplex reported unbounded");
      pivot(leave, enter);
      ++pivots;
    }
  }

  bool feasible() const { return sgn(z_[cols_]) == 0; }

  std::vector<Rational> point() const {
    std::vector<Rational> x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = t_[i][cols_];
    }
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
      }
    }
    if (sgn(z_[c]) != 0) {
      Rational f = z_[c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[r][j]) != 0) z_[j] -= f * t_[r][j];
      }
    }
    basis_[r] = c;
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> z_;
};

Rational row_value(const Constraint& c, std::span<const Rational> x) {
  Rational v = 0;
  for (const auto& [var, coef] : c.terms) v += coef * x[var];
  return v;
}

}  // namespace

Solution find_feasible_point(const Problem& problem) {
  Tableau tab(problem);
  Solution s;
  s.pivots = tab.solve();
  if (tab.feasible()) s.point = tab.point();
  return s;
}

bool satisfies(const Problem& problem, std::span<const Rational> x) {
  if (x.size() != problem.variable_count()) return false;
  for (const auto& v : x) {
    if (sgn(v) < 0) return false;
  }
  for (const auto& c : problem.constraints()) {
    Rational v = row_value(c, x);
    switch (c.relation) {
      case Relation::LessEqual:
        if (v > c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (v < c.rhs) return false;
        break;
      case Relation::Equal:
        if (v != c.rhs) return false;
        break;
    }
  }
  return true;
}

std::optional<FarkasCertificate> infeasibility_certificate(const Problem& problem) {
  // Alternative system: y >= 0 on inequality rows (>= orientation), equality
  // rows split into y+ - y-, sum_i y_i a_i <= 0 and sum_i y_i b_i = 1.
  const auto& rows = problem.constraints();
  std::vector<std::pair<std::size_t, int>> columns;  // (row, sign)
  for (std::size_t i = 0; i < rows.size(); ++i) {
    columns.push_back({i, 1});
    if (rows[i].relation == Relation::Equal) columns.push_back({i, -1});
  }
  auto orientation = [&](std::size_t i) { return rows[i].relation == Relation::LessEqual ? -1 : 1; };

  Problem dual(columns.size());
  std::vector<Constraint> per_var(problem.variable_count());
  for (auto& c : per_var) {
    c.relation = Relation::LessEqual;
    c.rhs = 0;
  }
  Constraint normal;
  normal.relation = Relation::Equal;
  normal.rhs = 1;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    auto [i, sign] = columns[k];
    const int o = orientation(i) * sign;
    for (const auto& [var, coef] : rows[i].terms) {
      per_var[var].terms.push_back({static_cast<int>(k), o * coef});
    }
    if (sgn(rows[i].rhs) != 0) normal.terms.push_back({static_cast<int>(k), o * rows[i].rhs});
  }
  for (auto& c : per_var) dual.add(std::move(c));
  dual.add(std::move(normal));

  auto sol = find_feasible_point(dual);
  if (!sol.point) return std::nullopt;
  FarkasCertificate cert;
  cert.multipliers.assign(rows.size(), Rational(0));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    cert.multipliers[columns[k].first] += columns[k].second * (*sol.point)[k];
  }
  return cert;
}

bool verify_farkas(const Problem& problem, const FarkasCertificate& cert) {
  const auto& rows = problem.constraints();
  if (cert.multipliers.size() != rows.size()) return false;
  std::vector<Rational> combo(problem.variable_count(), Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& y = cert.multipliers[i];
    if (rows[i].relation != Relation::Equal && sgn(y) < 0) return false;
    const int o = rows[i].relation == Relation::LessEqual ? -1 : 1;
    for (const auto& [var, coef] : rows[i].terms) combo[var] += o * y * coef;
    rhs += o * y * rows[i].rhs;
  }
  for (const auto& v : combo) {
    if (sgn(v) > 0) return false;
  }
  return sgn(rhs) > 0;
}

}  // namespace ddr::lp
