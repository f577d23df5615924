#include "viforge/ilp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "viforge/errors.hpp"

namespace viforge {

namespace {

using i128 = __int128;

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kPosInf = std::numeric_limits<std::int64_t>::max();

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

std::vector<Term> merge_terms(std::vector<Term> terms) {
  std::map<int, std::int64_t> acc;
  for (const Term& t : terms) acc[t.var] += t.coef;
  std::vector<Term> out;
  for (auto [var, coef] : acc) {
    if (coef != 0) out.push_back({var, coef});
  }
  return out;
}

// sum terms <= rhs
struct Row {
  std::vector<Term> terms;
  i128 rhs = 0;
};

class Solver {
 public:
  Solver(const IlpInstance& ilp, bool use_objective) : p_(ilp.variable_count()) {
    for (const auto& c : ilp.constraints()) {
      auto terms = merge_terms(c.terms);
      if (c.relation != Relation::GreaterEqual) rows_.push_back({terms, c.rhs});
      if (c.relation != Relation::LessEqual) {
        for (Term& t : terms) t.coef = -t.coef;
        rows_.push_back({terms, -static_cast<i128>(c.rhs)});
      }
    }
    lo_.resize(p_);
    hi_.resize(p_);
    for (int j = 0; j < p_; ++j) {
      const auto& b = ilp.bounds()[j];
      lo_[j] = b.lo == -kNoBound ? kNegInf : b.lo;
      hi_[j] = b.hi == kNoBound ? kPosInf : b.hi;
    }
    gain_.assign(p_, 0);
    if (use_objective && ilp.objective()) {
      const auto& obj = *ilp.objective();
      for (const Term& t : merge_terms(obj.terms)) {
        gain_[t.var] = obj.sense == Sense::Maximize ? t.coef : -t.coef;
      }
      has_objective_ = true;
      Row row;
      for (int j = 0; j < p_; ++j) {
        if (gain_[j] != 0) row.terms.push_back({j, -gain_[j]});
      }
      objective_row_ = static_cast<int>(rows_.size());
      rows_.push_back(row);
      set_target(std::nullopt);
    }
    incidence_.resize(p_);
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      for (const Term& t : rows_[r].terms) incidence_[t.var].push_back(r);
    }
  }

  // Gain-form target: accept only points with gain >= target.
  void set_target(std::optional<i128> target) {
    target_ = target;
    // Without a target the row is vacuous: -gain <= +inf.
    rows_[objective_row_].rhs = target ? -*target : std::numeric_limits<i128>::max() / 4;
  }

  bool root(std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) {
    lo = lo_;
    hi = hi_;
    std::vector<int> all(rows_.size());
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) all[r] = r;
    const bool ok = propagate(lo, hi, all);
    if (!ok) return false;
    for (int j = 0; j < p_; ++j) {
      if (lo[j] == kNegInf || hi[j] == kPosInf) {
        throw InputError("ILP variable " + std::to_string(j) + " has no finite bound");
      }
    }
    return true;
  }

  void search(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi, int branched) {
    if (stop_) return;
    std::vector<int> seed;
    if (branched >= 0) seed = incidence_[branched];
    if (has_objective_) seed.push_back(objective_row_);
    if (!propagate(lo, hi, seed)) return;
    int j = 0;
    while (j < p_ && lo[j] == hi[j]) ++j;
    if (j == p_) {
      leaf(lo);
      return;
    }
    const bool descending = gain_[j] > 0;
    for (i128 step = 0; step <= static_cast<i128>(hi[j]) - lo[j] && !stop_; ++step) {
      const std::int64_t value = static_cast<std::int64_t>(descending ? hi[j] - step : lo[j] + step);
      auto nlo = lo, nhi = hi;
      nlo[j] = nhi[j] = value;
      search(std::move(nlo), std::move(nhi), j);
    }
  }

  void set_ceiling(i128 ceiling) { ceiling_ = ceiling; }
  i128 gain_upper_bound(const std::vector<std::int64_t>& lo,
                        const std::vector<std::int64_t>& hi) const {
    i128 s = 0;
    for (int j = 0; j < p_; ++j) {
      s += gain_[j] > 0 ? static_cast<i128>(gain_[j]) * hi[j] : static_cast<i128>(gain_[j]) * lo[j];
    }
    return s;
  }

  std::optional<std::vector<std::int64_t>> best;
  i128 best_gain = 0;

 private:
  void leaf(const std::vector<std::int64_t>& point) {
    if (!has_objective_) {
      best = point;
      stop_ = true;
      return;
    }
    i128 g = 0;
    for (int j = 0; j < p_; ++j) g += static_cast<i128>(gain_[j]) * point[j];
    if (target_ && g < *target_) return;
    best = point;
    best_gain = g;
    set_target(g + 1);
    if (ceiling_ && g >= *ceiling_) stop_ = true;
  }

  // Interval bound propagation over the rows; false on a wipe-out.
  bool propagate(std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi,
                 const std::vector<int>& seed) {
    std::vector<char> queued(rows_.size(), 0);
    std::vector<int> queue;
    for (int r : seed) {
      if (!queued[r]) {
        queued[r] = 1;
        queue.push_back(r);
      }
    }
    std::size_t budget = 64 * rows_.size() + 64;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int r = queue[head];
      queued[r] = 0;
      if (budget-- == 0) break;
      const Row& row = rows_[r];
      // Minimum activity with infinite contributions counted separately.
      i128 finite = 0;
      int infinite = 0;
      for (const Term& t : row.terms) {
        const std::int64_t b = t.coef > 0 ? lo[t.var] : hi[t.var];
        if (b == kNegInf || b == kPosInf) {
          ++infinite;
        } else {
          finite += static_cast<i128>(t.coef) * b;
        }
      }
      if (infinite == 0 && finite > row.rhs) return false;
      if (infinite > 1) continue;
      for (const Term& t : row.terms) {
        const std::int64_t b = t.coef > 0 ? lo[t.var] : hi[t.var];
        const bool inf_self = b == kNegInf || b == kPosInf;
        if (infinite == 1 && !inf_self) continue;
        const i128 rest = inf_self ? finite : finite - static_cast<i128>(t.coef) * b;
        const i128 slack = row.rhs - rest;
        bool changed = false;
        if (t.coef > 0) {
          const i128 nh = floor_div(slack, t.coef);
          if (hi[t.var] == kPosInf || nh < hi[t.var]) {
            if (nh < static_cast<i128>(kNegInf) + 1) return false;
            if (nh < static_cast<i128>(kPosInf)) {
              hi[t.var] = static_cast<std::int64_t>(nh);
              changed = true;
            }
          }
        } else {
          const i128 nl = ceil_div(slack, t.coef);
          if (lo[t.var] == kNegInf || nl > lo[t.var]) {
            if (nl > static_cast<i128>(kPosInf) - 1) return false;
            if (nl > static_cast<i128>(kNegInf)) {
              lo[t.var] = static_cast<std::int64_t>(nl);
              changed = true;
            }
          }
        }
        if (!changed) continue;
        if (lo[t.var] != kNegInf && hi[t.var] != kPosInf && lo[t.var] > hi[t.var]) return false;
        for (int r2 : incidence_[t.var]) {
          if (r2 != r && !queued[r2]) {
            queued[r2] = 1;
            queue.push_back(r2);
          }
        }
      }
    }
    for (int j = 0; j < p_; ++j) {
      if (lo[j] != kNegInf && hi[j] != kPosInf && lo[j] > hi[j]) return false;
    }
    return true;
  }

  int p_;
  std::vector<Row> rows_;
  std::vector<std::vector<int>> incidence_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<std::int64_t> gain_;
  bool has_objective_ = false;
  int objective_row_ = -1;
  std::optional<i128> target_;
  std::optional<i128> ceiling_;
  bool stop_ = false;
};

std::string format_terms(const IlpInstance& ilp, const std::vector<Term>& terms) {
  std::ostringstream out;
  bool first = true;
  for (const Term& t : terms) {
    if (t.coef == 0) continue;
    const std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
    if (first) {
      if (t.coef < 0) out << "- ";
    } else {
      out << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag << ' ';
    out << ilp.name(t.var);
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

}  // namespace

int IlpInstance::add_variable(std::int64_t lo, std::int64_t hi, std::string name) {
  if (lo != -kNoBound && hi != kNoBound && lo > hi) {
    throw InputError("empty variable domain [" + std::to_string(lo) + ", " + std::to_string(hi) +
                     "]");
  }
  const int id = variable_count();
  bounds_.push_back({lo, hi});
  names_.push_back(name.empty() ? "x" + std::to_string(id) : std::move(name));
  return id;
}

void IlpInstance::check_terms(const std::vector<Term>& terms) const {
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= variable_count()) {
      throw InputError("ILP term refers to unknown variable " + std::to_string(t.var));
    }
  }
}

void IlpInstance::add_constraint(std::vector<Term> terms, Relation relation, std::int64_t rhs) {
  check_terms(terms);
  constraints_.push_back({std::move(terms), relation, rhs});
}

void IlpInstance::add_dense_constraint(std::span<const std::int64_t> coefs, Relation relation,
                                       std::int64_t rhs) {
  if (static_cast<int>(coefs.size()) != variable_count()) {
    throw InputError("dense constraint length differs from variable count");
  }
  std::vector<Term> terms;
  for (int j = 0; j < variable_count(); ++j) {
    if (coefs[j] != 0) terms.push_back({j, coefs[j]});
  }
  constraints_.push_back({std::move(terms), relation, rhs});
}

void IlpInstance::set_objective(std::vector<Term> terms, Sense sense) {
  check_terms(terms);
  objective_ = LinearObjective{std::move(terms), sense};
}

std::string IlpInstance::to_lp() const {
  std::ostringstream out;
  if (objective_) {
    out << (objective_->sense == Sense::Maximize ? "maximize" : "minimize") << '\n';
    out << "  obj: " << format_terms(*this, objective_->terms) << '\n';
  } else {
    out << "feasibility\n";
  }
  out << "subject to\n";
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    const char* rel = c.relation == Relation::LessEqual      ? "<="
                      : c.relation == Relation::GreaterEqual ? ">="
                                                             : "=";
    out << "  c" << i << ": " << format_terms(*this, c.terms) << ' ' << rel << ' ' << c.rhs
        << '\n';
  }
  out << "bounds\n";
  for (int j = 0; j < variable_count(); ++j) {
    const auto& b = bounds_[j];
    out << "  ";
    if (b.lo == -kNoBound) {
      out << "-inf";
    } else {
      out << b.lo;
    }
    out << " <= " << names_[j] << " <= ";
    if (b.hi == kNoBound) {
      out << "+inf";
    } else {
      out << b.hi;
    }
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

std::optional<std::vector<std::int64_t>> feasible(const IlpInstance& ilp) {
  Solver solver(ilp, false);
  std::vector<std::int64_t> lo, hi;
  if (!solver.root(lo, hi)) return std::nullopt;
  solver.search(std::move(lo), std::move(hi), -1);
  return solver.best;
}

std::optional<IlpSolution> optimize(const IlpInstance& ilp, std::optional<std::int64_t> cutoff) {
  if (!ilp.objective()) throw InputError("optimize requires an objective");
  const bool maximize = ilp.objective()->sense == Sense::Maximize;
  Solver solver(ilp, true);
  if (cutoff) solver.set_target(maximize ? static_cast<i128>(*cutoff) : -static_cast<i128>(*cutoff));
  std::vector<std::int64_t> lo, hi;
  if (!solver.root(lo, hi)) return std::nullopt;
  solver.set_ceiling(solver.gain_upper_bound(lo, hi));
  solver.search(std::move(lo), std::move(hi), -1);
  if (!solver.best) return std::nullopt;
  IlpSolution sol;
  sol.values = *solver.best;
  sol.objective = objective_value(ilp, sol.values);
  return sol;
}

bool satisfies(const IlpInstance& ilp, std::span<const std::int64_t> point) {
  if (static_cast<int>(point.size()) != ilp.variable_count()) return false;
  for (int j = 0; j < ilp.variable_count(); ++j) {
    const auto& b = ilp.bounds()[j];
    if (b.lo != -kNoBound && point[j] < b.lo) return false;
    if (b.hi != kNoBound && point[j] > b.hi) return false;
  }
  for (const auto& c : ilp.constraints()) {
    i128 lhs = 0;
    for (const Term& t : c.terms) lhs += static_cast<i128>(t.coef) * point[t.var];
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

std::int64_t objective_value(const IlpInstance& ilp, std::span<const std::int64_t> point) {
  if (!ilp.objective()) return 0;
  std::int64_t v = 0;
  for (const Term& t : ilp.objective()->terms) v += t.coef * point[t.var];
  return v;
}

}  // namespace viforge
