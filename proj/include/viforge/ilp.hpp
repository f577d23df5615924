#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace viforge {

enum class Relation { LessEqual, GreaterEqual, Equal };
enum class Sense { Minimize, Maximize };

struct Term {
  int var = 0;
  std::int64_t coef = 0;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  std::int64_t rhs = 0;
};

struct LinearObjective {
  std::vector<Term> terms;
  Sense sense = Sense::Minimize;
};

// Marks a missing bound. The solver must be able to derive a finite bound by
// propagation, otherwise it throws InputError.
inline constexpr std::int64_t kNoBound = std::numeric_limits<std::int64_t>::max();

struct VariableBounds {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// Integer program with per-variable intervals, sparse linear constraints and
// an optional linear objective.
class IlpInstance {
 public:
  // lo may be -kNoBound and hi may be kNoBound.
  int add_variable(std::int64_t lo, std::int64_t hi, std::string name = {});
  void add_constraint(std::vector<Term> terms, Relation relation, std::int64_t rhs);
  // Dense form; coefficients indexed by variable.
  void add_dense_constraint(std::span<const std::int64_t> coefs, Relation relation,
                            std::int64_t rhs);
  void set_objective(std::vector<Term> terms, Sense sense);

  int variable_count() const { return static_cast<int>(bounds_.size()); }
  const std::vector<VariableBounds>& bounds() const { return bounds_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::optional<LinearObjective>& objective() const { return objective_; }
  const std::string& name(int var) const { return names_[var]; }

  // Plain-text LP-like dump, one constraint per line.
  std::string to_lp() const;

 private:
  void check_terms(const std::vector<Term>& terms) const;

  std::vector<VariableBounds> bounds_;
  std::vector<std::string> names_;
  std::vector<LinearConstraint> constraints_;
  std::optional<LinearObjective> objective_;
};

struct IlpSolution {
  std::vector<std::int64_t> values;
  std::int64_t objective = 0;
};

// First satisfying point in lexicographic order (variables in model order,
// values ascending), or nullopt. The objective, if any, is ignored.
std::optional<std::vector<std::int64_t>> feasible(const IlpInstance& ilp);

// Optimal point: the first optimal leaf of a depth-first branch and bound in
// model variable order. `cutoff`, when given, restricts the search to points
// whose objective is at least as good as it (ties allowed); a cutoff never
// changes which optimal point is returned. Requires an objective.
std::optional<IlpSolution> optimize(const IlpInstance& ilp,
                                    std::optional<std::int64_t> cutoff = std::nullopt);

// Independent evaluator: bounds and every constraint hold.
bool satisfies(const IlpInstance& ilp, std::span<const std::int64_t> point);

std::int64_t objective_value(const IlpInstance& ilp, std::span<const std::int64_t> point);

}  // namespace viforge
