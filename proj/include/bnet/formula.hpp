/* bnet: Boolean formula AST, DSL parser, structure-matrix compiler */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bnet/logical_matrix.hpp"

namespace bnet {

enum class formula_op : uint8_t {
  constant,
  variable,
  negation,
  conjunction,
  disjunction,
  exclusive_or,
  biconditional,
  implication,
};

/// Value-semantic formula tree over named variables.
struct formula {
  formula_op op = formula_op::constant;
  bool value = false;        // constant
  std::string var;           // variable
  std::vector<formula> args; // 1 for negation, 2 for binary connectives

  static formula constant(bool v);
  static formula variable(std::string name);
  static formula negation(formula a);
  static formula binary(formula_op op, formula a, formula b);

  friend bool operator==(const formula&, const formula&) = default;
};

/// Parse a single formula. Operators: ! & ^ | -> <-> and constants 0/1;
/// precedence high to low: !, &, ^, |, ->, <->; all binary operators
/// left-associative except -> (right-associative). Every identifier must be
/// listed in `scope`; violations raise parse_error with line/column.
formula parse_formula(const std::string& text, std::span<const std::string> scope);

/// Same, with error positions offset to (line0, col0) — used when the formula
/// is embedded in a larger file.
formula parse_formula_at(const std::string& text, std::span<const std::string> scope, int line0,
                         int col0);

/// Minimal-parenthesis rendering; parse(print(f)) == f.
std::string print_formula(const formula& f);

/// Classical evaluation; throws error on a missing binding.
int evaluate(const formula& f, const std::unordered_map<std::string, int>& env);

/// Unique 2 x 2^k logical matrix M_f with f(v_1,...,v_k) = M_f v_1 ... v_k in
/// vector form, built by truth-table enumeration over the 2^k assignments of
/// `ordered_vars` in delta-index order.
logical_matrix structure_matrix(const formula& f, std::span<const std::string> ordered_vars);

/// Subset of the state space {1..2^n}, stored as deduplicated delta indices.
struct subset_spec {
  int64_t n = 1;
  std::vector<int64_t> members;  // sorted, unique, each in 1..2^n

  static subset_spec from_indices(int64_t n, std::vector<int64_t> idx);
  static subset_spec from_tuples(int64_t n, std::span<const std::vector<int>> tuples);
};

/// Index function of S: column i is delta_2^1 iff i is in S.
logical_matrix index_function(const subset_spec& s);

/// Support of a 2 x 2^n function, i.e. the delta indices mapped to delta_2^1.
std::vector<int64_t> function_support(const logical_matrix& f);

}  // namespace bnet
