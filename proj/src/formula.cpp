#include "bnet/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

formula formula::constant(bool v) {
  formula f;
  f.op = formula_op::constant;
  f.value = v;
  return f;
}

formula formula::variable(std::string name) {
  formula f;
  f.op = formula_op::variable;
  f.var = std::move(name);
  return f;
}

formula formula::negation(formula a) {
  formula f;
  f.op = formula_op::negation;
  f.args.push_back(std::move(a));
  return f;
}

formula formula::binary(formula_op op, formula a, formula b) {
  formula f;
  f.op = op;
  f.args.push_back(std::move(a));
  f.args.push_back(std::move(b));
  return f;
}

namespace {

struct token {
  enum class kind { ident, zero, one, bang, amp, bar, caret, arrow, darrow, lparen, rparen, end };
  kind k = kind::end;
  std::string text;
  int line = 1, col = 1;
};

class lexer {
public:
  lexer(const std::string& text, int line0, int col0) : text_(text), line_(line0), col_(col0) {
    next();
  }

  const token& peek() const { return cur_; }

  token take() {
    token t = cur_;
    next();
    return t;
  }

private:
  void next() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) advance();
    cur_ = token{};
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= text_.size()) {
      cur_.k = token::kind::end;
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        advance();
      cur_.k = token::kind::ident;
      cur_.text = text_.substr(start, pos_ - start);
      return;
    }
    switch (c) {
      case '0': advance(); cur_.k = token::kind::zero; return;
      case '1': advance(); cur_.k = token::kind::one; return;
      case '!': advance(); cur_.k = token::kind::bang; return;
      case '&': advance(); cur_.k = token::kind::amp; return;
      case '|': advance(); cur_.k = token::kind::bar; return;
      case '^': advance(); cur_.k = token::kind::caret; return;
      case '(': advance(); cur_.k = token::kind::lparen; return;
      case ')': advance(); cur_.k = token::kind::rparen; return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          advance();
          advance();
          cur_.k = token::kind::arrow;
          return;
        }
        break;
      case '<':
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
          advance();
          advance();
          advance();
          cur_.k = token::kind::darrow;
          return;
        }
        break;
      default: break;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", line_, col_);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_, col_;
  token cur_;
};

class parser {
public:
  parser(const std::string& text, std::span<const std::string> scope, int line0, int col0)
      : lex_(text, line0, col0), scope_(scope) {}

  formula parse() {
    formula f = iff();
    const token& t = lex_.peek();
    if (t.k != token::kind::end)
      throw parse_error("unexpected token after formula", t.line, t.col);
    return f;
  }

private:
  // iff := impl ('<->' impl)*          left-associative
  formula iff() {
    formula f = impl();
    while (lex_.peek().k == token::kind::darrow) {
      lex_.take();
      f = formula::binary(formula_op::biconditional, std::move(f), impl());
    }
    return f;
  }

  // impl := disj ('->' impl)?          right-associative
  formula impl() {
    formula f = disj();
    if (lex_.peek().k == token::kind::arrow) {
      lex_.take();
      f = formula::binary(formula_op::implication, std::move(f), impl());
    }
    return f;
  }

  formula disj() {
    formula f = exclusive();
    while (lex_.peek().k == token::kind::bar) {
      lex_.take();
      f = formula::binary(formula_op::disjunction, std::move(f), exclusive());
    }
    return f;
  }

  formula exclusive() {
    formula f = conj();
    while (lex_.peek().k == token::kind::caret) {
      lex_.take();
      f = formula::binary(formula_op::exclusive_or, std::move(f), conj());
    }
    return f;
  }

  formula conj() {
    formula f = unary();
    while (lex_.peek().k == token::kind::amp) {
      lex_.take();
      f = formula::binary(formula_op::conjunction, std::move(f), unary());
    }
    return f;
  }

  formula unary() {
    if (lex_.peek().k == token::kind::bang) {
      lex_.take();
      return formula::negation(unary());
    }
    return atom();
  }

  formula atom() {
    token t = lex_.take();
    switch (t.k) {
      case token::kind::zero: return formula::constant(false);
      case token::kind::one: return formula::constant(true);
      case token::kind::ident: {
        if (std::find(scope_.begin(), scope_.end(), t.text) == scope_.end())
          throw parse_error("unknown identifier '" + t.text + "'", t.line, t.col);
        return formula::variable(t.text);
      }
      case token::kind::lparen: {
        formula f = iff();
        token close = lex_.take();
        if (close.k != token::kind::rparen)
          throw parse_error("expected ')'", close.line, close.col);
        return f;
      }
      case token::kind::end: throw parse_error("unexpected end of formula", t.line, t.col);
      default: throw parse_error("expected an operand", t.line, t.col);
    }
  }

  lexer lex_;
  std::span<const std::string> scope_;
};

int precedence(formula_op op) {
  switch (op) {
    case formula_op::negation: return 5;
    case formula_op::conjunction: return 4;
    case formula_op::exclusive_or: return 3;
    case formula_op::disjunction: return 2;
    case formula_op::implication: return 1;
    case formula_op::biconditional: return 0;
    default: return 6;
  }
}

const char* op_symbol(formula_op op) {
  switch (op) {
    case formula_op::conjunction: return " & ";
    case formula_op::exclusive_or: return " ^ ";
    case formula_op::disjunction: return " | ";
    case formula_op::implication: return " -> ";
    case formula_op::biconditional: return " <-> ";
    default: return "";
  }
}

void print_rec(const formula& f, std::ostringstream& os, int parent_prec, bool right_operand) {
  switch (f.op) {
    case formula_op::constant: os << (f.value ? '1' : '0'); return;
    case formula_op::variable: os << f.var; return;
    case formula_op::negation:
      os << '!';
      print_rec(f.args[0], os, precedence(formula_op::negation), false);
      return;
    default: break;
  }
  int prec = precedence(f.op);
  // Right-associative '->' needs parens when it is a LEFT operand at equal
  // precedence; the left-associative connectives when a RIGHT operand.
  bool needs_parens = prec < parent_prec ||
                      (prec == parent_prec &&
                       (f.op == formula_op::implication ? !right_operand : right_operand));
  if (needs_parens) os << '(';
  print_rec(f.args[0], os, prec, false);
  os << op_symbol(f.op);
  print_rec(f.args[1], os, prec, true);
  if (needs_parens) os << ')';
}

}  // namespace

formula parse_formula(const std::string& text, std::span<const std::string> scope) {
  return parser(text, scope, 1, 1).parse();
}

formula parse_formula_at(const std::string& text, std::span<const std::string> scope, int line0,
                         int col0) {
  return parser(text, scope, line0, col0).parse();
}

std::string print_formula(const formula& f) {
  std::ostringstream os;
  print_rec(f, os, -1, false);
  return os.str();
}

namespace {

int eval_rec(const formula& f, const std::function<int(const std::string&)>& lookup) {
  switch (f.op) {
    case formula_op::constant: return f.value ? 1 : 0;
    case formula_op::variable: return lookup(f.var);
    case formula_op::negation: return 1 - eval_rec(f.args[0], lookup);
    case formula_op::conjunction: return eval_rec(f.args[0], lookup) & eval_rec(f.args[1], lookup);
    case formula_op::disjunction: return eval_rec(f.args[0], lookup) | eval_rec(f.args[1], lookup);
    case formula_op::exclusive_or: return eval_rec(f.args[0], lookup) ^ eval_rec(f.args[1], lookup);
    case formula_op::biconditional:
      return eval_rec(f.args[0], lookup) == eval_rec(f.args[1], lookup) ? 1 : 0;
    case formula_op::implication:
      return eval_rec(f.args[0], lookup) == 0 || eval_rec(f.args[1], lookup) == 1 ? 1 : 0;
  }
  throw error("evaluate: corrupt formula node");
}

}  // namespace

int evaluate(const formula& f, const std::unordered_map<std::string, int>& env) {
  return eval_rec(f, [&env](const std::string& name) -> int {
    auto it = env.find(name);
    if (it == env.end()) throw error("evaluate: missing binding for '" + name + "'");
    return it->second;
  });
}

logical_matrix structure_matrix(const formula& f, std::span<const std::string> ordered_vars) {
  int64_t k = static_cast<int64_t>(ordered_vars.size());
  if (k > 24) throw cap_error("structure_matrix: more than 24 variables");
  std::unordered_map<std::string, size_t> position;
  for (size_t i = 0; i < ordered_vars.size(); ++i) position[ordered_vars[i]] = i;

  std::vector<int> bits(static_cast<size_t>(k));
  auto lookup = [&](const std::string& name) -> int {
    auto it = position.find(name);
    if (it == position.end()) throw error("structure_matrix: unbound variable '" + name + "'");
    return bits[it->second];
  };

  int64_t q = int64_t{1} << k;
  std::vector<int64_t> cols(static_cast<size_t>(q));
  for (int64_t c = 1; c <= q; ++c) {
    int64_t v = c - 1;
    for (int64_t i = k - 1; i >= 0; --i) {
      bits[static_cast<size_t>(i)] = (v & 1) ? 0 : 1;
      v >>= 1;
    }
    cols[static_cast<size_t>(c - 1)] = eval_rec(f, lookup) ? 1 : 2;
  }
  return logical_matrix(2, std::move(cols));
}

subset_spec subset_spec::from_indices(int64_t n, std::vector<int64_t> idx) {
  int64_t size = int64_t{1} << n;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (int64_t v : idx)
    if (v < 1 || v > size)
      throw dimension_error("subset_spec: index " + std::to_string(v) + " out of range 1.." +
                            std::to_string(size));
  subset_spec s;
  s.n = n;
  s.members = std::move(idx);
  return s;
}

subset_spec subset_spec::from_tuples(int64_t n, std::span<const std::vector<int>> tuples) {
  std::vector<int64_t> idx;
  idx.reserve(tuples.size());
  for (const auto& t : tuples) {
    if (static_cast<int64_t>(t.size()) != n)
      throw dimension_error("subset_spec: tuple arity does not match n");
    idx.push_back(state_index_encode(t).index);
  }
  return from_indices(n, std::move(idx));
}

logical_matrix index_function(const subset_spec& s) {
  int64_t q = int64_t{1} << s.n;
  std::vector<int64_t> cols(static_cast<size_t>(q), 2);
  for (int64_t v : s.members) cols[static_cast<size_t>(v - 1)] = 1;
  return logical_matrix(2, std::move(cols));
}

std::vector<int64_t> function_support(const logical_matrix& f) {
  if (f.rows() != 2) throw dimension_error("function_support: expected a 2-row function matrix");
  std::vector<int64_t> out;
  for (int64_t j = 1; j <= f.cols(); ++j)
    if (f.col(j) == 1) out.push_back(j);
  return out;
}

}  // namespace bnet
