#include "bnet/network.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "bnet/errors.hpp"

namespace bnet {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct raw_line {
  enum class kind { inputs, update, output } k;
  std::string lhs;
  std::string rhs;
  int line;
  int rhs_col;
};

}  // namespace

network_def parse_network(const std::string& text) {
  std::vector<raw_line> lines;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> control_vars;
  bool saw_inputs = false;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string body = strip(line);
    if (body.empty()) continue;

    if (body.rfind("inputs:", 0) == 0) {
      if (saw_inputs) throw parse_error("duplicate 'inputs:' line", lineno, 1);
      saw_inputs = true;
      std::istringstream ns(body.substr(7));
      std::string name;
      while (ns >> name) {
        if (!valid_identifier(name))
          throw parse_error("bad input name '" + name + "'", lineno, 1);
        control_vars.push_back(name);
      }
      continue;
    }

    // "name <- formula" (update) or "name = formula" (output). The update
    // arrow is '<-' not followed by '>', so it cannot collide with '<->'
    // inside a formula body (the lhs is a bare identifier).
    size_t p = 0;
    while (p < line.size() && (std::isalnum(static_cast<unsigned char>(line[p])) ||
                               line[p] == '_' || line[p] == ' ' || line[p] == '\t'))
      ++p;
    std::string lhs = strip(line.substr(0, p));
    if (!valid_identifier(lhs))
      throw parse_error("expected 'name <- formula' or 'name = formula'", lineno, 1);
    raw_line rl;
    rl.lhs = lhs;
    rl.line = lineno;
    if (line.compare(p, 2, "<-") == 0 && (p + 2 >= line.size() || line[p + 2] != '>')) {
      rl.k = raw_line::kind::update;
      rl.rhs = line.substr(p + 2);
      rl.rhs_col = static_cast<int>(p) + 3;
    } else if (line.compare(p, 1, "=") == 0) {
      rl.k = raw_line::kind::output;
      rl.rhs = line.substr(p + 1);
      rl.rhs_col = static_cast<int>(p) + 2;
    } else {
      throw parse_error("expected '<-' or '=' after '" + lhs + "'", lineno, static_cast<int>(p) + 1);
    }
    if (strip(rl.rhs).empty()) throw parse_error("missing formula", lineno, rl.rhs_col);
    lines.push_back(std::move(rl));
  }

  network_def net;
  net.control_vars = control_vars;
  std::unordered_set<std::string> seen;
  for (const auto& rl : lines) {
    if (rl.k != raw_line::kind::update) continue;
    if (!seen.insert(rl.lhs).second)
      throw parse_error("duplicate update rule for '" + rl.lhs + "'", rl.line, 1);
    net.state_vars.push_back(rl.lhs);
  }
  if (net.state_vars.empty()) throw parse_error("network has no update rules", lineno, 1);
  for (const auto& v : net.control_vars)
    if (seen.count(v)) throw parse_error("name '" + v + "' is both state and input", 1, 1);

  std::vector<std::string> full_scope = net.control_vars;
  full_scope.insert(full_scope.end(), net.state_vars.begin(), net.state_vars.end());

  for (const auto& rl : lines) {
    if (rl.k == raw_line::kind::update) {
      net.update_rules.push_back(parse_formula_at(rl.rhs, full_scope, rl.line, rl.rhs_col));
    } else {
      // Outputs are functions of the state only.
      net.output_rules.emplace_back(rl.lhs,
                                    parse_formula_at(rl.rhs, net.state_vars, rl.line, rl.rhs_col));
    }
  }
  return net;
}

std::string write_network(const network_def& net) {
  std::ostringstream os;
  if (!net.control_vars.empty()) {
    os << "inputs:";
    for (const auto& u : net.control_vars) os << ' ' << u;
    os << '\n';
  }
  for (size_t i = 0; i < net.state_vars.size(); ++i)
    os << net.state_vars[i] << " <- " << print_formula(net.update_rules[i]) << '\n';
  for (const auto& [name, f] : net.output_rules) os << name << " = " << print_formula(f) << '\n';
  return os.str();
}

bn_assr assemble_bn(const network_def& net) {
  if (net.m() != 0) throw dimension_error("assemble_bn: network has control variables");
  bn_assr sys;
  sys.n = net.n();
  for (const auto& f : net.update_rules)
    sys.componentwise.push_back(structure_matrix(f, net.state_vars));
  sys.overall = sys.componentwise.front();
  for (size_t i = 1; i < sys.componentwise.size(); ++i)
    sys.overall = khatri_rao(sys.overall, sys.componentwise[i]);
  return sys;
}

namespace {

std::vector<logical_matrix> split_blocks(int64_t n, int64_t m, const logical_matrix& transition) {
  int64_t states = int64_t{1} << n;
  std::vector<logical_matrix> blocks;
  for (int64_t r = 0; r < (int64_t{1} << m); ++r) {
    std::vector<int64_t> c(static_cast<size_t>(states));
    for (int64_t x = 1; x <= states; ++x)
      c[static_cast<size_t>(x - 1)] = transition.col(r * states + x);
    blocks.emplace_back(states, std::move(c));
  }
  return blocks;
}

}  // namespace

bcn_assr assemble_bcn(const network_def& net) {
  if (net.m() < 1) throw dimension_error("assemble_bcn: network has no control variables");
  bcn_assr sys;
  sys.n = net.n();
  sys.m = net.m();
  std::vector<std::string> ordered = net.control_vars;  // controls outermost
  ordered.insert(ordered.end(), net.state_vars.begin(), net.state_vars.end());
  for (const auto& f : net.update_rules)
    sys.componentwise.push_back(structure_matrix(f, ordered));
  sys.transition = sys.componentwise.front();
  for (size_t i = 1; i < sys.componentwise.size(); ++i)
    sys.transition = khatri_rao(sys.transition, sys.componentwise[i]);
  sys.blocks = split_blocks(sys.n, sys.m, sys.transition);
  return sys;
}

output_map assemble_outputs(const network_def& net) {
  if (net.output_rules.empty()) throw dimension_error("assemble_outputs: network has no outputs");
  output_map out;
  for (const auto& [name, f] : net.output_rules) {
    out.names.push_back(name);
    out.components.push_back(structure_matrix(f, net.state_vars));
  }
  out.combined = out.components.front();
  for (size_t i = 1; i < out.components.size(); ++i)
    out.combined = khatri_rao(out.combined, out.components[i]);
  return out;
}

bcn_assr as_bcn(const bn_assr& sys) {
  bcn_assr b;
  b.n = sys.n;
  b.m = 0;
  b.componentwise = sys.componentwise;
  b.transition = sys.overall;
  b.blocks = {sys.overall};
  return b;
}

bcn_assr bcn_from_transition(int64_t n, int64_t m, const logical_matrix& transition) {
  if (transition.rows() != (int64_t{1} << n) || transition.cols() != (int64_t{1} << (m + n)))
    throw dimension_error("bcn_from_transition: matrix shape does not match n, m");
  bcn_assr sys;
  sys.n = n;
  sys.m = m;
  for (int64_t k = 1; k <= n; ++k) {
    // Componentwise matrix of x_k: project each transition column to bit k.
    std::vector<int64_t> c(static_cast<size_t>(transition.cols()));
    for (int64_t j = 1; j <= transition.cols(); ++j)
      c[static_cast<size_t>(j - 1)] = 1 + (((transition.col(j) - 1) >> (n - k)) & 1);
    sys.componentwise.emplace_back(2, std::move(c));
  }
  sys.transition = transition;
  sys.blocks = split_blocks(n, m, transition);
  return sys;
}

delta_vector step(const bcn_assr& sys, const delta_vector& x, const delta_vector& u) {
  if (x.dim != sys.state_count() || u.dim != sys.block_count())
    throw dimension_error("step: state or control dimension mismatch");
  return apply(sys.blocks[static_cast<size_t>(u.index - 1)], x);
}

std::vector<int64_t> trajectory(const bcn_assr& sys, int64_t x0, std::span<const int64_t> controls) {
  std::vector<int64_t> states{x0};
  delta_vector x{sys.state_count(), x0};
  for (int64_t u : controls) {
    x = step(sys, x, delta_vector{sys.block_count(), u});
    states.push_back(x.index);
  }
  return states;
}

coordinate_change::coordinate_change(logical_matrix m) : t(std::move(m)) {
  if (!t.is_permutation())
    throw dimension_error("coordinate_change: matrix is not a permutation");
}

bcn_assr apply_coordinate_change(const bcn_assr& sys, const coordinate_change& cc) {
  if (cc.t.rows() != sys.state_count())
    throw dimension_error("apply_coordinate_change: size mismatch");
  logical_matrix tt = cc.t.permutation_transpose();
  std::vector<int64_t> cols;
  cols.reserve(static_cast<size_t>(sys.transition.cols()));
  for (int64_t r = 0; r < sys.block_count(); ++r) {
    logical_matrix conj = compose(compose(cc.t, sys.blocks[static_cast<size_t>(r)]), tt);
    for (int64_t j : conj.col_indices()) cols.push_back(j);
  }
  return bcn_from_transition(sys.n, sys.m, logical_matrix(sys.state_count(), std::move(cols)));
}

output_map apply_coordinate_change(const output_map& out, const coordinate_change& cc) {
  logical_matrix tt = cc.t.permutation_transpose();
  output_map res;
  res.names = out.names;
  for (const auto& c : out.components) res.components.push_back(compose(c, tt));
  res.combined = compose(out.combined, tt);
  return res;
}

std::vector<std::vector<int64_t>> find_attractors(const bn_assr& sys) {
  int64_t states = int64_t{1} << sys.n;
  // 0 = unvisited, otherwise the 1-based pass in which the state was reached.
  std::vector<int64_t> visited_pass(static_cast<size_t>(states), 0);
  std::vector<std::vector<int64_t>> cycles;
  for (int64_t start = 1; start <= states; ++start) {
    if (visited_pass[static_cast<size_t>(start - 1)]) continue;
    std::vector<int64_t> path;
    int64_t x = start;
    while (visited_pass[static_cast<size_t>(x - 1)] == 0) {
      visited_pass[static_cast<size_t>(x - 1)] = start;
      path.push_back(x);
      x = sys.overall.col(x);
    }
    if (visited_pass[static_cast<size_t>(x - 1)] == start) {
      // Found a new cycle; extract it from the tail of the path.
      auto it = std::find(path.begin(), path.end(), x);
      std::vector<int64_t> cycle(it, path.end());
      auto min_it = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), min_it, cycle.end());
      cycles.push_back(std::move(cycle));
    }
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return cycles;
}

std::string state_transition_graph(const bcn_assr& sys, const stg_options& opt) {
  int64_t states = sys.state_count();
  int64_t edges = states * sys.block_count();
  if (edges > opt.max_edges)
    throw cap_error("state_transition_graph: " + std::to_string(edges) + " edges exceed cap " +
                    std::to_string(opt.max_edges));
  std::ostringstream os;
  os << "digraph stg {\n  rankdir=LR;\n";
  for (int64_t x = 1; x <= states; ++x) {
    os << "  s" << x << " [label=\"" << x;
    if (opt.bit_labels) {
      os << ':';
      for (int b : state_index_decode(sys.n, x)) os << b;
    }
    os << "\"];\n";
  }
  for (int64_t r = 1; r <= sys.block_count(); ++r)
    for (int64_t x = 1; x <= states; ++x) {
      os << "  s" << x << " -> s" << sys.blocks[static_cast<size_t>(r - 1)].col(x);
      if (sys.m > 0) os << " [label=\"u=" << r << "\"]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace bnet
