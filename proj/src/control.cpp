#include "bnet/control.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

closure_result closure_bcn(const function_set& generators, const bcn_assr& sys,
                           std::span<const int64_t> blocks_filter, const closure_options& opt) {
  std::vector<int64_t> ids;
  if (blocks_filter.empty()) {
    for (int64_t r = 1; r <= sys.block_count(); ++r) ids.push_back(r);
  } else {
    ids.assign(blocks_filter.begin(), blocks_filter.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int64_t r : ids)
      if (r < 1 || r > sys.block_count())
        throw dimension_error("closure_bcn: control block " + std::to_string(r) + " out of range");
  }
  std::vector<logical_matrix> blocks;
  blocks.reserve(ids.size());
  for (int64_t r : ids) blocks.push_back(sys.blocks[static_cast<size_t>(r - 1)]);
  return close_under_blocks(generators, blocks, ids, opt);
}

aggregated_system aggregated_bcn(const closure_result& cl,
                                 std::span<const int64_t> output_positions) {
  return aggregated_dynamics(cl, output_positions);
}

control_constraint parse_constraints(const std::string& text) {
  control_constraint c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word != "forbid") throw parse_error("expected 'forbid'", lineno, 1);
    std::string uspec;
    if (!(ls >> uspec) || uspec.rfind("u=", 0) != 0)
      throw parse_error("expected 'u=<index>'", lineno, 1);
    int64_t u = 0;
    try {
      u = std::stoll(uspec.substr(2));
    } catch (const std::exception&) {
      throw parse_error("bad control index '" + uspec + "'", lineno, 1);
    }
    std::string when, cls, in;
    if (!(ls >> when >> cls >> in) || when != "when" || cls != "class" || in != "in")
      throw parse_error("expected 'when class in {...}'", lineno, 1);
    std::string rest;
    std::getline(ls, rest);
    size_t open = rest.find('{'), close = rest.find('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw parse_error("expected '{k1,k2,...}'", lineno, 1);
    std::string inner = rest.substr(open + 1, close - open - 1);
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::istringstream ks(inner);
    int64_t k;
    bool any = false;
    while (ks >> k) {
      c.forbidden.emplace_back(k, u);
      any = true;
    }
    if (!any) throw parse_error("empty class set", lineno, 1);
  }
  std::sort(c.forbidden.begin(), c.forbidden.end());
  c.forbidden.erase(std::unique(c.forbidden.begin(), c.forbidden.end()), c.forbidden.end());
  return c;
}

std::string write_constraints(const control_constraint& c) {
  // Group classes per control for the compact one-line-per-control form.
  std::ostringstream os;
  std::vector<std::pair<int64_t, int64_t>> sorted = c.forbidden;  // (class, u)
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
  size_t i = 0;
  while (i < sorted.size()) {
    int64_t u = sorted[i].second;
    os << "forbid u=" << u << " when class in {";
    bool first = true;
    while (i < sorted.size() && sorted[i].second == u) {
      os << (first ? "" : ",") << sorted[i].first;
      first = false;
      ++i;
    }
    os << "}\n";
  }
  return os.str();
}

constrained_aggregated apply_constraints(const aggregated_system& agg,
                                         const control_constraint& c) {
  const reduced_system& red = agg.reduced;
  for (const auto& [cls, u] : c.forbidden) {
    if (cls < 1 || cls > red.class_count())
      throw dimension_error("apply_constraints: class " + std::to_string(cls) + " out of range 1.." +
                            std::to_string(red.class_count()));
    if (u < 1 || u > static_cast<int64_t>(agg.h_blocks.size()))
      throw dimension_error("apply_constraints: control " + std::to_string(u) + " out of range");
  }

  constrained_aggregated out;
  out.constraint = c;
  out.reduced = red;
  for (const auto& h : agg.h_blocks) out.h_blocks.emplace_back(h);

  int64_t product_states = int64_t{1} << agg.s;
  for (const auto& [cls, u] : c.forbidden) {
    out.reduced.transitions[static_cast<size_t>(u - 1)][static_cast<size_t>(cls - 1)] = 0;
    const auto& value = red.class_values[static_cast<size_t>(cls - 1)];
    // Lift the class to product-form columns: zero exactly the column whose
    // factor values equal the class value vector.
    for (int64_t z = 1; z <= product_states; ++z) {
      bool match = true;
      for (int64_t i = 1; i <= agg.s && match; ++i)
        match = (1 - (((z - 1) >> (agg.s - i)) & 1)) == value[static_cast<size_t>(i - 1)];
      if (match) out.h_blocks[static_cast<size_t>(u - 1)].zero_column(z);
    }
  }
  return out;
}

reduced_sim_result simulate_reduced(const reduced_system& red, int64_t class0,
                                    std::span<const int64_t> controls) {
  if (class0 < 1 || class0 > red.class_count())
    throw dimension_error("simulate_reduced: initial class out of range");
  reduced_sim_result res;
  res.classes.push_back(class0);
  int64_t cur = class0;
  for (size_t t = 0; t < controls.size(); ++t) {
    int64_t u = controls[t];
    if (u < 1 || u > static_cast<int64_t>(red.transitions.size()))
      throw dimension_error("simulate_reduced: control index out of range");
    int64_t next = red.transitions[static_cast<size_t>(u - 1)][static_cast<size_t>(cur - 1)];
    if (next == 0) {
      res.forbidden = true;
      res.halted_step = static_cast<int64_t>(t);
      return res;
    }
    cur = next;
    res.classes.push_back(cur);
  }
  return res;
}

realization min_realization(const bcn_assr& sys, const output_map& outputs,
                            const closure_options& opt) {
  if (outputs.p() == 0) throw dimension_error("min_realization: no outputs");
  function_set gens(sys.n);
  std::vector<int64_t> positions;
  for (int64_t j = 0; j < outputs.p(); ++j) {
    std::string name = outputs.names.empty() ? "" : outputs.names[static_cast<size_t>(j)];
    positions.push_back(gens.add(outputs.components[static_cast<size_t>(j)], name));
  }
  realization real;
  real.closure = closure_bcn(gens, sys, {}, opt);
  real.agg = aggregated_bcn(real.closure, positions);
  real.g = combined_structure(real.closure.closure);
  return real;
}

namespace {

int64_t output_of_state(const output_map& outputs, int64_t x) { return outputs.combined.col(x); }

int64_t output_of_z(const realization& real, int64_t z) {
  return real.agg.output_selector->col(z);
}

/// Runs one (x0, word) case; fills the counterexample on mismatch.
bool run_case(const bcn_assr& sys, const output_map& outputs, const realization& real,
              int64_t x0, std::span<const int64_t> word, io_counterexample& ce) {
  int64_t x = x0;
  int64_t z = real.g.col(x0);
  for (size_t t = 0;; ++t) {
    int64_t ys = output_of_state(outputs, x);
    int64_t yr = output_of_z(real, z);
    if (ys != yr) {
      ce.x0 = x0;
      ce.controls.assign(word.begin(), word.end());
      ce.time = static_cast<int64_t>(t);
      ce.y_system = ys;
      ce.y_realization = yr;
      return false;
    }
    if (t == word.size()) break;
    int64_t u = word[t];
    x = sys.blocks[static_cast<size_t>(u - 1)].col(x);
    z = real.agg.h_blocks[static_cast<size_t>(u - 1)].col(z);
  }
  return true;
}

}  // namespace

io_equivalence_result verify_io_equivalence(const bcn_assr& sys, const output_map& outputs,
                                            const realization& real, int64_t horizon, int64_t cap,
                                            uint64_t seed, bool allow_sampling) {
  if (horizon < 1) throw dimension_error("verify_io_equivalence: horizon must be >= 1");
  if (!real.agg.output_selector)
    throw dimension_error("verify_io_equivalence: realization has no output selector");
  int64_t states = sys.state_count();
  int64_t blocks = sys.block_count();

  io_equivalence_result res;
  // Total exhaustive case count states * blocks^horizon, watching for overflow.
  double total_estimate = static_cast<double>(states);
  for (int64_t t = 0; t < horizon; ++t) total_estimate *= static_cast<double>(blocks);

  io_counterexample ce;
  if (total_estimate <= static_cast<double>(cap)) {
    std::vector<int64_t> word(static_cast<size_t>(horizon), 1);
    for (int64_t x0 = 1; x0 <= states; ++x0) {
      std::fill(word.begin(), word.end(), 1);
      for (;;) {
        ++res.runs;
        if (!run_case(sys, outputs, real, x0, word, ce)) {
          res.equivalent = false;
          res.counterexample = ce;
          return res;
        }
        // Next control word, odometer order.
        size_t k = 0;
        while (k < word.size() && word[k] == blocks) word[k++] = 1;
        if (k == word.size()) break;
        ++word[k];
      }
    }
    res.exhaustive = true;
    return res;
  }

  if (!allow_sampling)
    throw cap_error("verify_io_equivalence: case count exceeds cap and sampling is disabled");
  res.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> state_dist(1, states);
  std::uniform_int_distribution<int64_t> block_dist(1, blocks);
  std::vector<int64_t> word(static_cast<size_t>(horizon));
  for (int64_t i = 0; i < cap; ++i) {
    int64_t x0 = state_dist(rng);
    for (auto& u : word) u = block_dist(rng);
    ++res.runs;
    if (!run_case(sys, outputs, real, x0, word, ce)) {
      res.equivalent = false;
      res.counterexample = ce;
      return res;
    }
  }
  return res;
}

block_structure_result verify_block_structure(const bcn_assr& sys, const coordinate_change& cc,
                                              std::span<const int64_t> partition) {
  int64_t total = 0;
  for (int64_t s : partition) {
    if (s < 1) throw dimension_error("verify_block_structure: block sizes must be positive");
    total += s;
  }
  if (total != sys.state_count())
    throw dimension_error("verify_block_structure: partition does not sum to 2^n");

  // group_of[x] = partition block containing state x (after the change).
  std::vector<int64_t> group_of(static_cast<size_t>(sys.state_count()));
  int64_t g = 0, offset = 0;
  for (int64_t s : partition) {
    for (int64_t i = 0; i < s; ++i) group_of[static_cast<size_t>(offset + i)] = g;
    ++g;
    offset += s;
  }

  logical_matrix tt = cc.t.permutation_transpose();
  for (int64_t b = 1; b <= sys.block_count(); ++b) {
    logical_matrix conj = compose(compose(cc.t, sys.blocks[static_cast<size_t>(b - 1)]), tt);
    for (int64_t j = 1; j <= conj.cols(); ++j) {
      if (group_of[static_cast<size_t>(j - 1)] != group_of[static_cast<size_t>(conj.col(j) - 1)]) {
        return block_structure_result{false, b, j, conj.col(j)};
      }
    }
  }
  return block_structure_result{};
}

}  // namespace bnet
