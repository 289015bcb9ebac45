#include "bnet/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bnet/bundle_io.hpp"
#include "bnet/delta_io.hpp"
#include "bnet/errors.hpp"

namespace bnet::corpus {

namespace {

constexpr std::array<int64_t, 512> kPublishedGridBn = {{
      1,   1,   1,   2,   1,   1,   5,   8,   1,  10,   2,  10,   1,  10,   6,  16,
      1,   9,   1,  12,  33,  43,  39,  48,   9,  10,  26,  28,  41,  44,  64,  64,
      1,   1,   5,   6,  37,  37,  37,  40,   1,  10,  22,  30,  37,  46,  54,  64,
     33,  41,  53,  64,  37,  47,  55,  64,  57,  58,  62,  64,  61,  64,  64,  64,
      1,   9,   1,  10,   1,   9,   5,  16,  73,  74,  74,  74,  73,  74,  78,  80,
      9,   9,   9,  12,  41,  43,  47,  48,  73,  74,  90,  92, 105, 108, 128, 128,
      1,   9,   5,  14,  37,  45,  37,  48,  73,  74,  94,  94, 109, 110, 126, 128,
     41,  41,  61,  64,  45,  47,  63,  64, 121, 122, 126, 128, 125, 128, 128, 128,
      1,   1,   1,   2,   1,   1,   5,   8,  65,  74,  82,  90,  65,  74,  86,  96,
      1,   9,  17,  28,  33,  43,  55,  64,  89,  90,  90,  92, 121, 124, 128, 128,
    257, 257, 277, 278, 293, 293, 309, 312, 337, 346, 342, 350, 373, 382, 374, 384,
    305, 313, 309, 320, 309, 319, 311, 320, 377, 378, 382, 384, 381, 384, 384, 384,
     65,  73,  65,  74,  65,  73,  69,  80,  73,  74,  90,  90,  73,  74,  94,  96,
    201, 201, 217, 220, 233, 235, 255, 256, 217, 218, 218, 220, 249, 252, 256, 256,
    321, 329, 341, 350, 357, 365, 373, 384, 345, 346, 350, 350, 381, 382, 382, 384,
    505, 505, 509, 512, 509, 511, 511, 512, 505, 506, 510, 512, 509, 512, 512, 512,
      1,   1,   1,   2,  33,  33,  37,  40,   1,  10,   2,  10,  33,  42,  38,  48,
     33,  41,  33,  44,  33,  43,  39,  48,  41,  42,  58,  60,  41,  44,  64,  64,
    289, 289, 293, 294, 293, 293, 293, 296, 289, 298, 310, 318, 293, 302, 310, 320,
    289, 297, 309, 320, 293, 303, 311, 320, 313, 314, 318, 320, 317, 320, 320, 320,
      1,   9,   1,  10,  33,  41,  37,  48,  73,  74,  74,  74, 105, 106, 110, 112,
    169, 169, 169, 172, 169, 171, 175, 176, 233, 234, 250, 252, 233, 236, 256, 256,
    289, 297, 293, 302, 293, 301, 293, 304, 361, 362, 382, 382, 365, 366, 382, 384,
    425, 425, 445, 448, 429, 431, 447, 448, 505, 506, 510, 512, 509, 512, 512, 512,
    257, 257, 257, 258, 289, 289, 293, 296, 321, 330, 338, 346, 353, 362, 374, 384,
    417, 425, 433, 444, 417, 427, 439, 448, 505, 506, 506, 508, 505, 508, 512, 512,
    289, 289, 309, 310, 293, 293, 309, 312, 369, 378, 374, 382, 373, 382, 374, 384,
    433, 441, 437, 448, 437, 447, 439, 448, 505, 506, 510, 512, 509, 512, 512, 512,
    449, 457, 449, 458, 481, 489, 485, 496, 457, 458, 474, 474, 489, 490, 510, 512,
    489, 489, 505, 508, 489, 491, 511, 512, 505, 506, 506, 508, 505, 508, 512, 512,
    481, 489, 501, 510, 485, 493, 501, 512, 505, 506, 510, 510, 509, 510, 510, 512,
    505, 505, 509, 512, 509, 511, 511, 512, 505, 506, 510, 512, 509, 512, 512, 512
}};

constexpr std::array<int64_t, 512> kPublishedGridControlled = {{
      1,   1,   1,   2,   1,   1,   5,   8,   1,  10,   2,  10,   1,  10,   6,  16,
      1,   9,   1,  12,   1,  11,   7,  16,   9,  10,  26,  28,   9,  12,  32,  32,
      1,   1,   5,   6,   5,   5,   5,   8,   1,  10,  22,  30,   5,  14,  22,  32,
      1,   9,  21,  32,  37,  47,  55,  64,  25,  26,  30,  32,  61,  64,  64,  64,
      1,   9,   1,  10,   1,   9,   5,  16,  73,  74,  74,  74,  73,  74,  78,  80,
      9,   9,   9,  12,   9,  11,  15,  16,  73,  74,  90,  92,  73,  76,  96,  96,
      1,   9,   5,  14,   5,  13,   5,  16,  73,  74,  94,  94,  77,  78,  94,  96,
      9,   9,  29,  32,  45,  47,  63,  64,  89,  90,  94,  96, 125, 128, 128, 128,
      1,   1,   1,   2,   1,   1,   5,   8,  65,  74,  82,  90,  65,  74,  86,  96,
      1,   9,  17,  28,   1,  11,  23,  32,  89,  90,  90,  92,  89,  92,  96,  96,
    257, 257, 277, 278, 261, 261, 277, 280, 337, 346, 342, 350, 341, 350, 342, 352,
    273, 281, 277, 288, 309, 319, 311, 320, 345, 346, 350, 352, 381, 384, 384, 384,
     65,  73,  65,  74,  65,  73,  69,  80,  73,  74,  90,  90,  73,  74,  94,  96,
    201, 201, 217, 220, 201, 203, 223, 224, 217, 218, 218, 220, 217, 220, 224, 224,
    321, 329, 341, 350, 325, 333, 341, 352, 345, 346, 350, 350, 349, 350, 350, 352,
    473, 473, 477, 480, 509, 511, 511, 512, 473, 474, 478, 480, 509, 512, 512, 512,
      1,   1,   1,   2,   1,   1,   5,   8,   1,  10,   2,  10,   1,  10,   6,  16,
      1,   9,   1,  12,  33,  43,  39,  48,   9,  10,  26,  28,  41,  44,  64,  64,
    257, 257, 261, 262, 293, 293, 293, 296, 257, 266, 278, 286, 293, 302, 310, 320,
    289, 297, 309, 320, 293, 303, 311, 320, 313, 314, 318, 320, 317, 320, 320, 320,
      1,   9,   1,  10,   1,   9,   5,  16,  73,  74,  74,  74,  73,  74,  78,  80,
    137, 137, 137, 140, 169, 171, 175, 176, 201, 202, 218, 220, 233, 236, 256, 256,
    257, 265, 261, 270, 293, 301, 293, 304, 329, 330, 350, 350, 365, 366, 382, 384,
    425, 425, 445, 448, 429, 431, 447, 448, 505, 506, 510, 512, 509, 512, 512, 512,
    257, 257, 257, 258, 257, 257, 261, 264, 321, 330, 338, 346, 321, 330, 342, 352,
    385, 393, 401, 412, 417, 427, 439, 448, 473, 474, 474, 476, 505, 508, 512, 512,
    257, 257, 277, 278, 293, 293, 309, 312, 337, 346, 342, 350, 373, 382, 374, 384,
    433, 441, 437, 448, 437, 447, 439, 448, 505, 506, 510, 512, 509, 512, 512, 512,
    449, 457, 449, 458, 449, 457, 453, 464, 457, 458, 474, 474, 457, 458, 478, 480,
    457, 457, 473, 476, 489, 491, 511, 512, 473, 474, 474, 476, 505, 508, 512, 512,
    449, 457, 469, 478, 485, 493, 501, 512, 473, 474, 478, 478, 509, 510, 510, 512,
    505, 505, 509, 512, 509, 511, 511, 512, 505, 506, 510, 512, 509, 512, 512, 512
}};

/// Disjunction over all `threshold`-subsets of `vars` of their conjunction.
formula at_least(const std::vector<std::string>& vars, int threshold) {
  int k = static_cast<int>(vars.size());
  if (threshold <= 0) return formula::constant(true);
  if (threshold > k) return formula::constant(false);
  std::vector<int> pick(static_cast<size_t>(threshold));
  for (int i = 0; i < threshold; ++i) pick[static_cast<size_t>(i)] = i;
  std::optional<formula> result;
  for (;;) {
    std::optional<formula> term;
    for (int i : pick) {
      formula v = formula::variable(vars[static_cast<size_t>(i)]);
      term = term ? formula::binary(formula_op::conjunction, std::move(*term), std::move(v))
                  : std::move(v);
    }
    result = result ? formula::binary(formula_op::disjunction, std::move(*result), std::move(*term))
                    : std::move(*term);
    // next combination, lexicographic
    int i = threshold - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == k - threshold + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < threshold; ++j)
      pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
  return *result;
}

network_def grid9_build(bool controlled) {
  std::ostringstream os;
  if (controlled) os << "inputs: u\n";
  for (int i = 1; i <= 9; ++i) {
    int r = (i - 1) / 3, c = (i - 1) % 3;
    std::vector<std::string> vars{"x" + std::to_string(i)};
    int fixed_ones = 0;
    if (r == 0)
      ++fixed_ones;  // top boundary holds opinion 1
    else
      vars.push_back("x" + std::to_string(i - 3));
    if (r == 2)
      ++fixed_ones;  // bottom boundary holds opinion 1
    else
      vars.push_back("x" + std::to_string(i + 3));
    if (c == 0) {
      if (controlled && i == 4) vars.push_back("u");
      // otherwise the left boundary holds opinion 0: contributes nothing
    } else {
      vars.push_back("x" + std::to_string(i - 1));
    }
    if (c != 2) vars.push_back("x" + std::to_string(i + 1));
    // right boundary holds opinion 0
    os << "x" << i << " <- " << print_formula(at_least(vars, 3 - fixed_ones)) << '\n';
  }
  return parse_network(os.str());
}

}  // namespace

network_def grid9_network() { return grid9_build(false); }
network_def grid9_controlled_network() { return grid9_build(true); }

int64_t grid9_oracle_step(int64_t state, std::optional<int> u) {
  std::vector<int> bits = state_index_decode(9, state);
  std::vector<int> next(9);
  for (int i = 0; i < 9; ++i) {
    int r = i / 3, c = i % 3;
    int count = bits[static_cast<size_t>(i)];
    count += (r == 0) ? 1 : bits[static_cast<size_t>(i - 3)];
    count += (r == 2) ? 1 : bits[static_cast<size_t>(i + 3)];
    if (c == 0)
      count += (u && i == 3) ? *u : 0;
    else
      count += bits[static_cast<size_t>(i - 1)];
    count += (c == 2) ? 0 : bits[static_cast<size_t>(i + 1)];
    next[static_cast<size_t>(i)] = count >= 3 ? 1 : 0;
  }
  return state_index_encode(next).index;
}

logical_matrix grid9_oracle_matrix(std::optional<int> u) {
  std::vector<int64_t> cols(512);
  for (int64_t x = 1; x <= 512; ++x) cols[static_cast<size_t>(x - 1)] = grid9_oracle_step(x, u);
  return logical_matrix(512, std::move(cols));
}

const std::array<int64_t, 512>& published_grid_bn() { return kPublishedGridBn; }
const std::array<int64_t, 512>& published_grid_controlled() { return kPublishedGridControlled; }

subset_spec grid9_target_states() { return subset_spec::from_indices(9, {43, 143, 165}); }

network_def example_3_1_5_network() {
  // Update rule 4 as printed ("x1 & !x2 & x4") contradicts the published
  // transition matrix; the disjunctive form below is the one that reproduces
  // M, Q and H* exactly.
  return parse_network(
      "x1 <- (x1 & x2 & !x4) | (!x1 & x2)\n"
      "x2 <- x2 | (x3 <-> x4)\n"
      "x3 <- (x1 & !x4) | (!x1 & x2) | (!x1 & !x2 & x4)\n"
      "x4 <- x1 | !x2 | x4\n");
}

std::vector<std::pair<std::string, formula>> example_3_1_5_aggregating_functions() {
  std::vector<std::string> scope{"x1", "x2", "x3", "x4"};
  return {
      {"z1", parse_formula("x1 ^ x4", scope)},
      {"z2", parse_formula("!x2", scope)},
      {"z3", parse_formula("x3 <-> !x4", scope)},
  };
}

logical_matrix example_3_1_5_published_m() {
  return logical_matrix::delta(16, {11, 1, 11, 1, 11, 13, 15, 9, 1, 2, 1, 2, 9, 15, 13, 11});
}

logical_matrix example_3_1_5_published_q() {
  return logical_matrix::delta(8, {8, 3, 7, 4, 6, 1, 5, 2, 4, 7, 3, 8, 2, 5, 1, 6});
}

logical_matrix example_3_1_5_published_h() {
  return logical_matrix::delta(8, {2, 4, 8, 8, 1, 3, 3, 3});
}

bcn_assr example_5_5_system() {
  // Four 8x8 blocks: rotations of the first three states, identity on the
  // uncertain tail (instantiated as I_5).
  std::vector<int64_t> cols;
  for (std::vector<int64_t> head :
       {std::vector<int64_t>{2, 3, 1}, {2, 1, 3}, {1, 2, 3}, {3, 2, 1}}) {
    for (int64_t v : head) cols.push_back(v);
    for (int64_t v = 4; v <= 8; ++v) cols.push_back(v);
  }
  return bcn_from_transition(3, 2, logical_matrix(8, std::move(cols)));
}

output_map example_5_5_outputs() {
  output_map om;
  om.names = {"y1"};
  om.components = {logical_matrix::delta(2, {1, 2, 1, 2, 2, 2, 2, 2})};
  om.combined = om.components[0];
  return om;
}

logical_matrix example_5_5_published_lstar() {
  return logical_matrix::delta(8, {1, 3, 5, 7, 2, 4, 6, 8, 1, 2, 5, 6, 3, 4, 7, 8,
                                   1, 2, 3, 4, 5, 6, 7, 8, 1, 3, 2, 4, 5, 7, 6, 8});
}

logical_matrix example_5_5_published_xi() {
  return logical_matrix::delta(2, {1, 1, 1, 1, 2, 2, 2, 2});
}

std::vector<std::array<int64_t, 3>> example_5_5_published_relations() {
  // (function j, block b, successor): y_j M_b = y_k
  return {
      {1, 1, 2}, {1, 2, 2}, {1, 3, 1}, {1, 4, 1},
      {2, 1, 3}, {2, 2, 1}, {2, 3, 2}, {2, 4, 3},
      {3, 1, 1}, {3, 2, 3}, {3, 3, 3}, {3, 4, 2},
  };
}

const std::vector<std::vector<int64_t>>& grid9_published_function_supports() {
  static const std::vector<std::vector<int64_t>> supports = {
      {43, 143, 165},                   // G_1
      {22, 89, 150, 278},               // G_2
      {43, 47, 143, 164, 229, 420},     // G_3
      {59, 118, 278},                   // G_4
      {164, 299, 420},                  // G_5
      {278},                            // G_6
      {},                               // G_7 (identically false)
  };
  return supports;
}

const std::vector<std::array<int64_t, 3>>& grid9_published_relations() {
  // (function j, block b, successor k): block 1 = N (u = opinion 1), block 2 = M.
  static const std::vector<std::array<int64_t, 3>> rels = {
      {1, 2, 2},  // G_1 M = G_2
      {2, 2, 1},  // G_2 M = G_1
      {1, 1, 3},  // G_1 N = G_3
      {3, 1, 4},  // G_3 N = G_4
      {4, 1, 5},  // G_4 N = G_5
      {5, 1, 7},  // G_5 N = G_7
      {2, 1, 6},  // G_2 N = G_6
      {6, 1, 5},  // G_6 N = G_5
      {7, 2, 7},  // G_7 M = G_7
      {7, 1, 7},  // G_7 N = G_7
  };
  return rels;
}

const std::array<int64_t, 14>& grid9_published_constrained_table() {
  static const std::array<int64_t, 14> t = {6, 3, 4, 5, 7, 5, 7, 2, 1, 0, 0, 0, 0, 7};
  return t;
}

std::string to_jsonl(const std::vector<discrepancy>& records) {
  std::ostringstream os;
  for (const auto& r : records) {
    nlohmann::json j;
    j["kind"] = r.kind;
    j["subject"] = r.subject;
    if (r.kind == "matrix_entry") j["column"] = r.column;
    j["published"] = r.expected;
    j["computed"] = r.computed;
    j["match"] = r.match;
    os << j.dump() << '\n';
  }
  return os.str();
}

std::vector<discrepancy> compare_matrix(const std::string& name, const logical_matrix& generated,
                                        std::span<const int64_t> published) {
  if (generated.cols() != static_cast<int64_t>(published.size()))
    throw dimension_error("compare_matrix: column counts differ");
  std::vector<discrepancy> out;
  for (int64_t j = 1; j <= generated.cols(); ++j) {
    int64_t pub = published[static_cast<size_t>(j - 1)];
    if (generated.col(j) != pub) {
      discrepancy d;
      d.kind = "matrix_entry";
      d.subject = name;
      d.column = j;
      d.expected = std::to_string(pub);
      d.computed = std::to_string(generated.col(j));
      out.push_back(std::move(d));
    }
  }
  return out;
}

namespace {

std::string support_str(std::span<const int64_t> s) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

logical_matrix from_support(std::span<const int64_t> support) {
  return index_function(subset_spec::from_indices(9, {support.begin(), support.end()}));
}

discrepancy claim(const std::string& subject, std::string expected, std::string computed) {
  discrepancy d;
  d.kind = "published_claim";
  d.subject = subject;
  d.expected = std::move(expected);
  d.computed = std::move(computed);
  d.match = d.expected == d.computed;
  return d;
}

}  // namespace

std::vector<discrepancy> grid9_walkthrough_report(bool controlled) {
  std::vector<discrepancy> out;
  logical_matrix m(512, {published_grid_bn().begin(), published_grid_bn().end()});
  const auto& supports = grid9_published_function_supports();

  if (!controlled) {
    logical_matrix g1 = from_support(supports[0]);
    logical_matrix g2_claimed = from_support(supports[1]);
    logical_matrix g2_computed = compose(g1, m);
    out.push_back(claim("G2 = G1*M support", support_str(supports[1]),
                        support_str(function_support(g2_computed))));
    out.push_back(claim("G2*M = G1 support", support_str(supports[0]),
                        support_str(function_support(compose(g2_computed, m)))));

    function_set gens(9);
    gens.add(g1, "g1");
    closure_result cl = closure_bn(gens, m);
    out.push_back(claim("closure size of {g1} under published M", "2", std::to_string(cl.size())));
    if (cl.size() == 2) {
      aggregated_system agg = aggregated_dynamics(cl);
      out.push_back(claim("aggregated matrix", logical_matrix::delta(4, {1, 3, 2, 4}).str(),
                          agg.h_blocks[0].str()));
    }
    return out;
  }

  logical_matrix n_block(512, {published_grid_controlled().begin(), published_grid_controlled().end()});
  const logical_matrix* blocks[2] = {&n_block, &m};  // block 1 = N, block 2 = M

  // Each published relation G_j . block = G_k, evaluated on the published
  // matrices themselves.
  for (const auto& [j, b, k] : grid9_published_relations()) {
    logical_matrix gj = from_support(supports[static_cast<size_t>(j - 1)]);
    logical_matrix prod = compose(gj, *blocks[static_cast<size_t>(b - 1)]);
    std::string rel = "G" + std::to_string(j) + (b == 1 ? "*N" : "*M") + " = G" + std::to_string(k);
    out.push_back(claim(rel, support_str(supports[static_cast<size_t>(k - 1)]),
                        support_str(function_support(prod))));
  }

  // Membership of every published function in the derived closure.
  function_set gens(9);
  gens.add(from_support(supports[0]), "g1");
  std::vector<logical_matrix> block_list{n_block, m};
  const int64_t ids[] = {1, 2};
  closure_result cl = close_under_blocks(gens, block_list, ids, {});
  out.push_back(claim("closure size of {g1} under published {N,M}", "7", std::to_string(cl.size())));
  for (size_t i = 0; i < supports.size(); ++i) {
    int64_t idx = cl.closure.find(from_support(supports[i]));
    out.push_back(claim("G" + std::to_string(i + 1) + " member of derived closure", "yes",
                        idx ? "yes" : "no"));
  }

  // Nonzero entries of the published constrained table, read as label
  // transitions: entry (class j, control a) = k means G_j . block_a = G_k.
  const auto& table = grid9_published_constrained_table();
  for (int64_t a = 1; a <= 2; ++a) {
    for (int64_t j = 1; j <= 7; ++j) {
      int64_t k = table[static_cast<size_t>((a - 1) * 7 + j - 1)];
      if (k == 0) continue;
      logical_matrix prod =
          compose(from_support(supports[static_cast<size_t>(j - 1)]), *blocks[static_cast<size_t>(a - 1)]);
      std::string subject = "constrained table column (class " + std::to_string(j) + ", u=" +
                            std::to_string(a) + ") -> " + std::to_string(k);
      out.push_back(claim(subject, support_str(supports[static_cast<size_t>(k - 1)]),
                          support_str(function_support(prod))));
    }
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream os(p);
  if (!os) throw error("cannot write " + p.string());
  os << content;
}

std::string funcs_text(const std::vector<std::pair<std::string, logical_matrix>>& funcs) {
  std::ostringstream os;
  for (const auto& [name, fn] : funcs) write_stanza(os, fn, name);
  return os.str();
}

std::string stanza_text(const logical_matrix& m, const std::string& name = "") {
  std::ostringstream os;
  write_stanza(os, m, name);
  return os.str();
}

}  // namespace

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"example-3.1.5", "grid-9", "grid-9-controlled",
                                                 "example-5.5"};
  return names;
}

std::vector<std::string> write_corpus(const std::string& name, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> files;
  auto emit = [&](const std::string& fname, const std::string& content) {
    write_file(fs::path(dir) / fname, content);
    files.push_back(fname);
  };

  if (name == "example-3.1.5") {
    network_def net = example_3_1_5_network();
    emit("example-3.1.5.bn", write_network(net));
    std::vector<std::pair<std::string, logical_matrix>> funcs;
    for (const auto& [fname, f] : example_3_1_5_aggregating_functions())
      funcs.emplace_back(fname, structure_matrix(f, net.state_vars));
    emit("example-3.1.5.funcs", funcs_text(funcs));
    emit("expected_M.delta", stanza_text(example_3_1_5_published_m(), "M"));
    emit("expected_Q.delta", stanza_text(example_3_1_5_published_q(), "Q"));
    emit("expected_Hstar.delta", stanza_text(example_3_1_5_published_h(), "Hstar"));
    return files;
  }

  if (name == "grid-9" || name == "grid-9-controlled") {
    bool controlled = name == "grid-9-controlled";
    network_def net = controlled ? grid9_controlled_network() : grid9_network();
    emit(name + ".bn", write_network(net));
    emit("g1.funcs", funcs_text({{"g1", index_function(grid9_target_states())}}));

    std::vector<discrepancy> records;
    if (!controlled) {
      logical_matrix generated = grid9_oracle_matrix();
      emit("generated_M.delta", stanza_text(generated, "M"));
      emit("published_M.delta",
           stanza_text(logical_matrix(512, {published_grid_bn().begin(), published_grid_bn().end()}), "M"));
      auto rec = compare_matrix("grid9-M", generated, published_grid_bn());
      records.insert(records.end(), rec.begin(), rec.end());
    } else {
      logical_matrix gen_n = grid9_oracle_matrix(1);
      logical_matrix gen_m = grid9_oracle_matrix(0);
      emit("generated_N.delta", stanza_text(gen_n, "N"));
      emit("generated_M.delta", stanza_text(gen_m, "M"));
      emit("published_N.delta",
           stanza_text(logical_matrix(512, {published_grid_controlled().begin(),
                                            published_grid_controlled().end()}),
                       "N"));
      emit("published_M.delta",
           stanza_text(logical_matrix(512, {published_grid_bn().begin(), published_grid_bn().end()}), "M"));
      auto rec_n = compare_matrix("grid9-N", gen_n, published_grid_controlled());
      auto rec_m = compare_matrix("grid9-M", gen_m, published_grid_bn());
      records.insert(records.end(), rec_n.begin(), rec_n.end());
      records.insert(records.end(), rec_m.begin(), rec_m.end());
      control_constraint c;
      for (int64_t cls : {3, 4, 5, 6}) c.forbidden.emplace_back(cls, 2);
      emit("constraints.txt", write_constraints(c));
    }
    auto walk = grid9_walkthrough_report(controlled);
    records.insert(records.end(), walk.begin(), walk.end());
    emit("discrepancy.jsonl", to_jsonl(records));
    return files;
  }

  if (name == "example-5.5") {
    bcn_assr sys = example_5_5_system();
    output_map outs = example_5_5_outputs();
    emit("example-5.5.assr", write_assr(sys, &outs));
    emit("expected_Lstar.delta", stanza_text(example_5_5_published_lstar(), "Lstar"));
    emit("expected_Xi.delta", stanza_text(example_5_5_published_xi(), "Xi"));
    std::ostringstream rel;
    for (const auto& [j, b, k] : example_5_5_published_relations())
      rel << "successor " << b << ": " << j << " -> " << k << '\n';
    emit("expected_successors.txt", rel.str());
    return files;
  }

  throw error("unknown corpus name '" + name + "' (known: example-3.1.5, grid-9, grid-9-controlled, example-5.5)");
}

}  // namespace bnet::corpus
