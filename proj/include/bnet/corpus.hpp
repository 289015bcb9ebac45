/* bnet: built-in example corpus — grid opinion networks, worked fixtures,
 * published-table comparisons */

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bnet/control.hpp"
#include "bnet/network.hpp"

namespace bnet::corpus {

/// 3x3 majority-vote opinion grid, x_1..x_9 row-major from the top-left.
/// Each player adopts the majority opinion of {self, up, down, left, right};
/// the boundary rows above and below hold opinion 1, the boundary columns
/// left and right hold opinion 0. In the controlled variant the left
/// neighbor of x_4 is replaced by the input u (u = delta_2^1 is opinion 1).
network_def grid9_network();
network_def grid9_controlled_network();

/// Independent truth-table simulator for the grid: per-node neighbor counting
/// on raw state bits, no formula or matrix machinery involved.
/// u: nullopt for the uncontrolled grid, 0/1 for the controlled one.
int64_t grid9_oracle_step(int64_t state, std::optional<int> u = std::nullopt);
logical_matrix grid9_oracle_matrix(std::optional<int> u = std::nullopt);

/// Structure matrices as published (512 targets each); the transcription the
/// discrepancy report compares against.
const std::array<int64_t, 512>& published_grid_bn();          // uncontrolled M
const std::array<int64_t, 512>& published_grid_controlled();  // block N (u = opinion 1)

/// Aggregation target set S = {delta^43, delta^143, delta^165} of the grid
/// walkthrough.
subset_spec grid9_target_states();

/// Four-node worked example: network, aggregating functions and the published
/// M, Q, H*.
network_def example_3_1_5_network();
std::vector<std::pair<std::string, formula>> example_3_1_5_aggregating_functions();
logical_matrix example_3_1_5_published_m();
logical_matrix example_3_1_5_published_q();
logical_matrix example_3_1_5_published_h();

/// Three-rotation control system (n = 3, m = 2) with its scalar output; the
/// uncertain tail block is instantiated as the identity.
bcn_assr example_5_5_system();
output_map example_5_5_outputs();
logical_matrix example_5_5_published_lstar();  // 8 x 32 concatenated H blocks
logical_matrix example_5_5_published_xi();     // delta_2[1,1,1,1,2,2,2,2]
/// Twelve published successor relations as (function, block) -> function.
std::vector<std::array<int64_t, 3>> example_5_5_published_relations();

/// Published walkthrough data for the controlled grid: claimed function
/// supports (index 0 = identically false marker handled by empty vector) and
/// claimed relations (function, block, function), block 1 = N, block 2 = M.
const std::vector<std::vector<int64_t>>& grid9_published_function_supports();
const std::vector<std::array<int64_t, 3>>& grid9_published_relations();
/// Published constrained table delta_7[6,3,4,5,7,5,7,2,1,0,0,0,0,7].
const std::array<int64_t, 14>& grid9_published_constrained_table();

/// One comparison record; serializes as a JSON line.
struct discrepancy {
  std::string kind;      // "matrix_entry" | "published_claim"
  std::string subject;   // matrix name or claim text
  int64_t column = 0;    // matrix_entry only
  std::string expected;  // published value
  std::string computed;  // derived value
  bool match = false;
};

std::string to_jsonl(const std::vector<discrepancy>& records);

/// Entrywise comparison of a derived transition matrix against a published
/// column list; mismatching columns produce matrix_entry records.
std::vector<discrepancy> compare_matrix(const std::string& name, const logical_matrix& generated,
                                        std::span<const int64_t> published);

/// Evaluate every published grid walkthrough claim (function supports,
/// successor relations, constrained-table entries) against matrices derived
/// from the published tables themselves; mismatches become published_claim
/// records.
std::vector<discrepancy> grid9_walkthrough_report(bool controlled);

/// Write the named fixture set ("example-3.1.5", "grid-9",
/// "grid-9-controlled", "example-5.5") into dir; returns the file names.
std::vector<std::string> write_corpus(const std::string& name, const std::string& dir);

const std::vector<std::string>& corpus_names();

}  // namespace bnet::corpus
