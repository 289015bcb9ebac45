/* bnet: control-invariant subspaces, constrained aggregation, minimum
 * realization of Boolean control networks */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnet/invariant.hpp"
#include "bnet/network.hpp"

namespace bnet {

/// Closure of the generators under every control block of the system, or
/// under the sub-family named by blocks_filter (partly control invariant).
closure_result closure_bcn(const function_set& generators, const bcn_assr& sys,
                           std::span<const int64_t> blocks_filter = {},
                           const closure_options& opt = {});

/// Product-form aggregated BCN z(t+1) = H u(t) z(t) from a control closure.
aggregated_system aggregated_bcn(const closure_result& cl,
                                 std::span<const int64_t> output_positions = {});

/// Forbidden (reduced class, control block) pairs.
struct control_constraint {
  std::vector<std::pair<int64_t, int64_t>> forbidden;  // (class, control), 1-based
};

/// Lines of the form: forbid u=<index> when class in {k1,k2,...}
control_constraint parse_constraints(const std::string& text);
std::string write_constraints(const control_constraint& c);

/// Aggregated BCN with forbidden (state, control) columns zeroed: the reduced
/// transition table gets 0 entries and the product-form blocks zero columns
/// at every product state whose value vector equals a forbidden class.
struct constrained_aggregated {
  std::vector<zero_extended_matrix> h_blocks;
  reduced_system reduced;
  control_constraint constraint;
};

constrained_aggregated apply_constraints(const aggregated_system& agg,
                                         const control_constraint& c);

/// Reduced-system run that halts when a forbidden (class, control) pair is
/// requested.
struct reduced_sim_result {
  bool forbidden = false;
  int64_t halted_step = -1;               // step index of the forbidden request
  std::vector<int64_t> classes;           // visited classes, class(0..)
};
reduced_sim_result simulate_reduced(const reduced_system& red, int64_t class0,
                                    std::span<const int64_t> controls);

/// Minimum realization: aggregated dynamics on the smallest control-invariant
/// closure of the output functions, with the output selector over z.
struct realization {
  closure_result closure;
  aggregated_system agg;       // output_selector set
  logical_matrix g;            // combined structure, 2^s x 2^n
};

realization min_realization(const bcn_assr& sys, const output_map& outputs,
                            const closure_options& opt = {});

struct io_counterexample {
  int64_t x0 = 0;
  std::vector<int64_t> controls;
  int64_t time = 0;
  int64_t y_system = 0;
  int64_t y_realization = 0;
};

struct io_equivalence_result {
  bool equivalent = true;
  bool exhaustive = true;
  int64_t runs = 0;
  std::optional<io_counterexample> counterexample;
};

/// Compare output sequences of the system and the realization from z_0 = G x_0
/// over every control word of length `horizon` (exhaustive while the case
/// count stays within cap, seeded random sampling beyond).
io_equivalence_result verify_io_equivalence(const bcn_assr& sys, const output_map& outputs,
                                            const realization& real, int64_t horizon,
                                            int64_t cap = int64_t{1} << 22, uint64_t seed = 1,
                                            bool allow_sampling = true);

struct block_structure_result {
  bool ok = true;
  int64_t block = 0;   // witness: T M_i T^T has an off-partition entry ...
  int64_t column = 0;  // ... in this column ...
  int64_t target = 0;  // ... pointing at this row.
};

/// True iff T M_i T^T is block-diagonal with the given partition sizes for
/// every control block i.
block_structure_result verify_block_structure(const bcn_assr& sys, const coordinate_change& cc,
                                              std::span<const int64_t> partition);

}  // namespace bnet
