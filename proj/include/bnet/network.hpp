/* bnet: Boolean (control) networks and their algebraic state-space form */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnet/formula.hpp"
#include "bnet/logical_matrix.hpp"

namespace bnet {

/// Parsed network file: update rule order defines the state variable order
/// (x_1 outermost in the state product); control variables come from the
/// optional "inputs:" line and sit outermost of all.
struct network_def {
  std::vector<std::string> state_vars;
  std::vector<std::string> control_vars;
  std::vector<formula> update_rules;                        // one per state var
  std::vector<std::pair<std::string, formula>> output_rules;

  int64_t n() const { return static_cast<int64_t>(state_vars.size()); }
  int64_t m() const { return static_cast<int64_t>(control_vars.size()); }
};

/// Parse the .bn DSL:
///   inputs: u1 u2        (optional)
///   x1 <- <formula>      (one line per state variable)
///   y1 = <formula>       (optional output lines, state variables only)
/// '#' starts a comment; blank lines are ignored.
network_def parse_network(const std::string& text);
std::string write_network(const network_def& net);

struct bn_assr {
  int64_t n = 0;
  std::vector<logical_matrix> componentwise;  // n matrices, 2 x 2^n
  logical_matrix overall;                     // 2^n x 2^n
};

struct bcn_assr {
  int64_t n = 0;
  int64_t m = 0;
  std::vector<logical_matrix> componentwise;  // n matrices, 2 x 2^{m+n}
  logical_matrix transition;                  // L, 2^n x 2^{m+n}
  std::vector<logical_matrix> blocks;         // 2^m blocks M_r = L delta_{2^m}^r

  int64_t state_count() const { return int64_t{1} << n; }
  int64_t block_count() const { return int64_t{1} << m; }
};

struct output_map {
  std::vector<std::string> names;
  std::vector<logical_matrix> components;  // p matrices, 2 x 2^n
  logical_matrix combined;                 // 2^p x 2^n

  int64_t p() const { return static_cast<int64_t>(components.size()); }
};

bn_assr assemble_bn(const network_def& net);   // requires m == 0
bcn_assr assemble_bcn(const network_def& net); // requires m >= 1
output_map assemble_outputs(const network_def& net);

/// View a BN as the m = 0 control network (single block).
bcn_assr as_bcn(const bn_assr& sys);
/// Rebuild a bcn_assr around a transition matrix (componentwise matrices are
/// re-derived from L).
bcn_assr bcn_from_transition(int64_t n, int64_t m, const logical_matrix& transition);

delta_vector step(const bcn_assr& sys, const delta_vector& x, const delta_vector& u);
/// State indices x(0..k) for the control index word u(0..k-1).
std::vector<int64_t> trajectory(const bcn_assr& sys, int64_t x0, std::span<const int64_t> controls);

/// Permutation logical matrix T with T^{-1} = T^T.
struct coordinate_change {
  logical_matrix t;
  explicit coordinate_change(logical_matrix m);
};

/// z = Tx transforms L to T L (I_{2^m} (x) T^T) blockwise.
bcn_assr apply_coordinate_change(const bcn_assr& sys, const coordinate_change& cc);
/// Outputs transform as H T^T.
output_map apply_coordinate_change(const output_map& out, const coordinate_change& cc);

/// Cycles of the functional graph x -> Mx; fixed points are length-1 cycles.
/// Each cycle starts at its smallest state; cycles sorted by that state.
std::vector<std::vector<int64_t>> find_attractors(const bn_assr& sys);

struct stg_options {
  int64_t max_edges = int64_t{1} << 16;
  bool bit_labels = false;
};

/// Graphviz DOT text: one node per state, one edge per (state, control).
std::string state_transition_graph(const bcn_assr& sys, const stg_options& opt = {});

}  // namespace bnet
