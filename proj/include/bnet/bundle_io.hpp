/* bnet: text bundles for ASSR systems, closures, aggregated systems and
 * realizations */

#pragma once

#include <optional>
#include <string>

#include "bnet/control.hpp"
#include "bnet/invariant.hpp"
#include "bnet/network.hpp"

namespace bnet {

/// ASSR file: "assr <n> <m>" followed by the L stanza (2^n x 2^{m+n}) and an
/// optional combined-output stanza (2^p x 2^n).
struct assr_file {
  bcn_assr sys;
  std::optional<output_map> outputs;
};

assr_file parse_assr(const std::string& text);
std::string write_assr(const bcn_assr& sys, const output_map* outputs = nullptr);

/// Closure bundle: function-set stanzas plus "successor <block>: j -> k"
/// lines, optionally followed by the aggregated section (H blocks, output
/// selector, reduced attained-class table). Constrained bundles carry
/// zero-extended H blocks and 0-targets in the transition table.
struct closure_bundle {
  closure_result closure;
  std::optional<aggregated_system> agg;
  std::vector<zero_extended_matrix> constrained_blocks;  // set for constrained bundles
  bool constrained = false;
};

std::string write_closure_bundle(const closure_result& cl, const aggregated_system* agg = nullptr);
std::string write_constrained_bundle(const closure_result& cl, const constrained_aggregated& con);
closure_bundle parse_closure_bundle(const std::string& text);

/// Rebuild a realization from a parsed bundle (closure + aggregated section
/// with an output selector required).
realization realization_from_bundle(const closure_bundle& b);

/// DOT rendering of a reduced attained-class system; forbidden transitions
/// are omitted edges.
std::string reduced_transition_graph(const reduced_system& red);

}  // namespace bnet
