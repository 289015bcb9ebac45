/* bnet: command-line front end */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bnet {

/// Parsed invocation. Identical manifests produce byte-identical outputs;
/// the seed only feeds randomized verification sweeps.
struct run_manifest {
  std::string subcommand;
  std::vector<std::string> inputs;             // positional arguments
  std::map<std::string, std::string> options;  // long flags, "" for booleans present
  int64_t cap = 4096;
  uint64_t seed = 1;
  std::string out_dir;  // empty: print artifacts to stdout

  bool has(const std::string& key) const { return options.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
};

run_manifest parse_manifest(std::span<const std::string> args);

/// Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.
int run_cli(const run_manifest& manifest, std::ostream& out, std::ostream& err);
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bnet
