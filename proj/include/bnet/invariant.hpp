/* bnet: invariant subspaces of Boolean networks — closures, certificates,
 * aggregated dynamics */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnet/logical_matrix.hpp"

namespace bnet {

/// Ordered, duplicate-free list of scalar logical functions z_i over the same
/// state space, each as a 2 x 2^n structure matrix.
class function_set {
public:
  struct entry {
    std::string name;
    logical_matrix fn;       // 2 x 2^n
    int64_t derived_step;    // 0 = generator, k = discovered at closure step k
    friend bool operator==(const entry&, const entry&) = default;
  };

  function_set() = default;
  explicit function_set(int64_t n) : n_(n) {}

  int64_t n() const { return n_; }
  int64_t size() const { return static_cast<int64_t>(entries_.size()); }
  const entry& at(int64_t i) const { return entries_[static_cast<size_t>(i - 1)]; }
  const std::vector<entry>& entries() const { return entries_; }

  /// Index of an identical function (by column vector), 0 when absent.
  int64_t find(const logical_matrix& f) const;

  /// Appends unless already present; returns the (1-based) index either way.
  int64_t add(logical_matrix f, std::string name = "", int64_t derived_step = 0);
  /// Appends without the duplicate scan (caller guarantees novelty).
  int64_t append(logical_matrix f, std::string name = "", int64_t derived_step = 0);

  friend bool operator==(const function_set&, const function_set&) = default;

private:
  int64_t n_ = 0;
  std::vector<entry> entries_;
};

function_set make_function_set(int64_t n, std::span<const logical_matrix> funcs);

/// Khatri-Rao product G_1 * ... * G_s, 2^s x 2^n.
logical_matrix combined_structure(const function_set& fs);

/// Equal-fiber criterion: every value delta_{2^r}^k is attained by exactly
/// 2^{n-r} columns of q.
bool is_regular(const logical_matrix& q);

struct invariance_result {
  enum class status { invariant, not_invariant, unattained_value };
  status st = status::invariant;
  std::optional<logical_matrix> h;                       // invariant
  std::optional<std::pair<int64_t, int64_t>> witness;    // states x, x' with Qx = Qx', QMx != QMx'
  std::optional<int64_t> unattained;                     // value with empty fiber
  bool ok() const { return st == status::invariant; }
};

/// Decides whether QM = HQ has a logical solution H. H* is computed by exact
/// integer counting over the fibers of Q; a logical H* certifies invariance,
/// a mixed fiber yields a witness pair, and an unattained value is reported
/// distinctly.
invariance_result invariance_certificate(const logical_matrix& q, const logical_matrix& m);

/// H* as a dense rational matrix, QMQ^T (QQ^T)^{-1}; requires every value of
/// Q attained. Kept as the algebraic cross-check of the counting route.
dense_matrix h_star_rational(const logical_matrix& q, const logical_matrix& m);

struct closure_options {
  int64_t cap = 4096;
  bool parallel = false;
};

/// Smallest function set containing the generators and closed under right
/// multiplication by every block in scope.
struct closure_result {
  function_set closure;
  std::vector<std::vector<int64_t>> successor;  // [block][j-1] -> index in 1..size
  std::vector<int64_t> generator_indices;
  std::vector<int64_t> block_ids;               // 1-based control block labels

  int64_t size() const { return closure.size(); }
};

/// BN closure (Algorithm-style breadth-first, deterministic labeling).
closure_result closure_bn(const function_set& generators, const logical_matrix& m,
                          const closure_options& opt = {});

/// Shared engine: closure under an explicit block list.
closure_result close_under_blocks(const function_set& generators,
                                  std::span<const logical_matrix> blocks,
                                  std::span<const int64_t> block_ids, const closure_options& opt);

/// Attained-class quotient of an aggregated system: classes are the distinct
/// value vectors (z_1(x),...,z_s(x)) in order of first attaining state.
struct reduced_system {
  int64_t s = 0;
  std::vector<std::vector<uint8_t>> class_values;  // q rows of s bits
  std::vector<int64_t> class_of_state;             // 2^n entries, 1-based
  std::vector<std::vector<int64_t>> transitions;   // [block][class-1] -> class; 0 = forbidden
  std::vector<int64_t> output_positions;           // positions of outputs among the s functions

  int64_t class_count() const { return static_cast<int64_t>(class_values.size()); }
};

/// Product-form aggregated dynamics z(t+1) = H_b z(t) built from the closure
/// successor maps as a Khatri-Rao of factor selectors, plus the reduced form.
struct aggregated_system {
  int64_t s = 0;
  std::vector<logical_matrix> h_blocks;            // 2^s x 2^s per block in scope
  std::optional<logical_matrix> output_selector;   // 2^p x 2^s
  std::vector<int64_t> output_positions;
  reduced_system reduced;
};

/// Selector S_k extracting factor k of z = z_1 ... z_s (2 x 2^s); equals
/// J^T_{2^{k-1}} (x) I_2 (x) J^T_{2^{s-k}}.
logical_matrix factor_selector(int64_t s, int64_t k);

aggregated_system aggregated_dynamics(const closure_result& cl,
                                      std::span<const int64_t> output_positions = {});

/// Exact columnwise check G M_b = H_b G for every block in scope.
bool verify_aggregation(const closure_result& cl, const aggregated_system& agg,
                        std::span<const logical_matrix> blocks);

/// Certified M-invariant subspace: G M = H G.
struct invariant_subspace {
  logical_matrix g;  // 2^p x 2^n
  logical_matrix h;  // 2^p x 2^p
};

/// Union of two certified subspaces: G = G_1 * G_2 satisfies G M = (H_1 (x) H_2) G.
/// Throws error when an input pair is not actually certified.
invariant_subspace union_invariant(const invariant_subspace& a, const invariant_subspace& b,
                                   const logical_matrix& m);

}  // namespace bnet
