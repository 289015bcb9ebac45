#include "bnet/invariant.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <thread>
#include <unordered_map>

#include "bnet/errors.hpp"

namespace bnet {

namespace {

struct column_key_hash {
  size_t operator()(const std::vector<int64_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (int64_t x : v) {
      h ^= static_cast<size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

int64_t function_set::find(const logical_matrix& f) const {
  for (size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].fn == f) return static_cast<int64_t>(i + 1);
  return 0;
}

int64_t function_set::add(logical_matrix f, std::string name, int64_t derived_step) {
  if (int64_t i = find(f)) return i;
  return append(std::move(f), std::move(name), derived_step);
}

int64_t function_set::append(logical_matrix f, std::string name, int64_t derived_step) {
  if (f.rows() != 2 || f.cols() != (int64_t{1} << n_))
    throw dimension_error("function_set: expected a 2 x 2^n function matrix");
  if (name.empty()) name = "z" + std::to_string(entries_.size() + 1);
  entries_.push_back(entry{std::move(name), std::move(f), derived_step});
  return static_cast<int64_t>(entries_.size());
}

function_set make_function_set(int64_t n, std::span<const logical_matrix> funcs) {
  function_set fs(n);
  for (const auto& f : funcs) fs.add(f);
  return fs;
}

logical_matrix combined_structure(const function_set& fs) {
  if (fs.size() == 0) throw dimension_error("combined_structure: empty function set");
  if (fs.size() > 62) throw cap_error("combined_structure: more than 62 functions");
  logical_matrix g = fs.at(1).fn;
  for (int64_t i = 2; i <= fs.size(); ++i) g = khatri_rao(g, fs.at(i).fn);
  return g;
}

bool is_regular(const logical_matrix& q) {
  std::vector<int64_t> fiber(static_cast<size_t>(q.rows()), 0);
  for (int64_t j = 1; j <= q.cols(); ++j) ++fiber[static_cast<size_t>(q.col(j) - 1)];
  if (q.cols() % q.rows() != 0) return false;
  int64_t expected = q.cols() / q.rows();
  return std::all_of(fiber.begin(), fiber.end(), [&](int64_t c) { return c == expected; });
}

invariance_result invariance_certificate(const logical_matrix& q, const logical_matrix& m) {
  if (q.cols() != m.rows() || m.rows() != m.cols())
    throw dimension_error("invariance_certificate: Q is 2^r x 2^n and M must be 2^n x 2^n");
  logical_matrix qm = compose(q, m);

  invariance_result res;
  // target[v-1]: (image value, first witness column) for fiber v of Q.
  std::vector<std::pair<int64_t, int64_t>> target(static_cast<size_t>(q.rows()), {0, 0});
  for (int64_t j = 1; j <= q.cols(); ++j) {
    auto& [image, first] = target[static_cast<size_t>(q.col(j) - 1)];
    if (first == 0) {
      image = qm.col(j);
      first = j;
    } else if (image != qm.col(j)) {
      res.st = invariance_result::status::not_invariant;
      res.witness = std::make_pair(first, j);
      return res;
    }
  }
  for (int64_t v = 1; v <= q.rows(); ++v) {
    if (target[static_cast<size_t>(v - 1)].second == 0) {
      res.st = invariance_result::status::unattained_value;
      res.unattained = v;
      return res;
    }
  }
  std::vector<int64_t> h(static_cast<size_t>(q.rows()));
  for (int64_t v = 1; v <= q.rows(); ++v) h[static_cast<size_t>(v - 1)] = target[static_cast<size_t>(v - 1)].first;
  res.st = invariance_result::status::invariant;
  res.h = logical_matrix(q.rows(), std::move(h));
  return res;
}

dense_matrix h_star_rational(const logical_matrix& q, const logical_matrix& m) {
  dense_matrix qd = q.to_dense();
  dense_matrix qmd = compose(q, m).to_dense();
  dense_matrix qqt = qd * qd.transpose();
  auto inv = qqt.inverse();
  if (!inv) throw error("h_star_rational: QQ^T is singular (unattained value)");
  return qmd * qd.transpose() * *inv;
}

closure_result close_under_blocks(const function_set& generators,
                                  std::span<const logical_matrix> blocks,
                                  std::span<const int64_t> block_ids, const closure_options& opt) {
  if (generators.size() == 0) throw dimension_error("closure: no generators");
  if (blocks.empty()) throw dimension_error("closure: no dynamics blocks");
  int64_t cols = int64_t{1} << generators.n();
  for (const auto& b : blocks)
    if (b.rows() != cols || b.cols() != cols)
      throw dimension_error("closure: block shape does not match the state space");

  closure_result res;
  res.closure = generators;
  res.block_ids.assign(block_ids.begin(), block_ids.end());
  res.successor.resize(blocks.size());
  for (int64_t g = 1; g <= generators.size(); ++g) res.generator_indices.push_back(g);

  // Index of every member's column vector for O(1) dedup.
  std::unordered_map<std::vector<int64_t>, int64_t, column_key_hash> seen;
  for (int64_t i = 1; i <= res.closure.size(); ++i) {
    auto cols_vec = std::vector<int64_t>(res.closure.at(i).fn.col_indices().begin(),
                                         res.closure.at(i).fn.col_indices().end());
    seen.emplace(std::move(cols_vec), i);
  }

  size_t workers = opt.parallel ? std::min<size_t>(std::thread::hardware_concurrency(), 4) : 1;

  int64_t expanded = 0;  // members whose products are already merged
  while (expanded < res.closure.size()) {
    int64_t lo = expanded + 1, hi = res.closure.size();
    // Products for the whole frontier wave; order (member, block) is the
    // FIFO order, so the merge below reproduces the sequential labeling.
    std::vector<logical_matrix> products(static_cast<size_t>((hi - lo + 1) * static_cast<int64_t>(blocks.size())));
    auto slot = [&](int64_t j, size_t b) {
      return static_cast<size_t>((j - lo) * static_cast<int64_t>(blocks.size())) + b;
    };
    if (workers <= 1) {
      for (int64_t j = lo; j <= hi; ++j)
        for (size_t b = 0; b < blocks.size(); ++b)
          products[slot(j, b)] = compose(res.closure.at(j).fn, blocks[b]);
    } else {
      std::vector<std::future<void>> futs;
      for (size_t w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w]() {
          for (int64_t j = lo + static_cast<int64_t>(w); j <= hi; j += static_cast<int64_t>(workers))
            for (size_t b = 0; b < blocks.size(); ++b)
              products[slot(j, b)] = compose(res.closure.at(j).fn, blocks[b]);
        }));
      }
      for (auto& f : futs) f.get();
    }
    // Deterministic sequential merge.
    for (int64_t j = lo; j <= hi; ++j) {
      int64_t depth = res.closure.at(j).derived_step + 1;
      for (size_t b = 0; b < blocks.size(); ++b) {
        logical_matrix& prod = products[slot(j, b)];
        std::vector<int64_t> key(prod.col_indices().begin(), prod.col_indices().end());
        auto [it, inserted] = seen.try_emplace(std::move(key), res.closure.size() + 1);
        if (inserted) {
          if (res.closure.size() >= opt.cap) {
            throw cap_error("closure: size cap " + std::to_string(opt.cap) +
                            " exceeded with frontier of " + std::to_string(hi - expanded) +
                            " unexpanded members");
          }
          res.closure.append(std::move(prod), "", depth);
        }
        // Members are merged in index order, so successor[b] grows aligned
        // with the member labels.
        res.successor[b].push_back(it->second);
      }
    }
    expanded = hi;
  }
  return res;
}

closure_result closure_bn(const function_set& generators, const logical_matrix& m,
                          const closure_options& opt) {
  const logical_matrix blocks[] = {m};
  const int64_t ids[] = {1};
  return close_under_blocks(generators, blocks, ids, opt);
}

logical_matrix factor_selector(int64_t s, int64_t k) {
  if (k < 1 || k > s) throw dimension_error("factor_selector: k out of range");
  int64_t q = int64_t{1} << s;
  std::vector<int64_t> cols(static_cast<size_t>(q));
  for (int64_t c = 1; c <= q; ++c)
    cols[static_cast<size_t>(c - 1)] = 1 + (((c - 1) >> (s - k)) & 1);
  return logical_matrix(2, std::move(cols));
}

namespace {

reduced_system build_reduced(const closure_result& cl, std::span<const int64_t> output_positions) {
  const function_set& fs = cl.closure;
  int64_t s = fs.size();
  int64_t states = int64_t{1} << fs.n();

  reduced_system red;
  red.s = s;
  red.class_of_state.resize(static_cast<size_t>(states));
  red.output_positions.assign(output_positions.begin(), output_positions.end());

  std::map<std::vector<uint8_t>, int64_t> class_index;
  for (int64_t x = 1; x <= states; ++x) {
    std::vector<uint8_t> v(static_cast<size_t>(s));
    for (int64_t i = 1; i <= s; ++i) v[static_cast<size_t>(i - 1)] = fs.at(i).fn.col(x) == 1 ? 1 : 0;
    auto [it, inserted] = class_index.try_emplace(std::move(v), 0);
    if (inserted) {
      red.class_values.push_back(it->first);
      it->second = static_cast<int64_t>(red.class_values.size());
    }
    red.class_of_state[static_cast<size_t>(x - 1)] = it->second;
  }

  red.transitions.resize(cl.successor.size());
  for (size_t b = 0; b < cl.successor.size(); ++b) {
    for (const auto& v : red.class_values) {
      std::vector<uint8_t> next(static_cast<size_t>(s));
      for (int64_t i = 1; i <= s; ++i)
        next[static_cast<size_t>(i - 1)] = v[static_cast<size_t>(cl.successor[b][static_cast<size_t>(i - 1)] - 1)];
      auto it = class_index.find(next);
      if (it == class_index.end() || it->second == 0)
        throw error("reduced_system: image class not attained (closure not closed?)");
      red.transitions[b].push_back(it->second);
    }
  }
  return red;
}

}  // namespace

aggregated_system aggregated_dynamics(const closure_result& cl,
                                      std::span<const int64_t> output_positions) {
  int64_t s = cl.closure.size();
  if (s > 24) throw cap_error("aggregated_dynamics: product form over 2^" + std::to_string(s) +
                              " states exceeds the 2^24 materialization bound");
  aggregated_system agg;
  agg.s = s;
  std::vector<logical_matrix> selectors;
  selectors.reserve(static_cast<size_t>(s));
  for (int64_t k = 1; k <= s; ++k) selectors.push_back(factor_selector(s, k));
  for (const auto& sigma : cl.successor) {
    logical_matrix h = selectors[static_cast<size_t>(sigma[0] - 1)];
    for (int64_t i = 2; i <= s; ++i)
      h = khatri_rao(h, selectors[static_cast<size_t>(sigma[static_cast<size_t>(i - 1)] - 1)]);
    agg.h_blocks.push_back(std::move(h));
  }
  agg.output_positions.assign(output_positions.begin(), output_positions.end());
  if (!agg.output_positions.empty()) {
    logical_matrix xi = selectors[static_cast<size_t>(agg.output_positions[0] - 1)];
    for (size_t i = 1; i < agg.output_positions.size(); ++i)
      xi = khatri_rao(xi, selectors[static_cast<size_t>(agg.output_positions[i] - 1)]);
    agg.output_selector = std::move(xi);
  }
  agg.reduced = build_reduced(cl, output_positions);
  return agg;
}

bool verify_aggregation(const closure_result& cl, const aggregated_system& agg,
                        std::span<const logical_matrix> blocks) {
  logical_matrix g = combined_structure(cl.closure);
  if (blocks.size() != agg.h_blocks.size()) throw dimension_error("verify_aggregation: block count mismatch");
  for (size_t b = 0; b < blocks.size(); ++b)
    if (compose(g, blocks[b]) != compose(agg.h_blocks[b], g)) return false;
  return true;
}

invariant_subspace union_invariant(const invariant_subspace& a, const invariant_subspace& b,
                                   const logical_matrix& m) {
  if (compose(a.g, m) != compose(a.h, a.g) || compose(b.g, m) != compose(b.h, b.g))
    throw error("union_invariant: input subspaces lack valid certificates");
  invariant_subspace u{khatri_rao(a.g, b.g), kron(a.h, b.h)};
  if (compose(u.g, m) != compose(u.h, u.g))
    throw error("union_invariant: union certificate failed verification");
  return u;
}

}  // namespace bnet
