#include "bnet/bundle_io.hpp"

#include <cmath>
#include <sstream>

#include "bnet/delta_io.hpp"
#include "bnet/errors.hpp"

namespace bnet {

namespace {

int64_t log2_exact(int64_t v, const char* what) {
  int64_t k = 0;
  int64_t x = v;
  while (x > 1) {
    if (x & 1) throw parse_error(std::string(what) + ": " + std::to_string(v) + " is not a power of two", 0, 0);
    x >>= 1;
    ++k;
  }
  return k;
}

}  // namespace

assr_file parse_assr(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  std::getline(is, header);
  std::istringstream hs(header);
  std::string tag;
  int64_t n = 0, m = 0;
  if (!(hs >> tag >> n >> m) || tag != "assr")
    throw parse_error("expected header 'assr <n> <m>'", 1, 1);
  std::string rest(std::istreambuf_iterator<char>(is), {});
  auto stanzas = parse_stanzas(rest);
  if (stanzas.empty() || !stanzas[0].is_logical())
    throw parse_error("assr: missing transition stanza", 1, 1);
  assr_file out;
  out.sys = bcn_from_transition(n, m, stanzas[0].logical());
  if (stanzas.size() > 1) {
    const logical_matrix& h = stanzas[1].logical();
    if (h.cols() != out.sys.state_count())
      throw parse_error("assr: output stanza width does not match 2^n", 0, 0);
    int64_t p = log2_exact(h.rows(), "assr output rows");
    output_map om;
    om.combined = h;
    for (int64_t j = 1; j <= p; ++j) {
      om.names.push_back("y" + std::to_string(j));
      om.components.push_back(compose(factor_selector(p, j), h));
    }
    out.outputs = std::move(om);
  }
  if (stanzas.size() > 2) throw parse_error("assr: unexpected extra stanzas", 0, 0);
  return out;
}

std::string write_assr(const bcn_assr& sys, const output_map* outputs) {
  std::ostringstream os;
  os << "assr " << sys.n << ' ' << sys.m << '\n';
  write_stanza(os, sys.transition, "L");
  if (outputs) write_stanza(os, outputs->combined, "H");
  return os.str();
}

std::string write_closure_bundle(const closure_result& cl, const aggregated_system* agg) {
  std::ostringstream os;
  os << "closure n=" << cl.closure.n() << " blocks=" << cl.successor.size() << " size="
     << cl.size() << '\n';
  os << "blocks:";
  for (int64_t b : cl.block_ids) os << ' ' << b;
  os << '\n';
  os << "generators:";
  for (int64_t g : cl.generator_indices) os << ' ' << g;
  os << '\n';
  for (int64_t i = 1; i <= cl.size(); ++i)
    write_stanza(os, cl.closure.at(i).fn, cl.closure.at(i).name);
  for (size_t b = 0; b < cl.successor.size(); ++b)
    for (int64_t j = 1; j <= cl.size(); ++j)
      os << "successor " << cl.block_ids[b] << ": " << j << " -> "
         << cl.successor[b][static_cast<size_t>(j - 1)] << '\n';
  if (agg) {
    os << "aggregated s=" << agg->s << '\n';
    for (size_t b = 0; b < agg->h_blocks.size(); ++b) {
      os << "hblock " << cl.block_ids[b] << '\n';
      write_stanza(os, agg->h_blocks[b]);
    }
    if (!agg->output_positions.empty()) {
      os << "output-positions:";
      for (int64_t p : agg->output_positions) os << ' ' << p;
      os << '\n';
      os << "output-selector\n";
      write_stanza(os, *agg->output_selector);
    }
    const reduced_system& red = agg->reduced;
    os << "reduced classes=" << red.class_count() << '\n';
    for (int64_t c = 1; c <= red.class_count(); ++c) {
      os << "class " << c << ": ";
      for (uint8_t v : red.class_values[static_cast<size_t>(c - 1)]) os << int(v);
      os << '\n';
    }
    for (size_t b = 0; b < red.transitions.size(); ++b)
      for (int64_t c = 1; c <= red.class_count(); ++c)
        os << "transition " << cl.block_ids[b] << ": " << c << " -> "
           << red.transitions[b][static_cast<size_t>(c - 1)] << '\n';
  }
  return os.str();
}

std::string write_constrained_bundle(const closure_result& cl, const constrained_aggregated& con) {
  std::ostringstream os;
  os << "closure n=" << cl.closure.n() << " blocks=" << cl.successor.size() << " size="
     << cl.size() << '\n';
  os << "blocks:";
  for (int64_t b : cl.block_ids) os << ' ' << b;
  os << '\n';
  os << "generators:";
  for (int64_t g : cl.generator_indices) os << ' ' << g;
  os << '\n';
  for (int64_t i = 1; i <= cl.size(); ++i)
    write_stanza(os, cl.closure.at(i).fn, cl.closure.at(i).name);
  for (size_t b = 0; b < cl.successor.size(); ++b)
    for (int64_t j = 1; j <= cl.size(); ++j)
      os << "successor " << cl.block_ids[b] << ": " << j << " -> "
         << cl.successor[b][static_cast<size_t>(j - 1)] << '\n';
  os << "aggregated s=" << cl.size() << " constrained\n";
  for (size_t b = 0; b < con.h_blocks.size(); ++b) {
    os << "hblock " << cl.block_ids[b] << '\n';
    write_stanza(os, con.h_blocks[b]);
  }
  const reduced_system& red = con.reduced;
  os << "reduced classes=" << red.class_count() << '\n';
  for (int64_t c = 1; c <= red.class_count(); ++c) {
    os << "class " << c << ": ";
    for (uint8_t v : red.class_values[static_cast<size_t>(c - 1)]) os << int(v);
    os << '\n';
  }
  for (size_t b = 0; b < red.transitions.size(); ++b)
    for (int64_t c = 1; c <= red.class_count(); ++c)
      os << "transition " << cl.block_ids[b] << ": " << c << " -> "
         << red.transitions[b][static_cast<size_t>(c - 1)] << '\n';
  return os.str();
}

namespace {

int64_t parse_kv(const std::string& tok, const std::string& key, int lineno) {
  if (tok.rfind(key + "=", 0) != 0)
    throw parse_error("expected '" + key + "=<int>', got '" + tok + "'", lineno, 1);
  try {
    return std::stoll(tok.substr(key.size() + 1));
  } catch (const std::exception&) {
    throw parse_error("bad integer in '" + tok + "'", lineno, 1);
  }
}

}  // namespace

closure_bundle parse_closure_bundle(const std::string& text) {
  // Split the text at the line level: header lines handled here, matrix
  // stanzas delegated to parse_stanzas on the collected stanza text.
  std::istringstream is(text);
  std::string line;
  int lineno = 0;

  int64_t n = -1, nblocks = 0, size = 0;
  std::vector<int64_t> block_ids, generators, output_positions;
  std::vector<std::pair<std::string, std::string>> func_stanzas;  // (name, text)
  std::vector<std::string> hblock_stanzas;
  std::vector<int64_t> hblock_ids;
  std::string selector_stanza;
  std::vector<std::vector<int64_t>> successor;
  bool has_agg = false, constrained = false;
  int64_t agg_s = -1, classes = 0;
  std::vector<std::vector<uint8_t>> class_values;
  std::vector<std::vector<int64_t>> transitions;

  std::string* open_stanza = nullptr;  // stanza text being accumulated

  auto block_pos = [&](int64_t id, int ln) -> size_t {
    for (size_t i = 0; i < block_ids.size(); ++i)
      if (block_ids[i] == id) return i;
    throw parse_error("unknown block id " + std::to_string(id), ln, 1);
  };

  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;

    if (word == "closure") {
      std::string t1, t2, t3;
      if (!(ls >> t1 >> t2 >> t3)) throw parse_error("bad closure header", lineno, 1);
      n = parse_kv(t1, "n", lineno);
      nblocks = parse_kv(t2, "blocks", lineno);
      size = parse_kv(t3, "size", lineno);
      successor.resize(static_cast<size_t>(nblocks));
      open_stanza = nullptr;
      continue;
    }
    if (word == "blocks:") {
      int64_t v;
      while (ls >> v) block_ids.push_back(v);
      continue;
    }
    if (word == "generators:") {
      int64_t v;
      while (ls >> v) generators.push_back(v);
      continue;
    }
    if (word == "name:") {
      std::string name;
      ls >> name;
      func_stanzas.emplace_back(name, "");
      open_stanza = &func_stanzas.back().second;
      continue;
    }
    if (word == "delta" || word == "dense") {
      if (!open_stanza) {
        func_stanzas.emplace_back("", "");
        open_stanza = &func_stanzas.back().second;
      }
      *open_stanza += line + "\n";
      continue;
    }
    if (word == "successor") {
      std::string btok, arrow;
      int64_t j, k;
      if (!(ls >> btok >> j >> arrow >> k) || arrow != "->" || btok.empty() || btok.back() != ':')
        throw parse_error("bad successor line", lineno, 1);
      size_t b = block_pos(std::stoll(btok.substr(0, btok.size() - 1)), lineno);
      successor[b].push_back(k);
      if (static_cast<int64_t>(successor[b].size()) != j)
        throw parse_error("successor lines out of order", lineno, 1);
      open_stanza = nullptr;
      continue;
    }
    if (word == "aggregated") {
      has_agg = true;
      std::string t1, t2;
      ls >> t1;
      agg_s = parse_kv(t1, "s", lineno);
      if (ls >> t2 && t2 == "constrained") constrained = true;
      open_stanza = nullptr;
      continue;
    }
    if (word == "hblock") {
      int64_t id;
      if (!(ls >> id)) throw parse_error("bad hblock line", lineno, 1);
      hblock_ids.push_back(id);
      hblock_stanzas.emplace_back();
      open_stanza = &hblock_stanzas.back();
      continue;
    }
    if (word == "output-positions:") {
      int64_t v;
      while (ls >> v) output_positions.push_back(v);
      continue;
    }
    if (word == "output-selector") {
      selector_stanza.clear();
      open_stanza = &selector_stanza;
      continue;
    }
    if (word == "reduced") {
      std::string t1;
      ls >> t1;
      classes = parse_kv(t1, "classes", lineno);
      transitions.assign(static_cast<size_t>(nblocks), {});
      open_stanza = nullptr;
      continue;
    }
    if (word == "class") {
      std::string ctok, bits;
      if (!(ls >> ctok >> bits)) throw parse_error("bad class line", lineno, 1);
      std::vector<uint8_t> v;
      for (char c : bits) {
        if (c != '0' && c != '1') throw parse_error("bad class bits", lineno, 1);
        v.push_back(c == '1' ? 1 : 0);
      }
      class_values.push_back(std::move(v));
      continue;
    }
    if (word == "transition") {
      std::string btok, arrow;
      int64_t c, k;
      if (!(ls >> btok >> c >> arrow >> k) || arrow != "->")
        throw parse_error("bad transition line", lineno, 1);
      size_t b = block_pos(std::stoll(btok.substr(0, btok.size() - 1)), lineno);
      transitions[b].push_back(k);
      continue;
    }
    // Continuation of an open stanza (bare numbers).
    if (open_stanza) {
      *open_stanza += line + "\n";
      continue;
    }
    throw parse_error("unexpected line '" + line + "'", lineno, 1);
  }

  if (n < 0) throw parse_error("missing closure header", 1, 1);
  if (static_cast<int64_t>(func_stanzas.size()) != size)
    throw parse_error("function stanza count does not match size", 0, 0);

  closure_bundle out;
  out.closure.closure = function_set(n);
  for (auto& [name, stanza_text] : func_stanzas) {
    auto st = parse_stanzas(stanza_text);
    if (st.size() != 1 || !st[0].is_logical())
      throw parse_error("bad function stanza", 0, 0);
    out.closure.closure.append(st[0].logical(), name);
  }
  out.closure.successor = std::move(successor);
  out.closure.generator_indices = std::move(generators);
  out.closure.block_ids = std::move(block_ids);
  for (const auto& sig : out.closure.successor)
    if (static_cast<int64_t>(sig.size()) != size)
      throw parse_error("successor map incomplete", 0, 0);

  if (has_agg) {
    if (!constrained) {
      aggregated_system agg;
      agg.s = agg_s;
      for (const auto& st_text : hblock_stanzas) {
        auto st = parse_stanzas(st_text);
        if (st.size() != 1 || !st[0].is_logical())
          throw parse_error("bad hblock stanza (logical expected)", 0, 0);
        agg.h_blocks.push_back(st[0].logical());
      }
      agg.output_positions = output_positions;
      if (!selector_stanza.empty()) {
        auto st = parse_stanzas(selector_stanza);
        if (st.size() != 1 || !st[0].is_logical())
          throw parse_error("bad output-selector stanza", 0, 0);
        agg.output_selector = st[0].logical();
      }
      agg.reduced.s = agg_s;
      agg.reduced.class_values = std::move(class_values);
      agg.reduced.transitions = std::move(transitions);
      agg.reduced.output_positions = output_positions;
      if (agg.reduced.class_count() != classes)
        throw parse_error("class line count does not match header", 0, 0);
      out.agg = std::move(agg);
    } else {
      out.constrained = true;
      for (const auto& st_text : hblock_stanzas) {
        auto st = parse_stanzas(st_text);
        if (st.size() != 1) throw parse_error("bad hblock stanza", 0, 0);
        if (st[0].is_logical())
          out.constrained_blocks.emplace_back(st[0].logical());
        else
          out.constrained_blocks.push_back(st[0].zero_extended());
      }
      aggregated_system agg;  // reduced table carrier for constrained bundles
      agg.s = agg_s;
      agg.reduced.s = agg_s;
      agg.reduced.class_values = std::move(class_values);
      agg.reduced.transitions = std::move(transitions);
      out.agg = std::move(agg);
    }
  }
  return out;
}

realization realization_from_bundle(const closure_bundle& b) {
  if (!b.agg || b.constrained)
    throw error("realization_from_bundle: bundle lacks an unconstrained aggregated section");
  if (!b.agg->output_selector)
    throw error("realization_from_bundle: bundle lacks an output selector");
  realization real;
  real.closure = b.closure;
  real.agg = *b.agg;
  real.g = combined_structure(b.closure.closure);
  return real;
}

std::string reduced_transition_graph(const reduced_system& red) {
  std::ostringstream os;
  os << "digraph reduced {\n  rankdir=LR;\n";
  for (int64_t c = 1; c <= red.class_count(); ++c) {
    os << "  c" << c << " [label=\"" << c << ':';
    for (uint8_t v : red.class_values[static_cast<size_t>(c - 1)]) os << int(v);
    os << "\"];\n";
  }
  bool labeled = red.transitions.size() > 1;
  for (size_t b = 0; b < red.transitions.size(); ++b)
    for (int64_t c = 1; c <= red.class_count(); ++c) {
      int64_t t = red.transitions[b][static_cast<size_t>(c - 1)];
      if (t == 0) continue;  // forbidden: absent edge
      os << "  c" << c << " -> c" << t;
      if (labeled) os << " [label=\"u=" << b + 1 << "\"]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace bnet
