#include "bnet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bnet/bundle_io.hpp"
#include "bnet/corpus.hpp"
#include "bnet/delta_io.hpp"
#include "bnet/errors.hpp"

namespace bnet {

namespace fs = std::filesystem;

namespace {

const char* kUsage =
    "usage: bnet <command> [options]\n"
    "\n"
    "commands:\n"
    "  compile <net.bn> [--emit componentwise|overall|both]\n"
    "  closure <net.bn|sys.assr> --funcs <file> [--controls all|<csv>] [--parallel]\n"
    "  invariant-check <net.bn> --funcs <file>\n"
    "  aggregate <net.bn|sys.assr> --funcs <file> [--controls all|<csv>] [--constraints <file>]\n"
    "  minreal <net.bn|sys.assr>\n"
    "  verify <net.bn|sys.assr> --bundle <file> --horizon <k> [--no-sample]\n"
    "  simulate <net.bn|sys.assr> --init <state> --steps <k> [--inputs <csv>]\n"
    "  simulate --bundle <file> --init-class <c> --inputs <csv>\n"
    "  stg <net.bn|sys.assr> [--bits]\n"
    "  indexfn --n <vars> --states <csv>\n"
    "  corpus <name> (names: example-3.1.5 grid-9 grid-9-controlled example-5.5)\n"
    "\n"
    "global options: --out <dir>  --cap <n>  --seed <n>\n";

const std::vector<std::string> kBoolFlags = {"parallel", "bits", "no-sample", "help"};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot read '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::vector<int64_t> parse_csv(const std::string& text, const std::string& what) {
  std::vector<int64_t> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw error("bad " + what + " value '" + item + "'");
    }
  }
  return out;
}

struct loaded_system {
  bcn_assr sys;
  std::optional<output_map> outputs;
  std::string stem;
};

loaded_system load_system(const std::string& path) {
  loaded_system ls;
  ls.stem = fs::path(path).stem().string();
  std::string text = slurp(path);
  if (fs::path(path).extension() == ".assr") {
    assr_file f = parse_assr(text);
    ls.sys = std::move(f.sys);
    ls.outputs = std::move(f.outputs);
    return ls;
  }
  network_def net = parse_network(text);
  ls.sys = net.m() == 0 ? as_bcn(assemble_bn(net)) : assemble_bcn(net);
  if (!net.output_rules.empty()) ls.outputs = assemble_outputs(net);
  return ls;
}

function_set load_function_set(const std::string& path, int64_t n) {
  auto stanzas = parse_stanzas(slurp(path));
  if (stanzas.empty()) throw error("no function stanzas in '" + path + "'");
  function_set fs_(n);
  for (const auto& st : stanzas) {
    if (!st.is_logical()) throw error("function file '" + path + "' must contain delta stanzas");
    fs_.add(st.logical(), st.name);
  }
  return fs_;
}

/// Artifact sink: stdout by default, canonical files under --out.
class sink {
public:
  sink(const run_manifest& m, std::ostream& out) : dir_(m.out_dir), out_(out) {}

  void emit(const std::string& filename, const std::string& content) {
    if (dir_.empty()) {
      out_ << content;
      return;
    }
    fs::create_directories(dir_);
    fs::path p = fs::path(dir_) / filename;
    std::ofstream os(p);
    if (!os) throw error("cannot write " + p.string());
    os << content;
    out_ << "wrote " << p.string() << '\n';
  }

private:
  std::string dir_;
  std::ostream& out_;
};

std::vector<int64_t> controls_scope(const run_manifest& m, const bcn_assr& sys) {
  std::string spec = m.get("controls", "all");
  if (spec == "all") return {};
  auto list = parse_csv(spec, "--controls");
  for (int64_t r : list)
    if (r < 1 || r > sys.block_count()) throw error("--controls index out of range");
  return list;
}

int cmd_compile(const run_manifest& m, std::ostream& out) {
  if (m.inputs.empty()) throw error("compile: missing network file");
  std::string emit = m.get("emit", "both");
  if (emit != "componentwise" && emit != "overall" && emit != "both")
    throw error("compile: --emit must be componentwise, overall or both");
  network_def net = parse_network(slurp(m.inputs[0]));
  sink sk(m, out);
  std::string stem = fs::path(m.inputs[0]).stem().string();

  std::ostringstream comp, overall;
  if (net.m() == 0) {
    bn_assr sys = assemble_bn(net);
    for (int64_t i = 0; i < sys.n; ++i)
      write_stanza(comp, sys.componentwise[static_cast<size_t>(i)], net.state_vars[static_cast<size_t>(i)]);
    write_stanza(overall, sys.overall, "M");
  } else {
    bcn_assr sys = assemble_bcn(net);
    for (int64_t i = 0; i < sys.n; ++i)
      write_stanza(comp, sys.componentwise[static_cast<size_t>(i)], net.state_vars[static_cast<size_t>(i)]);
    write_stanza(overall, sys.transition, "L");
  }
  if (!net.output_rules.empty()) write_stanza(overall, assemble_outputs(net).combined, "H");

  if (emit == "componentwise" || emit == "both") sk.emit(stem + ".componentwise.delta", comp.str());
  if (emit == "overall" || emit == "both") sk.emit(stem + ".overall.delta", overall.str());
  return 0;
}

int cmd_closure(const run_manifest& m, std::ostream& out, bool aggregate_mode) {
  if (m.inputs.empty()) throw error("closure: missing system file");
  if (!m.has("funcs")) throw error("closure: missing --funcs");
  loaded_system ls = load_system(m.inputs[0]);
  function_set gens = load_function_set(m.get("funcs"), ls.sys.n);
  closure_options opt;
  opt.cap = m.cap;
  opt.parallel = m.has("parallel");
  closure_result cl = closure_bcn(gens, ls.sys, controls_scope(m, ls.sys), opt);
  aggregated_system agg = aggregated_bcn(cl);

  sink sk(m, out);
  if (aggregate_mode && m.has("constraints")) {
    control_constraint c = parse_constraints(slurp(m.get("constraints")));
    constrained_aggregated con = apply_constraints(agg, c);
    sk.emit(ls.stem + ".bundle", write_constrained_bundle(cl, con));
  } else {
    sk.emit(ls.stem + ".bundle", write_closure_bundle(cl, &agg));
  }
  return 0;
}

int cmd_invariant_check(const run_manifest& m, std::ostream& out) {
  if (m.inputs.empty()) throw error("invariant-check: missing network file");
  if (!m.has("funcs")) throw error("invariant-check: missing --funcs");
  loaded_system ls = load_system(m.inputs[0]);
  if (ls.sys.m != 0) throw error("invariant-check: expects an uncontrolled network (use closure --controls for BCNs)");
  function_set funcs = load_function_set(m.get("funcs"), ls.sys.n);
  logical_matrix q = combined_structure(funcs);
  out << "Q " << q.str() << '\n';
  out << "regular: " << (is_regular(q) ? "yes" : "no") << '\n';
  invariance_result res = invariance_certificate(q, ls.sys.blocks[0]);
  switch (res.st) {
    case invariance_result::status::invariant: {
      out << "invariant: yes\n";
      std::ostringstream h;
      write_stanza(h, *res.h, "H");
      out << h.str();
      return 0;
    }
    case invariance_result::status::not_invariant:
      out << "invariant: no\n";
      out << "witness: states " << res.witness->first << " and " << res.witness->second
          << " agree under Q but diverge under QM\n";
      return 1;
    case invariance_result::status::unattained_value:
      out << "invariant: undecided\n";
      out << "unattained value: " << *res.unattained
          << " (QQ^T singular; certificate route unavailable)\n";
      return 1;
  }
  return 2;
}

int cmd_minreal(const run_manifest& m, std::ostream& out) {
  if (m.inputs.empty()) throw error("minreal: missing system file");
  loaded_system ls = load_system(m.inputs[0]);
  if (!ls.outputs) throw error("minreal: system has no outputs");
  closure_options opt;
  opt.cap = m.cap;
  opt.parallel = m.has("parallel");
  realization real = min_realization(ls.sys, *ls.outputs, opt);
  sink sk(m, out);
  sk.emit(ls.stem + ".bundle", write_closure_bundle(real.closure, &real.agg));
  sk.emit(ls.stem + ".dot", reduced_transition_graph(real.agg.reduced));
  return 0;
}

int cmd_verify(const run_manifest& m, std::ostream& out) {
  if (m.inputs.empty()) throw error("verify: missing system file");
  if (!m.has("bundle")) throw error("verify: missing --bundle");
  if (!m.has("horizon")) throw error("verify: missing --horizon");
  loaded_system ls = load_system(m.inputs[0]);
  if (!ls.outputs) throw error("verify: system has no outputs");
  realization real = realization_from_bundle(parse_closure_bundle(slurp(m.get("bundle"))));
  int64_t horizon = std::stoll(m.get("horizon"));
  // The global cap default is sized for closures; sweeps get a wider one
  // unless the user pinned --cap explicitly.
  int64_t cap = m.has("cap") ? m.cap : int64_t{1} << 22;
  io_equivalence_result res = verify_io_equivalence(ls.sys, *ls.outputs, real, horizon, cap,
                                                    m.seed, !m.has("no-sample"));
  out << "runs: " << res.runs << (res.exhaustive ? " (exhaustive)" : " (sampled)") << '\n';
  if (res.equivalent) {
    out << "io-equivalent: yes (horizon " << horizon << ")\n";
    return 0;
  }
  const auto& ce = *res.counterexample;
  out << "io-equivalent: no\n";
  out << "counterexample: x0=" << ce.x0 << " controls=";
  for (size_t i = 0; i < ce.controls.size(); ++i) out << (i ? "," : "") << ce.controls[i];
  out << " t=" << ce.time << " system-output=" << ce.y_system
      << " realization-output=" << ce.y_realization << '\n';
  return 1;
}

int cmd_simulate(const run_manifest& m, std::ostream& out) {
  if (m.has("bundle")) {
    closure_bundle b = parse_closure_bundle(slurp(m.get("bundle")));
    if (!b.agg) throw error("simulate: bundle has no aggregated section");
    if (!m.has("init-class")) throw error("simulate: missing --init-class");
    std::vector<int64_t> controls = parse_csv(m.get("inputs", ""), "--inputs");
    reduced_sim_result res =
        simulate_reduced(b.agg->reduced, std::stoll(m.get("init-class")), controls);
    for (size_t t = 0; t < res.classes.size(); ++t)
      out << "t=" << t << " class=" << res.classes[t] << '\n';
    if (res.forbidden) {
      out << "status: forbidden (control " << controls[static_cast<size_t>(res.halted_step)]
          << " at step " << res.halted_step << ")\n";
    } else {
      out << "status: ok\n";
    }
    return 0;
  }

  if (m.inputs.empty()) throw error("simulate: missing system file");
  loaded_system ls = load_system(m.inputs[0]);
  if (!m.has("init")) throw error("simulate: missing --init");
  int64_t x0 = std::stoll(m.get("init"));
  if (x0 < 1 || x0 > ls.sys.state_count()) throw error("simulate: --init out of range");
  std::vector<int64_t> controls;
  if (m.has("inputs")) {
    controls = parse_csv(m.get("inputs"), "--inputs");
  } else {
    int64_t steps = std::stoll(m.get("steps", "10"));
    controls.assign(static_cast<size_t>(steps), 1);
    if (ls.sys.m > 0 && !m.has("steps"))
      throw error("simulate: controlled system needs --inputs (or --steps for constant u=1)");
  }
  for (int64_t u : controls)
    if (u < 1 || u > ls.sys.block_count()) throw error("simulate: control index out of range");
  std::vector<int64_t> states = trajectory(ls.sys, x0, controls);
  for (size_t t = 0; t < states.size(); ++t) {
    out << "t=" << t << " x=" << states[t];
    if (ls.outputs) out << " y=" << ls.outputs->combined.col(states[t]);
    out << '\n';
  }
  return 0;
}

int cmd_stg(const run_manifest& m, std::ostream& out) {
  if (m.inputs.empty()) throw error("stg: missing system file");
  loaded_system ls = load_system(m.inputs[0]);
  stg_options opt;
  opt.bit_labels = m.has("bits");
  if (m.has("cap")) opt.max_edges = m.cap;
  sink sk(m, out);
  sk.emit(ls.stem + ".dot", state_transition_graph(ls.sys, opt));
  return 0;
}

int cmd_indexfn(const run_manifest& m, std::ostream& out) {
  if (!m.has("n")) throw error("indexfn: missing --n");
  if (!m.has("states")) throw error("indexfn: missing --states");
  int64_t n = std::stoll(m.get("n"));
  if (n < 1 || n > 24) throw error("indexfn: --n out of range 1..24");
  subset_spec s = subset_spec::from_indices(n, parse_csv(m.get("states"), "--states"));
  std::ostringstream os;
  write_stanza(os, index_function(s), "g");
  sink sk(m, out);
  sk.emit("indexfn.delta", os.str());
  return 0;
}

int cmd_corpus(const run_manifest& m, std::ostream& out) {
  if (m.inputs.empty()) throw error("corpus: missing name");
  std::string dir = m.out_dir.empty() ? "corpus-" + m.inputs[0] : m.out_dir;
  for (const std::string& f : corpus::write_corpus(m.inputs[0], dir))
    out << "wrote " << (fs::path(dir) / f).string() << '\n';
  return 0;
}

}  // namespace

std::string run_manifest::get(const std::string& key, const std::string& fallback) const {
  auto it = options.find(key);
  return it == options.end() ? fallback : it->second;
}

run_manifest parse_manifest(std::span<const std::string> args) {
  run_manifest m;
  size_t i = 0;
  if (i < args.size() && args[i].rfind("--", 0) != 0) m.subcommand = args[i++];
  for (; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) {
      m.inputs.push_back(a);
      continue;
    }
    std::string name = a.substr(2);
    if (std::find(kBoolFlags.begin(), kBoolFlags.end(), name) != kBoolFlags.end()) {
      m.options[name] = "";
      continue;
    }
    if (i + 1 >= args.size()) throw error("option --" + name + " expects a value");
    m.options[name] = args[++i];
  }
  if (m.has("cap")) m.cap = std::stoll(m.get("cap"));
  if (m.has("seed")) m.seed = static_cast<uint64_t>(std::stoull(m.get("seed")));
  m.out_dir = m.get("out");
  return m;
}

int run_cli(const run_manifest& m, std::ostream& out, std::ostream& err) {
  try {
    if (m.subcommand.empty() || m.has("help")) {
      out << kUsage;
      return m.subcommand.empty() && !m.has("help") ? 2 : 0;
    }
    if (m.subcommand == "compile") return cmd_compile(m, out);
    if (m.subcommand == "closure") return cmd_closure(m, out, false);
    if (m.subcommand == "aggregate") return cmd_closure(m, out, true);
    if (m.subcommand == "invariant-check") return cmd_invariant_check(m, out);
    if (m.subcommand == "minreal") return cmd_minreal(m, out);
    if (m.subcommand == "verify") return cmd_verify(m, out);
    if (m.subcommand == "simulate") return cmd_simulate(m, out);
    if (m.subcommand == "stg") return cmd_stg(m, out);
    if (m.subcommand == "indexfn") return cmd_indexfn(m, out);
    if (m.subcommand == "corpus") return cmd_corpus(m, out);
    err << "unknown command '" << m.subcommand << "'\n" << kUsage;
    return 2;
  } catch (const cap_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    return run_cli(parse_manifest(args), out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace bnet
