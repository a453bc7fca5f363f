#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <new>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcheck/correctness.hpp"
#include "qcheck/errors.hpp"
#include "qcheck/generators.hpp"
#include "qcheck/io.hpp"
#include "qcheck/membership.hpp"
#include "qcheck/quiescence.hpp"

namespace qcheck::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
  bool json = false;
};

struct MemberArgs {
  std::string mode = "qc";
  std::string spec;
  std::string history;
  std::optional<std::size_t> bound;
  std::optional<std::size_t> proc_bound;
  std::size_t width_limit = default_width_limit;
  bool witness = false;
};

struct CorrectArgs {
  std::string mode = "qc";
  std::string spec;
  std::string impl;
  std::size_t bound = 8;
  bool truncate = false;
  std::optional<std::size_t> proc_bound;
  std::size_t width_limit = default_width_limit;
  std::optional<std::size_t> pair_limit;
  bool parallel = false;
  unsigned workers = 0;
  bool warn_dead = false;
};

struct GenSatArgs {
  std::string instance;
  std::string spec_out;
  std::string history_out;
};

struct GenPcpArgs {
  std::string instance;
  std::string impl_out;
  std::string spec_out;
};

struct GenParikhArgs {
  std::string a;
  std::string b;
  std::vector<std::string> alphabet;
  std::string impl_out;
  std::string spec_out;
};

struct GenQueueArgs {
  std::size_t max_enq = 0;
  std::size_t max_deq = 0;
  std::vector<std::string> values;
  std::size_t samples = 32;
  std::uint64_t seed = 1;
  std::size_t config_limit = QueueOptions{}.config_limit;
  std::string impl_out;
  std::string spec_out;
  std::string runs_out;
};

struct LabelArgs {
  std::string fa;
  bool allow_delta = false;
  bool warn_dead = false;
};

Mode to_mode(const std::string& s) { return s == "qsc" ? Mode::qsc : Mode::qc; }

json tokens(std::span<const Event> run) {
  json a = json::array();
  for (const auto& e : run) a.push_back(to_string(e));
  return a;
}

json stats_json(const Stats& s) {
  return json{{"explored_states", s.explored_states},
              {"pairs", s.pairs},
              {"segments", s.segments},
              {"truncated", s.truncated}};
}

std::size_t pair_limit_from_env() {
  const char* raw = std::getenv("QCHECK_LIMIT");
  if (raw == nullptr) return default_pair_limit;
  std::string_view text(raw);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw Error("InvalidLimit", ErrorClass::input,
                "QCHECK_LIMIT must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

void print_run(std::ostream& out, const std::string& title, std::span<const Event> run,
               const std::vector<std::size_t>* qp = nullptr) {
  out << title << ":\n" << format_history(run, qp);
}

void print_common(std::ostream& out, const Verdict& v, const std::string& mode, const std::string& bound) {
  out << (v.passed() ? "PASS" : "FAIL") << "\n";
  out << "mode: " << mode << "\n";
  out << "bound: " << bound << "\n";
  out << "segments: " << v.stats.segments << "\n";
  out << "explored states: " << v.stats.explored_states << "\n";
}

int member(const MemberArgs& a, const Common& c, std::ostream& out) {
  Automaton spec = parse_automaton(read_file(a.spec));
  Run run = parse_history(read_file(a.history), true);
  MembershipOptions options{to_mode(a.mode), a.bound, a.proc_bound, a.width_limit};
  Verdict v = check_membership(spec, run, options);

  if (c.json) {
    json doc;
    doc["command"] = "member";
    doc["verdict"] = v.passed() ? "PASS" : "FAIL";
    doc["mode"] = a.mode;
    doc["bound"] = a.bound ? json(*a.bound) : json(nullptr);
    doc["witness"] = a.witness && v.witness ? tokens(*v.witness) : json(nullptr);
    doc["quiescent_points"] = v.quiescent_points;
    doc["unmatched_segment"] = v.unmatched_segment ? tokens(*v.unmatched_segment) : json(nullptr);
    doc["stats"] = stats_json(v.stats);
    doc["warnings"] = v.warnings;
    doc["errors"] = json::array();
    out << doc.dump(2) << "\n";
  } else {
    print_common(out, v, a.mode, a.bound ? std::to_string(*a.bound) : "none");
    for (const auto& w : v.warnings) out << "warning: " << w << "\n";
    if (a.witness && v.witness) print_run(out, "witness", *v.witness, &v.quiescent_points);
    if (v.unmatched_segment) print_run(out, "unmatched segment", *v.unmatched_segment);
  }
  return v.passed() ? exit_pass : exit_fail;
}

int correct(const CorrectArgs& a, const Common& c, std::ostream& out) {
  Automaton spec = parse_automaton(read_file(a.spec));
  Automaton impl = parse_automaton(read_file(a.impl));
  CorrectnessOptions options;
  options.mode = to_mode(a.mode);
  options.bound = a.bound;
  options.policy = a.truncate ? BoundPolicy::truncate : BoundPolicy::reject;
  options.pair_limit = a.pair_limit ? *a.pair_limit : pair_limit_from_env();
  options.proc_bound = a.proc_bound;
  options.width_limit = a.width_limit;
  options.warn_dead = a.warn_dead;
  if (a.parallel) {
    options.workers = a.workers != 0 ? a.workers : std::max(2u, std::thread::hardware_concurrency());
  }
  Verdict v = check_correctness(spec, impl, options);
  const std::string policy = a.truncate ? "truncate" : "reject";

  if (c.json) {
    json doc;
    doc["command"] = "correct";
    doc["verdict"] = v.passed() ? "PASS" : "FAIL";
    doc["mode"] = a.mode;
    doc["bound"] = a.bound;
    doc["policy"] = policy;
    doc["witness"] = v.witness ? tokens(*v.witness) : json(nullptr);
    doc["quiescent_points"] = v.quiescent_points;
    doc["unmatched_segment"] = v.unmatched_segment ? tokens(*v.unmatched_segment) : json(nullptr);
    doc["stats"] = stats_json(v.stats);
    doc["warnings"] = v.warnings;
    doc["errors"] = json::array();
    out << doc.dump(2) << "\n";
  } else {
    print_common(out, v, a.mode, std::to_string(a.bound) + " (" + policy + ")");
    out << "pairs: " << v.stats.pairs << "\n";
    out << "truncated: " << (v.stats.truncated ? "yes" : "no") << "\n";
    for (const auto& w : v.warnings) out << "warning: " << w << "\n";
    if (v.witness) print_run(out, "counterexample", *v.witness, &v.quiescent_points);
    if (v.unmatched_segment) print_run(out, "unmatched segment", *v.unmatched_segment);
  }
  return v.passed() ? exit_pass : exit_fail;
}

// Written files for the generator reports.
class Outputs {
 public:
  void automaton(const std::string& path, const Automaton& a, const std::string& header = {}) {
    write_file(path, header + format_automaton(a));
    files_.push_back({{"path", path},
                      {"kind", "automaton"},
                      {"states", a.num_states()},
                      {"transitions", a.num_transitions()}});
  }
  void history(const std::string& path, std::span<const Event> run) {
    write_file(path, format_history(run));
    files_.push_back({{"path", path}, {"kind", "history"}, {"events", run.size()}});
  }

  int emit(const std::string& command, json extra, const Common& c, std::ostream& out) const {
    if (c.json) {
      json doc;
      doc["command"] = command;
      doc["files"] = files_;
      for (auto& [k, v] : extra.items()) doc[k] = v;
      doc["errors"] = json::array();
      out << doc.dump(2) << "\n";
      return exit_pass;
    }
    for (const auto& f : files_) {
      out << "wrote " << f["path"].get<std::string>() << ": ";
      if (f["kind"] == "automaton") {
        out << f["states"] << " states, " << f["transitions"] << " transitions\n";
      } else {
        out << f["events"] << " events\n";
      }
    }
    for (auto& [k, v] : extra.items()) {
      std::string key = k;
      std::replace(key.begin(), key.end(), '_', ' ');
      out << key << ": " << (v.is_boolean() ? (v.get<bool>() ? "yes" : "no") : v.dump()) << "\n";
    }
    return exit_pass;
  }

 private:
  json files_ = json::array();
};

int gen_sat(const GenSatArgs& a, const Common& c, std::ostream& out) {
  SatInstance inst = parse_sat(read_file(a.instance));
  SatMembership m = gen_sat_membership(inst);
  Outputs files;
  files.automaton(a.spec_out, m.spec, m.duplicate_literals ? "# duplicate literals\n" : "");
  files.history(a.history_out, m.sigma);
  return files.emit("gen-sat", json{{"duplicate_literals", m.duplicate_literals}}, c, out);
}

int gen_pcp(const GenPcpArgs& a, const Common& c, std::ostream& out) {
  PcpAutomata m = gen_pcp_instance(parse_pcp(read_file(a.instance)));
  Outputs files;
  files.automaton(a.impl_out, m.impl);
  files.automaton(a.spec_out, m.spec);
  return files.emit("gen-pcp", json::object(), c, out);
}

int gen_parikh(const GenParikhArgs& a, const Common& c, std::ostream& out) {
  WordAutomaton wa = parse_word_automaton(read_file(a.a));
  WordAutomaton wb = parse_word_automaton(read_file(a.b));
  std::optional<std::vector<std::string>> alphabet;
  if (!a.alphabet.empty()) alphabet = a.alphabet;
  ParikhPair p = gen_parikh_pair(wa, wb, alphabet);
  Outputs files;
  files.automaton(a.impl_out, p.impl);
  files.automaton(a.spec_out, p.spec);
  return files.emit("gen-parikh", json{{"bound", p.bound ? json(*p.bound) : json(nullptr)}}, c, out);
}

int gen_queue(const GenQueueArgs& a, const Common& c, std::ostream& out) {
  QueueOptions options{a.max_enq, a.max_deq, a.values, a.samples, a.seed, a.config_limit};
  QueueCorpus corpus = gen_queue_corpus(options);
  Outputs files;
  files.automaton(a.impl_out, corpus.impl);
  files.automaton(a.spec_out, corpus.spec);
  if (!a.runs_out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.runs_out, ec);
    if (ec) throw IoError("cannot create directory '" + a.runs_out + "': " + ec.message());
    for (std::size_t i = 0; i < corpus.runs.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "run_%03zu.run", i);
      files.history((std::filesystem::path(a.runs_out) / name).string(), corpus.runs[i]);
    }
  }
  return files.emit("gen-queue", json{{"runs", corpus.runs.size()}}, c, out);
}

int label(const LabelArgs& a, const Common& c, std::ostream& out) {
  Automaton fa = parse_automaton(read_file(a.fa), a.allow_delta);
  QuiescenceLabeling lab = label_quiescence(fa);
  std::vector<std::string> warnings;
  if (a.warn_dead) {
    for (StateId s : dead_states(fa)) warnings.push_back("state '" + fa.name(s) + "' cannot reach a final state");
  }
  if (c.json) {
    json states = json::array();
    for (StateId s = 0; s < fa.num_states(); ++s) {
      json st{{"name", fa.name(s)}, {"reachable", lab.reachable(s)}};
      st["pending"] = lab.reachable(s) ? json(*lab.pending[s]) : json(nullptr);
      st["quiescent"] = lab.is_quiescent(s);
      states.push_back(std::move(st));
    }
    json doc{{"command", "label"}, {"states", states}, {"warnings", warnings}, {"errors", json::array()}};
    out << doc.dump(2) << "\n";
  } else {
    for (StateId s = 0; s < fa.num_states(); ++s) {
      out << fa.name(s) << " ";
      if (!lab.reachable(s)) {
        out << "unreachable\n";
      } else {
        out << to_string(*lab.pending[s]) << (lab.is_quiescent(s) ? " quiescent" : "") << "\n";
      }
    }
    for (const auto& w : warnings) out << "warning: " << w << "\n";
  }
  return exit_pass;
}

int report_error(const std::string& command, const std::string& name, ErrorClass cls,
                 const std::string& message, const Common& c, std::ostream& out, std::ostream& err,
                 json details = json::object()) {
  err << "error: " << name << ": " << message << "\n";
  if (c.json) {
    json e{{"name", name}, {"class", cls == ErrorClass::input ? "input" : "resource"}, {"message", message}};
    for (auto& [k, v] : details.items()) e[k] = v;
    json doc{{"command", command}, {"verdict", "ERROR"}, {"errors", json::array({e})}};
    out << doc.dump(2) << "\n";
  }
  return cls == ErrorClass::input ? exit_input : exit_resource;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quiescent consistency checking for finite-state histories and automata", "qcheck"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json, "Emit one JSON document instead of text");

  auto modes = CLI::IsMember({"qc", "qsc"});

  MemberArgs member_args;
  auto* member_cmd = app.add_subcommand("member", "Is a history allowed by a specification?");
  member_cmd->add_option("--mode", member_args.mode, "qc or qsc")->check(modes)->capture_default_str();
  member_cmd->add_option("--spec", member_args.spec, "Specification automaton")->required();
  member_cmd->add_option("--history", member_args.history, "History file")->required();
  member_cmd->add_option("--bound", member_args.bound, "Maximum events per segment");
  member_cmd->add_option("--proc-bound", member_args.proc_bound, "Use counter acceptors up to this many processes");
  member_cmd->add_option("--width-limit", member_args.width_limit, "Largest segment for subset acceptors")
      ->capture_default_str();
  member_cmd->add_flag("--witness", member_args.witness, "Print an equivalent accepted run");

  CorrectArgs correct_args;
  auto* correct_cmd = app.add_subcommand("correct", "Bounded correctness of an implementation automaton");
  correct_cmd->add_option("--mode", correct_args.mode, "qc or qsc")->check(modes)->capture_default_str();
  correct_cmd->add_option("--spec", correct_args.spec, "Specification automaton")->required();
  correct_cmd->add_option("--impl", correct_args.impl, "Implementation automaton")->required();
  correct_cmd->add_option("--bound", correct_args.bound, "Maximum events per segment")->capture_default_str();
  correct_cmd->add_flag("--truncate", correct_args.truncate, "Drop longer segments instead of failing");
  correct_cmd->add_option("--proc-bound", correct_args.proc_bound, "Use counter acceptors up to this many processes");
  correct_cmd->add_option("--width-limit", correct_args.width_limit, "Largest segment for subset acceptors")
      ->capture_default_str();
  correct_cmd->add_option("--pair-limit", correct_args.pair_limit, "Maximum stored pairs (overrides QCHECK_LIMIT)");
  correct_cmd->add_flag("--parallel", correct_args.parallel, "Expand each level with worker threads");
  correct_cmd->add_option("--workers", correct_args.workers, "Worker count for --parallel");
  correct_cmd->add_flag("--warn-dead", correct_args.warn_dead, "Report implementation states that cannot finish");

  GenSatArgs sat_args;
  auto* sat_cmd = app.add_subcommand("gen-sat", "Membership instance from a one-in-three SAT instance");
  sat_cmd->add_option("--instance", sat_args.instance, "SAT instance file")->required();
  sat_cmd->add_option("--spec-out", sat_args.spec_out, "Output specification")->required();
  sat_cmd->add_option("--history-out", sat_args.history_out, "Output history")->required();

  GenPcpArgs pcp_args;
  auto* pcp_cmd = app.add_subcommand("gen-pcp", "QSC correctness instance from a PCP instance");
  pcp_cmd->add_option("--instance", pcp_args.instance, "PCP instance file")->required();
  pcp_cmd->add_option("--impl-out", pcp_args.impl_out, "Output implementation")->required();
  pcp_cmd->add_option("--spec-out", pcp_args.spec_out, "Output specification")->required();

  GenParikhArgs parikh_args;
  auto* parikh_cmd = app.add_subcommand("gen-parikh", "QC correctness instance from two word automata");
  parikh_cmd->add_option("--a", parikh_args.a, "Word automaton A")->required();
  parikh_cmd->add_option("--b", parikh_args.b, "Word automaton B")->required();
  parikh_cmd->add_option("--alphabet", parikh_args.alphabet, "Declared alphabet")->delimiter(',');
  parikh_cmd->add_option("--impl-out", parikh_args.impl_out, "Output implementation")->required();
  parikh_cmd->add_option("--spec-out", parikh_args.spec_out, "Output specification")->required();

  GenQueueArgs queue_args;
  auto* queue_cmd = app.add_subcommand("gen-queue", "Diffracting queue, sequential queue spec and sample histories");
  queue_cmd->add_option("--max-enq", queue_args.max_enq, "Enqueue calls")->required();
  queue_cmd->add_option("--max-deq", queue_args.max_deq, "Dequeue calls")->required();
  queue_cmd->add_option("--values", queue_args.values, "Enqueued values in order")->delimiter(',');
  queue_cmd->add_option("--samples", queue_args.samples, "Random histories to draw")->capture_default_str();
  queue_cmd->add_option("--seed", queue_args.seed, "Sampling seed")->capture_default_str();
  queue_cmd->add_option("--config-limit", queue_args.config_limit, "Maximum explored configurations")
      ->capture_default_str();
  queue_cmd->add_option("--impl-out", queue_args.impl_out, "Output implementation")->required();
  queue_cmd->add_option("--spec-out", queue_args.spec_out, "Output specification")->required();
  queue_cmd->add_option("--runs-out", queue_args.runs_out, "Directory for sampled histories");

  LabelArgs label_args;
  auto* label_cmd = app.add_subcommand("label", "Pending sets and quiescence of every state");
  label_cmd->add_option("--fa", label_args.fa, "Automaton file")->required();
  label_cmd->add_flag("--allow-delta", label_args.allow_delta, "Accept delta labels");
  label_cmd->add_flag("--warn-dead", label_args.warn_dead, "Report states that cannot reach a final state");

  std::vector<std::string> storage{"qcheck"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*member_cmd) return member(member_args, common, out);
    if (*correct_cmd) return correct(correct_args, common, out);
    if (*sat_cmd) return gen_sat(sat_args, common, out);
    if (*pcp_cmd) return gen_pcp(pcp_args, common, out);
    if (*parikh_cmd) return gen_parikh(parikh_args, common, out);
    if (*queue_cmd) return gen_queue(queue_args, common, out);
    return label(label_args, common, out);
  } catch (const ParseError& e) {
    return report_error(command, e.name(), e.error_class(), e.what(), common, out, err,
                        json{{"line", e.line()}, {"column", e.column()}});
  } catch (const BoundExceeded& e) {
    return report_error(command, e.name(), e.error_class(), e.what(), common, out, err,
                        json{{"segment_index", e.segment_index()}, {"length", e.length()}});
  } catch (const Error& e) {
    return report_error(command, e.name(), e.error_class(), e.what(), common, out, err);
  } catch (const std::bad_alloc&) {
    return report_error(command, "OutOfMemory", ErrorClass::resource, "out of memory", common, out, err);
  } catch (const std::exception& e) {
    return report_error(command, "Error", ErrorClass::input, e.what(), common, out, err);
  }
}

}  // namespace qcheck::cli
