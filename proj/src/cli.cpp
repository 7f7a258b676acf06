#include "ban/cli.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "ban/combinatorics.hpp"
#include "ban/sequence_vm.hpp"
#include "ban/topologies.hpp"
#include "ban/verify.hpp"

namespace ban {

Json RunManifest::to_json() const {
  Json j;
  j["command"] = command;
  j["arguments"] = arguments;
  j["input"] = input;
  j["mode"] = mode;
  j["caps"] = {{"deterministic", caps.deterministic},
               {"asynchronous", caps.asynchronous},
               {"elementary", caps.elementary}};
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["outputs"] = outputs;
  j["version"] = version;
  return j;
}

namespace {

struct Options {
  std::string mode = "parallel";
  std::optional<int> cap;
  std::string dot, json, csv, trace;
  std::optional<std::uint64_t> seed;
  bool check_bounds = false;
  bool printed = false;
  int samples = 200;
  std::optional<int> max_n;
  std::string start, target, side = "left";
  std::vector<std::string> positional;
};

Caps effective_caps(const Options& o) {
  return o.cap ? Caps::uniform(*o.cap) : Caps::from_environment();
}

bool looks_like_descriptor(const std::string& text) {
  static const std::regex pattern(R"(^(C[+-]|D[+-][+-]):.*)");
  return std::regex_match(text, pattern);
}

RunManifest make_manifest(const std::string& command,
                          const std::vector<std::string>& args,
                          const std::string& input, const std::string& mode,
                          const Options& o) {
  RunManifest m;
  m.command = command;
  m.arguments = args;
  m.input = input;
  m.mode = mode;
  m.caps = effective_caps(o);
  m.seed = o.seed;
  for (const std::string* p : {&o.json, &o.csv, &o.dot, &o.trace}) {
    if (!p->empty()) m.outputs.push_back(*p);
  }
  return m;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string manifest_comment(const RunManifest& m, const std::string& prefix) {
  return prefix + " manifest: " + m.to_json().dump() + '\n';
}

std::string big(const BigInt& v) { return v.str(); }

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& input, const Options& o,
                const std::vector<std::string>& args, std::ostream& out) {
  const UpdateMode mode = UpdateMode::parse(o.mode);
  const Caps caps = effective_caps(o);
  std::string name = input;
  const BooleanNetwork net = [&] {
    if (!looks_like_descriptor(input)) return load_network_spec(input);
    const Junction j = mode.kind() == UpdateMode::Kind::Parallel ? Junction::Or
                                                                 : Junction::And;
    const Descriptor d = parse_descriptor(input, j);
    name = to_string(d);
    return build_network(d);
  }();
  const TransitionGraph tg(net, mode, caps);
  const AttractorReport report = attractors(tg);
  const RunManifest manifest = make_manifest("analyze", args, input, mode.to_string(), o);
  const int n = net.size();

  out << name << " (n=" << n << "), mode " << mode.to_string() << '\n';
  out << "attractors: " << report.attractors.size() << " (" << report.fixed_points()
      << " fixed points, " << report.oscillations() << " oscillations)\n";
  for (const Attractor& a : report.attractors) {
    out << "  length " << a.length;
    if (a.period) out << " period " << *a.period;
    out << ':';
    for (std::uint64_t s : a.states) out << ' ' << state_string(s, n);
    out << '\n';
  }
  out << "recurring: " << report.recurring_count << " of " << tg.vertex_count()
      << '\n';
  out << "convergence time: " << report.convergence_time << '\n';

  if (!o.json.empty()) {
    Json j;
    j["manifest"] = manifest.to_json();
    j["network"] = name;
    Json locals = Json::array();
    for (int i = 0; i < n; ++i) locals.push_back(net.local(i).to_string());
    j["locals"] = locals;
    j["graph"] = graph_json(tg, report);
    j["recurring"] = report.recurring_count;
    write_file(o.json, j.dump(2) + '\n');
  }
  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << manifest_comment(manifest, "#");
    csv << "index,length,period,states\n";
    for (std::size_t k = 0; k < report.attractors.size(); ++k) {
      const Attractor& a = report.attractors[k];
      csv << k << ',' << a.length << ',' << (a.period ? std::to_string(*a.period) : "")
          << ',';
      for (std::size_t s = 0; s < a.states.size(); ++s) {
        csv << (s ? " " : "") << state_string(a.states[s], n);
      }
      csv << '\n';
    }
    write_file(o.csv, csv.str());
  }
  if (!o.dot.empty()) {
    write_file(o.dot, manifest_comment(manifest, "//") + to_dot(tg, report));
  }
  return exit_code::kPass;
}

// ---------------------------------------------------------------- predict

Json table_json(const QuantityTable& t) {
  Json j;
  j["descriptor"] = t.descriptor;
  j["omega"] = t.omega;
  Json rows = Json::array();
  for (const QuantityRow& r : t.rows) {
    rows.push_back({{"p", r.p}, {"X", big(r.X)}, {"X_min", big(r.X_min)}, {"A", big(r.A)}});
  }
  j["rows"] = rows;
  j["T"] = big(t.T);
  j["mean_period"] = to_string(t.mean_period);
  return j;
}

int cmd_predict(const std::string& input, const Options& o,
                const std::vector<std::string>& args, std::ostream& out) {
  const Descriptor d = parse_descriptor(input);
  const RunManifest manifest = make_manifest("predict", args, input, "parallel", o);
  int code = exit_code::kPass;
  Json j;
  j["manifest"] = manifest.to_json();

  std::optional<QuantityTable> table;
  try {
    table = quantity_table(d);
  } catch (const IntegralityViolation& e) {
    out << "paper-discrepancy: " << e.what() << '\n';
    j["integrality_violation"] = e.what();
    code = exit_code::kDiscrepancy;
  }
  if (table) {
    out << to_string(d) << "  omega=" << table->omega << '\n';
    out << "p\tX\tX_min\tA\n";
    for (const QuantityRow& r : table->rows) {
      out << r.p << '\t' << r.X << '\t' << r.X_min << '\t' << r.A << '\n';
    }
    out << "T=" << table->T << "  mean period=" << to_string(table->mean_period) << '\n';
    j["table"] = table_json(*table);
  }
  if (o.printed) {
    Json checks = Json::array();
    for (const PrintedCheck& c : printed_sum_checks(d)) {
      const std::string printed =
          c.printed ? to_string(*c.printed) : std::string("ill-formed");
      out << "printed " << c.quantity << '(' << c.p << ")=" << printed << " derived "
          << to_string(c.derived) << (c.matches() ? "" : "  paper-discrepancy") << '\n';
      checks.push_back({{"quantity", c.quantity}, {"p", c.p}, {"printed", printed},
                        {"derived", to_string(c.derived)}, {"matches", c.matches()},
                        {"note", c.note}});
      if (!c.matches() && code == exit_code::kPass) code = exit_code::kDiscrepancy;
    }
    j["printed_sums"] = checks;
  }
  if (o.check_bounds && table) {
    try {
      const BoundsVerdict v = check_bounds(d, *table);
      out << "bounds: " << (v.passed() ? "pass" : "fail") << " (" << v.detail << ")\n";
      j["bounds"] = {{"lower", v.lower}, {"upper", v.upper}, {"mean", v.mean},
                     {"detail", v.detail}};
      if (!v.passed()) code = exit_code::kFailure;
    } catch (const ExcludedDescriptor& e) {
      out << "bounds: ExcludedDescriptor (" << e.what() << ")\n";
      j["bounds"] = {{"excluded", e.what()}};
    }
  }
  if (!o.json.empty()) write_file(o.json, j.dump(2) + '\n');
  if (!o.csv.empty() && table) {
    write_file(o.csv, manifest_comment(manifest, "#") + table_csv(*table));
  }
  return code;
}

// ----------------------------------------------------------------- verify

std::pair<int, int> parse_range(const std::string& text) {
  static const std::regex range(R"(^(\d+)(?:\.\.(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, range)) {
    throw ParseError("expected a range such as 1..12, got '" + text + "'", 1, 1);
  }
  const int lo = std::stoi(m[1]);
  const int hi = m[2].matched ? std::stoi(m[2]) : lo;
  if (lo > hi) throw ParseError("empty range '" + text + "'", 1, 1);
  return {lo, hi};
}

int cmd_verify(const Options& o, const std::vector<std::string>& args,
               std::ostream& out) {
  if (o.positional.empty()) throw CLI::ValidationError("verify", "family required");
  const std::string family = o.positional[0];
  std::vector<std::string> rest(o.positional.begin() + 1, o.positional.end());
  const Caps caps = effective_caps(o);
  auto range_or = [&](std::pair<int, int> fallback) {
    return rest.empty() ? fallback : parse_range(rest.back());
  };

  Options with_seed = o;
  VerifyMatrix matrix;
  if (family == "cycles") {
    const auto [lo, hi] = range_or({1, 12});
    matrix = verify_cycles(lo, hi, caps);
  } else if (family == "double-cycles") {
    DoubleCycleFamily f = DoubleCycleFamily::All;
    if (!rest.empty() && !std::isdigit(static_cast<unsigned char>(rest.front()[0]))) {
      f = parse_family(rest.front());
      rest.erase(rest.begin());
    }
    matrix = verify_double_cycles(f, range_or({1, 8}).second, caps);
  } else if (family == "sequences") {
    const auto [lo, hi] = range_or({2, 4});
    matrix = verify_sequences(lo, hi, caps);
  } else if (family == "duality") {
    matrix = verify_duality(range_or({1, 8}).second, caps);
  } else if (family == "robert" || family == "thomas") {
    const std::uint64_t seed = o.seed.value_or(1);
    with_seed.seed = seed;
    matrix = family == "robert"
                 ? verify_robert(o.samples, seed, o.max_n.value_or(8), caps)
                 : verify_thomas(o.samples, seed, o.max_n.value_or(6), caps);
  } else {
    throw CLI::ValidationError("verify", "unknown family '" + family + "'");
  }

  const RunManifest manifest = make_manifest("verify", args, family, "", with_seed);
  out << matrix.to_text();
  if (!o.json.empty()) {
    Json j;
    j["manifest"] = manifest.to_json();
    j["matrix"] = matrix.to_json();
    write_file(o.json, j.dump(2) + '\n');
  }
  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << manifest_comment(manifest, "#") << "subject,check,status,detail\n";
    for (const MatrixRow& r : matrix.rows) {
      csv << csv_field(r.subject) << ',' << csv_field(r.check) << ','
          << to_string(r.status) << ',' << csv_field(r.detail) << '\n';
    }
    write_file(o.csv, csv.str());
  }
  return matrix.exit_code();
}

// --------------------------------------------------------------- sequence

DoubleCycleDescriptor sequence_descriptor(const std::string& text) {
  const Descriptor d = parse_descriptor(text, Junction::And);
  const auto* dc = std::get_if<DoubleCycleDescriptor>(&d);
  if (!dc) throw ParseError("sequences run on double-cycles, got '" + text + "'", 1, 1);
  return *dc;
}

std::uint64_t parse_state(const DoubleCycleDescriptor& d, const std::string& text) {
  const int n = d.size();
  if (text == "alternating") return alternating_state(d);
  if (text == "zeros") return 0;
  if (text == "ones") return full_set(n);
  const Configuration c = Configuration::parse(text);
  if (c.width() != n) {
    throw ParseError("configuration '" + text + "' has " + std::to_string(c.width()) +
                         " automata, network has " + std::to_string(n),
                     1, 1);
  }
  return c.bits();
}

int cmd_sequence(const std::string& input, const std::string& builtin,
                 const Options& o, const std::vector<std::string>& args,
                 std::ostream& out) {
  const DoubleCycleDescriptor d = sequence_descriptor(input);
  const int n = d.size();
  std::string start_text = o.start;
  if (o.positional.size() > 0) start_text = o.positional[0];
  if (start_text.empty()) throw CLI::ValidationError("sequence", "start configuration required");
  const std::uint64_t start = parse_state(d, start_text);
  std::optional<std::uint64_t> target;
  if (!o.target.empty()) target = parse_state(d, o.target);
  const Side side = o.side == "right" || o.side == "R" ? Side::Right : Side::Left;

  const Program program = compile_builtin(builtin, d, start, target, side);
  const RunManifest manifest =
      make_manifest("sequence", args, to_string(Descriptor{d}), "asynchronous", o);

  out << builtin << " on " << to_string(Descriptor{d}) << " from "
      << state_string(start, n);
  if (target) out << " to " << state_string(*target, n);
  out << '\n';
  for (const Instruction& instr : program.instructions) out << "  " << instr.to_string() << '\n';
  out << "final: " << state_string(program.final_state, n) << '\n';
  const auto bound = step_bound(builtin, d);
  out << "steps: " << program.steps;
  if (bound) out << " (bound " << *bound << ')';
  out << '\n';
  for (const std::string& note : program.notes) out << "note: " << note << '\n';

  if (!o.trace.empty() || !o.json.empty()) {
    Json head;
    head["manifest"] = manifest.to_json();
    const std::string text = head.dump() + '\n' + trace_jsonl(program);
    write_file(o.trace.empty() ? o.json : o.trace, text);
  }
  if (target && program.final_state != *target) {
    out << "target not reached\n";
    return exit_code::kFailure;
  }
  if (bound && static_cast<std::int64_t>(program.steps) > *bound) {
    out << "stated bound exceeded\n";
    return exit_code::kFailure;
  }
  return exit_code::kPass;
}

int cmd_replay(const std::string& input, const std::string& trace_path,
               std::ostream& out) {
  const DoubleCycleDescriptor d = sequence_descriptor(input);
  const ReplayResult r = replay_trace(d, read_file(trace_path));
  if (!r.ok) {
    out << "replay failed after " << r.records << " records: " << r.error << '\n';
    return exit_code::kFailure;
  }
  out << "replayed " << r.records << " records, final "
      << state_string(r.final_state, d.size()) << '\n';
  return exit_code::kPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Boolean automata networks: attractors, quantities, update sequences", "ban"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "uniform size cap for every mode")->check(CLI::Range(1, 30));
    sub->add_option("--json", o.json, "write a JSON artifact");
    sub->add_option("--csv", o.csv, "write a CSV artifact");
  };

  std::string input, builtin, trace_file;
  CLI::App* analyze = app.add_subcommand("analyze", "attractors of a descriptor or network spec");
  analyze->add_option("input", input, "descriptor such as C-:3 or a JSON spec path")->required();
  std::vector<std::string> mode_tokens;
  analyze->add_option("--mode", mode_tokens, "parallel, async, elementary or blockseq 0,1|2")
      ->expected(1, 2);
  analyze->add_option("--dot", o.dot, "write the transition graph as GraphViz");
  add_common(analyze);

  CLI::App* predict = app.add_subcommand("predict", "closed-form quantity table");
  predict->add_option("descriptor", input)->required();
  predict->add_flag("--check-bounds", o.check_bounds, "check the attractor-count bounds");
  predict->add_flag("--printed", o.printed, "compare the expanded printed sums");
  add_common(predict);

  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("args", o.positional,
                     "family [subfamily] [range]: cycles, double-cycles, sequences, "
                     "duality, robert, thomas")
      ->required();
  verify->add_option("--seed", o.seed);
  verify->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  verify->add_option("--max-n", o.max_n)->check(CLI::Range(1, 20));
  add_common(verify);

  CLI::App* sequence = app.add_subcommand("sequence", "run a builtin update sequence");
  sequence->add_option("descriptor", input)->required();
  sequence->add_option("builtin", builtin)->required();
  sequence->add_option("state", o.positional, "start configuration")->expected(0, 1);
  sequence->add_option("--start", o.start, "start configuration, 'alternating', 'zeros', 'ones'");
  sequence->add_option("--target", o.target);
  sequence->add_option("--side", o.side, "cycle for copy_c: left or right");
  sequence->add_option("--trace", o.trace, "write the JSON-lines trace");
  add_common(sequence);

  CLI::App* replay = app.add_subcommand("replay", "re-execute a trace and check every record");
  replay->add_option("descriptor", input)->required();
  replay->add_option("trace", trace_file)->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kPass : exit_code::kUsage;
  }

  if (!mode_tokens.empty()) {
    o.mode.clear();
    for (const std::string& t : mode_tokens) o.mode += (o.mode.empty() ? "" : " ") + t;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(input, o, args, out);
    if (predict->parsed()) return cmd_predict(input, o, args, out);
    if (verify->parsed()) return cmd_verify(o, args, out);
    if (sequence->parsed()) return cmd_sequence(input, builtin, o, args, out);
    if (replay->parsed()) return cmd_replay(input, trace_file, out);
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return exit_code::kCap;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const CLI::Error& e) {
    err << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const InapplicableBuiltin& e) {
    err << "inapplicable: " << e.what() << '\n';
    return e.presupposition() ? exit_code::kDiscrepancy : exit_code::kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

}  // namespace ban
