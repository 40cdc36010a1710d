// Command-line front end for the delegation simulator.
//
//   fdqc run    --program f.qc [--input 0|random] [--seed N] [--mode fdqc|hdqc]
//               [--snapshots] [--out transcript.json]
//   fdqc verify --program f.qc [--input ...] [--seed N] | --sweep toffoli|all
//   fdqc attack --program f.qc [--input ...] [--seed N] [--mode fdqc|hdqc]
//
// One pretty-printed JSON document goes to standard out; diagnostics go to
// standard error. Identical invocations produce byte-identical documents.
// Exit codes: 0 success, 1 bad usage or unreadable/unparsable program,
// 2 protocol failure, 3 verification mismatch.

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdqc/blindness.hpp"
#include "fdqc/gateset.hpp"
#include "fdqc/pauli_otp.hpp"
#include "fdqc/protocol.hpp"
#include "fdqc/random.hpp"
#include "fdqc/serialize.hpp"

namespace {

using fdqc::Statevector;
using ordered_json = nlohmann::ordered_json;

// Usage-class failure (unreadable file, bad value): exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "random" draws a seed-determined state (stream independent of the
// protocol's decoy stream); otherwise a basis index in [0, 2^n).
Statevector make_input(const std::string& spec, int n_qubits,
                       std::uint64_t seed) {
  if (spec == "random") {
    fdqc::RandomSource rng(~seed);
    return rng.haar_state(n_qubits);
  }
  std::uint64_t index = 0;
  try {
    std::size_t used = 0;
    index = std::stoull(spec, &used);
    if (used != spec.size()) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw UsageError("--input must be a basis index or \"random\", got \"" +
                     spec + "\"");
  }
  if (index >= (1ull << n_qubits))
    throw UsageError("--input index " + spec + " out of range for " +
                     std::to_string(n_qubits) + " qubits");
  return fdqc::basis_state(n_qubits, index);
}

ordered_json amplitudes_json(const Statevector& state) {
  ordered_json amps = ordered_json::array();
  for (const fdqc::cplx& a : state.amplitudes())
    amps.push_back(ordered_json::array({a.real(), a.imag()}));
  return amps;
}

void emit(const std::string& doc, const std::string& out_path) {
  std::cout << doc;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + out_path);
    out << doc;
  }
}

struct CommonArgs {
  std::string program_path;
  std::string input_spec = "0";
  std::uint64_t seed = 0;
  std::string mode = "fdqc";
  bool snapshots = false;
  std::string out_path;
};

fdqc::RunResult execute(const CommonArgs& args, const fdqc::CircuitProgram& prog,
                        const Statevector& input, bool corrupt_final_key) {
  fdqc::RunOptions options;
  options.seed = args.seed;
  options.snapshots = args.snapshots;
  options.corrupt_final_key = corrupt_final_key;
  return args.mode == "hdqc" ? fdqc::run_hdqc(prog, input, options)
                             : fdqc::run_fdqc(prog, input, options);
}

int cmd_run(const CommonArgs& args) {
  const fdqc::CircuitProgram prog =
      fdqc::parse_program(read_file(args.program_path));
  const Statevector input = make_input(args.input_spec, prog.n_qubits, args.seed);
  const fdqc::RunResult result = execute(args, prog, input, false);

  ordered_json doc;
  doc["command"] = "run";
  doc["program"] = args.program_path;
  doc["mode"] = args.mode;
  doc["seed"] = args.seed;
  doc["input"] = args.input_spec;
  doc["rounds"] = result.transcript.rounds.size();
  doc["correction_rounds"] = result.correction_rounds;
  doc["output_amplitudes"] = amplitudes_json(result.output);
  doc["terminal_keys_digest"] = result.transcript.terminal_keys_digest;
  std::cout << doc.dump(2) << "\n";
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + args.out_path);
    out << fdqc::to_json(result.transcript);
  }
  return 0;
}

// One homomorphic pipeline case: encrypt, apply the gate, apply its pad
// corrections, decrypt with the updated keys; compare against the gate on the
// plaintext. Returns true when they match up to global phase.
bool pipeline_case(fdqc::GateKind kind, const std::vector<fdqc::PauliKey>& keys,
                   const Statevector& plain) {
  const int arity = fdqc::gate_arity(kind);
  std::vector<int> wires(arity);
  for (int i = 0; i < arity; ++i) wires[i] = i;
  const fdqc::GateOp gate(kind, wires);

  const Statevector want = fdqc::apply(plain, gate);
  Statevector state = fdqc::encrypt(plain, keys, wires);
  state = fdqc::apply(state, gate);
  const fdqc::KeyUpdate ku = fdqc::key_update(kind, keys);
  for (const fdqc::GateOp& c : ku.corrections) state = fdqc::apply(state, c);
  state = fdqc::decrypt(state, ku.new_keys, wires);
  return fdqc::equal_up_to_global_phase(state, want);
}

int sweep_kind(fdqc::GateKind kind, int& cases, int& failures) {
  const int arity = fdqc::gate_arity(kind);
  const int key_codes = 1 << (2 * arity);
  const std::uint64_t basis = 1ull << arity;
  for (int code = 0; code < key_codes; ++code) {
    std::vector<fdqc::PauliKey> keys(arity);
    for (int q = 0; q < arity; ++q) {
      keys[q].a = (code >> (2 * q + 1)) & 1;
      keys[q].b = (code >> (2 * q)) & 1;
    }
    for (std::uint64_t idx = 0; idx < basis; ++idx) {
      ++cases;
      if (!pipeline_case(kind, keys, fdqc::basis_state(arity, idx)))
        ++failures;
    }
  }
  return failures;
}

int cmd_verify_sweep(const std::string& sweep, const std::string& out_path) {
  int cases = 0;
  int failures = 0;
  if (sweep == "toffoli") {
    sweep_kind(fdqc::GateKind::Toffoli, cases, failures);
  } else if (sweep == "all") {
    for (fdqc::GateKind kind :
         {fdqc::GateKind::H, fdqc::GateKind::P, fdqc::GateKind::CZ,
          fdqc::GateKind::CNOT, fdqc::GateKind::Toffoli})
      sweep_kind(kind, cases, failures);
  } else {
    throw UsageError("--sweep must be \"toffoli\" or \"all\", got \"" + sweep +
                     "\"");
  }
  ordered_json doc;
  doc["command"] = "verify";
  doc["sweep"] = sweep;
  doc["cases"] = cases;
  doc["failures"] = failures;
  doc["match"] = failures == 0;
  emit(doc.dump(2) + "\n", out_path);
  return failures == 0 ? 0 : 3;
}

int cmd_verify(const CommonArgs& args, bool corrupt_final_key) {
  const fdqc::CircuitProgram prog =
      fdqc::parse_program(read_file(args.program_path));
  const Statevector input = make_input(args.input_spec, prog.n_qubits, args.seed);
  CommonArgs fdqc_args = args;
  fdqc_args.mode = "fdqc";
  const fdqc::RunResult result = execute(fdqc_args, prog, input, corrupt_final_key);
  const Statevector direct = fdqc::direct_eval(prog, input);

  const double fidelity = std::abs(fdqc::inner_product(result.output, direct));
  const bool match = fdqc::equal_up_to_global_phase(result.output, direct);

  ordered_json doc;
  doc["command"] = "verify";
  doc["program"] = args.program_path;
  doc["seed"] = args.seed;
  doc["input"] = args.input_spec;
  doc["rounds"] = result.transcript.rounds.size();
  doc["correction_rounds"] = result.correction_rounds;
  doc["fidelity"] = fidelity;
  doc["match"] = match;
  if (!match) {
    doc["protocol_amplitudes"] = amplitudes_json(result.output);
    doc["direct_amplitudes"] = amplitudes_json(direct);
  }
  emit(doc.dump(2) + "\n", args.out_path);
  if (!match) {
    std::cerr << "verify: protocol output diverged from direct evaluation "
                 "(fidelity "
              << fidelity << ")\n";
    return 3;
  }
  return 0;
}

int cmd_attack(const CommonArgs& args) {
  const fdqc::CircuitProgram prog =
      fdqc::parse_program(read_file(args.program_path));
  const Statevector input = make_input(args.input_spec, prog.n_qubits, args.seed);
  const fdqc::RunResult result = execute(args, prog, input, false);
  const fdqc::AttackReport report = fdqc::hdqc_attack(result.transcript);
  emit(fdqc::to_json(report), args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delegated private quantum computation simulator"};
  app.require_subcommand(1);

  CommonArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Execute a delegated program");
  run->add_option("--program", run_args.program_path, "Program file")
      ->required();
  run->add_option("--input", run_args.input_spec,
                  "Basis index or \"random\" (seed-determined)");
  run->add_option("--seed", run_args.seed, "Random seed");
  run->add_option("--mode", run_args.mode, "fdqc (full-blind) or hdqc")
      ->check(CLI::IsMember({"fdqc", "hdqc"}));
  run->add_flag("--snapshots", run_args.snapshots,
                "Record payload snapshots in the transcript");
  run->add_option("--out", run_args.out_path, "Write the transcript here");

  CommonArgs verify_args;
  std::string sweep;
  bool corrupt_final_key = false;
  CLI::App* verify =
      app.add_subcommand("verify", "Check a run against direct evaluation");
  verify->add_option("--program", verify_args.program_path, "Program file");
  verify->add_option("--input", verify_args.input_spec,
                     "Basis index or \"random\"");
  verify->add_option("--seed", verify_args.seed, "Random seed");
  verify->add_option("--sweep", sweep,
                     "Exhaustive pipeline sweep: \"toffoli\" or \"all\"");
  verify->add_option("--out", verify_args.out_path, "Write the report here");
  verify
      ->add_flag("--corrupt-final-key", corrupt_final_key,
                 "Flip a terminal key bit (negative-control fixture)")
      ->group("");  // hidden

  CommonArgs attack_args;
  CLI::App* attack =
      app.add_subcommand("attack", "Run a curious-server key-recovery attempt");
  attack->add_option("--program", attack_args.program_path, "Program file")
      ->required();
  attack->add_option("--input", attack_args.input_spec,
                     "Basis index or \"random\"");
  attack->add_option("--seed", attack_args.seed, "Random seed");
  attack->add_option("--mode", attack_args.mode, "fdqc or hdqc")
      ->check(CLI::IsMember({"fdqc", "hdqc"}));
  attack->add_option("--out", attack_args.out_path, "Write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (verify->parsed()) {
      if (!sweep.empty()) return cmd_verify_sweep(sweep, verify_args.out_path);
      if (verify_args.program_path.empty())
        throw UsageError("verify needs --program or --sweep");
      return cmd_verify(verify_args, corrupt_final_key);
    }
    return cmd_attack(attack_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fdqc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "protocol error: " << e.what() << "\n";
    return 2;
  }
}
