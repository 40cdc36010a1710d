#pragma once

// Circuit programs over the delegatable gate set {H, P, CZ, CNOT, T}.
//
// Text format, one op per line, 0-based decimal wire indices:
//   qubits <N>
//   H <q> | P <q> | CZ <q1> <q2> | CNOT <control> <target>
//   T <control1> <control2> <target>
// '#' starts a comment; blank lines are ignored.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdqc/qsim.hpp"

namespace fdqc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct CircuitProgram {
  int n_qubits;
  std::vector<GateOp> ops;

  // Validates that every op is delegatable and targets wires < n_qubits.
  CircuitProgram(int n, std::vector<GateOp> operations);
};

// allow_cz=false restricts to the four-gate set {H, P, CNOT, T} and rejects
// CZ lines at parse time.
CircuitProgram parse_program(std::string_view text, bool allow_cz = true);

std::string render_program(const CircuitProgram& program);

// Applies the ops in order to `input` (which must have program.n_qubits wires).
Statevector direct_eval(const CircuitProgram& program, const Statevector& input);

// Deterministic random program: each op drawn uniformly over all valid
// (kind, targets) combinations. `pool` defaults to every kind that fits
// n_qubits; an explicit pool that needs more wires than n_qubits throws.
CircuitProgram random_program(
    int n_qubits, int length, std::uint64_t seed,
    const std::optional<std::vector<GateKind>>& pool = std::nullopt);

}  // namespace fdqc
