#include "fdqc/gateset.hpp"

#include <algorithm>
#include <sstream>

#include "fdqc/random.hpp"

namespace fdqc {

namespace {

bool delegatable(GateKind kind) {
  return kind == GateKind::H || kind == GateKind::P || kind == GateKind::CZ ||
         kind == GateKind::CNOT || kind == GateKind::Toffoli;
}

// Splits on whitespace after stripping any '#' comment.
std::vector<std::string> tokenize(std::string_view line) {
  const std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  std::istringstream in{std::string(line)};
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_index(const std::string& token, int line) {
  if (token.empty() || !std::all_of(token.begin(), token.end(),
                                    [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line, "expected a decimal wire index, got '" + token + "'");
  if (token.size() > 6) throw ParseError(line, "wire index too large");
  return std::stoi(token);
}

}  // namespace

CircuitProgram::CircuitProgram(int n, std::vector<GateOp> operations)
    : n_qubits(n), ops(std::move(operations)) {
  if (n_qubits < 1)
    throw std::invalid_argument("program needs at least one qubit");
  for (const GateOp& op : ops) {
    if (!delegatable(op.kind))
      throw std::invalid_argument(std::string(gate_name(op.kind)) +
                                  " is not in the delegatable gate set");
    for (int t : op.targets)
      if (t >= n_qubits)
        throw std::invalid_argument("op targets wire " + std::to_string(t) +
                                    " but program has " +
                                    std::to_string(n_qubits) + " qubits");
  }
}

CircuitProgram parse_program(std::string_view text, bool allow_cz) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int n_qubits = -1;
  std::vector<GateOp> ops;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::vector<std::string> tokens = tokenize(raw);
    if (tokens.empty()) continue;

    if (n_qubits < 0) {
      if (tokens[0] != "qubits")
        throw ParseError(line_no, "expected 'qubits <N>' header");
      if (tokens.size() != 2)
        throw ParseError(line_no, "'qubits' takes exactly one count");
      n_qubits = parse_index(tokens[1], line_no);
      if (n_qubits < 1) throw ParseError(line_no, "qubit count must be >= 1");
      continue;
    }

    if (tokens[0] == "qubits")
      throw ParseError(line_no, "duplicate 'qubits' header");
    const std::optional<GateKind> kind = gate_from_name(tokens[0]);
    if (!kind)
      throw ParseError(line_no, "unknown gate '" + tokens[0] + "'");
    if (!delegatable(*kind))
      throw ParseError(line_no,
                       "gate '" + tokens[0] + "' cannot be delegated");
    if (*kind == GateKind::CZ && !allow_cz)
      throw ParseError(line_no, "CZ is not in the restricted gate set");
    const int arity = gate_arity(*kind);
    if (static_cast<int>(tokens.size()) != 1 + arity)
      throw ParseError(line_no, tokens[0] + " takes " + std::to_string(arity) +
                                    " wire index(es)");
    std::vector<int> targets;
    for (int i = 0; i < arity; ++i)
      targets.push_back(parse_index(tokens[1 + i], line_no));
    for (int t : targets)
      if (t >= n_qubits)
        throw ParseError(line_no, "wire " + std::to_string(t) +
                                      " out of range for " +
                                      std::to_string(n_qubits) + " qubits");
    try {
      ops.emplace_back(*kind, std::move(targets));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }

  if (n_qubits < 0)
    throw ParseError(std::max(line_no, 1), "missing 'qubits <N>' header");
  return CircuitProgram(n_qubits, std::move(ops));
}

std::string render_program(const CircuitProgram& program) {
  std::string out = "qubits " + std::to_string(program.n_qubits) + "\n";
  for (const GateOp& op : program.ops) out += op.str() + "\n";
  return out;
}

Statevector direct_eval(const CircuitProgram& program, const Statevector& input) {
  if (input.n_qubits() != program.n_qubits)
    throw std::invalid_argument("input width does not match program");
  Statevector s = input;
  for (const GateOp& op : program.ops) s = apply(s, op);
  return s;
}

CircuitProgram random_program(int n_qubits, int length, std::uint64_t seed,
                              const std::optional<std::vector<GateKind>>& pool) {
  if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
  if (length < 0) throw std::invalid_argument("negative program length");

  std::vector<GateKind> kinds;
  if (pool) {
    for (GateKind k : *pool) {
      if (!delegatable(k))
        throw std::invalid_argument(std::string(gate_name(k)) +
                                    " is not in the delegatable gate set");
      if (gate_arity(k) > n_qubits)
        throw std::invalid_argument("n_qubits too small for requested pool");
      kinds.push_back(k);
    }
    if (kinds.empty()) throw std::invalid_argument("empty gate pool");
  } else {
    for (GateKind k : {GateKind::H, GateKind::P, GateKind::CZ, GateKind::CNOT,
                       GateKind::Toffoli})
      if (gate_arity(k) <= n_qubits) kinds.push_back(k);
  }

  // Enumerate every (kind, ordered distinct targets) combination once so a
  // single uniform draw picks an op.
  std::vector<GateOp> combos;
  for (GateKind k : kinds) {
    const int arity = gate_arity(k);
    if (arity == 1) {
      for (int q = 0; q < n_qubits; ++q) combos.emplace_back(k, std::vector{q});
    } else if (arity == 2) {
      for (int q0 = 0; q0 < n_qubits; ++q0)
        for (int q1 = 0; q1 < n_qubits; ++q1)
          if (q0 != q1) combos.emplace_back(k, std::vector{q0, q1});
    } else {
      for (int q0 = 0; q0 < n_qubits; ++q0)
        for (int q1 = 0; q1 < n_qubits; ++q1)
          for (int q2 = 0; q2 < n_qubits; ++q2)
            if (q0 != q1 && q0 != q2 && q1 != q2)
              combos.emplace_back(k, std::vector{q0, q1, q2});
    }
  }

  RandomSource rng(seed);
  std::vector<GateOp> ops;
  ops.reserve(length);
  for (int i = 0; i < length; ++i)
    ops.push_back(combos[rng.below(combos.size())]);
  return CircuitProgram(n_qubits, std::move(ops));
}

}  // namespace fdqc
