#include "fdqc/pauli_otp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdqc {

namespace {

void check_key_wires(const Statevector& state, const std::vector<PauliKey>& keys,
                     const std::vector<int>& wires) {
  if (keys.size() != wires.size())
    throw std::invalid_argument("key count does not match wire count");
  for (int w : wires)
    if (w < 0 || w >= state.n_qubits())
      throw std::out_of_range("pad wire out of range");
  for (std::size_t i = 0; i < wires.size(); ++i)
    for (std::size_t j = i + 1; j < wires.size(); ++j)
      if (wires[i] == wires[j])
        throw std::invalid_argument("pad wires must be distinct");
  for (const PauliKey& k : keys)
    if ((k.a != 0 && k.a != 1) || (k.b != 0 && k.b != 1))
      throw std::invalid_argument("key bits must be 0 or 1");
}

bool delegatable(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::P:
    case GateKind::CZ:
    case GateKind::CNOT:
    case GateKind::Toffoli:
      return true;
    case GateKind::X:
    case GateKind::Z:
      return false;
  }
  return false;
}

// Ops that realize the pad operator X^a Z^b per position (Z applied first).
void append_pad_ops(std::vector<GateOp>& ops, const std::vector<PauliKey>& keys) {
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].b) ops.emplace_back(GateKind::Z, std::vector<int>{int(i)});
    if (keys[i].a) ops.emplace_back(GateKind::X, std::vector<int>{int(i)});
  }
}

// Columns of the product of `ops` (applied first to last) as one flat vector.
std::vector<cplx> op_columns(int n_qubits, const std::vector<GateOp>& ops) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<cplx> cols(dim * dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    Statevector col = basis_state(n_qubits, j);
    for (const GateOp& op : ops) col = apply(col, op);
    for (std::size_t i = 0; i < dim; ++i) cols[j * dim + i] = col[i];
  }
  return cols;
}

// |tr(A^dagger B)| == dim iff A == e^{i theta} B for unitaries.
bool equal_up_to_phase(const std::vector<cplx>& a, const std::vector<cplx>& b,
                       std::size_t dim) {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) t += std::conj(a[i]) * b[i];
  return std::abs(t) >= double(dim) - 1e-9;
}

std::vector<PauliKey> keys_from_code(int arity, unsigned code) {
  std::vector<PauliKey> keys(arity);
  for (int i = 0; i < arity; ++i) {
    keys[i].a = (code >> (2 * i + 1)) & 1u;
    keys[i].b = (code >> (2 * i)) & 1u;
  }
  return keys;
}

unsigned code_from_keys(const std::vector<PauliKey>& keys) {
  unsigned code = 0;
  for (std::size_t i = 0; i < keys.size(); ++i)
    code |= unsigned(keys[i].a) << (2 * i + 1) | unsigned(keys[i].b) << (2 * i);
  return code;
}

// Candidate correction set for one subset mask: bit 0 -> CZ(0,1),
// bit 1 -> CNOT(1,2), bit 2 -> CNOT(0,2). Only Toffoli gets nonempty sets.
std::vector<GateOp> correction_set(unsigned mask) {
  std::vector<GateOp> out;
  if (mask & 1u) out.emplace_back(GateKind::CZ, std::vector<int>{0, 1});
  if (mask & 2u) out.emplace_back(GateKind::CNOT, std::vector<int>{1, 2});
  if (mask & 4u) out.emplace_back(GateKind::CNOT, std::vector<int>{0, 2});
  return out;
}

// Solves corrections . G . pad(keys) == pad(new_keys) . G for the unique
// (new_keys, corrections); exhaustive over key candidates (and correction
// subsets for Toffoli), with a full scan so ambiguity is detected.
std::vector<KeyUpdate> derive_table(GateKind kind) {
  const int arity = gate_arity(kind);
  const std::size_t dim = std::size_t{1} << arity;
  std::vector<int> positions(arity);
  for (int i = 0; i < arity; ++i) positions[i] = i;
  const GateOp gate(kind, positions);
  const unsigned n_codes = 1u << (2 * arity);
  const unsigned n_masks = kind == GateKind::Toffoli ? 8u : 1u;

  // Right-hand sides pad(candidate) . G are key-independent; build them once.
  std::vector<std::vector<cplx>> rhs(n_codes);
  for (unsigned cand = 0; cand < n_codes; ++cand) {
    std::vector<GateOp> rhs_ops{gate};
    append_pad_ops(rhs_ops, keys_from_code(arity, cand));
    rhs[cand] = op_columns(arity, rhs_ops);
  }

  std::vector<KeyUpdate> table(n_codes);
  for (unsigned code = 0; code < n_codes; ++code) {
    const std::vector<PauliKey> keys = keys_from_code(arity, code);
    bool found = false;
    for (unsigned mask = 0; mask < n_masks; ++mask) {
      std::vector<GateOp> corrections = correction_set(mask);
      std::vector<GateOp> lhs_ops;
      append_pad_ops(lhs_ops, keys);
      lhs_ops.push_back(gate);
      for (const GateOp& c : corrections) lhs_ops.push_back(c);
      const std::vector<cplx> lhs = op_columns(arity, lhs_ops);

      for (unsigned cand = 0; cand < n_codes; ++cand) {
        if (!equal_up_to_phase(lhs, rhs[cand], dim)) continue;
        if (found)
          throw std::logic_error("ambiguous key update for " +
                                 std::string(gate_name(kind)));
        table[code] = KeyUpdate{keys_from_code(arity, cand), std::move(corrections)};
        found = true;
      }
    }
    if (!found)
      throw std::logic_error("no key update found for " +
                             std::string(gate_name(kind)));
  }
  return table;
}

const std::vector<KeyUpdate>& table_for(GateKind kind) {
  static const std::vector<KeyUpdate> h = derive_table(GateKind::H);
  static const std::vector<KeyUpdate> p = derive_table(GateKind::P);
  static const std::vector<KeyUpdate> cz = derive_table(GateKind::CZ);
  static const std::vector<KeyUpdate> cnot = derive_table(GateKind::CNOT);
  static const std::vector<KeyUpdate> toffoli = derive_table(GateKind::Toffoli);
  switch (kind) {
    case GateKind::H: return h;
    case GateKind::P: return p;
    case GateKind::CZ: return cz;
    case GateKind::CNOT: return cnot;
    case GateKind::Toffoli: return toffoli;
    default: throw std::invalid_argument("gate kind is not delegatable");
  }
}

Statevector apply_swap(const Statevector& state, int w1, int w2) {
  Statevector s = apply(state, GateOp(GateKind::CNOT, {w1, w2}));
  s = apply(s, GateOp(GateKind::CNOT, {w2, w1}));
  return apply(s, GateOp(GateKind::CNOT, {w1, w2}));
}

}  // namespace

Statevector encrypt(const Statevector& state, const std::vector<PauliKey>& keys,
                    const std::vector<int>& wires) {
  check_key_wires(state, keys, wires);
  Statevector s = state;
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (keys[i].b) s = apply(s, GateOp(GateKind::Z, {wires[i]}));
    if (keys[i].a) s = apply(s, GateOp(GateKind::X, {wires[i]}));
  }
  return s;
}

Statevector decrypt(const Statevector& state, const std::vector<PauliKey>& keys,
                    const std::vector<int>& wires) {
  check_key_wires(state, keys, wires);
  Statevector s = state;
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (keys[i].a) s = apply(s, GateOp(GateKind::X, {wires[i]}));
    if (keys[i].b) s = apply(s, GateOp(GateKind::Z, {wires[i]}));
  }
  return s;
}

KeyUpdate key_update(GateKind kind, const std::vector<PauliKey>& keys) {
  if (!delegatable(kind))
    throw std::invalid_argument(std::string(gate_name(kind)) +
                                " is not a delegatable gate");
  if (static_cast<int>(keys.size()) != gate_arity(kind))
    throw std::invalid_argument("key count does not match gate arity");
  for (const PauliKey& k : keys)
    if ((k.a != 0 && k.a != 1) || (k.b != 0 && k.b != 1))
      throw std::invalid_argument("key bits must be 0 or 1");
  return table_for(kind)[code_from_keys(keys)];
}

Statevector toffoli_decrypt_optimized(const Statevector& state,
                                      const std::array<PauliKey, 3>& keys,
                                      const std::array<int, 3>& wires) {
  const std::vector<PauliKey> kv(keys.begin(), keys.end());
  const std::vector<int> wv(wires.begin(), wires.end());
  const KeyUpdate ku = key_update(GateKind::Toffoli, kv);
  Statevector s = state;
  for (const GateOp& c : ku.corrections) {
    std::vector<int> mapped;
    for (int pos : c.targets) mapped.push_back(wires[pos]);
    s = apply(s, GateOp(c.kind, std::move(mapped)));
  }
  return decrypt(s, ku.new_keys, wv);
}

Statevector toffoli_decrypt_unoptimized(const Statevector& state,
                                        const std::array<PauliKey, 3>& keys,
                                        const std::array<int, 3>& wires) {
  const std::vector<PauliKey> kv(keys.begin(), keys.end());
  const std::vector<int> wv(wires.begin(), wires.end());
  const KeyUpdate ku = key_update(GateKind::Toffoli, kv);
  const int f = keys[2].b;
  const int a = keys[0].a;
  const int c = keys[1].a;

  Statevector s = state;
  if (f) s = apply(s, GateOp(GateKind::CZ, {wires[0], wires[1]}));
  if (c) {
    // control1 -> target routed as SWAP(c1, c2), CNOT(c2 -> t), SWAP back.
    s = apply_swap(s, wires[0], wires[1]);
    s = apply(s, GateOp(GateKind::CNOT, {wires[1], wires[2]}));
    s = apply_swap(s, wires[0], wires[1]);
  }
  if (a) s = apply(s, GateOp(GateKind::CNOT, {wires[1], wires[2]}));
  return decrypt(s, ku.new_keys, wv);
}

}  // namespace fdqc
