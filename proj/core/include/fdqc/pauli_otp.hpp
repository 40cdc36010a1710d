#pragma once

// Pauli one-time-pad encryption and the key algebra that lets a server apply
// Clifford+Toffoli gates directly on encrypted qubits.
//
// A qubit with key (a, b) travels as X^a Z^b |phi>. After the server applies a
// gate G, the client only has to update keys — and, for Toffoli, delegate a
// short list of CZ/CNOT corrections — to hold G|phi> again under fresh keys.
//
// The per-gate key-update tables are not transcribed from anywhere: they are
// derived once at first use by an exhaustive unitary-identity search (for each
// key assignment, the unique (new keys, corrections) pair satisfying
// corrections . G . encrypt(k) == encrypt(k') . G up to global phase). The
// derivation throws if a solution is missing or ambiguous, so a wrong table
// cannot be produced silently.

#include <array>
#include <vector>

#include "fdqc/qsim.hpp"

namespace fdqc {

struct PauliKey {
  int a = 0;  // X exponent
  int b = 0;  // Z exponent
  bool operator==(const PauliKey& other) const = default;
};

// Result of pushing one gate through the pad. `corrections` use positional
// targets 0..2 (gate operand positions, not concrete wires) and are ordered
// CZ(0,1), CNOT(1,2), CNOT(0,2); they commute, so the order is a convention.
struct KeyUpdate {
  std::vector<PauliKey> new_keys;
  std::vector<GateOp> corrections;
};

// Applies Z^b then X^a on each listed wire (so wire i carries X^a Z^b |phi>).
Statevector encrypt(const Statevector& state, const std::vector<PauliKey>& keys,
                    const std::vector<int>& wires);

// Inverse of encrypt up to global phase: applies X^a then Z^b per wire.
Statevector decrypt(const Statevector& state, const std::vector<PauliKey>& keys,
                    const std::vector<int>& wires);

// Key evolution for a delegated gate. `kind` must be one of the delegatable
// kinds {H, P, CZ, CNOT, Toffoli}; keys.size() must equal the gate arity.
// Corrections are empty for everything except Toffoli.
KeyUpdate key_update(GateKind kind, const std::vector<PauliKey>& keys);

// Given state == Toffoli(encrypt(phi, keys)) on `wires`, returns
// Toffoli(phi) up to global phase. Applies the conditional CZ/CNOT correction
// network directly between the involved wires, then strips the updated pad.
Statevector toffoli_decrypt_optimized(const Statevector& state,
                                      const std::array<PauliKey, 3>& keys,
                                      const std::array<int, 3>& wires);

// Behaviorally identical variant that routes the control1->target correction
// through a SWAP-conjugated CNOT (two extra SWAPs), the layout the direct
// network above eliminates. Kept to prove the two networks agree.
Statevector toffoli_decrypt_unoptimized(const Statevector& state,
                                        const std::array<PauliKey, 3>& keys,
                                        const std::array<int, 3>& wires);

}  // namespace fdqc
