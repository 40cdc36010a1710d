#pragma once

// Client/server delegation rounds over a simulated quantum channel.
//
// Every round ships a fixed nine-wire carrier:
//   wire 0    -> H slot        wires 2,3 -> CZ slot
//   wire 1    -> P slot        wires 4,5 -> CNOT slot
//   wires 6-8 -> Toffoli slot
// The client embeds the delegated gate's (encrypted) qubits into the matching
// slot and fills every other wire with a fresh Haar-random decoy qubit. In
// full-blind mode the server applies the same five-gate tuple
// H(0) P(1) CZ(2,3) CNOT(4,5) T(6,7,8) to every round, so nothing in the
// traffic says which slot carries the real gate. In half-blind mode the client
// announces the gate and the server applies only that.
//
// Logical qubits the current gate does not touch stay with the client, but
// they may be entangled with the traveling ones, so a round's payload is
// simulated jointly: a payload statevector covers the 9 channel wires plus
// `reference_wires` trailing wires holding the client's retained qubits. The
// server only ever addresses wires 0..8.

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "fdqc/gateset.hpp"
#include "fdqc/pauli_otp.hpp"
#include "fdqc/qsim.hpp"
#include "fdqc/random.hpp"

namespace fdqc {

inline constexpr int kChannelWires = 9;

enum class Mode { FDQC, HDQC };

enum class Slot { H, P, CZ, CNOT, Toffoli };

Slot slot_for(GateKind kind);
const std::vector<int>& slot_wires(Slot slot);

// The constant tuple a full-blind server applies, in application order.
const std::vector<GateOp>& server_tuple();

struct RoundLayout {
  Slot message_slot;
  std::vector<int> message_wires;    // channel wires, in gate-operand order
  std::vector<int> message_qubits;   // logical qubits, same order
  std::vector<int> retained_qubits;  // logical qubits staying home, ascending
};

struct RoundMessage {
  enum class Direction { ClientToServer, ServerToClient };
  Direction direction;
  int round_index = 0;
  int reference_wires = 0;  // retained qubits co-simulated after wire 8
  Statevector payload;      // kChannelWires + reference_wires qubits
};

// What the server hands back: the transformed payload plus the ops it applied
// (the client transcribes these; the engines share no other state).
struct ServerReply {
  RoundMessage message;
  std::vector<GateOp> applied;
};

struct TranscriptRound {
  int round_index = 0;
  std::vector<std::string> server_ops;
  // Present only in half-blind mode: the delegated gate on logical qubits,
  // and whether the client flagged it as a Toffoli correction request.
  std::optional<std::string> announced_gate;
  bool announced_correction = false;
  // Opt-in simulation introspection (never protocol data).
  std::optional<Statevector> payload_before;
  std::optional<Statevector> payload_after;
  std::vector<int> message_wires;
  int reference_wires = 0;
};

// Client-side record of the key bits a Toffoli consumed; the ground truth an
// attack is scored against. Never visible to the server.
struct ToffoliKeyRecord {
  int round_index = 0;
  int a = 0;  // X bit of control1's key
  int c = 0;  // X bit of control2's key
  int f = 0;  // Z bit of the target's key
};

struct Transcript {
  Mode mode = Mode::FDQC;
  std::uint64_t seed = 0;
  std::vector<TranscriptRound> rounds;
  std::string terminal_keys_digest;
  std::vector<ToffoliKeyRecord> toffoli_ground_truth;
};

struct RunOptions {
  std::uint64_t seed = 0;
  bool snapshots = false;
  // When set, used instead of sampling keys; must have one key per qubit.
  // Forcing keys does not shift the decoy-qubit random stream.
  std::optional<std::vector<PauliKey>> initial_keys;
  // Re-pad every qubit with fresh random Pauli bits after each round.
  bool rerandomize_keys = false;
  // Test fixture: flip a terminal key bit so verification must fail.
  bool corrupt_final_key = false;
};

struct RunResult {
  Statevector output;
  Transcript transcript;
  int correction_rounds = 0;
};

// Everything a driver needs to route one round.
struct RoundPlan {
  RoundMessage message;
  RoundLayout layout;
  GateOp channel_op;  // the delegated gate, addressed by channel wires
  GateOp logical_op;  // the delegated gate, addressed by logical qubits
  bool is_correction = false;
};

// The client state machine. Drive it with prepare_round / absorb_round until
// done(), then finish() yields the decrypted output and the transcript.
class Client {
 public:
  Client(CircuitProgram program, const Statevector& input, Mode mode,
         const RunOptions& options);

  bool done() const;
  RoundPlan prepare_round();
  void absorb_round(const ServerReply& reply);
  std::pair<Statevector, Transcript> finish();

  const std::vector<PauliKey>& keys() const { return keys_; }
  const std::deque<GateOp>& pending_corrections() const { return pending_; }
  const Statevector& logical_state() const { return logical_; }
  int rounds_executed() const { return next_round_; }
  int correction_rounds() const { return correction_rounds_; }

 private:
  struct Inflight {
    GateOp logical_op;
    bool is_correction;
    RoundLayout layout;
    std::vector<Statevector> decoys;  // one per non-message channel wire, ascending
    Statevector sent_payload;
  };

  CircuitProgram program_;
  Mode mode_;
  RunOptions options_;
  std::size_t pc_ = 0;
  std::vector<PauliKey> keys_;
  std::deque<GateOp> pending_;
  Statevector logical_;
  RandomSource rng_;
  int next_round_ = 0;
  int correction_rounds_ = 0;
  Transcript transcript_;
  std::optional<Inflight> inflight_;
  bool finished_ = false;
};

// Full-blind server: applies the constant five-gate tuple to the channel wires.
ServerReply server_execute_round(const RoundMessage& message);

// Half-blind server: applies exactly the announced gate (channel-wire targets).
ServerReply server_execute_round_announced(const RoundMessage& message,
                                           const GateOp& channel_op);

RunResult run_fdqc(const CircuitProgram& program, const Statevector& input,
                   const RunOptions& options);
RunResult run_hdqc(const CircuitProgram& program, const Statevector& input,
                   const RunOptions& options);
RunResult run_fdqc(const CircuitProgram& program, const Statevector& input,
                   std::uint64_t seed);
RunResult run_hdqc(const CircuitProgram& program, const Statevector& input,
                   std::uint64_t seed);

}  // namespace fdqc
