#include "fdqc/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdqc {

namespace {

// FNV-1a over the terminal key bits, rendered as 16 hex chars.
std::string keys_digest(const std::vector<PauliKey>& keys) {
  std::uint64_t h = 14695981039346656037ull;
  auto eat = [&h](int bit) {
    h ^= static_cast<std::uint64_t>(bit);
    h *= 1099511628211ull;
  };
  for (const PauliKey& k : keys) {
    eat(k.a);
    eat(k.b);
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::vector<int> all_wires(int n) {
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  return w;
}

}  // namespace

Slot slot_for(GateKind kind) {
  switch (kind) {
    case GateKind::H: return Slot::H;
    case GateKind::P: return Slot::P;
    case GateKind::CZ: return Slot::CZ;
    case GateKind::CNOT: return Slot::CNOT;
    case GateKind::Toffoli: return Slot::Toffoli;
    default:
      throw std::invalid_argument("gate kind has no channel slot");
  }
}

const std::vector<int>& slot_wires(Slot slot) {
  static const std::vector<int> h{0};
  static const std::vector<int> p{1};
  static const std::vector<int> cz{2, 3};
  static const std::vector<int> cnot{4, 5};
  static const std::vector<int> toffoli{6, 7, 8};
  switch (slot) {
    case Slot::H: return h;
    case Slot::P: return p;
    case Slot::CZ: return cz;
    case Slot::CNOT: return cnot;
    case Slot::Toffoli: return toffoli;
  }
  throw std::invalid_argument("unknown slot");
}

const std::vector<GateOp>& server_tuple() {
  static const std::vector<GateOp> tuple{
      GateOp(GateKind::H, {0}),       GateOp(GateKind::P, {1}),
      GateOp(GateKind::CZ, {2, 3}),   GateOp(GateKind::CNOT, {4, 5}),
      GateOp(GateKind::Toffoli, {6, 7, 8})};
  return tuple;
}

Client::Client(CircuitProgram program, const Statevector& input, Mode mode,
               const RunOptions& options)
    : program_(std::move(program)),
      mode_(mode),
      options_(options),
      logical_(input),
      rng_(options.seed) {
  if (input.n_qubits() != program_.n_qubits)
    throw std::invalid_argument("input width does not match program");

  if (options_.initial_keys) {
    if (static_cast<int>(options_.initial_keys->size()) != program_.n_qubits)
      throw std::invalid_argument("need one initial key per qubit");
    keys_ = *options_.initial_keys;
  } else {
    keys_.resize(program_.n_qubits);
    for (PauliKey& k : keys_) {
      k.a = rng_.bit();
      k.b = rng_.bit();
    }
  }

  logical_ = encrypt(logical_, keys_, all_wires(program_.n_qubits));
  transcript_.mode = mode_;
  transcript_.seed = options_.seed;
}

bool Client::done() const {
  return pending_.empty() && pc_ >= program_.ops.size();
}

RoundPlan Client::prepare_round() {
  if (finished_) throw std::logic_error("session already finished");
  if (inflight_) throw std::logic_error("previous round not yet absorbed");
  if (done())
    throw std::logic_error("program exhausted and no pending corrections");

  const bool is_correction = !pending_.empty();
  const GateOp op = is_correction ? pending_.front() : program_.ops[pc_];

  RoundLayout layout;
  layout.message_slot = slot_for(op.kind);
  layout.message_wires = slot_wires(layout.message_slot);
  layout.message_qubits = op.targets;
  for (int q = 0; q < program_.n_qubits; ++q)
    if (std::find(op.targets.begin(), op.targets.end(), q) == op.targets.end())
      layout.retained_qubits.push_back(q);

  // Fresh Haar-random decoys on every channel wire outside the message slot,
  // sampled in ascending wire order.
  std::vector<Statevector> decoys;
  std::vector<int> decoy_wires;
  for (int w = 0; w < kChannelWires; ++w) {
    if (std::find(layout.message_wires.begin(), layout.message_wires.end(), w) ==
        layout.message_wires.end()) {
      decoy_wires.push_back(w);
      decoys.push_back(rng_.haar_state(1));
    }
  }

  // Joint system: logical qubits first, then decoys; permute into channel
  // order (message qubits in their slot, retained after wire 8).
  Statevector joint = logical_;
  for (const Statevector& d : decoys) joint = tensor(joint, d);

  const int n = program_.n_qubits;
  const int refs = static_cast<int>(layout.retained_qubits.size());
  std::vector<int> perm(joint.n_qubits());
  for (int q = 0; q < n; ++q) {
    const auto it = std::find(op.targets.begin(), op.targets.end(), q);
    if (it != op.targets.end()) {
      perm[q] = layout.message_wires[it - op.targets.begin()];
    } else {
      const auto rit = std::find(layout.retained_qubits.begin(),
                                 layout.retained_qubits.end(), q);
      perm[q] = kChannelWires + int(rit - layout.retained_qubits.begin());
    }
  }
  for (std::size_t d = 0; d < decoy_wires.size(); ++d)
    perm[n + int(d)] = decoy_wires[d];

  RoundMessage message{RoundMessage::Direction::ClientToServer, next_round_,
                       refs, permute_wires(joint, perm)};

  RoundPlan plan{message, layout, GateOp(op.kind, layout.message_wires),
                 GateOp(op.kind, op.targets), is_correction};
  inflight_ = Inflight{plan.logical_op, is_correction, layout, std::move(decoys),
                       message.payload};
  return plan;
}

void Client::absorb_round(const ServerReply& reply) {
  if (!inflight_) throw std::logic_error("no round in flight");
  const Inflight& fl = *inflight_;
  const RoundMessage& msg = reply.message;
  if (msg.direction != RoundMessage::Direction::ServerToClient)
    throw std::invalid_argument("reply direction mismatch");
  if (msg.round_index != next_round_)
    throw std::invalid_argument("reply round index mismatch");
  if (msg.payload.n_qubits() != fl.sent_payload.n_qubits() ||
      msg.reference_wires != int(fl.layout.retained_qubits.size()))
    throw std::invalid_argument("reply payload shape mismatch");

  // The decoys never interact with the message wires, so the client knows
  // their exact post-round states: in full-blind mode each non-message slot's
  // gate acted on them, in half-blind mode nothing did.
  std::vector<int> decoy_wires;
  for (int w = 0; w < kChannelWires; ++w)
    if (std::find(fl.layout.message_wires.begin(), fl.layout.message_wires.end(),
                  w) == fl.layout.message_wires.end())
      decoy_wires.push_back(w);

  Statevector known = fl.decoys[0];
  for (std::size_t i = 1; i < fl.decoys.size(); ++i)
    known = tensor(known, fl.decoys[i]);
  if (mode_ == Mode::FDQC) {
    for (const GateOp& g : server_tuple()) {
      if (slot_for(g.kind) == fl.layout.message_slot) continue;
      std::vector<int> local;
      for (int w : g.targets) {
        const auto it = std::find(decoy_wires.begin(), decoy_wires.end(), w);
        local.push_back(int(it - decoy_wires.begin()));
      }
      known = apply(known, GateOp(g.kind, std::move(local)));
    }
  }

  Statevector remaining = project_out(msg.payload, decoy_wires, known);

  // Remaining wires are the message wires (ascending == operand order, since
  // slot wires ascend) followed by the reference wires; relabel to logical.
  std::vector<int> perm(remaining.n_qubits());
  for (std::size_t p = 0; p < fl.layout.message_wires.size(); ++p)
    perm[p] = fl.layout.message_qubits[p];
  for (std::size_t rq = 0; rq < fl.layout.retained_qubits.size(); ++rq)
    perm[fl.layout.message_wires.size() + rq] = fl.layout.retained_qubits[rq];
  logical_ = permute_wires(remaining, perm);

  // Key evolution; corrections use the same path as program gates.
  std::vector<PauliKey> touched;
  for (int q : fl.logical_op.targets) touched.push_back(keys_[q]);
  const KeyUpdate ku = key_update(fl.logical_op.kind, touched);
  for (std::size_t i = 0; i < fl.logical_op.targets.size(); ++i)
    keys_[fl.logical_op.targets[i]] = ku.new_keys[i];

  if (fl.is_correction) {
    pending_.pop_front();
    ++correction_rounds_;
  } else {
    if (fl.logical_op.kind == GateKind::Toffoli)
      transcript_.toffoli_ground_truth.push_back(
          ToffoliKeyRecord{next_round_, touched[0].a, touched[1].a,
                           touched[2].b});
    for (const GateOp& c : ku.corrections) {
      std::vector<int> mapped;
      for (int pos : c.targets) mapped.push_back(fl.logical_op.targets[pos]);
      pending_.emplace_back(c.kind, std::move(mapped));
    }
    ++pc_;
  }

  if (options_.rerandomize_keys) {
    for (int q = 0; q < program_.n_qubits; ++q) {
      const int da = rng_.bit();
      const int db = rng_.bit();
      if (db) logical_ = apply(logical_, GateOp(GateKind::Z, {q}));
      if (da) logical_ = apply(logical_, GateOp(GateKind::X, {q}));
      keys_[q].a ^= da;
      keys_[q].b ^= db;
    }
  }

  TranscriptRound round;
  round.round_index = next_round_;
  for (const GateOp& g : reply.applied) round.server_ops.push_back(g.str());
  if (mode_ == Mode::HDQC) {
    round.announced_gate = fl.logical_op.str();
    round.announced_correction = fl.is_correction;
  }
  if (options_.snapshots) {
    round.payload_before = fl.sent_payload;
    round.payload_after = msg.payload;
    round.message_wires = fl.layout.message_wires;
    round.reference_wires = msg.reference_wires;
  }
  transcript_.rounds.push_back(std::move(round));

  inflight_.reset();
  ++next_round_;
}

std::pair<Statevector, Transcript> Client::finish() {
  if (finished_) throw std::logic_error("session already finished");
  if (inflight_) throw std::logic_error("round still in flight");
  if (!done()) throw std::logic_error("program not finished");
  finished_ = true;
  if (options_.corrupt_final_key) keys_[0].a ^= 1;
  transcript_.terminal_keys_digest = keys_digest(keys_);
  Statevector output = decrypt(logical_, keys_, all_wires(program_.n_qubits));
  return {std::move(output), std::move(transcript_)};
}

namespace {

void check_server_message(const RoundMessage& message) {
  if (message.direction != RoundMessage::Direction::ClientToServer)
    throw std::invalid_argument("message direction mismatch");
  if (message.payload.n_qubits() != kChannelWires + message.reference_wires ||
      message.reference_wires < 0)
    throw std::invalid_argument("payload does not match channel shape");
}

}  // namespace

ServerReply server_execute_round(const RoundMessage& message) {
  check_server_message(message);
  Statevector payload = message.payload;
  for (const GateOp& g : server_tuple()) payload = apply(payload, g);
  return ServerReply{
      RoundMessage{RoundMessage::Direction::ServerToClient, message.round_index,
                   message.reference_wires, std::move(payload)},
      server_tuple()};
}

ServerReply server_execute_round_announced(const RoundMessage& message,
                                           const GateOp& channel_op) {
  check_server_message(message);
  for (int w : channel_op.targets)
    if (w >= kChannelWires)
      throw std::invalid_argument("announced gate leaves the channel");
  Statevector payload = apply(message.payload, channel_op);
  return ServerReply{
      RoundMessage{RoundMessage::Direction::ServerToClient, message.round_index,
                   message.reference_wires, std::move(payload)},
      {channel_op}};
}

namespace {

RunResult run_session(const CircuitProgram& program, const Statevector& input,
                      Mode mode, const RunOptions& options) {
  Client client(program, input, mode, options);
  while (!client.done()) {
    const RoundPlan plan = client.prepare_round();
    const ServerReply reply =
        mode == Mode::FDQC
            ? server_execute_round(plan.message)
            : server_execute_round_announced(plan.message, plan.channel_op);
    client.absorb_round(reply);
  }
  const int corrections = client.correction_rounds();
  auto [output, transcript] = client.finish();
  return RunResult{std::move(output), std::move(transcript), corrections};
}

}  // namespace

RunResult run_fdqc(const CircuitProgram& program, const Statevector& input,
                   const RunOptions& options) {
  return run_session(program, input, Mode::FDQC, options);
}

RunResult run_hdqc(const CircuitProgram& program, const Statevector& input,
                   const RunOptions& options) {
  return run_session(program, input, Mode::HDQC, options);
}

RunResult run_fdqc(const CircuitProgram& program, const Statevector& input,
                   std::uint64_t seed) {
  RunOptions options;
  options.seed = seed;
  return run_fdqc(program, input, options);
}

RunResult run_hdqc(const CircuitProgram& program, const Statevector& input,
                   std::uint64_t seed) {
  RunOptions options;
  options.seed = seed;
  return run_hdqc(program, input, options);
}

}  // namespace fdqc
