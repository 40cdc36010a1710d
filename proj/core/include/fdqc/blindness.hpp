#pragma once

// What the server can and cannot learn from a delegation session.
//
// encrypted_view() gives the server-side density matrix of a padded qubit
// when the pad key is unknown: averaging over the four equally likely keys
// turns any single-qubit state into the maximally mixed state, which is the
// information-theoretic core of the pad's privacy.
//
// transcripts_indistinguishable() compares only what the server sees in two
// full-blind transcripts (round indices and the operations it was asked to
// perform). Two runs of equal length always look identical to the server in
// full-blind mode because every round carries the same fixed gate tuple.
//
// hdqc_attack() plays a curious server against a half-blind transcript. In
// half-blind mode the client announces each gate, and pad corrections after a
// three-qubit gate are delegated as announced follow-up rounds, so the
// pattern of corrections reveals one X-key bit of each control and the Z-key
// bit of the target. The same attack run against a full-blind transcript has
// nothing to read; with force_guess it falls back to coin flips so the two
// modes can be scored side by side.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdqc/protocol.hpp"
#include "fdqc/qsim.hpp"

namespace fdqc {

// Average of (X^a Z^b) rho (X^a Z^b)^dag over all four single-qubit keys.
// Input must be a normalized single-qubit state.
DensityMatrix encrypted_view(const Statevector& state);

// Server-visible comparison of two full-blind transcripts. Throws
// std::invalid_argument if either transcript is not full-blind.
bool transcripts_indistinguishable(const Transcript& t1, const Transcript& t2);

struct AttackOptions {
  // When the transcript hides the bits (full-blind mode), guess each one
  // uniformly at random instead of leaving it unknown.
  bool force_guess = false;
  std::uint64_t guess_seed = 0;
};

// One pad-key bit the attacker tried to recover. `name` is "a" or "c" (the
// X-key bits of the two controls) or "f" (the Z-key bit of the target).
struct RecoveredBit {
  int toffoli_index = 0;  // 0-based position among the program's T gates
  int round_index = 0;    // round that executed that T gate
  std::string name;
  std::optional<int> recovered;  // empty when the transcript hides the bit
  int truth = 0;
};

struct AttackReport {
  Mode mode = Mode::FDQC;
  std::vector<RecoveredBit> bits;
  int announced_rounds = 0;  // rounds whose gate was visible to the server
  double success_rate = 0.0;  // unknown bits count as failures
  std::string note;
};

AttackReport hdqc_attack(const Transcript& transcript,
                         const AttackOptions& options = {});

}  // namespace fdqc
