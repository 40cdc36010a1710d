#include "fdqc/blindness.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fdqc/pauli_otp.hpp"
#include "fdqc/random.hpp"

namespace fdqc {

DensityMatrix encrypted_view(const Statevector& state) {
  if (state.n_qubits() != 1)
    throw std::invalid_argument("encrypted_view takes a single-qubit state");
  if (std::abs(state.norm() - 1.0) > kTol)
    throw std::invalid_argument("state must be normalized");

  std::vector<Statevector> variants;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      variants.push_back(encrypt(state, {PauliKey{a, b}}, {0}));
  DensityMatrix view = mix(variants, {0.25, 0.25, 0.25, 0.25});

  if (max_abs_diff(view, DensityMatrix::maximally_mixed(1)) > kTol)
    throw std::logic_error("key-averaged view drifted from maximally mixed");
  return view;
}

bool transcripts_indistinguishable(const Transcript& t1, const Transcript& t2) {
  if (t1.mode != Mode::FDQC || t2.mode != Mode::FDQC)
    throw std::invalid_argument(
        "server-view comparison is defined for full-blind transcripts");
  if (t1.rounds.size() != t2.rounds.size()) return false;
  for (std::size_t i = 0; i < t1.rounds.size(); ++i) {
    const TranscriptRound& r1 = t1.rounds[i];
    const TranscriptRound& r2 = t2.rounds[i];
    if (r1.round_index != r2.round_index) return false;
    if (r1.server_ops != r2.server_ops) return false;
    if (r1.announced_gate != r2.announced_gate) return false;
    if (r1.announced_correction != r2.announced_correction) return false;
  }
  return true;
}

namespace {

std::vector<std::string> split_ws(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Position of the round with this index, or -1.
int find_round(const Transcript& transcript, int round_index) {
  for (std::size_t i = 0; i < transcript.rounds.size(); ++i)
    if (transcript.rounds[i].round_index == round_index)
      return static_cast<int>(i);
  return -1;
}

struct CorrectionBits {
  int a = 0;
  int c = 0;
  int f = 0;
};

// Reads the correction rounds that follow an announced three-qubit gate.
// CZ(q1,q2) marks f, CNOT(q2,q3) marks a, CNOT(q1,q3) marks c; a missing
// correction means that bit is 0.
CorrectionBits read_corrections(const Transcript& transcript, int round_pos) {
  const std::vector<std::string> head =
      split_ws(*transcript.rounds[round_pos].announced_gate);
  if (head.size() != 4 || head[0] != "T")
    throw std::invalid_argument("recorded round is not a three-qubit gate");
  const std::string& q1 = head[1];
  const std::string& q2 = head[2];
  const std::string& q3 = head[3];

  CorrectionBits bits;
  for (std::size_t i = round_pos + 1; i < transcript.rounds.size(); ++i) {
    const TranscriptRound& r = transcript.rounds[i];
    if (!r.announced_correction) break;
    if (!r.announced_gate)
      throw std::invalid_argument("correction round with no announced gate");
    const std::vector<std::string> op = split_ws(*r.announced_gate);
    if (op.size() == 3 && op[0] == "CZ" &&
        ((op[1] == q1 && op[2] == q2) || (op[1] == q2 && op[2] == q1))) {
      bits.f = 1;
    } else if (op.size() == 3 && op[0] == "CNOT" && op[1] == q2 &&
               op[2] == q3) {
      bits.a = 1;
    } else if (op.size() == 3 && op[0] == "CNOT" && op[1] == q1 &&
               op[2] == q3) {
      bits.c = 1;
    }
  }
  return bits;
}

}  // namespace

AttackReport hdqc_attack(const Transcript& transcript,
                         const AttackOptions& options) {
  AttackReport report;
  report.mode = transcript.mode;
  for (const TranscriptRound& r : transcript.rounds)
    if (r.announced_gate) ++report.announced_rounds;

  RandomSource guess_rng(options.guess_seed);
  const bool announced = transcript.mode == Mode::HDQC;

  for (std::size_t k = 0; k < transcript.toffoli_ground_truth.size(); ++k) {
    const ToffoliKeyRecord& rec = transcript.toffoli_ground_truth[k];
    std::optional<int> got_a;
    std::optional<int> got_c;
    std::optional<int> got_f;
    if (announced) {
      const int pos = find_round(transcript, rec.round_index);
      if (pos < 0 || !transcript.rounds[pos].announced_gate)
        throw std::invalid_argument(
            "transcript is missing the announced round for a recorded gate");
      const CorrectionBits bits = read_corrections(transcript, pos);
      got_a = bits.a;
      got_c = bits.c;
      got_f = bits.f;
    } else if (options.force_guess) {
      got_a = guess_rng.bit();
      got_c = guess_rng.bit();
      got_f = guess_rng.bit();
    }
    const int idx = static_cast<int>(k);
    report.bits.push_back({idx, rec.round_index, "a", got_a, rec.a});
    report.bits.push_back({idx, rec.round_index, "c", got_c, rec.c});
    report.bits.push_back({idx, rec.round_index, "f", got_f, rec.f});
  }

  int correct = 0;
  for (const RecoveredBit& b : report.bits)
    if (b.recovered && *b.recovered == b.truth) ++correct;
  report.success_rate =
      report.bits.empty() ? 1.0
                          : static_cast<double>(correct) /
                                static_cast<double>(report.bits.size());

  if (report.bits.empty()) {
    report.note = "no three-qubit gates in the program; nothing to recover";
  } else if (announced) {
    report.note =
        "correction pattern after each announced T exposes the pad bits";
  } else if (options.force_guess) {
    report.note = "nothing announced; bits guessed uniformly at random";
  } else {
    report.note = "nothing announced; every pad bit stays unknown";
  }
  return report;
}

}  // namespace fdqc
