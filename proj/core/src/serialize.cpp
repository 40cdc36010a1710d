#include "fdqc/serialize.hpp"

#include <json.hpp>

namespace fdqc {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json amplitudes_json(const Statevector& state) {
  ordered_json amps = ordered_json::array();
  for (const cplx& a : state.amplitudes())
    amps.push_back(ordered_json::array({a.real(), a.imag()}));
  return amps;
}

std::string mode_name(Mode mode) {
  return mode == Mode::FDQC ? "fdqc" : "hdqc";
}

std::string bit_key(const RecoveredBit& bit) {
  return "t" + std::to_string(bit.toffoli_index) + "." + bit.name;
}

}  // namespace

std::string to_json(const Transcript& transcript) {
  ordered_json doc;
  doc["mode"] = mode_name(transcript.mode);
  doc["seed"] = transcript.seed;
  doc["rounds"] = ordered_json::array();
  for (const TranscriptRound& round : transcript.rounds) {
    ordered_json r;
    r["round_index"] = round.round_index;
    r["server_ops"] = round.server_ops;
    if (round.announced_gate) {
      r["announced_gate"] = *round.announced_gate;
      r["announced_correction"] = round.announced_correction;
    }
    if (round.payload_before && round.payload_after) {
      ordered_json snap;
      snap["message_wires"] = round.message_wires;
      snap["reference_wires"] = round.reference_wires;
      snap["payload_before"] = amplitudes_json(*round.payload_before);
      snap["payload_after"] = amplitudes_json(*round.payload_after);
      r["snapshots"] = std::move(snap);
    }
    doc["rounds"].push_back(std::move(r));
  }
  doc["terminal_keys_digest"] = transcript.terminal_keys_digest;
  doc["toffoli_ground_truth"] = ordered_json::array();
  for (const ToffoliKeyRecord& rec : transcript.toffoli_ground_truth) {
    ordered_json t;
    t["round_index"] = rec.round_index;
    t["a"] = rec.a;
    t["c"] = rec.c;
    t["f"] = rec.f;
    doc["toffoli_ground_truth"].push_back(std::move(t));
  }
  return doc.dump(2) + "\n";
}

std::string to_json(const AttackReport& report) {
  ordered_json doc;
  doc["mode"] = mode_name(report.mode);
  doc["announced_rounds"] = report.announced_rounds;
  doc["success_rate"] = report.success_rate;
  doc["note"] = report.note;
  ordered_json recovered = ordered_json::object();
  ordered_json truth = ordered_json::object();
  for (const RecoveredBit& bit : report.bits) {
    const std::string key = bit_key(bit);
    if (bit.recovered)
      recovered[key] = *bit.recovered;
    else
      recovered[key] = nullptr;
    truth[key] = bit.truth;
  }
  doc["recovered_bits"] = std::move(recovered);
  doc["ground_truth"] = std::move(truth);
  return doc.dump(2) + "\n";
}

}  // namespace fdqc
