#include <benchmark/benchmark.h>

#include "fdqc/gateset.hpp"
#include "fdqc/pauli_otp.hpp"
#include "fdqc/protocol.hpp"
#include "fdqc/qsim.hpp"
#include "fdqc/random.hpp"

namespace fdqc {
namespace {

void BM_ApplyToffoliNineWires(benchmark::State& state) {
  RandomSource rng(1);
  const Statevector input = rng.haar_state(9);
  const GateOp toffoli(GateKind::Toffoli, {6, 7, 8});
  for (auto _ : state) {
    Statevector out = apply(input, toffoli);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_ApplyToffoliNineWires);

void BM_ServerRound(benchmark::State& state) {
  const CircuitProgram prog = parse_program("qubits 3\nT 0 1 2\n");
  RandomSource rng(2);
  Client client(prog, rng.haar_state(3), Mode::FDQC, RunOptions{});
  const RoundPlan plan = client.prepare_round();
  for (auto _ : state) {
    ServerReply reply = server_execute_round(plan.message);
    benchmark::DoNotOptimize(reply);
  }
}
BENCHMARK(BM_ServerRound);

void BM_KeyUpdateToffoli(benchmark::State& state) {
  const std::vector<PauliKey> keys{{1, 0}, {1, 1}, {0, 1}};
  for (auto _ : state) {
    KeyUpdate update = key_update(GateKind::Toffoli, keys);
    benchmark::DoNotOptimize(update);
  }
}
BENCHMARK(BM_KeyUpdateToffoli);

void BM_ToffoliDecryptOptimized(benchmark::State& state) {
  RandomSource rng(3);
  const std::array<PauliKey, 3> keys{{{1, 0}, {1, 0}, {0, 1}}};
  const std::vector<PauliKey> kv(keys.begin(), keys.end());
  const Statevector mid = apply(encrypt(rng.haar_state(3), kv, {0, 1, 2}),
                                GateOp(GateKind::Toffoli, {0, 1, 2}));
  for (auto _ : state) {
    Statevector out = toffoli_decrypt_optimized(mid, keys, {0, 1, 2});
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_ToffoliDecryptOptimized);

void BM_RunFdqcMixedProgram(benchmark::State& state) {
  const CircuitProgram prog =
      parse_program("qubits 3\nH 0\nT 0 1 2\nCNOT 1 2\nP 2\n");
  RandomSource rng(4);
  const Statevector input = rng.haar_state(3);
  for (auto _ : state) {
    RunResult result = run_fdqc(prog, input, 11);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_RunFdqcMixedProgram);

}  // namespace
}  // namespace fdqc

BENCHMARK_MAIN();
