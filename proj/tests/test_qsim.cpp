#include "fdqc/qsim.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "fdqc/random.hpp"

namespace fdqc {
namespace {

constexpr double kExact = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void expect_amplitudes(const Statevector& state, const std::vector<cplx>& want,
                       double tol = kExact) {
  ASSERT_EQ(state.dim(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(state[i].real(), want[i].real(), tol) << "index " << i;
    EXPECT_NEAR(state[i].imag(), want[i].imag(), tol) << "index " << i;
  }
}

TEST(Statevector, StartsInAllZeros) {
  Statevector s(3);
  EXPECT_EQ(s.n_qubits(), 3);
  EXPECT_EQ(s.dim(), 8u);
  EXPECT_EQ(s[0], cplx(1.0, 0.0));
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(s[i], cplx(0.0, 0.0));
}

TEST(Statevector, RejectsBadConstruction) {
  EXPECT_THROW(Statevector(2, {cplx(1, 0)}), std::invalid_argument);
  EXPECT_THROW(Statevector(1, {cplx(1, 0), cplx(1, 0)}), std::invalid_argument);
  EXPECT_THROW(Statevector(0, {}), std::invalid_argument);
}

TEST(Statevector, WireZeroIsMostSignificant) {
  Statevector s = basis_state(3, 0b110);
  EXPECT_EQ(s[6], cplx(1.0, 0.0));
  // Flipping wire 2 (least significant) moves |110> to |111>.
  Statevector t = apply(s, GateOp(GateKind::X, {2}));
  EXPECT_EQ(t[7], cplx(1.0, 0.0));
  // Flipping wire 0 (most significant) moves |110> to |010>.
  Statevector u = apply(s, GateOp(GateKind::X, {0}));
  EXPECT_EQ(u[2], cplx(1.0, 0.0));
}

TEST(Gates, ClosedFormActionsOnBasisStates) {
  const cplx o(1, 0), i(0, 1), r(kInvSqrt2, 0);
  expect_amplitudes(apply(basis_state(1, 0), GateOp(GateKind::X, {0})), {0., o});
  expect_amplitudes(apply(basis_state(1, 1), GateOp(GateKind::X, {0})), {o, 0.});
  expect_amplitudes(apply(basis_state(1, 0), GateOp(GateKind::Z, {0})), {o, 0.});
  expect_amplitudes(apply(basis_state(1, 1), GateOp(GateKind::Z, {0})), {0., -o});
  expect_amplitudes(apply(basis_state(1, 0), GateOp(GateKind::H, {0})), {r, r});
  expect_amplitudes(apply(basis_state(1, 1), GateOp(GateKind::H, {0})), {r, -r});
  expect_amplitudes(apply(basis_state(1, 0), GateOp(GateKind::P, {0})), {o, 0.});
  expect_amplitudes(apply(basis_state(1, 1), GateOp(GateKind::P, {0})), {0., i});
  for (std::uint64_t x = 0; x < 4; ++x) {
    std::vector<cplx> want(4, 0.0);
    want[x] = x == 3 ? -o : o;
    expect_amplitudes(apply(basis_state(2, x), GateOp(GateKind::CZ, {0, 1})),
                      want);
  }
  for (std::uint64_t x = 0; x < 4; ++x) {
    std::vector<cplx> want(4, 0.0);
    const std::uint64_t hi = x >> 1, lo = x & 1;
    want[(hi << 1) | (lo ^ hi)] = o;
    expect_amplitudes(apply(basis_state(2, x), GateOp(GateKind::CNOT, {0, 1})),
                      want);
  }
  for (std::uint64_t x = 0; x < 8; ++x) {
    std::vector<cplx> want(8, 0.0);
    const std::uint64_t c1 = (x >> 2) & 1, c2 = (x >> 1) & 1, t = x & 1;
    want[(c1 << 2) | (c2 << 1) | (t ^ (c1 & c2))] = o;
    expect_amplitudes(
        apply(basis_state(3, x), GateOp(GateKind::Toffoli, {0, 1, 2})), want);
  }
}

TEST(Gates, PreserveNormOnRandomStates) {
  RandomSource rng(11);
  for (GateKind kind : {GateKind::X, GateKind::Z, GateKind::H, GateKind::P,
                        GateKind::CZ, GateKind::CNOT, GateKind::Toffoli}) {
    Statevector s = rng.haar_state(4);
    std::vector<int> targets(gate_arity(kind));
    for (int i = 0; i < gate_arity(kind); ++i) targets[i] = i + 1;
    Statevector t = apply(s, GateOp(kind, targets));
    EXPECT_NEAR(t.norm(), 1.0, kExact) << gate_name(kind);
  }
}

TEST(Gates, SelfInverseAndPhasePeriod) {
  RandomSource rng(12);
  Statevector s = rng.haar_state(3);
  for (GateKind kind : {GateKind::X, GateKind::Z, GateKind::H}) {
    Statevector t = apply(apply(s, GateOp(kind, {1})), GateOp(kind, {1}));
    EXPECT_TRUE(equal_up_to_global_phase(t, s, kExact)) << gate_name(kind);
  }
  Statevector t = s;
  for (int k = 0; k < 4; ++k) t = apply(t, GateOp(GateKind::P, {0}));
  EXPECT_TRUE(equal_up_to_global_phase(t, s, kExact));
  Statevector u = apply(apply(s, GateOp(GateKind::CZ, {0, 2})),
                        GateOp(GateKind::CZ, {0, 2}));
  EXPECT_TRUE(equal_up_to_global_phase(u, s, kExact));
  Statevector v = apply(apply(s, GateOp(GateKind::Toffoli, {0, 1, 2})),
                        GateOp(GateKind::Toffoli, {0, 1, 2}));
  EXPECT_TRUE(equal_up_to_global_phase(v, s, kExact));
}

TEST(Gates, CzIsSymmetricCnotIsNot) {
  RandomSource rng(13);
  Statevector s = rng.haar_state(2);
  EXPECT_EQ(apply(s, GateOp(GateKind::CZ, {0, 1})).amplitudes(),
            apply(s, GateOp(GateKind::CZ, {1, 0})).amplitudes());
  Statevector a = apply(basis_state(2, 0b01), GateOp(GateKind::CNOT, {0, 1}));
  Statevector b = apply(basis_state(2, 0b01), GateOp(GateKind::CNOT, {1, 0}));
  EXPECT_EQ(a[1], cplx(1.0, 0.0));  // control 0 unset: no flip
  EXPECT_EQ(b[3], cplx(1.0, 0.0));  // control 1 set: flips wire 0
}

TEST(Gates, RejectBadTargets) {
  Statevector s(2);
  EXPECT_THROW(apply(s, GateOp(GateKind::H, {2})), std::out_of_range);
  EXPECT_THROW(apply(s, GateOp(GateKind::CNOT, {0, 5})), std::out_of_range);
  EXPECT_THROW(GateOp(GateKind::CNOT, {1, 1}), std::invalid_argument);
  EXPECT_THROW(GateOp(GateKind::H, {0, 1}), std::invalid_argument);
  EXPECT_THROW(GateOp(GateKind::Toffoli, {0, 1}), std::invalid_argument);
  EXPECT_THROW(GateOp(GateKind::H, {-1}), std::invalid_argument);
}

TEST(Gates, NamesRoundTrip) {
  for (GateKind kind : {GateKind::X, GateKind::Z, GateKind::H, GateKind::P,
                        GateKind::CZ, GateKind::CNOT, GateKind::Toffoli}) {
    EXPECT_EQ(gate_from_name(gate_name(kind)), kind);
  }
  EXPECT_EQ(gate_name(GateKind::Toffoli), "T");
  EXPECT_EQ(gate_from_name("SWAP"), std::nullopt);
  EXPECT_EQ(GateOp(GateKind::CNOT, {4, 5}).str(), "CNOT 4 5");
  EXPECT_EQ(GateOp(GateKind::Toffoli, {6, 7, 8}).str(), "T 6 7 8");
}

TEST(Tensor, PutsLeftFactorOnHighWires) {
  Statevector left = basis_state(1, 1);
  Statevector right = basis_state(2, 0b01);
  Statevector both = tensor(left, right);
  EXPECT_EQ(both.n_qubits(), 3);
  EXPECT_EQ(both[0b101], cplx(1.0, 0.0));
}

TEST(InnerProduct, MatchesHandValues) {
  Statevector plus = apply(basis_state(1, 0), GateOp(GateKind::H, {0}));
  EXPECT_NEAR(std::abs(inner_product(plus, basis_state(1, 0))), kInvSqrt2,
              kExact);
  EXPECT_NEAR(std::abs(inner_product(plus, plus)), 1.0, kExact);
  EXPECT_THROW(inner_product(plus, basis_state(2, 0)), std::invalid_argument);
}

TEST(GlobalPhase, DetectsEqualityUpToPhase) {
  RandomSource rng(14);
  Statevector s = rng.haar_state(3);
  std::vector<cplx> rotated = s.amplitudes();
  const cplx phase = std::polar(1.0, 1.234);
  for (cplx& a : rotated) a *= phase;
  EXPECT_TRUE(equal_up_to_global_phase(s, Statevector(3, rotated)));
  EXPECT_FALSE(equal_up_to_global_phase(basis_state(1, 0), basis_state(1, 1)));
  // A relative phase is not a global phase.
  Statevector plus = apply(basis_state(1, 0), GateOp(GateKind::H, {0}));
  Statevector minus = apply(basis_state(1, 1), GateOp(GateKind::H, {0}));
  EXPECT_FALSE(equal_up_to_global_phase(plus, minus));
}

TEST(PermuteWires, RelabelsBasisStates) {
  // |q0 q1 q2> = |110>; send wire 0 to wire 2 and shift the others up.
  Statevector s = basis_state(3, 0b110);
  Statevector t = permute_wires(s, {2, 0, 1});
  EXPECT_EQ(t[0b101], cplx(1.0, 0.0));
  EXPECT_THROW(permute_wires(s, {0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(permute_wires(s, {0, 1}), std::invalid_argument);
}

TEST(PermuteWires, PreservesEntangledStructure) {
  RandomSource rng(15);
  Statevector s = rng.haar_state(3);
  Statevector forth = permute_wires(s, {1, 2, 0});
  Statevector back = permute_wires(forth, {2, 0, 1});
  EXPECT_EQ(back.amplitudes(), s.amplitudes());
}

TEST(ProjectOut, StripsKnownProductFactor) {
  RandomSource rng(16);
  Statevector keep = rng.haar_state(2);
  Statevector decoy = rng.haar_state(1);
  // Layout: keep0, decoy, keep1 on wires 0..2.
  Statevector joint = permute_wires(tensor(keep, decoy), {0, 2, 1});
  Statevector got = project_out(joint, {1}, decoy);
  ASSERT_EQ(got.n_qubits(), 2);
  EXPECT_TRUE(equal_up_to_global_phase(got, keep, kExact));
  EXPECT_NEAR(got.norm(), 1.0, kExact);
}

TEST(ProjectOut, HandlesMultiWireFactors) {
  RandomSource rng(17);
  Statevector keep = rng.haar_state(1);
  Statevector known = rng.haar_state(2);
  Statevector outer = rng.haar_state(1);
  // known on wires 0,1; keep on wire 2; outer on wire 3.
  Statevector joint = tensor(tensor(known, keep), outer);
  Statevector got = project_out(joint, {0, 1, 3}, tensor(known, outer));
  ASSERT_EQ(got.n_qubits(), 1);
  EXPECT_TRUE(equal_up_to_global_phase(got, keep, kExact));
}

TEST(DensityMatrix, ValidatesShape) {
  EXPECT_THROW(DensityMatrix(1, {cplx(1, 0)}), std::invalid_argument);
  // Non-Hermitian.
  EXPECT_THROW(DensityMatrix(1, {cplx(0.5, 0), cplx(0.5, 0), cplx(-0.5, 0),
                                 cplx(0.5, 0)}),
               std::invalid_argument);
  // Trace 2.
  EXPECT_THROW(
      DensityMatrix(1, {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)}),
      std::invalid_argument);
}

TEST(DensityMatrix, PureStateAndMixedBasics) {
  Statevector plus = apply(basis_state(1, 0), GateOp(GateKind::H, {0}));
  DensityMatrix rho = DensityMatrix::from_pure(plus);
  EXPECT_NEAR(rho.at(0, 0).real(), 0.5, kExact);
  EXPECT_NEAR(rho.at(0, 1).real(), 0.5, kExact);
  EXPECT_NEAR(rho.trace_real(), 1.0, kExact);

  DensityMatrix mixed = DensityMatrix::maximally_mixed(1);
  EXPECT_NEAR(mixed.at(0, 0).real(), 0.5, kExact);
  EXPECT_NEAR(std::abs(mixed.at(0, 1)), 0.0, kExact);

  EXPECT_NEAR(max_abs_diff(rho, mixed), 0.5, kExact);
  EXPECT_THROW(max_abs_diff(rho, DensityMatrix::maximally_mixed(2)),
               std::invalid_argument);
}

TEST(DensityMatrix, MixValidatesWeights) {
  std::vector<Statevector> states{basis_state(1, 0), basis_state(1, 1)};
  EXPECT_THROW(mix(states, {0.5}), std::invalid_argument);
  EXPECT_THROW(mix(states, {0.7, 0.7}), std::invalid_argument);
  EXPECT_THROW(mix(states, {1.5, -0.5}), std::invalid_argument);
  DensityMatrix half = mix(states, {0.5, 0.5});
  EXPECT_NEAR(max_abs_diff(half, DensityMatrix::maximally_mixed(1)), 0.0,
              kExact);
}

TEST(DensityMatrix, PartialTraceOfProductRecoversFactor) {
  RandomSource rng(18);
  Statevector a = rng.haar_state(1);
  Statevector b = rng.haar_state(2);
  DensityMatrix joint = DensityMatrix::from_pure(tensor(a, b));
  DensityMatrix got = partial_trace(joint, {0});
  EXPECT_NEAR(max_abs_diff(got, DensityMatrix::from_pure(a)), 0.0, 1e-10);
  DensityMatrix rest = partial_trace(joint, {1, 2});
  EXPECT_NEAR(max_abs_diff(rest, DensityMatrix::from_pure(b)), 0.0, 1e-10);
}

TEST(DensityMatrix, PartialTraceOfEntangledPairIsMixed) {
  Statevector bell = apply(apply(basis_state(2, 0), GateOp(GateKind::H, {0})),
                           GateOp(GateKind::CNOT, {0, 1}));
  DensityMatrix half = reduced_density(bell, {0});
  EXPECT_NEAR(max_abs_diff(half, DensityMatrix::maximally_mixed(1)), 0.0,
              1e-10);
  DensityMatrix other = reduced_density(bell, {1});
  EXPECT_NEAR(max_abs_diff(other, DensityMatrix::maximally_mixed(1)), 0.0,
              1e-10);
}

TEST(DensityMatrix, ReducedDensityMatchesPartialTrace) {
  RandomSource rng(19);
  Statevector s = rng.haar_state(3);
  DensityMatrix direct = partial_trace(DensityMatrix::from_pure(s), {0, 2});
  DensityMatrix shortcut = reduced_density(s, {0, 2});
  EXPECT_NEAR(max_abs_diff(direct, shortcut), 0.0, 1e-10);
  EXPECT_THROW(reduced_density(s, {}), std::invalid_argument);
  EXPECT_THROW(reduced_density(s, {3}), std::out_of_range);
  EXPECT_THROW(reduced_density(s, {1, 1}), std::invalid_argument);
}

TEST(DensityMatrix, EigenvaluesOfKnownMatrices) {
  std::vector<double> pure =
      DensityMatrix::from_pure(basis_state(1, 0)).eigenvalues();
  ASSERT_EQ(pure.size(), 2u);
  EXPECT_NEAR(pure[0], 0.0, 1e-10);
  EXPECT_NEAR(pure[1], 1.0, 1e-10);

  std::vector<double> mixed = DensityMatrix::maximally_mixed(2).eigenvalues();
  ASSERT_EQ(mixed.size(), 4u);
  for (double v : mixed) EXPECT_NEAR(v, 0.25, 1e-10);

  RandomSource rng(20);
  std::vector<double> lams =
      DensityMatrix::from_pure(rng.haar_state(2)).eigenvalues();
  double sum = 0;
  for (double v : lams) {
    EXPECT_GE(v, -1e-10);
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, 1e-10);
  EXPECT_NEAR(lams.back(), 1.0, 1e-10);
}

TEST(RandomSource, DeterministicStreams) {
  RandomSource a(7);
  RandomSource b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  RandomSource c(8);
  bool differs = false;
  RandomSource a2(7);
  for (int i = 0; i < 100; ++i) differs |= a2.next_u64() != c.next_u64();
  EXPECT_TRUE(differs);
}

TEST(RandomSource, StatesAreNormalizedAndBitsBalanced) {
  RandomSource rng(21);
  for (int n = 1; n <= 4; ++n)
    EXPECT_NEAR(rng.haar_state(n).norm(), 1.0, kExact);
  int ones = 0;
  for (int i = 0; i < 4000; ++i) ones += rng.bit();
  EXPECT_GT(ones, 1800);
  EXPECT_LT(ones, 2200);
  for (int i = 0; i < 1000; ++i) {
    double r = rng.real01();
    EXPECT_GE(r, 0.0);
    EXPECT_LT(r, 1.0);
    EXPECT_LT(rng.below(17), 17u);
  }
}

}  // namespace
}  // namespace fdqc
