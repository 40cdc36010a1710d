#pragma once

// Dense statevector / density-matrix simulation for small registers.
//
// Wire convention: wire 0 is the MOST significant bit of a basis index, so
// basis_state(3, 0b110) puts wire 0 and wire 1 in |1> and wire 2 in |0>.
// Registers stay small (a protocol round is at most 12 wires), so every
// operation is a plain O(2^n) pass over the amplitude vector.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdqc {

using cplx = std::complex<double>;

// Default tolerance for state / density-matrix comparisons.
inline constexpr double kTol = 1e-10;

enum class GateKind { X, Z, H, P, CZ, CNOT, Toffoli };

int gate_arity(GateKind kind);
std::string_view gate_name(GateKind kind);  // Toffoli renders as "T"
std::optional<GateKind> gate_from_name(std::string_view name);

// A gate bound to distinct wire indices. CNOT targets are (control, target),
// Toffoli targets are (control1, control2, target).
struct GateOp {
  GateKind kind;
  std::vector<int> targets;

  GateOp(GateKind k, std::vector<int> t);
  bool operator==(const GateOp& other) const = default;
  std::string str() const;  // e.g. "CNOT 4 5"
};

class Statevector {
 public:
  // |0...0> on n_qubits wires.
  explicit Statevector(int n_qubits);
  // Takes ownership of the amplitudes; size must be 2^n_qubits and the vector
  // must be normalized within kTol.
  Statevector(int n_qubits, std::vector<cplx> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const cplx& operator[](std::size_t index) const { return amps_[index]; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  double norm() const;

  bool operator==(const Statevector& other) const = default;

 private:
  int n_qubits_;
  std::vector<cplx> amps_;
};

// Computational basis state |index> on n_qubits wires.
Statevector basis_state(int n_qubits, std::uint64_t index);

// Applies one gate; out-of-range targets throw std::out_of_range.
Statevector apply(const Statevector& state, const GateOp& op);

// a (+) b, with a's wires first (and therefore most significant).
Statevector tensor(const Statevector& a, const Statevector& b);

// <a|b>; dimension mismatch throws std::invalid_argument.
cplx inner_product(const Statevector& a, const Statevector& b);

// True iff |<a|b>| >= 1 - tol (both states are unit vectors by construction).
bool equal_up_to_global_phase(const Statevector& a, const Statevector& b,
                              double tol = kTol);

// Relabels wires: wire w of `state` becomes wire new_wire_of[w] of the result.
// new_wire_of must be a permutation of 0..n-1.
Statevector permute_wires(const Statevector& state,
                          const std::vector<int>& new_wire_of);

// Contracts `wires` (strictly increasing) against a known factor state whose
// qubit i sits on wires[i]. Exact when `state` is a product of that factor
// with the rest; the result keeps the remaining wires in their original
// relative order and is not renormalized.
Statevector project_out(const Statevector& state, const std::vector<int>& wires,
                        const Statevector& known_factor);

class DensityMatrix {
 public:
  // Row-major 2^n x 2^n entries; must be Hermitian with unit trace within kTol.
  DensityMatrix(int n_qubits, std::vector<cplx> entries);

  static DensityMatrix from_pure(const Statevector& state);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return dim_; }
  const cplx& at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  double trace_real() const;
  // Eigenvalues in ascending order (cyclic Jacobi; intended for small dims).
  std::vector<double> eigenvalues() const;

  bool operator==(const DensityMatrix& other) const = default;

 private:
  int n_qubits_;
  std::size_t dim_;
  std::vector<cplx> entries_;
};

// Entrywise max |a - b|; dimension mismatch throws std::invalid_argument.
double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b);

// sum_i weights[i] |states[i]><states[i]|. Weights must be nonnegative and
// sum to 1 within kTol; all states must share a dimension.
DensityMatrix mix(const std::vector<Statevector>& states,
                  const std::vector<double>& weights);

// Traces out every wire not in `keep` (distinct, in range, nonempty); result
// wire i corresponds to keep[i].
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

// partial_trace(from_pure(state), keep) without materializing the full
// density matrix; used for reduced views of round payloads.
DensityMatrix reduced_density(const Statevector& state,
                              const std::vector<int>& keep);

}  // namespace fdqc
