#include "fdqc/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdqc {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr int kMaxQubits = 20;  // 16 MiB of amplitudes; far above protocol needs

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("qubit count out of range: " +
                                std::to_string(n_qubits));
}

// Bit mask selecting wire w in an n-qubit index (wire 0 = MSB).
std::uint64_t wire_mask(int n_qubits, int wire) {
  return std::uint64_t{1} << (n_qubits - 1 - wire);
}

}  // namespace

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::P:
      return 1;
    case GateKind::CZ:
    case GateKind::CNOT:
      return 2;
    case GateKind::Toffoli:
      return 3;
  }
  throw std::invalid_argument("unknown gate kind");
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::P: return "P";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::Toffoli: return "T";
  }
  throw std::invalid_argument("unknown gate kind");
}

std::optional<GateKind> gate_from_name(std::string_view name) {
  if (name == "X") return GateKind::X;
  if (name == "Z") return GateKind::Z;
  if (name == "H") return GateKind::H;
  if (name == "P") return GateKind::P;
  if (name == "CZ") return GateKind::CZ;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "T") return GateKind::Toffoli;
  return std::nullopt;
}

GateOp::GateOp(GateKind k, std::vector<int> t) : kind(k), targets(std::move(t)) {
  if (static_cast<int>(targets.size()) != gate_arity(kind))
    throw std::invalid_argument("wrong target count for " +
                                std::string(gate_name(kind)));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0)
      throw std::invalid_argument("negative wire index");
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j])
        throw std::invalid_argument("repeated wire index in " +
                                    std::string(gate_name(kind)));
  }
}

std::string GateOp::str() const {
  std::string out(gate_name(kind));
  for (int t : targets) {
    out += ' ';
    out += std::to_string(t);
  }
  return out;
}

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("amplitude count does not match qubit count");
  if (std::abs(norm() - 1.0) > kTol)
    throw std::invalid_argument("statevector is not normalized");
}

double Statevector::norm() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

Statevector basis_state(int n_qubits, std::uint64_t index) {
  check_qubit_count(n_qubits);
  if (index >= (std::uint64_t{1} << n_qubits))
    throw std::out_of_range("basis index out of range");
  std::vector<cplx> amps(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps[index] = 1.0;
  return Statevector(n_qubits, std::move(amps));
}

Statevector apply(const Statevector& state, const GateOp& op) {
  const int n = state.n_qubits();
  for (int t : op.targets)
    if (t >= n) throw std::out_of_range("gate target exceeds register width");

  const std::size_t dim = state.dim();
  std::vector<cplx> out(dim);
  switch (op.kind) {
    case GateKind::X: {
      const std::uint64_t m = wire_mask(n, op.targets[0]);
      for (std::size_t i = 0; i < dim; ++i) out[i] = state[i ^ m];
      break;
    }
    case GateKind::Z: {
      const std::uint64_t m = wire_mask(n, op.targets[0]);
      for (std::size_t i = 0; i < dim; ++i)
        out[i] = (i & m) ? -state[i] : state[i];
      break;
    }
    case GateKind::H: {
      const std::uint64_t m = wire_mask(n, op.targets[0]);
      for (std::size_t i = 0; i < dim; ++i) {
        const cplx lo = state[i & ~m];
        const cplx hi = state[i | m];
        out[i] = (i & m) ? (lo - hi) * kInvSqrt2 : (lo + hi) * kInvSqrt2;
      }
      break;
    }
    case GateKind::P: {
      const std::uint64_t m = wire_mask(n, op.targets[0]);
      const cplx phase{0.0, 1.0};
      for (std::size_t i = 0; i < dim; ++i)
        out[i] = (i & m) ? phase * state[i] : state[i];
      break;
    }
    case GateKind::CZ: {
      const std::uint64_t m0 = wire_mask(n, op.targets[0]);
      const std::uint64_t m1 = wire_mask(n, op.targets[1]);
      for (std::size_t i = 0; i < dim; ++i)
        out[i] = ((i & m0) && (i & m1)) ? -state[i] : state[i];
      break;
    }
    case GateKind::CNOT: {
      const std::uint64_t c = wire_mask(n, op.targets[0]);
      const std::uint64_t t = wire_mask(n, op.targets[1]);
      for (std::size_t i = 0; i < dim; ++i)
        out[i] = (i & c) ? state[i ^ t] : state[i];
      break;
    }
    case GateKind::Toffoli: {
      const std::uint64_t c1 = wire_mask(n, op.targets[0]);
      const std::uint64_t c2 = wire_mask(n, op.targets[1]);
      const std::uint64_t t = wire_mask(n, op.targets[2]);
      for (std::size_t i = 0; i < dim; ++i)
        out[i] = ((i & c1) && (i & c2)) ? state[i ^ t] : state[i];
      break;
    }
  }
  return Statevector(n, std::move(out));
}

Statevector tensor(const Statevector& a, const Statevector& b) {
  const std::size_t db = b.dim();
  std::vector<cplx> out(a.dim() * db);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < db; ++j) out[i * db + j] = a[i] * b[j];
  return Statevector(a.n_qubits() + b.n_qubits(), std::move(out));
}

cplx inner_product(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("inner product dimension mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

bool equal_up_to_global_phase(const Statevector& a, const Statevector& b,
                              double tol) {
  return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

Statevector permute_wires(const Statevector& state,
                          const std::vector<int>& new_wire_of) {
  const int n = state.n_qubits();
  if (static_cast<int>(new_wire_of.size()) != n)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int w : new_wire_of) {
    if (w < 0 || w >= n || seen[w])
      throw std::invalid_argument("not a wire permutation");
    seen[w] = true;
  }
  std::vector<cplx> out(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) {
    std::uint64_t j = 0;
    for (int w = 0; w < n; ++w)
      if (i & wire_mask(n, w)) j |= wire_mask(n, new_wire_of[w]);
    out[j] = state[i];
  }
  return Statevector(n, std::move(out));
}

Statevector project_out(const Statevector& state, const std::vector<int>& wires,
                        const Statevector& known_factor) {
  const int n = state.n_qubits();
  const int k = static_cast<int>(wires.size());
  if (known_factor.n_qubits() != k)
    throw std::invalid_argument("known factor width mismatch");
  if (k == 0 || k >= n)
    throw std::invalid_argument("projection must remove a strict subset");
  for (int i = 0; i < k; ++i) {
    if (wires[i] < 0 || wires[i] >= n)
      throw std::out_of_range("projection wire out of range");
    if (i > 0 && wires[i] <= wires[i - 1])
      throw std::invalid_argument("projection wires must be increasing");
  }

  const int r = n - k;
  std::vector<int> rest;
  rest.reserve(r);
  for (int w = 0, j = 0; w < n; ++w) {
    if (j < k && wires[j] == w)
      ++j;
    else
      rest.push_back(w);
  }

  std::vector<cplx> out(std::size_t{1} << r, cplx{0.0, 0.0});
  for (std::uint64_t rem = 0; rem < out.size(); ++rem) {
    std::uint64_t base = 0;
    for (int p = 0; p < r; ++p)
      if (rem & wire_mask(r, p)) base |= wire_mask(n, rest[p]);
    cplx acc{0.0, 0.0};
    for (std::uint64_t sub = 0; sub < known_factor.dim(); ++sub) {
      std::uint64_t idx = base;
      for (int p = 0; p < k; ++p)
        if (sub & wire_mask(k, p)) idx |= wire_mask(n, wires[p]);
      acc += std::conj(known_factor[sub]) * state[idx];
    }
    out[rem] = acc;
  }
  return Statevector(r, std::move(out));
}

DensityMatrix::DensityMatrix(int n_qubits, std::vector<cplx> entries)
    : n_qubits_(n_qubits),
      dim_(std::size_t{1} << n_qubits),
      entries_(std::move(entries)) {
  check_qubit_count(n_qubits);
  if (entries_.size() != dim_ * dim_)
    throw std::invalid_argument("entry count does not match qubit count");
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      if (std::abs(at(r, c) - std::conj(at(c, r))) > kTol)
        throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(trace_real() - 1.0) > kTol)
    throw std::invalid_argument("density matrix trace is not 1");
}

DensityMatrix DensityMatrix::from_pure(const Statevector& state) {
  const std::size_t d = state.dim();
  std::vector<cplx> entries(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      entries[r * d + c] = state[r] * std::conj(state[c]);
  return DensityMatrix(state.n_qubits(), std::move(entries));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_qubit_count(n_qubits);
  const std::size_t d = std::size_t{1} << n_qubits;
  std::vector<cplx> entries(d * d, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < d; ++i) entries[i * d + i] = 1.0 / double(d);
  return DensityMatrix(n_qubits, std::move(entries));
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i).real();
  return t;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  // Cyclic Jacobi for Hermitian matrices; plenty for the small registers the
  // tests inspect.
  std::vector<cplx> a = entries_;
  const std::size_t d = dim_;
  auto el = [&](std::size_t r, std::size_t c) -> cplx& { return a[r * d + c]; };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += std::norm(el(p, q));
    if (off < 1e-24) break;

    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const cplx apq = el(p, q);
        if (std::abs(apq) < 1e-15) continue;
        const double app = el(p, p).real();
        const double aqq = el(q, q).real();
        const cplx u = apq / std::abs(apq);
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Columns, then rows: A <- J^H A J with J mixing columns p and q.
        for (std::size_t r = 0; r < d; ++r) {
          const cplx arp = el(r, p);
          const cplx arq = el(r, q);
          el(r, p) = c * arp - s * std::conj(u) * arq;
          el(r, q) = s * u * arp + c * arq;
        }
        for (std::size_t col = 0; col < d; ++col) {
          const cplx apc = el(p, col);
          const cplx aqc = el(q, col);
          el(p, col) = c * apc - s * u * aqc;
          el(q, col) = s * std::conj(u) * apc + c * aqc;
        }
      }
    }
  }
  std::vector<double> eig(d);
  for (std::size_t i = 0; i < d; ++i) eig[i] = el(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("density matrix dimension mismatch");
  double m = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
  return m;
}

DensityMatrix mix(const std::vector<Statevector>& states,
                  const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size())
    throw std::invalid_argument("mix needs matching states and weights");
  const std::size_t d = states[0].dim();
  double wsum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mix weight is negative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > kTol)
    throw std::invalid_argument("mix weights do not sum to 1");

  std::vector<cplx> entries(d * d, cplx{0.0, 0.0});
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (states[s].dim() != d)
      throw std::invalid_argument("mix state dimension mismatch");
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        entries[r * d + c] +=
            weights[s] * states[s][r] * std::conj(states[s][c]);
  }
  return DensityMatrix(states[0].n_qubits(), std::move(entries));
}

namespace {

void check_keep(int n, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("keep set is empty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n)
      throw std::out_of_range("keep wire out of range");
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      if (keep[i] == keep[j])
        throw std::invalid_argument("keep wires must be distinct");
  }
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const int n = rho.n_qubits();
  check_keep(n, keep);
  const int k = static_cast<int>(keep.size());

  std::vector<bool> kept(n, false);
  for (int w : keep) kept[w] = true;
  std::vector<int> traced;
  for (int w = 0; w < n; ++w)
    if (!kept[w]) traced.push_back(w);
  const int e = static_cast<int>(traced.size());

  const std::size_t dk = std::size_t{1} << k;
  const std::size_t de = std::size_t{1} << e;
  std::vector<cplx> entries(dk * dk, cplx{0.0, 0.0});
  for (std::uint64_t r = 0; r < dk; ++r) {
    for (std::uint64_t c = 0; c < dk; ++c) {
      std::uint64_t rbase = 0, cbase = 0;
      for (int p = 0; p < k; ++p) {
        if (r & wire_mask(k, p)) rbase |= wire_mask(n, keep[p]);
        if (c & wire_mask(k, p)) cbase |= wire_mask(n, keep[p]);
      }
      cplx acc{0.0, 0.0};
      for (std::uint64_t env = 0; env < de; ++env) {
        std::uint64_t ext = 0;
        for (int p = 0; p < e; ++p)
          if (env & wire_mask(e, p)) ext |= wire_mask(n, traced[p]);
        acc += rho.at(rbase | ext, cbase | ext);
      }
      entries[r * dk + c] = acc;
    }
  }
  return DensityMatrix(k, std::move(entries));
}

DensityMatrix reduced_density(const Statevector& state,
                              const std::vector<int>& keep) {
  const int n = state.n_qubits();
  check_keep(n, keep);
  const int k = static_cast<int>(keep.size());

  std::vector<bool> kept(n, false);
  for (int w : keep) kept[w] = true;
  std::vector<int> traced;
  for (int w = 0; w < n; ++w)
    if (!kept[w]) traced.push_back(w);
  const int e = static_cast<int>(traced.size());

  const std::size_t dk = std::size_t{1} << k;
  const std::size_t de = std::size_t{1} << e;
  std::vector<cplx> entries(dk * dk, cplx{0.0, 0.0});
  for (std::uint64_t env = 0; env < de; ++env) {
    std::uint64_t ext = 0;
    for (int p = 0; p < e; ++p)
      if (env & wire_mask(e, p)) ext |= wire_mask(n, traced[p]);
    for (std::uint64_t r = 0; r < dk; ++r) {
      std::uint64_t rbase = 0;
      for (int p = 0; p < k; ++p)
        if (r & wire_mask(k, p)) rbase |= wire_mask(n, keep[p]);
      const cplx ar = state[rbase | ext];
      if (ar == cplx{0.0, 0.0}) continue;
      for (std::uint64_t c = 0; c < dk; ++c) {
        std::uint64_t cbase = 0;
        for (int p = 0; p < k; ++p)
          if (c & wire_mask(k, p)) cbase |= wire_mask(n, keep[p]);
        entries[r * dk + c] += ar * std::conj(state[cbase | ext]);
      }
    }
  }
  return DensityMatrix(k, std::move(entries));
}

}  // namespace fdqc
