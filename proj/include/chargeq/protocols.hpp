#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "chargeq/allocator.hpp"
#include "chargeq/constants.hpp"
#include "chargeq/device.hpp"
#include "chargeq/error.hpp"
#include "chargeq/hamiltonian.hpp"
#include "chargeq/layout.hpp"
#include "chargeq/physics.hpp"

namespace chargeq {

enum class SegmentKind { IDLE, INIT, SINGLE, SWAP_LAYER, SQISWAP_LAYER };

enum class Axis { X, Y, Z };

struct Rotation {
  int qubit = 0;
  Axis axis = Axis::X;
  double angle = 0.0;  // rad
};

inline const char* segment_kind_name(SegmentKind k) {
  switch (k) {
    case SegmentKind::IDLE: return "IDLE";
    case SegmentKind::INIT: return "INIT";
    case SegmentKind::SINGLE: return "SINGLE";
    case SegmentKind::SWAP_LAYER: return "SWAP_LAYER";
    case SegmentKind::SQISWAP_LAYER: return "SQISWAP_LAYER";
  }
  return "?";
}

// One piecewise-constant stretch of the control timeline.
struct ScheduleSegment {
  ControlSettings controls;
  double duration = 0.0;  // s
  ResonantLayout layout;
  std::string label;
  SegmentKind kind = SegmentKind::IDLE;
  std::vector<Rotation> rotations;  // for SINGLE segments (applied after idling)
  Eigen::VectorXd omega;            // rad/s, the allocated frequencies
  double mean_coupling = 0.0;       // rad/s, mean intra-cluster J (coupling layers)
};

// Accumulated per-qubit z-frame phase: each segment contributes omega_i*tau
// (the idle factor exp(+i theta sigma_z/2)); virtual RZ(angle) contributes
// -angle.
struct VirtualPhaseLedger {
  std::vector<double> theta;

  explicit VirtualPhaseLedger(std::size_t n = 0) : theta(n, 0.0) {}

  void accumulate(const ScheduleSegment& segment) {
    for (std::size_t q = 0; q < theta.size() &&
                            q < static_cast<std::size_t>(segment.omega.size()); ++q)
      theta[q] += segment.omega(static_cast<Eigen::Index>(q)) * segment.duration;
  }

  void add_virtual_z(int qubit, double angle) { theta.at(qubit) -= angle; }
};

inline constexpr double kDefaultSingleGateDuration = 20e-9;  // s
inline constexpr double kCouplingUniformityTolerance = 1e-2;

struct ProtocolOptions {
  MarginRule rule;
  double single_gate_duration = kDefaultSingleGateDuration;
};

// All-idle layout with explicit future distances.
inline ResonantLayout idle_layout(const DeviceSpec& device,
                                  const std::vector<int>& future) {
  if (future.size() != device.size())
    throw Error(ErrorKind::invalid_input, "future distance list size mismatch");
  ResonantLayout layout;
  for (std::size_t q = 0; q < future.size(); ++q) {
    if (future[q] < 1)
      throw Error(ErrorKind::invalid_input, "future distance must be >= 1");
    layout.idle.push_back({static_cast<int>(q), future[q]});
  }
  return layout;
}

namespace detail {

inline ControlSettings controls_from_allocation(const AllocationResult& alloc) {
  ControlSettings c;
  const auto n = alloc.flux.size();
  c.flux.assign(alloc.flux.data(), alloc.flux.data() + n);
  c.gate_charge.assign(n, 0.5);
  return c;
}

}  // namespace detail

struct InitialPreparation {
  ControlSettings controls;
  QuantumState state;                  // declared post-relaxation state |++...+>
  Eigen::VectorXd omega;               // rad/s
  std::vector<double> thermal_ratio;   // hbar*omega_i / (k_B T)
};

// Spread every qubit by the full active margin and declare the ground state
// |++...+>. The thermal inequality is enforced as a gate.
inline InitialPreparation prepare_initial(const DeviceSpec& device,
                                          const ProtocolOptions& options = {}) {
  check_device(device);
  const int n = static_cast<int>(device.size());
  ControlSettings probe = ControlSettings::degenerate(device.size());
  DerivedParams params = derive_params(device, probe);
  ResonantLayout layout = ResonantLayout::all_idle(n, 1);
  AllocationResult alloc = allocate(layout, device, params, options.rule);
  if (!alloc.feasible)
    throw Error(ErrorKind::infeasible,
                "crowding: cannot spread " + std::to_string(n) +
                    " frequencies for initialization; " + alloc.certificate);

  InitialPreparation prep;
  prep.controls = detail::controls_from_allocation(alloc);
  prep.omega = alloc.omega;
  for (int q = 0; q < n; ++q) {
    double ratio = constants::hbar * alloc.omega(q) /
                   (constants::boltzmann * device.temperature);
    prep.thermal_ratio.push_back(ratio);
    if (ratio < kThermalThreshold)
      throw Error(ErrorKind::invalid_input,
                  "preparation-invalid: qubit " + std::to_string(q) +
                      " fails the thermal check (hbar*omega/kT = " +
                      std::to_string(ratio) + " < 10)");
  }
  prep.state = QuantumState::basis(n, 0);  // |++...+>
  return prep;
}

// Coupling layer: every cluster internally resonant, everything else pushed
// apart by the margin rule. Duration pi/(2J) for SWAP, pi/(4J) for SQISWAP.
inline ScheduleSegment coupling_segment(const std::vector<std::pair<int, int>>& pairs,
                                        const std::vector<std::vector<int>>& groups,
                                        SegmentKind kind,
                                        const DeviceSpec& device,
                                        const std::vector<int>& idle_future = {},
                                        const ProtocolOptions& options = {}) {
  if (kind != SegmentKind::SWAP_LAYER && kind != SegmentKind::SQISWAP_LAYER)
    throw Error(ErrorKind::invalid_input, "coupling segment kind must be SWAP or SQISWAP");
  const int n = static_cast<int>(device.size());
  ResonantLayout layout;
  layout.pairs = pairs;
  layout.groups = groups;
  std::vector<int> active(n, 0);
  for (const auto& p : pairs) {
    if (p.first >= 0 && p.first < n) active[p.first] = 1;
    if (p.second >= 0 && p.second < n) active[p.second] = 1;
  }
  for (const auto& g : groups)
    for (int q : g)
      if (q >= 0 && q < n) active[q] = 1;
  for (int q = 0; q < n; ++q)
    if (!active[q]) {
      int k = q < static_cast<int>(idle_future.size()) ? idle_future[q] : 1;
      layout.idle.push_back({q, std::max(1, k)});
    }
  check_layout(layout, device.size());
  if (layout.clusters().empty())
    throw Error(ErrorKind::invalid_input, "coupling segment with no active cluster");

  ControlSettings probe = ControlSettings::degenerate(device.size());
  DerivedParams params = derive_params(device, probe);

  // Intra-cluster J uniformity: relative spread <= 1e-2, duration from the mean.
  double j_sum = 0.0, j_min = std::numeric_limits<double>::infinity(), j_cnt = 0.0;
  double j_peak = 0.0;
  for (const auto& cluster : layout.clusters())
    for (std::size_t a = 0; a < cluster.size(); ++a)
      for (std::size_t b = a + 1; b < cluster.size(); ++b) {
        double J = params.j_couple(cluster[a], cluster[b]);
        j_sum += J;
        j_cnt += 1.0;
        j_min = std::min(j_min, J);
        j_peak = std::max(j_peak, J);
      }
  double j_mean = j_sum / j_cnt;
  if (!(j_mean > 0.0))
    throw Error(ErrorKind::invalid_input, "cluster has zero coupling rate");
  if ((j_peak - j_min) / j_mean > kCouplingUniformityTolerance)
    throw Error(ErrorKind::invalid_input,
                "nonuniform coupling: intra-cluster J spread exceeds 1e-2");

  AllocationResult alloc = allocate(layout, device, params, options.rule);
  if (!alloc.feasible)
    throw Error(ErrorKind::infeasible, "crowding: " + alloc.certificate);

  ScheduleSegment segment;
  segment.controls = detail::controls_from_allocation(alloc);
  segment.layout = layout;
  segment.kind = kind;
  segment.omega = alloc.omega;
  segment.mean_coupling = j_mean;
  segment.duration = kind == SegmentKind::SWAP_LAYER
                         ? constants::pi / (2.0 * j_mean)
                         : constants::pi / (4.0 * j_mean);
  segment.label = kind == SegmentKind::SWAP_LAYER ? "swap" : "sqiswap";
  return segment;
}

// Physical X/Y rotation with all qubits spectrally idle; Z is virtual and
// handled by the ledger (zero duration, no segment needed).
inline ScheduleSegment single_qubit_segment(int qubit, Axis axis, double angle,
                                            const DeviceSpec& device,
                                            const std::vector<int>& future = {},
                                            const ProtocolOptions& options = {}) {
  const int n = static_cast<int>(device.size());
  if (qubit < 0 || qubit >= n)
    throw Error(ErrorKind::invalid_input, "qubit index out of range");
  ResonantLayout layout;
  for (int q = 0; q < n; ++q) {
    int k = q < static_cast<int>(future.size()) ? future[q] : 1;
    layout.idle.push_back({q, std::max(1, k)});
  }
  ControlSettings probe = ControlSettings::degenerate(device.size());
  DerivedParams params = derive_params(device, probe);
  AllocationResult alloc = allocate(layout, device, params);
  if (!alloc.feasible)
    throw Error(ErrorKind::infeasible, "crowding: " + alloc.certificate);

  ScheduleSegment segment;
  segment.controls = detail::controls_from_allocation(alloc);
  segment.layout = layout;
  segment.omega = alloc.omega;
  if (axis == Axis::Z) {
    segment.kind = SegmentKind::IDLE;
    segment.duration = 0.0;
    segment.label = "rz(virtual)";
  } else {
    segment.kind = SegmentKind::SINGLE;
    segment.duration = options.single_gate_duration;
    segment.rotations.push_back({qubit, axis, angle});
    segment.label = axis == Axis::X ? "rx" : "ry";
  }
  return segment;
}

// --- Ideal unitaries -----------------------------------------------------

// exp(-i angle sigma_axis/2) on one qubit of an N-qubit register.
inline CMatrix rotation_unitary(int n, const Rotation& r) {
  const std::size_t dim = std::size_t{1} << n;
  CMatrix u = CMatrix::Zero(dim, dim);
  double c = std::cos(r.angle / 2.0), s = std::sin(r.angle / 2.0);
  std::size_t bit = std::size_t{1} << r.qubit;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    bool hi = idx & bit;
    switch (r.axis) {
      case Axis::X:
        u(idx, idx) = c;
        u(idx ^ bit, idx) = Complex(0.0, -s);
        break;
      case Axis::Y:
        u(idx, idx) = c;
        // sigma_y |+> = i|->, sigma_y |-> = -i|+> in this basis ordering
        u(idx ^ bit, idx) = hi ? -s : s;
        break;
      case Axis::Z:
        u(idx, idx) = std::exp(Complex(0.0, hi ? r.angle / 2.0 : -r.angle / 2.0));
        break;
    }
  }
  return u;
}

// Per-qubit z-phase factor exp(+i theta_q sigma_z^q / 2).
inline CMatrix phase_unitary(int n, const std::vector<double>& theta) {
  const std::size_t dim = std::size_t{1} << n;
  CMatrix u = CMatrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double phase = 0.0;
    for (int q = 0; q < n; ++q) phase += 0.5 * theta[q] * sz_sign(idx, q);
    u(idx, idx) = std::exp(Complex(0.0, phase));
  }
  return u;
}

// RWA Hamiltonian generated by a segment's allocation.
inline HamiltonianMatrix segment_rwa_hamiltonian(const ScheduleSegment& segment,
                                                const DerivedParams& base_params) {
  DerivedParams p = base_params;
  p.omega = segment.omega;
  return build_rwa(p, segment.layout);
}

// Ideal target unitary of a segment: exp(-i H_rwa tau), with any physical
// rotations applied after the idling evolution.
inline CMatrix segment_ideal_unitary(const ScheduleSegment& segment,
                                     const DerivedParams& base_params) {
  HamiltonianMatrix h = segment_rwa_hamiltonian(segment, base_params);
  CMatrix u = propagator(h, segment.duration);
  for (const auto& r : segment.rotations)
    u = rotation_unitary(h.n_qubits, r) * u;
  return u;
}

// The same target with the per-qubit z-phases of this segment stripped:
// the canonical gate content (sqrt-iSWAP layers, rotations, identity).
inline CMatrix segment_canonical_unitary(const ScheduleSegment& segment,
                                         const DerivedParams& base_params) {
  const int n = static_cast<int>(base_params.size());
  std::vector<double> theta(n, 0.0);
  for (int q = 0; q < n; ++q) theta[q] = segment.omega(q) * segment.duration;
  CMatrix strip = phase_unitary(n, theta).adjoint();
  return strip * segment_ideal_unitary(segment, base_params);
}

}  // namespace chargeq
