#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "chargeq/allocator.hpp"
#include "chargeq/circuit.hpp"
#include "chargeq/device.hpp"
#include "chargeq/error.hpp"
#include "chargeq/hamiltonian.hpp"
#include "chargeq/protocols.hpp"

namespace chargeq {

struct Timeline {
  std::vector<ScheduleSegment> segments;
  double total_duration = 0.0;  // s
  int op_count = 0;             // non-virtual (nonzero-duration) segments
  VirtualPhaseLedger ledger;
};

enum class SimModel { FULL, RWA };

struct BudgetReport {
  double total_duration = 0.0;
  double coherence_time = 0.0;
  bool within_budget = false;
  int op_count = 0;
  int op_guideline = 1000;
};

struct SegmentFidelity {
  std::string label;
  double rwa_fidelity = 1.0;
  double full_fidelity = 1.0;
  bool has_full = false;  // full_fidelity only computed under the FULL model
};

struct FidelityReport {
  std::vector<SegmentFidelity> per_segment;
  double end_to_end = 0.0;
  BudgetReport budget;
};

namespace detail {

// Layers until qubit q is next in a physical (non-RZ) gate, counting from
// layer `from` exclusive; clamped to >= 1, large when never used again.
inline int next_use_distance(const Circuit& circuit, int q, std::size_t from) {
  constexpr int kNever = 1000000;
  for (std::size_t l = from + 1; l < circuit.layers.size(); ++l)
    for (const auto& g : circuit.layers[l]) {
      if (g.kind == GateKind::RZ) continue;
      for (int gq : g.qubits)
        if (gq == q) return static_cast<int>(l - from);
    }
  return kNever;
}

}  // namespace detail

// One schedule segment per layer; RZ gates are virtual (folded into the
// ledger and applied as exact diagonal kicks, zero duration). Throws on the
// first infeasible or malformed layer; nothing partial is returned.
inline Timeline compile(const Circuit& circuit, const DeviceSpec& device,
                        const ProtocolOptions& options = {}) {
  check_device(device);
  const int n = static_cast<int>(device.size());
  if (circuit.n_qubits() > n)
    throw Error(ErrorKind::invalid_input,
                "circuit uses qubit q" + std::to_string(circuit.n_qubits() - 1) +
                    " but the device has only " + std::to_string(n) + " qubits");

  Timeline timeline;
  timeline.ledger = VirtualPhaseLedger(device.size());

  for (std::size_t l = 0; l < circuit.layers.size(); ++l) {
    const auto& layer = circuit.layers[l];
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> groups;
    std::vector<Rotation> physical, virtual_z;
    bool has_swap = false, has_sqiswap = false;
    for (const auto& g : layer) {
      switch (g.kind) {
        case GateKind::RX:
          physical.push_back({g.qubits[0], Axis::X, g.angle});
          break;
        case GateKind::RY:
          physical.push_back({g.qubits[0], Axis::Y, g.angle});
          break;
        case GateKind::RZ:
          virtual_z.push_back({g.qubits[0], Axis::Z, g.angle});
          break;
        case GateKind::SWAP:
          pairs.push_back({g.qubits[0], g.qubits[1]});
          has_swap = true;
          break;
        case GateKind::SQISWAP:
          pairs.push_back({g.qubits[0], g.qubits[1]});
          has_sqiswap = true;
          break;
        case GateKind::GROUP:
          groups.push_back(g.qubits);
          if (g.group_kind == SegmentKind::SWAP_LAYER) has_swap = true;
          else has_sqiswap = true;
          break;
      }
    }
    if (has_swap && has_sqiswap)
      throw Error(ErrorKind::invalid_input,
                  "layer " + std::to_string(l) +
                      " mixes SWAP and SQISWAP timings in one segment");
    const bool coupling = !pairs.empty() || !groups.empty();
    if (coupling && !physical.empty())
      throw Error(ErrorKind::invalid_input,
                  "layer " + std::to_string(l) +
                      " mixes physical single-qubit gates with coupling gates");

    std::vector<int> future(device.size(), 1);
    for (int q = 0; q < n; ++q)
      future[q] = detail::next_use_distance(circuit, q, l);

    ScheduleSegment segment;
    try {
      if (coupling) {
        segment = coupling_segment(pairs, groups,
                                   has_swap ? SegmentKind::SWAP_LAYER
                                            : SegmentKind::SQISWAP_LAYER,
                                   device, future, options);
      } else {
        // Idle-spectrum layer (rotations and/or pure-virtual RZ).
        ResonantLayout layout;
        for (int q = 0; q < n; ++q) layout.idle.push_back({q, future[q]});
        ControlSettings probe = ControlSettings::degenerate(device.size());
        DerivedParams params = derive_params(device, probe);
        AllocationResult alloc = allocate(layout, device, params, options.rule);
        if (!alloc.feasible)
          throw Error(ErrorKind::infeasible, "crowding: " + alloc.certificate);
        segment.controls = detail::controls_from_allocation(alloc);
        segment.layout = layout;
        segment.omega = alloc.omega;
        if (physical.empty()) {
          segment.kind = SegmentKind::IDLE;
          segment.duration = 0.0;
          segment.label = "virtual";
        } else {
          segment.kind = SegmentKind::SINGLE;
          segment.duration = options.single_gate_duration;
          segment.rotations = physical;
          segment.label = "single";
        }
      }
    } catch (Error& e) {
      throw Error(e.kind(), "layer " + std::to_string(l) + ": " + e.what());
    }
    segment.label += "[" + std::to_string(l) + "]";
    for (const auto& rz : virtual_z) segment.rotations.push_back(rz);

    timeline.ledger.accumulate(segment);
    for (const auto& rz : virtual_z)
      timeline.ledger.add_virtual_z(rz.qubit, rz.angle);
    timeline.total_duration += segment.duration;
    if (segment.duration > 0.0) ++timeline.op_count;
    timeline.segments.push_back(std::move(segment));
  }
  return timeline;
}

inline BudgetReport budget_check(const Timeline& timeline, const DeviceSpec& device) {
  BudgetReport report;
  report.total_duration = timeline.total_duration;
  report.coherence_time = device.coherence_time;
  report.within_budget = timeline.total_duration <= device.coherence_time;
  report.op_count = timeline.op_count;
  return report;
}

// Multiplies per-segment propagators under the chosen model and compares
// against the ideal targets (RWA generators plus exact rotation kicks).
inline FidelityReport simulate_timeline(const Timeline& timeline,
                                        const DeviceSpec& device, SimModel model) {
  const int n = static_cast<int>(device.size());
  check_simulable(n);
  ControlSettings probe = ControlSettings::degenerate(device.size());
  DerivedParams base = derive_params(device, probe);
  const std::size_t dim = std::size_t{1} << n;

  CMatrix u_model = CMatrix::Identity(dim, dim);
  CMatrix u_ideal = CMatrix::Identity(dim, dim);
  FidelityReport report;
  for (const auto& segment : timeline.segments) {
    CMatrix ideal = segment_ideal_unitary(segment, base);
    SegmentFidelity fid;
    fid.label = segment.label;
    fid.rwa_fidelity = 1.0;  // the RWA model is the generator of the targets
    CMatrix chosen = ideal;
    if (model == SimModel::FULL) {
      DerivedParams p = base;
      p.omega = segment.omega;
      CMatrix full = propagator(build_full(p), segment.duration);
      for (const auto& r : segment.rotations)
        full = rotation_unitary(n, r) * full;
      fid.full_fidelity = compare(full, ideal);
      fid.has_full = true;
      chosen = full;
    }
    report.per_segment.push_back(fid);
    u_model = chosen * u_model;
    u_ideal = ideal * u_ideal;
  }
  report.end_to_end = timeline.segments.empty() ? 1.0 : compare(u_model, u_ideal);
  report.budget = budget_check(timeline, device);
  return report;
}

}  // namespace chargeq
