#pragma once

#include <cstddef>
#include <vector>

#include "chargeq/error.hpp"

namespace chargeq {

// All quantities SI at this interface: capacitances in farad, Josephson
// energies as E/h in hertz, temperature in kelvin, times in seconds.
struct QubitSpec {
  double c_junction = 0.0;  // C_i
  double c_gate = 0.0;      // C_gi
  double c_mutual = 0.0;    // C_mi, the all-to-all coupling capacitor
  double c_shunt = 0.0;     // C_Bi
  double c_readout = 0.0;   // C_Ri
  double c_drive = 0.0;     // C_Xi
  double ej0 = 0.0;         // single-junction E_J0/h, Hz

  // Total capacitance connected to the island.
  double total_capacitance() const {
    return c_junction + c_gate + c_mutual + c_shunt + c_readout + c_drive;
  }
};

struct DeviceSpec {
  std::vector<QubitSpec> qubits;
  double temperature = 0.0;     // K
  double coherence_time = 0.0;  // s
  double band_low = 0.0;        // omega/2pi lower bound, Hz
  double band_high = 0.0;       // omega/2pi upper bound, Hz

  std::size_t size() const { return qubits.size(); }
};

// Per-qubit control knobs. Flux in units of Phi_0, restricted to the
// monotone branch [0, 0.5]; gate charge n_g (0.5 = degeneracy point).
struct ControlSettings {
  std::vector<double> flux;
  std::vector<double> gate_charge;

  static ControlSettings degenerate(std::size_t n, double flux_value = 0.0) {
    ControlSettings c;
    c.flux.assign(n, flux_value);
    c.gate_charge.assign(n, 0.5);
    return c;
  }
};

inline void check_device(const DeviceSpec& device) {
  if (device.qubits.empty())
    throw Error(ErrorKind::invalid_input, "device must contain at least one qubit");
  if (!(device.band_low < device.band_high))
    throw Error(ErrorKind::invalid_input, "device band_low must be below band_high");
  if (!(device.temperature > 0.0))
    throw Error(ErrorKind::invalid_input, "device temperature must be positive");
  if (!(device.coherence_time > 0.0))
    throw Error(ErrorKind::invalid_input, "device coherence_time must be positive");
  for (std::size_t i = 0; i < device.qubits.size(); ++i) {
    const QubitSpec& q = device.qubits[i];
    if (q.c_junction < 0 || q.c_gate < 0 || q.c_mutual < 0 || q.c_shunt < 0 ||
        q.c_readout < 0 || q.c_drive < 0)
      throw Error(ErrorKind::invalid_input,
                  "qubit " + std::to_string(i) + ": capacitances must be >= 0");
    if (!(q.c_mutual > 0.0))
      throw Error(ErrorKind::invalid_input,
                  "qubit " + std::to_string(i) + ": c_mutual must be > 0");
    if (!(q.ej0 > 0.0))
      throw Error(ErrorKind::invalid_input,
                  "qubit " + std::to_string(i) + ": ej0 must be > 0");
  }
}

inline void check_controls(const DeviceSpec& device, const ControlSettings& controls) {
  if (controls.flux.size() != device.size() ||
      controls.gate_charge.size() != device.size())
    throw Error(ErrorKind::invalid_input,
                "control settings length does not match device size");
  for (std::size_t i = 0; i < controls.flux.size(); ++i) {
    if (!(controls.flux[i] >= 0.0 && controls.flux[i] <= 0.5))
      throw Error(ErrorKind::invalid_input,
                  "flux of qubit " + std::to_string(i) +
                      " outside the canonical branch [0, 0.5]");
  }
}

}  // namespace chargeq
