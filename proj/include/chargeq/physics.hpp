#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "chargeq/constants.hpp"
#include "chargeq/device.hpp"
#include "chargeq/error.hpp"

namespace chargeq {

// Circuit-level quantities derived from the capacitance network and the
// control settings. Energies are stored as E/h in hertz, frequencies and
// coupling rates as angular rates in rad/s.
struct DerivedParams {
  Eigen::VectorXd d_sum;     // farad, total island capacitance D_i
  double beta = 0.0;         // farad
  Eigen::VectorXd e_charge;  // Hz, Cooper-pair charging energy E_ci/h
  Eigen::MatrixXd e_couple;  // Hz, coupling energy E_ij/h (symmetric, zero diag)
  Eigen::VectorXd omega;     // rad/s, qubit angular frequency
  Eigen::MatrixXd j_couple;  // rad/s, coupling rate J_ij (symmetric, zero diag)

  std::size_t size() const { return static_cast<std::size_t>(omega.size()); }

  double max_coupling() const {
    double m = 0.0;
    for (Eigen::Index i = 0; i < j_couple.rows(); ++i)
      for (Eigen::Index j = i + 1; j < j_couple.cols(); ++j)
        m = std::max(m, j_couple(i, j));
    return m;
  }
};

// Effective Josephson energy of the two-junction loop, E_J/h in Hz, as a
// function of external flux in Phi_0 units on the branch [0, 0.5].
inline double josephson_energy(double ej0, double flux) {
  if (!(ej0 > 0.0))
    throw Error(ErrorKind::invalid_input, "ej0 must be > 0");
  if (!(flux >= 0.0 && flux <= 0.5))
    throw Error(ErrorKind::invalid_input, "flux outside the canonical branch [0, 0.5]");
  return 2.0 * ej0 * std::cos(constants::pi * flux);
}

// Inverse of josephson_energy on the canonical branch.
inline double flux_for_frequency(double ej0, double target_ej) {
  if (!(ej0 > 0.0))
    throw Error(ErrorKind::invalid_input, "ej0 must be > 0");
  if (target_ej < 0.0 || target_ej > 2.0 * ej0)
    throw Error(ErrorKind::invalid_input,
                "target Josephson energy outside [0, 2*ej0]");
  double c = target_ej / (2.0 * ej0);
  if (c > 1.0) c = 1.0;
  return std::acos(c) / constants::pi;
}

inline DerivedParams derive_params(const DeviceSpec& device,
                                   const ControlSettings& controls) {
  check_device(device);
  check_controls(device, controls);
  const auto n = static_cast<Eigen::Index>(device.size());
  namespace k = constants;

  DerivedParams p;
  p.d_sum.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p.d_sum(i) = device.qubits[i].total_capacitance();
    if (!(p.d_sum(i) > 0.0))
      throw Error(ErrorKind::invalid_input,
                  "qubit " + std::to_string(i) + " has zero total capacitance");
  }

  p.beta = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double cm = device.qubits[i].c_mutual;
    p.beta += cm * (p.d_sum(i) - cm) / p.d_sum(i);
  }
  if (!(p.beta > 0.0))
    throw Error(ErrorKind::invalid_input,
                "degenerate device: beta = 0 (no mutual capacitance network)");

  const double e2 = k::elementary_charge * k::elementary_charge;
  p.e_charge.resize(n);
  p.e_couple = Eigen::MatrixXd::Zero(n, n);
  p.omega.resize(n);
  p.j_couple = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double cm = device.qubits[i].c_mutual;
    double di = p.d_sum(i);
    p.e_charge(i) = 2.0 * e2 * (1.0 + cm * cm / (p.beta * di)) / di / k::planck;
    double ej = josephson_energy(device.qubits[i].ej0, controls.flux[i]);
    p.omega(i) = k::two_pi * ej;  // omega = E_J/hbar with E_J as E/h
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      double cmj = device.qubits[j].c_mutual;
      p.e_couple(i, j) =
          4.0 * e2 * cm * cmj / (p.beta * di * p.d_sum(j)) / k::planck;
      p.j_couple(i, j) = k::two_pi * p.e_couple(i, j) / 4.0;  // J = E_ij/(4 hbar)
    }
  }
  return p;
}

// Operating-regime diagnostics. Always returns a report; never throws on a
// bad regime.
struct QubitRegimeReport {
  double ej_ec_ratio = 0.0;      // E_J/E_C at the current flux
  bool ej_ec_pass = false;       // >= 100
  double thermal_ratio = 0.0;    // hbar*omega / (k_B T)
  bool thermal_pass = false;     // >= 10
  double xmon_ratio = 0.0;       // (C_m + C_B)/C_J
  bool xmon_pass = false;        // >= 10 (warning-level check)
};

struct DeviceReport {
  std::vector<QubitRegimeReport> qubits;
  bool pass = false;
};

inline constexpr double kEjEcThreshold = 100.0;
inline constexpr double kThermalThreshold = 10.0;
inline constexpr double kXmonThreshold = 10.0;

inline DeviceReport validate_device(const DeviceSpec& device,
                                    const ControlSettings& controls) {
  DerivedParams p = derive_params(device, controls);
  DeviceReport report;
  report.pass = true;
  for (std::size_t i = 0; i < device.size(); ++i) {
    QubitRegimeReport q;
    double ej = josephson_energy(device.qubits[i].ej0, controls.flux[i]);
    q.ej_ec_ratio = ej / p.e_charge(static_cast<Eigen::Index>(i));
    q.ej_ec_pass = q.ej_ec_ratio >= kEjEcThreshold;
    // hbar*omega = h * (E_J/h), so the ratio is h*nu / (k_B T).
    q.thermal_ratio = constants::planck * ej /
                      (constants::boltzmann * device.temperature);
    q.thermal_pass = q.thermal_ratio >= kThermalThreshold;
    const QubitSpec& spec = device.qubits[i];
    q.xmon_ratio = spec.c_junction > 0.0
                       ? (spec.c_mutual + spec.c_shunt) / spec.c_junction
                       : std::numeric_limits<double>::infinity();
    q.xmon_pass = q.xmon_ratio >= kXmonThreshold;
    report.pass = report.pass && q.ej_ec_pass && q.thermal_pass && q.xmon_pass;
    report.qubits.push_back(q);
  }
  return report;
}

}  // namespace chargeq
