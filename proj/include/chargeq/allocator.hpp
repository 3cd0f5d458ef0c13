#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "chargeq/constants.hpp"
#include "chargeq/device.hpp"
#include "chargeq/error.hpp"
#include "chargeq/layout.hpp"
#include "chargeq/physics.hpp"

namespace chargeq {

struct MarginRule {
  double active_ratio = 1e3;      // detuning/J for qubits in use now
  double future_floor_ratio = 50; // floor for qubits used k slots later
};

// Required detuning for a qubit that will be operated k slots from now:
// max(active_ratio*J/k, future_floor_ratio*J).
inline double margin_rule(double J, int k, const MarginRule& rule = {}) {
  if (!(J > 0.0)) throw Error(ErrorKind::invalid_input, "margin rule needs J > 0");
  if (k < 1) throw Error(ErrorKind::invalid_input, "future distance must be >= 1");
  return std::max(rule.active_ratio * J / k, rule.future_floor_ratio * J);
}

// Protection requirement attached to one qubit (rad/s). Active qubits carry
// the full active ratio; idle qubits the relaxed future rule.
inline double qubit_margin_need(const ResonantLayout& layout, int q, double j_max,
                                const MarginRule& rule) {
  if (layout.is_active(q)) return rule.active_ratio * j_max;
  for (const auto& iq : layout.idle)
    if (iq.qubit == q) return margin_rule(j_max, iq.future_distance, rule);
  throw Error(ErrorKind::contract, "qubit missing from layout");
}

// Detuning required between two qubits in different clusters: the more
// relaxed of the two per-qubit needs (an idle qubit far from use does not
// force the full active spacing onto its partner).
inline double required_detuning(const ResonantLayout& layout, int qi, int qj,
                                double j_max, const MarginRule& rule) {
  return std::min(qubit_margin_need(layout, qi, j_max, rule),
                  qubit_margin_need(layout, qj, j_max, rule));
}

struct AllocationResult {
  Eigen::VectorXd omega;    // rad/s per qubit
  Eigen::VectorXd flux;     // Phi_0 units per qubit
  Eigen::MatrixXd margins;  // pairwise slack, rad/s (0 on diagonal/in-cluster)
  bool feasible = false;
  std::string certificate;  // set when infeasible
};

struct AllocationCheck {
  bool pass = false;
  double worst_slack = 0.0;  // rad/s, most negative pairwise slack
  int worst_i = -1, worst_j = -1;
  std::vector<std::string> violations;
};

// Independent re-check of every pairwise requirement, band containment and
// flux reachability. Shares only the margin-rule definitions with allocate.
inline AllocationCheck validate_allocation(const AllocationResult& result,
                                           const ResonantLayout& layout,
                                           const DeviceSpec& device,
                                           const DerivedParams& params,
                                           const MarginRule& rule = {}) {
  const int n = static_cast<int>(device.size());
  check_layout(layout, device.size());
  if (result.omega.size() != n)
    throw Error(ErrorKind::invalid_input, "allocation size mismatch");
  AllocationCheck check;
  check.pass = true;
  check.worst_slack = std::numeric_limits<double>::infinity();
  const double j_max = params.max_coupling();
  const double lo = constants::two_pi * device.band_low;
  const double hi = constants::two_pi * device.band_high;
  auto fail = [&](const std::string& msg) {
    check.pass = false;
    check.violations.push_back(msg);
  };

  for (int i = 0; i < n; ++i) {
    if (result.omega(i) < lo - 1e-6 || result.omega(i) > hi + 1e-6)
      fail("qubit " + std::to_string(i) + " outside the band");
    double max_ej = 2.0 * device.qubits[i].ej0;  // Hz
    if (result.omega(i) / constants::two_pi > max_ej * (1.0 + 1e-12))
      fail("qubit " + std::to_string(i) + " frequency unreachable (above 2*EJ0)");
    double round_trip = constants::two_pi *
                        josephson_energy(device.qubits[i].ej0, result.flux(i));
    if (std::abs(round_trip - result.omega(i)) >
        1e-9 * std::max(1.0, std::abs(result.omega(i))))
      fail("qubit " + std::to_string(i) + " flux does not reproduce omega");
  }

  for (int i = 0; i < n && j_max > 0.0; ++i)
    for (int j = i + 1; j < n; ++j) {
      int ci = layout.cluster_of(i), cj = layout.cluster_of(j);
      if (ci >= 0 && ci == cj) {
        double scale = std::max(std::abs(result.omega(i)), std::abs(result.omega(j)));
        if (std::abs(result.omega(i) - result.omega(j)) > 1e-9 * scale)
          fail("cluster of qubits " + std::to_string(i) + "," + std::to_string(j) +
               " is not resonant");
        continue;
      }
      double req = required_detuning(layout, i, j, j_max, rule);
      double slack = std::abs(result.omega(i) - result.omega(j)) - req;
      if (slack < check.worst_slack) {
        check.worst_slack = slack;
        check.worst_i = i;
        check.worst_j = j;
      }
      if (slack < 0.0)
        fail("detuning between qubits " + std::to_string(i) + " and " +
             std::to_string(j) + " below the required margin");
    }
  if (!std::isfinite(check.worst_slack)) check.worst_slack = 0.0;
  return check;
}

namespace detail {

struct Slot {
  double need = 0.0;        // rad/s spacing this slot demands
  std::vector<int> qubits;  // members sharing the slot frequency
  int order_key = 0;        // smallest qubit index, for deterministic ties
};

// Counting lower bound on the spectral span: for every need level v, all
// slots demanding >= v must sit pairwise >= v apart.
inline double counting_lower_bound(const std::vector<Slot>& slots) {
  double bound = 0.0;
  for (const auto& s : slots) {
    std::size_t count = 0;
    for (const auto& t : slots)
      if (t.need >= s.need) ++count;
    if (count > 1) bound = std::max(bound, (count - 1) * s.need);
  }
  return bound;
}

}  // namespace detail

// Greedy frequency allocation: slots sorted by decreasing margin need are
// placed bottom-up with the minimal admissible gaps, then the leftover band
// is distributed evenly across the gaps. Deterministic by construction.
inline AllocationResult allocate(const ResonantLayout& layout,
                                 const DeviceSpec& device,
                                 const DerivedParams& params,
                                 const MarginRule& rule = {}) {
  const int n = static_cast<int>(device.size());
  check_layout(layout, device.size());
  const double j_max = params.max_coupling();
  const double lo = constants::two_pi * device.band_low;
  const double hi = constants::two_pi * device.band_high;
  const double width = hi - lo;

  std::vector<detail::Slot> slots;
  for (const auto& cluster : layout.clusters()) {
    detail::Slot s;
    s.need = j_max > 0.0 ? rule.active_ratio * j_max : 0.0;
    s.qubits = cluster;
    s.order_key = *std::min_element(cluster.begin(), cluster.end());
    slots.push_back(s);
  }
  for (const auto& iq : layout.idle) {
    detail::Slot s;
    s.need = j_max > 0.0 ? margin_rule(j_max, iq.future_distance, rule) : 0.0;
    s.qubits = {iq.qubit};
    s.order_key = iq.qubit;
    slots.push_back(s);
  }
  std::stable_sort(slots.begin(), slots.end(),
                   [](const detail::Slot& a, const detail::Slot& b) {
                     if (a.need != b.need) return a.need > b.need;
                     return a.order_key < b.order_key;
                   });

  // Minimal packing: the gap above slot m-1 is slot m's need (the smaller of
  // the two adjacent needs in descending order).
  std::vector<double> offsets(slots.size(), 0.0);
  for (std::size_t m = 1; m < slots.size(); ++m)
    offsets[m] = offsets[m - 1] + slots[m].need;
  const double span = slots.empty() ? 0.0 : offsets.back();

  AllocationResult result;
  result.omega = Eigen::VectorXd::Zero(n);
  result.flux = Eigen::VectorXd::Zero(n);
  result.margins = Eigen::MatrixXd::Zero(n, n);

  if (span > width) {
    result.feasible = false;
    double bound = detail::counting_lower_bound(slots);
    char buf[256];
    if (bound > width) {
      std::snprintf(buf, sizeof(buf),
                    "infeasible: %zu slots need a span of at least %.6g GHz "
                    "(counting bound) but the band is %.6g GHz wide",
                    slots.size(), bound / constants::two_pi / 1e9,
                    width / constants::two_pi / 1e9);
    } else {
      std::snprintf(buf, sizeof(buf),
                    "unknown/greedy-failed: greedy packing needs %.6g GHz in a "
                    "%.6g GHz band; counting bound %.6g GHz does not prove "
                    "infeasibility",
                    span / constants::two_pi / 1e9,
                    width / constants::two_pi / 1e9,
                    bound / constants::two_pi / 1e9);
    }
    result.certificate = buf;
    return result;
  }

  auto assign = [&](bool spread) {
    const double slack = width - span;
    for (std::size_t m = 0; m < slots.size(); ++m) {
      double pos;
      if (slots.size() == 1) {
        pos = lo + width / 2.0;
      } else if (spread) {
        pos = lo + offsets[m] +
              slack * static_cast<double>(m) / (slots.size() - 1);
      } else {
        pos = lo + offsets[m];
      }
      for (int q : slots[m].qubits) result.omega(q) = pos;
    }
  };

  for (bool spread : {true, false}) {
    assign(spread);
    bool reachable = true;
    for (int q = 0; q < n; ++q)
      if (result.omega(q) / constants::two_pi > 2.0 * device.qubits[q].ej0)
        reachable = false;
    if (reachable) break;
    if (!spread)
      throw Error(ErrorKind::infeasible,
                  "unreachable-frequency: some qubit cannot reach its assigned "
                  "frequency (above 2*EJ0)");
  }

  for (int q = 0; q < n; ++q)
    result.flux(q) = flux_for_frequency(device.qubits[q].ej0,
                                        result.omega(q) / constants::two_pi);

  for (int i = 0; i < n && j_max > 0.0; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int ci = layout.cluster_of(i), cj = layout.cluster_of(j);
      if (ci >= 0 && ci == cj) continue;
      result.margins(i, j) = std::abs(result.omega(i) - result.omega(j)) -
                             required_detuning(layout, i, j, j_max, rule);
    }
  result.feasible = true;
  return result;
}

}  // namespace chargeq
