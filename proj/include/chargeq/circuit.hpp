#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chargeq/error.hpp"
#include "chargeq/protocols.hpp"

namespace chargeq {

enum class GateKind { RX, RY, RZ, SWAP, SQISWAP, GROUP };

struct Gate {
  GateKind kind = GateKind::RX;
  std::vector<int> qubits;
  double angle = 0.0;                             // RX/RY/RZ
  SegmentKind group_kind = SegmentKind::SQISWAP_LAYER;  // GROUP
};

struct Circuit {
  std::vector<std::vector<Gate>> layers;

  int n_qubits() const {
    int n = 0;
    for (const auto& layer : layers)
      for (const auto& g : layer)
        for (int q : g.qubits) n = std::max(n, q + 1);
    return n;
  }
};

namespace detail {

inline int parse_qubit_token(const std::string& tok, int line_no) {
  if (tok.size() < 2 || tok[0] != 'q')
    throw Error(ErrorKind::invalid_input,
                "line " + std::to_string(line_no) + ": malformed qubit '" + tok +
                    "' (expected q<i>)");
  std::size_t pos = 0;
  int q;
  try {
    q = std::stoi(tok.substr(1), &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_input,
                "line " + std::to_string(line_no) + ": malformed qubit index '" +
                    tok + "'");
  }
  if (pos != tok.size() - 1 || q < 0)
    throw Error(ErrorKind::invalid_input,
                "line " + std::to_string(line_no) + ": malformed qubit index '" +
                    tok + "'");
  return q;
}

inline double parse_angle_token(const std::string& tok, int line_no) {
  std::size_t pos = 0;
  double a;
  try {
    a = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_input,
                "line " + std::to_string(line_no) + ": malformed angle '" + tok + "'");
  }
  if (pos != tok.size() || !std::isfinite(a))
    throw Error(ErrorKind::invalid_input,
                "line " + std::to_string(line_no) + ": malformed angle '" + tok + "'");
  return a;
}

}  // namespace detail

// Line-oriented DSL: one gate per line, `LAYER` separates layers, `#` starts
// a comment. Gates: RX/RY/RZ q<i> <angle>, SWAP q<i> q<j>, SQISWAP q<i> q<j>,
// GROUP SQISWAP q<i> q<j> q<k> [q<l>...].
inline Circuit parse_circuit(const std::string& text) {
  Circuit circuit;
  std::vector<Gate> current;
  std::set<int> layer_support;

  auto flush = [&] {
    if (!current.empty()) circuit.layers.push_back(std::move(current));
    current.clear();
    layer_support.clear();
  };
  auto claim = [&](int q, int line_no) {
    if (!layer_support.insert(q).second)
      throw Error(ErrorKind::invalid_input,
                  "line " + std::to_string(line_no) + ": qubit q" +
                      std::to_string(q) + " used twice in one layer");
  };

  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.pop_back();
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;

    const std::string& op = tok[0];
    if (op == "LAYER") {
      if (tok.size() != 1)
        throw Error(ErrorKind::invalid_input,
                    "line " + std::to_string(line_no) + ": LAYER takes no arguments");
      flush();
      continue;
    }

    Gate gate;
    if (op == "RX" || op == "RY" || op == "RZ") {
      if (tok.size() != 3)
        throw Error(ErrorKind::invalid_input,
                    "line " + std::to_string(line_no) + ": " + op +
                        " expects a qubit and an angle");
      gate.kind = op == "RX" ? GateKind::RX
                             : op == "RY" ? GateKind::RY : GateKind::RZ;
      gate.qubits = {detail::parse_qubit_token(tok[1], line_no)};
      gate.angle = detail::parse_angle_token(tok[2], line_no);
    } else if (op == "SWAP" || op == "SQISWAP") {
      if (tok.size() != 3)
        throw Error(ErrorKind::invalid_input,
                    "line " + std::to_string(line_no) + ": " + op +
                        " expects two qubits");
      gate.kind = op == "SWAP" ? GateKind::SWAP : GateKind::SQISWAP;
      gate.qubits = {detail::parse_qubit_token(tok[1], line_no),
                     detail::parse_qubit_token(tok[2], line_no)};
      if (gate.qubits[0] == gate.qubits[1])
        throw Error(ErrorKind::invalid_input,
                    "line " + std::to_string(line_no) + ": duplicate qubit in " + op);
    } else if (op == "GROUP") {
      if (tok.size() < 5)
        throw Error(ErrorKind::invalid_input,
                    "line " + std::to_string(line_no) +
                        ": GROUP expects a kind and at least three qubits");
      if (tok[1] == "SQISWAP") gate.group_kind = SegmentKind::SQISWAP_LAYER;
      else if (tok[1] == "SWAP") gate.group_kind = SegmentKind::SWAP_LAYER;
      else
        throw Error(ErrorKind::invalid_input,
                    "line " + std::to_string(line_no) + ": unknown group kind '" +
                        tok[1] + "'");
      gate.kind = GateKind::GROUP;
      for (std::size_t i = 2; i < tok.size(); ++i)
        gate.qubits.push_back(detail::parse_qubit_token(tok[i], line_no));
      std::set<int> uniq(gate.qubits.begin(), gate.qubits.end());
      if (uniq.size() != gate.qubits.size())
        throw Error(ErrorKind::invalid_input,
                    "line " + std::to_string(line_no) + ": duplicate qubit in GROUP");
    } else {
      throw Error(ErrorKind::invalid_input,
                  "line " + std::to_string(line_no) + ": unknown mnemonic '" +
                      op + "'");
    }
    for (int q : gate.qubits) claim(q, line_no);
    current.push_back(std::move(gate));
  }
  flush();
  return circuit;
}

inline std::string print_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out.precision(17);
  bool first_layer = true;
  for (const auto& layer : circuit.layers) {
    if (!first_layer) out << "LAYER\n";
    first_layer = false;
    for (const auto& g : layer) {
      switch (g.kind) {
        case GateKind::RX: out << "RX q" << g.qubits[0] << " " << g.angle << "\n"; break;
        case GateKind::RY: out << "RY q" << g.qubits[0] << " " << g.angle << "\n"; break;
        case GateKind::RZ: out << "RZ q" << g.qubits[0] << " " << g.angle << "\n"; break;
        case GateKind::SWAP:
          out << "SWAP q" << g.qubits[0] << " q" << g.qubits[1] << "\n";
          break;
        case GateKind::SQISWAP:
          out << "SQISWAP q" << g.qubits[0] << " q" << g.qubits[1] << "\n";
          break;
        case GateKind::GROUP:
          out << "GROUP "
              << (g.group_kind == SegmentKind::SWAP_LAYER ? "SWAP" : "SQISWAP");
          for (int q : g.qubits) out << " q" << q;
          out << "\n";
          break;
      }
    }
  }
  return out.str();
}

}  // namespace chargeq
