#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holant/common.hpp"
#include "holant/graph.hpp"
#include "holant/linear_system.hpp"
#include "holant/signature.hpp"

namespace holant {

// "1.5", "-2", "0.1+0.3i", "2i", "(re,im)". Throws ParseError.
Complex parse_complex(const std::string& text);
// Comma separated list of complex numbers.
FugacityVector parse_fugacity(const std::string& text);
// Shortest round-tripping text accepted by parse_complex.
std::string format_complex(Complex z);

// One entry of a signature file: a builtin instantiated per vertex or an
// explicit table with fixed arity.
struct SignatureSpec {
  std::string builtin;  // empty for tables
  Complex weight = 1.0;
  std::optional<Signature> table;

  Signature materialise(int arity, int kappa) const;
  std::optional<int> kappa() const;
};

using SignatureLibrary = std::map<std::string, SignatureSpec>;

// A single spec ({"builtin":...} or {"table":...}) is stored under
// "default"; {"signatures": {name: spec, ...}} keeps the names. A bare word
// that is not JSON is read as a builtin name.
SignatureLibrary parse_signature_library(const std::string& text);
SignatureSpec parse_signature_spec(const std::string& json_text);
// {"table": {...}} with values in mixed-radix order.
std::string format_signature(const Signature& f);
Signature parse_signature_table(const std::string& json_text);

// Assignment file: {"default": name, "3": name, ...}. Without a file every
// vertex gets "default", or the only entry when the library has one.
SignatureAssignment load_assignment(const MultiGraph& g, const SignatureLibrary& library, int kappa,
                                    const std::optional<std::string>& assignment_json = std::nullopt);

struct GraphPmInstance {
  MultiGraph graph;
  std::vector<int> matching;
};

struct HyperPmInstance {
  Hypergraph graph;
  std::vector<int> matching;
};

// Graph text followed by a line "matching: e1 e2 ..." of canonical edge ids.
GraphPmInstance parse_graph_pm(std::istream& in);
// "n m", m lines of vertex lists, then "matching: ...".
HyperPmInstance parse_hyper_pm(std::istream& in);

std::string read_file(const std::string& path);

}  // namespace holant
