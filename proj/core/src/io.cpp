#include "holant/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

namespace holant {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string shortest(double x) {
  for (int prec = 1; prec <= 17; ++prec) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    double back = 0.0;
    if (parse_double(os.str(), back) && back == x) return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Complex json_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_string()) return parse_complex(v.get<std::string>());
  throw ParseError("complex value must be a number, [re, im] or a string");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Signature table_from_json(const json& t) {
  if (!t.is_object() || !t.contains("kappa") || !t.contains("arity") || !t.contains("values"))
    throw ParseError("table needs kappa, arity and values");
  if (!t["kappa"].is_number_integer() || !t["arity"].is_number_integer() || !t["values"].is_array())
    throw ParseError("table kappa and arity must be integers, values an array");
  int kappa = t["kappa"].get<int>();
  int arity = t["arity"].get<int>();
  if (kappa < 1 || arity < 0) throw ParseError("table needs kappa >= 1 and arity >= 0");
  std::vector<Complex> values;
  for (const auto& v : t["values"]) values.push_back(json_complex(v));
  std::string name = t.value("name", std::string("table"));
  try {
    return Signature(name, arity, kappa, std::move(values));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

SignatureSpec spec_from_json(const json& j) {
  SignatureSpec spec;
  if (j.is_string()) {
    spec.builtin = j.get<std::string>();
  } else if (j.is_object() && j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw ParseError("builtin must be a name");
    spec.builtin = j["builtin"].get<std::string>();
    if (j.contains("weight")) spec.weight = json_complex(j["weight"]);
  } else if (j.is_object() && j.contains("table")) {
    spec.table = table_from_json(j["table"]);
  } else {
    throw ParseError("signature spec needs 'builtin' or 'table'");
  }
  if (!spec.table && spec.builtin == "table") throw ParseError("builtin 'table' needs explicit values");
  return spec;
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    auto comma = s.find(',');
    double re = 0.0, im = 0.0;
    if (comma == std::string::npos || !parse_double(trim(s.substr(1, comma - 1)), re) ||
        !parse_double(trim(s.substr(comma + 1, s.size() - comma - 2)), im))
      throw ParseError("bad complex number '" + raw + "'");
    return {re, im};
  }
  double re = 0.0;
  if (parse_double(s, re)) return {re, 0.0};
  if (s.empty() || (s.back() != 'i' && s.back() != 'j')) throw ParseError("bad complex number '" + raw + "'");
  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  double im = 0.0;
  re = 0.0;
  if ((!re_part.empty() && !parse_double(re_part, re)) || !parse_double(im_part, im))
    throw ParseError("bad complex number '" + raw + "'");
  return {re, im};
}

FugacityVector parse_fugacity(const std::string& text) {
  FugacityVector z;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) z.push_back(parse_complex(item));
  if (z.empty()) throw ParseError("empty fugacity list");
  return z;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return shortest(z.real());
  std::string im = shortest(z.imag());
  if (z.real() == 0.0) return im + "i";
  if (im.front() != '-') im = "+" + im;
  return shortest(z.real()) + im + "i";
}

Signature SignatureSpec::materialise(int arity, int kappa_value) const {
  if (table) {
    if (table->arity() != arity)
      throw ArgumentError("table signature '" + table->name() + "' has arity " + std::to_string(table->arity()) +
                          " but the vertex has degree " + std::to_string(arity));
    if (table->kappa() != kappa_value)
      throw ArgumentError("table signature '" + table->name() + "' has kappa " + std::to_string(table->kappa()) +
                          ", expected " + std::to_string(kappa_value));
    return *table;
  }
  return holant::builtin(builtin, arity, kappa_value, weight);
}

std::optional<int> SignatureSpec::kappa() const {
  if (table) return table->kappa();
  return std::nullopt;
}

SignatureSpec parse_signature_spec(const std::string& json_text) { return spec_from_json(parse_json(json_text)); }

SignatureLibrary parse_signature_library(const std::string& text) {
  std::string t = trim(text);
  SignatureLibrary lib;
  if (!t.empty() && t.front() != '{' && t.front() != '"') {
    SignatureSpec spec;
    spec.builtin = t;
    lib["default"] = spec;
    return lib;
  }
  json j = parse_json(t);
  if (j.is_object() && j.contains("signatures")) {
    if (!j["signatures"].is_object() || j["signatures"].empty())
      throw ParseError("'signatures' must be a nonempty object");
    for (auto& [name, spec] : j["signatures"].items()) lib[name] = spec_from_json(spec);
  } else {
    lib["default"] = spec_from_json(j);
  }
  return lib;
}

std::string format_signature(const Signature& f) {
  json values = json::array();
  for (Complex v : f.table()) values.push_back({v.real(), v.imag()});
  json out = {{"table", {{"name", f.name()}, {"kappa", f.kappa()}, {"arity", f.arity()}, {"values", values}}}};
  return out.dump();
}

Signature parse_signature_table(const std::string& json_text) {
  json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("table")) throw ParseError("expected {\"table\": ...}");
  return table_from_json(j["table"]);
}

SignatureAssignment load_assignment(const MultiGraph& g, const SignatureLibrary& library, int kappa,
                                    const std::optional<std::string>& assignment_json) {
  if (library.empty()) throw ArgumentError("empty signature library");
  std::vector<std::string> names(g.vertex_count());
  std::string fallback;
  if (library.count("default")) {
    fallback = "default";
  } else if (library.size() == 1) {
    fallback = library.begin()->first;
  }
  if (assignment_json) {
    json j = parse_json(*assignment_json);
    if (!j.is_object()) throw ParseError("assignment file must be an object");
    for (auto& [key, value] : j.items()) {
      if (!value.is_string()) throw ParseError("assignment values must be signature names");
      if (key == "default") {
        fallback = value.get<std::string>();
        continue;
      }
      int v = -1;
      try {
        std::size_t used = 0;
        v = std::stoi(key, &used);
        if (used != key.size()) v = -1;
      } catch (const std::exception&) {
        v = -1;
      }
      if (v < 0 || v >= g.vertex_count()) throw ParseError("assignment key '" + key + "' is not a vertex id");
      names[v] = value.get<std::string>();
    }
  }
  std::map<std::pair<std::string, int>, std::shared_ptr<const Signature>> cache;
  std::vector<std::shared_ptr<const Signature>> per_vertex;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::string name = names[v].empty() ? fallback : names[v];
    if (name.empty()) throw ArgumentError("no signature for vertex " + std::to_string(v));
    auto it = library.find(name);
    if (it == library.end()) throw ArgumentError("unknown signature name '" + name + "'");
    auto key = std::make_pair(name, g.degree(v));
    auto& slot = cache[key];
    if (!slot) slot = std::make_shared<const Signature>(it->second.materialise(g.degree(v), kappa));
    per_vertex.push_back(slot);
  }
  SignatureAssignment pi(kappa, std::move(per_vertex));
  pi.validate(g);
  return pi;
}

namespace {

// Splits off the "matching:" line; returns the remaining text.
std::string split_matching(std::istream& in, std::vector<int>& matching) {
  std::ostringstream body;
  std::string line;
  bool found = false;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.rfind("matching:", 0) == 0) {
      if (found) throw ParseError("more than one matching line");
      found = true;
      std::istringstream ls(t.substr(9));
      std::string tok;
      while (ls >> tok) {
        try {
          std::size_t used = 0;
          int e = std::stoi(tok, &used);
          if (used != tok.size()) throw ParseError("bad edge id '" + tok + "'");
          matching.push_back(e);
        } catch (const std::logic_error&) {
          throw ParseError("bad edge id '" + tok + "'");
        }
      }
    } else {
      body << line << '\n';
    }
  }
  if (!found) throw ParseError("missing 'matching:' line");
  return body.str();
}

}  // namespace

GraphPmInstance parse_graph_pm(std::istream& in) {
  GraphPmInstance out;
  std::string body = split_matching(in, out.matching);
  out.graph = parse_graph_text(body);
  try {
    require_perfect_matching(out.graph, out.matching);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
  return out;
}

HyperPmInstance parse_hyper_pm(std::istream& in) {
  HyperPmInstance out;
  std::istringstream body(split_matching(in, out.matching));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(body, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty hypergraph file");
  std::istringstream header(lines[0]);
  int n = -1, m = -1;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0) throw ParseError("hypergraph header must be 'n m'");
  if (static_cast<int>(lines.size()) != m + 1) throw ParseError("expected one line per hyperedge");
  std::vector<std::vector<int>> edges;
  for (int j = 0; j < m; ++j) {
    std::istringstream ls(lines[1 + j]);
    std::vector<int> e;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        e.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw ParseError("bad vertex '" + tok + "'");
      } catch (const std::logic_error&) {
        throw ParseError("bad vertex '" + tok + "'");
      }
    }
    if (e.empty()) throw ParseError("empty hyperedge");
    edges.push_back(std::move(e));
  }
  try {
    out.graph = Hypergraph(n, std::move(edges));
    require_perfect_matching(out.graph, out.matching);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace holant
