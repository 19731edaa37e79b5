#include "holant/signature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace holant {

std::size_t table_size(int arity, int kappa) {
  if (arity < 0) throw ArgumentError("negative arity");
  if (kappa < 0) throw ArgumentError("negative kappa");
  std::uint64_t size = 1;
  for (int i = 0; i < arity; ++i) {
    size *= static_cast<std::uint64_t>(kappa + 1);
    if (size > kMaxTableSize)
      throw GateExceeded("signature table (kappa+1)^arity exceeds " + std::to_string(kMaxTableSize));
  }
  return static_cast<std::size_t>(size);
}

Signature::Signature(std::string name, int arity, int kappa, std::vector<Complex> table)
    : name_(std::move(name)), arity_(arity), kappa_(kappa), table_(std::move(table)) {
  if (kappa < 1 && arity > 0) throw ArgumentError("kappa must be at least 1");
  std::size_t expected = table_size(arity, std::max(kappa, 0));
  if (table_.size() != expected)
    throw ArgumentError("signature '" + name_ + "' needs " + std::to_string(expected) + " values, got " +
                        std::to_string(table_.size()));
  strides_.assign(arity, 1);
  for (int p = arity - 2; p >= 0; --p) strides_[p] = strides_[p + 1] * static_cast<std::size_t>(kappa + 1);
}

Complex Signature::eval(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != arity_) throw ArgumentError("tuple length does not match arity");
  std::size_t index = 0;
  for (int p = 0; p < arity_; ++p) {
    if (x[p] < 0 || x[p] > kappa_) throw ArgumentError("tuple entry outside the domain");
    index += static_cast<std::size_t>(x[p]) * strides_[p];
  }
  return table_[index];
}

double ratio_r(const Signature& f) {
  if (!f.in_f0()) throw NotInF0("signature '" + f.name() + "' has f(0) = 0");
  double base = std::abs(f.ground());
  double r = 0.0;
  for (std::size_t i = 1; i < f.table().size(); ++i) r = std::max(r, std::abs(f.table()[i]) / base);
  return r;
}

RatioStats ratio_r_class(std::span<const Signature* const> family) {
  if (family.empty()) throw ArgumentError("empty signature class");
  RatioStats s;
  for (const Signature* f : family) s.r = std::max(s.r, ratio_r(*f));
  s.r1 = std::max(1.0, s.r);
  return s;
}

Signature builtin(std::string_view name, int arity, int kappa, Complex weight, std::span<const Complex> values) {
  if (name == "table")
    return Signature("table", arity, kappa, std::vector<Complex>(values.begin(), values.end()));
  std::size_t size = table_size(arity, kappa);
  std::vector<Complex> t(size);
  if (name == "constant") {
    std::fill(t.begin(), t.end(), weight);
    return Signature("constant", arity, kappa, std::move(t));
  }
  if (name == "zero-one") {
    t[0] = 1.0;
    return Signature("zero-one", arity, kappa, std::move(t));
  }
  if (kappa != 1) throw ArgumentError(std::string(name) + " builtin requires kappa = 1");
  for (std::size_t i = 0; i < size; ++i) {
    int ones = std::popcount(i);
    if (name == "matching") {
      t[i] = ones <= 1 ? 1.0 : 0.0;
    } else if (name == "even-parity") {
      t[i] = ones % 2 == 0 ? Complex(1.0) : weight;
    } else {
      throw ArgumentError("unknown builtin signature '" + std::string(name) + "'");
    }
  }
  return Signature(std::string(name), arity, kappa, std::move(t));
}

SignatureAssignment::SignatureAssignment(int kappa, std::vector<std::shared_ptr<const Signature>> per_vertex)
    : kappa_(kappa), per_vertex_(std::move(per_vertex)) {
  if (kappa < 1) throw ArgumentError("kappa must be at least 1");
  for (std::size_t v = 0; v < per_vertex_.size(); ++v) {
    if (!per_vertex_[v]) throw ArgumentError("vertex " + std::to_string(v) + " has no signature");
    if (per_vertex_[v]->arity() > 0 && per_vertex_[v]->kappa() != kappa)
      throw ArgumentError("vertex " + std::to_string(v) + " signature has a different kappa");
  }
}

const Signature& SignatureAssignment::at(int v) const {
  if (v < 0 || v >= vertex_count()) throw ArgumentError("invalid vertex id " + std::to_string(v));
  return *per_vertex_[v];
}

void SignatureAssignment::validate(const MultiGraph& g) const {
  if (vertex_count() != g.vertex_count())
    throw ArgumentError("assignment covers " + std::to_string(vertex_count()) + " vertices, graph has " +
                        std::to_string(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v)
    if (per_vertex_[v]->arity() != g.degree(v))
      throw ArgumentError("vertex " + std::to_string(v) + ": arity " + std::to_string(per_vertex_[v]->arity()) +
                          " != degree " + std::to_string(g.degree(v)));
}

std::vector<const Signature*> SignatureAssignment::distinct() const {
  std::vector<const Signature*> out;
  for (const auto& s : per_vertex_)
    if (std::find(out.begin(), out.end(), s.get()) == out.end()) out.push_back(s.get());
  return out;
}

void SignatureAssignment::require_f0() const {
  for (int v = 0; v < vertex_count(); ++v)
    if (!per_vertex_[v]->in_f0())
      throw NotInF0("signature at vertex " + std::to_string(v) + " has f(0) = 0");
}

RatioStats SignatureAssignment::ratios() const {
  auto d = distinct();
  return ratio_r_class(d);
}

SignatureAssignment uniform_builtin(const MultiGraph& g, std::string_view name, int kappa, Complex weight) {
  std::vector<std::shared_ptr<const Signature>> per_vertex(g.vertex_count());
  std::vector<std::shared_ptr<const Signature>> by_arity;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int d = g.degree(v);
    if (static_cast<int>(by_arity.size()) <= d) by_arity.resize(d + 1);
    if (!by_arity[d]) by_arity[d] = std::make_shared<const Signature>(builtin(name, d, kappa, weight));
    per_vertex[v] = by_arity[d];
  }
  return SignatureAssignment(kappa, std::move(per_vertex));
}

}  // namespace holant
