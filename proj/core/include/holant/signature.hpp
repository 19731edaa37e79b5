#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holant/common.hpp"
#include "holant/graph.hpp"

namespace holant {

// Largest dense table accepted, (kappa+1)^arity entries.
inline constexpr std::uint64_t kMaxTableSize = 10'000'000;

// Dense table over D^d, D = {0..kappa}, row-major with the first
// coordinate most significant.
class Signature {
 public:
  Signature(std::string name, int arity, int kappa, std::vector<Complex> table);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  int kappa() const { return kappa_; }
  int domain_size() const { return kappa_ + 1; }
  std::span<const Complex> table() const { return table_; }

  Complex eval(std::span<const int> x) const;
  Complex at(std::size_t index) const { return table_[index]; }
  Complex ground() const { return table_[0]; }
  // Weight of tuple position p in the table index.
  std::size_t stride(int position) const { return strides_[position]; }
  bool in_f0() const { return table_[0] != Complex(0.0, 0.0); }

 private:
  std::string name_;
  int arity_;
  int kappa_;
  std::vector<Complex> table_;
  std::vector<std::size_t> strides_;
};

// (kappa+1)^arity, throwing GateExceeded beyond kMaxTableSize.
std::size_t table_size(int arity, int kappa);

// Max over nonzero tuples of |f(x)|/|f(0)|; 0 for arity 0. Throws NotInF0.
double ratio_r(const Signature& f);

struct RatioStats {
  double r = 0.0;   // r(F)
  double r1 = 1.0;  // max{1, r(F)}
};

RatioStats ratio_r_class(std::span<const Signature* const> family);

// Builtins: "matching", "even-parity" (uses weight), "zero-one" (f = 1 at 0
// only), "constant" (weight everywhere). "table" takes user values.
Signature builtin(std::string_view name, int arity, int kappa, Complex weight = 1.0,
                  std::span<const Complex> values = {});

// pi: one signature per vertex, sharing kappa.
class SignatureAssignment {
 public:
  SignatureAssignment() = default;
  SignatureAssignment(int kappa, std::vector<std::shared_ptr<const Signature>> per_vertex);

  int kappa() const { return kappa_; }
  int vertex_count() const { return static_cast<int>(per_vertex_.size()); }
  const Signature& at(int v) const;
  const Signature& operator[](int v) const { return *per_vertex_[v]; }
  std::shared_ptr<const Signature> shared(int v) const { return per_vertex_.at(v); }

  // Arity of pi(v) must equal deg(v). Throws ArgumentError.
  void validate(const MultiGraph& g) const;
  // Distinct signatures in first-use order.
  std::vector<const Signature*> distinct() const;
  // Throws NotInF0 naming the first vertex with f(0) = 0.
  void require_f0() const;
  RatioStats ratios() const;

 private:
  int kappa_ = 1;
  std::vector<std::shared_ptr<const Signature>> per_vertex_;
};

// Same builtin at every vertex, arity taken from the degree.
SignatureAssignment uniform_builtin(const MultiGraph& g, std::string_view name, int kappa = 1,
                                    Complex weight = 1.0);

}  // namespace holant
