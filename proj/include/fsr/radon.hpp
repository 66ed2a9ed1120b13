#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "fsr/group.hpp"

// The discrete Radon transform on (Z/nZ)^d:
//   Rf(ψ, c) = Σ_{ψ(x) = c} f(x)
// over all homomorphisms ψ: (Z/nZ)^d -> Z/nZ, together with its closed-form inversion.
//
// Points of (Z/nZ)^d and homomorphisms (by coefficient vector) are both indexed
// lexicographically: index = Σ_i v_i n^(d-1-i).
namespace fsr::radon {

/// Largest n^(d+1) (the size of a Radon image) accepted by this module.
inline constexpr std::uint64_t kMaxImageEntries = std::uint64_t{1} << 26;

/// x -> Σ a_i x_i mod n, given by its coefficient vector.
struct Hom {
  std::uint64_t n = 1;
  std::vector<std::uint64_t> coeffs;

  std::uint64_t apply(const GroupElement& x) const;
  friend bool operator==(const Hom&, const Hom&) = default;
};

/// n^d; throws ResourceError if the image n^(d+1) would exceed kMaxImageEntries,
/// DomainError if n or d is zero.
std::uint64_t point_count(std::uint64_t n, std::size_t d);
std::uint64_t index_of(const std::vector<std::uint64_t>& coords, std::uint64_t n);
std::vector<std::uint64_t> coords_of(std::uint64_t index, std::uint64_t n, std::size_t d);
Hom hom_at(std::uint64_t index, std::uint64_t n, std::size_t d);

/// f: (Z/nZ)^d -> Q, complete over all n^d points.
class FunctionTable {
 public:
  FunctionTable(std::uint64_t n, std::size_t d);
  FunctionTable(std::uint64_t n, std::size_t d, std::vector<mpq_class> values);

  std::uint64_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  GroupSpec group() const { return GroupSpec::power(static_cast<std::int64_t>(n_), d_); }
  const std::vector<mpq_class>& values() const noexcept { return values_; }
  std::vector<mpq_class>& values() noexcept { return values_; }

  mpq_class& at(const GroupElement& x);
  const mpq_class& at(const GroupElement& x) const;

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::uint64_t n_;
  std::size_t d_;
  std::vector<mpq_class> values_;
};

/// Rf, stored as entries[hom_index * n + c].
class RadonImage {
 public:
  RadonImage(std::uint64_t n, std::size_t d);
  RadonImage(std::uint64_t n, std::size_t d, std::vector<mpq_class> entries);

  std::uint64_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  const std::vector<mpq_class>& entries() const noexcept { return entries_; }
  std::vector<mpq_class>& entries() noexcept { return entries_; }

  mpq_class& at(const Hom& psi, std::uint64_t c);
  const mpq_class& at(const Hom& psi, std::uint64_t c) const;

  friend bool operator==(const RadonImage&, const RadonImage&) = default;

 private:
  std::uint64_t n_;
  std::size_t d_;
  std::vector<mpq_class> entries_;
};

/// A rational weight per homomorphism, weights[hom_index].
class InvertingFunction {
 public:
  InvertingFunction(std::uint64_t n, std::size_t d);
  InvertingFunction(std::uint64_t n, std::size_t d, std::vector<mpq_class> weights);

  std::uint64_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  const std::vector<mpq_class>& weights() const noexcept { return weights_; }
  std::vector<mpq_class>& weights() noexcept { return weights_; }

  mpq_class& at(const Hom& psi);
  const mpq_class& at(const Hom& psi) const;

  friend bool operator==(const InvertingFunction&, const InvertingFunction&) = default;

 private:
  std::uint64_t n_;
  std::size_t d_;
  std::vector<mpq_class> weights_;
};

RadonImage forward(const FunctionTable& f, unsigned jobs = 1);

/// p divides every value of ψ, i.e. p | gcd(a_1, ..., a_d, n).
/// Throws DomainError if p does not divide n.
bool divides_hom(std::uint64_t p, const Hom& psi);

/// (1 / (n^(d-1) phi(n))) Π_{p | n prime, p | ψ} (1 - p^(d-1))
mpq_class inversion_weight(std::uint64_t n, std::size_t d, const Hom& psi);
InvertingFunction inverting_function(std::uint64_t n, std::size_t d);

/// f(x) = Σ_ψ λ(ψ) Rf(ψ, ψ(x)). The input is not checked to be a genuine image.
FunctionTable invert(const RadonImage& rf, const InvertingFunction& lambda, unsigned jobs = 1);
FunctionTable invert(const RadonImage& rf, unsigned jobs = 1);

/// Σ_{ψ(x) = 0} λ(ψ) equals 1 at x = 0 and 0 elsewhere.
bool verify_inverting(const InvertingFunction& lambda);

/// λ(ψ) = λ_m(ψ mod m) λ_n(ψ mod n) on homomorphisms modulo mn.
/// Both inputs are expected to be inverting functions of the same dimension.
/// Throws DomainError unless gcd(m, n) = 1, StructuralError if the dimensions differ.
InvertingFunction product_lift(const InvertingFunction& lambda_m, const InvertingFunction& lambda_n);

/// f(0) = n^(-d) Σ_ψ Σ_c ω_n^(-c) Rf(ψ, c), evaluated exactly in Q(ω_n).
/// Throws DomainError if the sum is not rational, which signals a corrupted image.
mpq_class fourier_invert_at_zero(const RadonImage& rf);

/// Mass conservation: Σ_c Rf(ψ, c) is the same for every ψ.
bool is_consistent(const RadonImage& rf);

}  // namespace fsr::radon
