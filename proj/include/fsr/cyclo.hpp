#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "fsr/multiset.hpp"

// Exact arithmetic in Q(ω_n) = Q[t]/(Φ_n) and the unit-relation checks built on it.
namespace fsr::cyclo {

/// Integer polynomial, coefficient i belongs to t^i.
using IntPoly = std::vector<mpz_class>;

/// Φ_n, obtained as (t^n - 1) divided exactly by Φ_d for every proper divisor d.
/// Results are cached; safe to call from several threads.
const IntPoly& cyclotomic_poly(std::uint64_t n);

/// An element of Q(ω_n), stored as its canonical residue modulo Φ_n
/// (phi(n) rational coefficients).
class CycloElement {
 public:
  CycloElement() : CycloElement(1) {}
  explicit CycloElement(std::uint64_t n);

  static CycloElement from_rational(std::uint64_t n, const mpq_class& q);
  /// ω_n^k; k may be negative.
  static CycloElement root_power(std::uint64_t n, std::int64_t k);
  /// Σ c_i t^i reduced modulo Φ_n; any length.
  static CycloElement from_coefficients(std::uint64_t n, const std::vector<mpq_class>& c);
  static CycloElement from_int_poly(std::uint64_t n, const IntPoly& p);

  std::uint64_t conductor() const noexcept { return n_; }
  const std::vector<mpq_class>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws DomainError unless is_rational().
  mpq_class rational_value() const;

  CycloElement& operator+=(const CycloElement& o);
  CycloElement& operator-=(const CycloElement& o);
  CycloElement& operator*=(const mpq_class& q);
  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
  friend CycloElement operator*(CycloElement a, const mpq_class& q) { return a *= q; }
  friend bool operator==(const CycloElement& a, const CycloElement& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_same(const CycloElement& o) const;

  std::uint64_t n_;
  std::vector<mpq_class> coeffs_;
};

/// num / den in Q(ω_n). Equality is decided by cross-multiplication, never by inversion.
class CycloFraction {
 public:
  /// Throws DomainError if den is zero.
  CycloFraction(CycloElement num, CycloElement den);
  static CycloFraction one(std::uint64_t n);

  const CycloElement& numerator() const noexcept { return num_; }
  const CycloElement& denominator() const noexcept { return den_; }

  bool is_one() const { return num_ == den_; }
  /// Throws DomainError if this is zero.
  CycloFraction inverse() const;

  friend CycloFraction operator*(const CycloFraction& a, const CycloFraction& b) {
    return CycloFraction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend bool operator==(const CycloFraction& a, const CycloFraction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  CycloElement num_;
  CycloElement den_;
};

/// x in Z^n; indices are read modulo n.
struct ExponentVector {
  std::uint64_t n = 1;
  std::vector<std::int64_t> entries;

  ExponentVector() : entries(1, 0) {}
  explicit ExponentVector(std::uint64_t n_) : n(n_), entries(n_, 0) {}
  ExponentVector(std::uint64_t n_, std::vector<std::int64_t> e);

  /// e^n_j
  static ExponentVector unit(std::uint64_t n, std::int64_t j);

  std::int64_t& at(std::int64_t j);
  std::int64_t at(std::int64_t j) const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

/// (mu_A(j) - mu_A'(j))_{0 <= j < n} for multisets over Z/nZ.
/// Throws StructuralError unless both live in the same cyclic group.
ExponentVector multiplicity_difference(const Multiset& a, const Multiset& a_prime);

/// v^d_{p,j} = e_{jp} - Σ_{k<p} e_{j + kd/p}, for a prime p | d and 0 <= j < d/p.
struct RelationVector {
  std::uint64_t d;
  std::uint64_t p;
  std::uint64_t j;

  ExponentVector vector() const;
};

/// Every v^d_{p,j}, ordered by p then j.
std::vector<RelationVector> relation_vectors(std::uint64_t d);

/// Checks Π_{k<p} (1 + ω_n^{j + kn/p}) = 1 + ω_n^{jp} exactly.
/// Throws DomainError unless n is odd, p is a prime dividing n and 0 <= j < n/p.
bool verify_distribution(std::uint64_t n, std::uint64_t p, std::uint64_t j);

/// Entry j of the result is the sum of x_i over i = j (mod d). Throws DomainError if d does not divide n.
ExponentVector project_exponents(std::uint64_t n, std::uint64_t d, const ExponentVector& x);

/// Π_j (1 + ω_d^j)^{x_j}, negative exponents collected in the denominator.
/// Throws DomainError for even d.
CycloFraction unit_product(std::uint64_t d, const ExponentVector& x);

/// True iff unit_product(d, project_exponents(n, d, x)) = 1 for every d | n.
/// Throws DomainError for even n.
bool kernel_test(std::uint64_t n, const ExponentVector& x);

/// Membership in the lattice {x : x_0 = 0, x_j + x_{n-j} = 0, n | Σ_{j <= (n-1)/2} j x_j}.
bool lattice_member(std::uint64_t n, const ExponentVector& x);

/// The basis u_1 = n(e_1 - e_{n-1}), u_j = (e_j - e_{n-j}) - j(e_1 - e_{n-1}) of that lattice.
std::vector<ExponentVector> lattice_basis(std::uint64_t n);

inline constexpr std::uint64_t kDefaultRankCap = 45;

struct SurjectivityReport {
  std::uint64_t n = 1;
  std::size_t rank = 0;
  std::size_t codomain_dim = 0;
  bool surjective = false;
};

/// Rank of x -> ([π^n_d x] mod D_d)_{d | n} over Q, where D_d is spanned by the
/// relation vectors of d, computed as rank([M | D]) - rank(D) with exact rationals.
/// Throws DomainError for even n, ResourceError for n > cap.
SurjectivityReport surjectivity_check(std::uint64_t n, std::uint64_t cap = kDefaultRankCap);

struct KernelRankReport {
  std::uint64_t n = 1;
  std::size_t lattice_rank = 0;
  std::size_t expected = 0;             // (n - 1) / 2
  std::size_t constraint_nullity = 0;   // n - rank of the linear constraints on the lattice
  bool basis_in_lattice = false;
  bool basis_in_kernel = false;
  bool consistent = false;
};

/// Exact rank of the lattice basis and kernel_test on each basis vector.
/// Throws DomainError unless n is an odd member of O_FS, ResourceError for n > cap.
KernelRankReport kernel_rank_check(std::uint64_t n, std::uint64_t cap = kDefaultRankCap);

inline constexpr double kDefaultRankTolerance = 1e-8;
/// Working precision of the numeric rank computation.
inline constexpr unsigned kNumericPrecisionBits = 100;

struct NumericRankReport {
  std::uint64_t n = 1;
  std::size_t numeric_rank = 0;
  std::optional<std::size_t> expected;  // phi(n)/2 for members n >= 3, 1 for n = 1
  std::vector<double> singular_values;  // descending
  double tolerance = kDefaultRankTolerance;
};

/// Numeric rank of the matrix log|σ_a(1 + ω_n^j)| (rows: a coprime to n, columns: 0 <= j < n),
/// computed by SVD at kNumericPrecisionBits bits. Throws DomainError for even n,
/// ResourceError for n > cap.
NumericRankReport unit_group_rank_numeric(std::uint64_t n, double tolerance = kDefaultRankTolerance,
                                          std::uint64_t cap = kDefaultRankCap);

/// max over d | n of |Σ_j x_j log|1 + ω_d^j||, the floating shadow of kernel_test.
double log_embedding_residual(std::uint64_t n, const ExponentVector& x);

}  // namespace fsr::cyclo
