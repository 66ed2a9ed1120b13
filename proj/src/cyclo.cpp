#include "fsr/cyclo.hpp"

#include <map>
#include <mutex>
#include <string>

#include "fsr/error.hpp"
#include "fsr/linalg.hpp"
#include "fsr/numtheory.hpp"
#include "fsr/ofs.hpp"

namespace fsr::cyclo {

namespace {

std::recursive_mutex cache_mutex;

IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const mpz_class c = num[i];  // den is monic
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw InvariantViolation("cyclotomic_poly: inexact division");
  return quot;
}

// Row k is t^k mod Φ_n, for 0 <= k < n.
const std::vector<IntPoly>& power_table(std::uint64_t n) {
  static std::map<std::uint64_t, std::vector<IntPoly>> cache;
  std::lock_guard lock(cache_mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  const IntPoly& phi_poly = cyclotomic_poly(n);
  const std::size_t deg = phi_poly.size() - 1;
  std::vector<IntPoly> table;
  table.reserve(n);
  IntPoly cur(deg, 0);
  cur[0] = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    table.push_back(cur);
    const mpz_class top = cur[deg - 1];
    for (std::size_t i = deg; i-- > 1;) cur[i] = cur[i - 1] - top * phi_poly[i];
    cur[0] = -top * phi_poly[0];
  }
  return cache.emplace(n, std::move(table)).first->second;
}

std::uint64_t reduce_index(std::int64_t k, std::uint64_t n) { return nt::mod(k, n); }

// Arithmetic in Z[t]/(t^d - 1).
IntPoly ring_mul(const IntPoly& a, const IntPoly& b) {
  const std::size_t d = a.size();
  IntPoly out(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      const std::size_t k = i + j < d ? i + j : i + j - d;
      out[k] += a[i] * b[j];
    }
  }
  return out;
}

IntPoly ring_pow(IntPoly base, std::uint64_t e) {
  IntPoly out(base.size(), 0);
  out[0] = 1;
  while (e > 0) {
    if (e & 1) out = ring_mul(out, base);
    e >>= 1;
    if (e > 0) base = ring_mul(base, base);
  }
  return out;
}

void require_odd(std::uint64_t n, const char* op) {
  if (n == 0 || n % 2 == 0) throw DomainError(std::string(op) + ": expected an odd positive integer, got " + std::to_string(n));
}

void require_cap(std::uint64_t n, std::uint64_t cap, const char* op) {
  if (n > cap) throw ResourceError(std::string(op) + ": n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

}  // namespace

const IntPoly& cyclotomic_poly(std::uint64_t n) {
  if (n == 0) throw DomainError("cyclotomic_poly: n must be positive");
  static std::map<std::uint64_t, IntPoly> cache;
  std::lock_guard lock(cache_mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::uint64_t d : nt::divisors(n))
    if (d < n) p = exact_divide(std::move(p), cyclotomic_poly(d));
  return cache.emplace(n, std::move(p)).first->second;
}

// ---- CycloElement

CycloElement::CycloElement(std::uint64_t n) : n_(n) {
  if (n == 0) throw DomainError("CycloElement: conductor must be positive");
  coeffs_.assign(nt::totient(n), 0);
}

CycloElement CycloElement::from_rational(std::uint64_t n, const mpq_class& q) {
  CycloElement e(n);
  e.coeffs_[0] = q;
  return e;
}

CycloElement CycloElement::root_power(std::uint64_t n, std::int64_t k) {
  CycloElement e(n);
  const IntPoly& row = power_table(n)[reduce_index(k, n)];
  for (std::size_t i = 0; i < row.size(); ++i) e.coeffs_[i] = row[i];
  return e;
}

CycloElement CycloElement::from_coefficients(std::uint64_t n, const std::vector<mpq_class>& c) {
  CycloElement e(n);
  std::vector<mpq_class> folded(n);
  for (std::size_t i = 0; i < c.size(); ++i) folded[i % n] += c[i];
  const auto& table = power_table(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    if (sgn(folded[k]) == 0) continue;
    for (std::size_t i = 0; i < e.coeffs_.size(); ++i)
      if (table[k][i] != 0) e.coeffs_[i] += folded[k] * table[k][i];
  }
  return e;
}

CycloElement CycloElement::from_int_poly(std::uint64_t n, const IntPoly& p) {
  std::vector<mpq_class> c(p.begin(), p.end());
  return from_coefficients(n, c);
}

bool CycloElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

bool CycloElement::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) return false;
  return true;
}

mpq_class CycloElement::rational_value() const {
  if (!is_rational()) throw DomainError("CycloElement: value is not rational");
  return coeffs_[0];
}

void CycloElement::require_same(const CycloElement& o) const {
  if (o.n_ != n_) {
    throw StructuralError("CycloElement: conductors differ (" + std::to_string(n_) + " vs " + std::to_string(o.n_) + ")");
  }
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
  require_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) {
  require_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloElement& CycloElement::operator*=(const mpq_class& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
  a.require_same(b);
  const std::size_t deg = a.coeffs_.size();
  std::vector<mpq_class> prod(2 * deg - 1);
  for (std::size_t i = 0; i < deg; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < deg; ++j)
      if (sgn(b.coeffs_[j]) != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return CycloElement::from_coefficients(a.n_, prod);
}

// ---- CycloFraction

CycloFraction::CycloFraction(CycloElement num, CycloElement den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.conductor() != den_.conductor()) throw StructuralError("CycloFraction: conductors differ");
  if (den_.is_zero()) throw DomainError("CycloFraction: zero denominator");
}

CycloFraction CycloFraction::one(std::uint64_t n) {
  return CycloFraction(CycloElement::from_rational(n, 1), CycloElement::from_rational(n, 1));
}

CycloFraction CycloFraction::inverse() const {
  if (num_.is_zero()) throw DomainError("CycloFraction: zero has no inverse");
  return CycloFraction(den_, num_);
}

// ---- exponent vectors

ExponentVector::ExponentVector(std::uint64_t n_, std::vector<std::int64_t> e) : n(n_), entries(std::move(e)) {
  if (n == 0) throw DomainError("ExponentVector: n must be positive");
  if (entries.size() != n) {
    throw StructuralError("ExponentVector: expected " + std::to_string(n) + " entries, got " + std::to_string(entries.size()));
  }
}

ExponentVector ExponentVector::unit(std::uint64_t n, std::int64_t j) {
  ExponentVector v(n);
  v.at(j) = 1;
  return v;
}

std::int64_t& ExponentVector::at(std::int64_t j) { return entries[reduce_index(j, n)]; }
std::int64_t ExponentVector::at(std::int64_t j) const { return entries[reduce_index(j, n)]; }

ExponentVector multiplicity_difference(const Multiset& a, const Multiset& a_prime) {
  const GroupSpec& g = a.group();
  if (g != a_prime.group() || g.arity() != 1 || g.moduli()[0] <= 0) {
    throw StructuralError("multiplicity_difference: both multisets must live in the same Z/nZ");
  }
  ExponentVector x(static_cast<std::uint64_t>(g.moduli()[0]));
  for (const Multiset* m : {&a, &a_prime})
    if (!m->cardinality().fits_slong_p()) throw ResourceError("multiplicity_difference: multiplicities exceed 64 bits");
  for (const auto& [e, m] : a.entries()) x.at(e[0]) += m.get_si();
  for (const auto& [e, m] : a_prime.entries()) x.at(e[0]) -= m.get_si();
  return x;
}

ExponentVector RelationVector::vector() const {
  ExponentVector v(d);
  v.at(static_cast<std::int64_t>(j * p)) += 1;
  for (std::uint64_t k = 0; k < p; ++k) v.at(static_cast<std::int64_t>(j + k * (d / p))) -= 1;
  return v;
}

std::vector<RelationVector> relation_vectors(std::uint64_t d) {
  std::vector<RelationVector> out;
  for (std::uint64_t p : nt::prime_divisors(d))
    for (std::uint64_t j = 0; j < d / p; ++j) out.push_back({d, p, j});
  return out;
}

bool verify_distribution(std::uint64_t n, std::uint64_t p, std::uint64_t j) {
  require_odd(n, "verify_distribution");
  if (!nt::is_prime(p) || n % p != 0) {
    throw DomainError("verify_distribution: " + std::to_string(p) + " is not a prime divisor of " + std::to_string(n));
  }
  if (j >= n / p) throw DomainError("verify_distribution: j must lie in [0, n/p)");
  const CycloElement one = CycloElement::from_rational(n, 1);
  CycloElement lhs = one;
  for (std::uint64_t k = 0; k < p; ++k) lhs = lhs * (one + CycloElement::root_power(n, static_cast<std::int64_t>(j + k * (n / p))));
  const CycloElement rhs = one + CycloElement::root_power(n, static_cast<std::int64_t>(j * p));
  return lhs == rhs;
}

ExponentVector project_exponents(std::uint64_t n, std::uint64_t d, const ExponentVector& x) {
  if (x.n != n) throw StructuralError("project_exponents: vector has length " + std::to_string(x.n) + ", expected " + std::to_string(n));
  if (d == 0 || n % d != 0) throw DomainError("project_exponents: " + std::to_string(d) + " does not divide " + std::to_string(n));
  ExponentVector out(d);
  for (std::uint64_t i = 0; i < n; ++i) out.entries[i % d] += x.entries[i];
  return out;
}

CycloFraction unit_product(std::uint64_t d, const ExponentVector& x) {
  require_odd(d, "unit_product");
  if (x.n != d) throw StructuralError("unit_product: vector has length " + std::to_string(x.n) + ", expected " + std::to_string(d));
  IntPoly num(d, 0), den(d, 0);
  num[0] = den[0] = 1;
  for (std::uint64_t j = 0; j < d; ++j) {
    const std::int64_t e = x.entries[j];
    if (e == 0) continue;
    const std::uint64_t mag = e > 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-(e + 1)) + 1;
    IntPoly factor(d, 0);
    factor[0] += 1;
    factor[j] += 1;
    IntPoly& side = e > 0 ? num : den;
    side = ring_mul(side, ring_pow(std::move(factor), mag));
  }
  return CycloFraction(CycloElement::from_int_poly(d, num), CycloElement::from_int_poly(d, den));
}

bool kernel_test(std::uint64_t n, const ExponentVector& x) {
  require_odd(n, "kernel_test");
  for (std::uint64_t d : nt::divisors(n))
    if (!unit_product(d, project_exponents(n, d, x)).is_one()) return false;
  return true;
}

bool lattice_member(std::uint64_t n, const ExponentVector& x) {
  require_odd(n, "lattice_member");
  if (x.n != n) throw StructuralError("lattice_member: vector has length " + std::to_string(x.n) + ", expected " + std::to_string(n));
  if (x.entries[0] != 0) return false;
  for (std::uint64_t j = 1; j < n; ++j)
    if (x.entries[j] + x.entries[n - j] != 0) return false;
  mpz_class weighted = 0;
  for (std::uint64_t j = 1; j <= (n - 1) / 2; ++j) weighted += mpz_class(static_cast<long>(j)) * static_cast<long>(x.entries[j]);
  return mpz_divisible_ui_p(weighted.get_mpz_t(), n) != 0;
}

std::vector<ExponentVector> lattice_basis(std::uint64_t n) {
  require_odd(n, "lattice_basis");
  std::vector<ExponentVector> basis;
  const auto m = static_cast<std::int64_t>(n);
  for (std::int64_t j = 1; j <= (m - 1) / 2; ++j) {
    ExponentVector u(n);
    if (j == 1) {
      u.at(1) = m;
      u.at(-1) = -m;
    } else {
      u.at(j) += 1;
      u.at(-j) -= 1;
      u.at(1) -= j;
      u.at(-1) += j;
    }
    basis.push_back(std::move(u));
  }
  return basis;
}

SurjectivityReport surjectivity_check(std::uint64_t n, std::uint64_t cap) {
  require_odd(n, "surjectivity_check");
  require_cap(n, cap, "surjectivity_check");
  const auto divs = nt::divisors(n);
  std::size_t total = 0, relations = 0;
  std::vector<std::size_t> offset;
  for (std::uint64_t d : divs) {
    offset.push_back(total);
    total += d;
    relations += relation_vectors(d).size();
  }
  linalg::RationalMatrix image(total, n), rel(total, relations);
  std::size_t col = 0;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    const std::uint64_t d = divs[i];
    for (std::uint64_t j = 0; j < n; ++j) image(offset[i] + j % d, j) = 1;
    for (const RelationVector& r : relation_vectors(d)) {
      const ExponentVector v = r.vector();
      for (std::uint64_t k = 0; k < d; ++k) rel(offset[i] + k, col) = v.entries[k];
      ++col;
    }
  }
  const std::size_t rel_rank = linalg::rank(rel);
  SurjectivityReport report;
  report.n = n;
  report.rank = linalg::rank(image.hconcat(rel)) - rel_rank;
  report.codomain_dim = total - rel_rank;
  report.surjective = report.rank == report.codomain_dim;
  return report;
}

KernelRankReport kernel_rank_check(std::uint64_t n, std::uint64_t cap) {
  require_odd(n, "kernel_rank_check");
  require_cap(n, cap, "kernel_rank_check");
  if (!ofs::is_member(static_cast<std::int64_t>(n)).member) {
    throw DomainError("kernel_rank_check: " + std::to_string(n) + " is not in O_FS");
  }
  KernelRankReport report;
  report.n = n;
  report.expected = (n - 1) / 2;

  const auto basis = lattice_basis(n);
  linalg::RationalMatrix b(basis.size(), n);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::uint64_t c = 0; c < n; ++c) b(r, c) = basis[r].entries[c];
  report.lattice_rank = linalg::rank(b);

  // x_0 = 0 and x_j + x_{n-j} = 0; divisibility does not change the rank.
  linalg::RationalMatrix constraints(1 + (n - 1) / 2, n);
  constraints(0, 0) = 1;
  for (std::uint64_t j = 1; j <= (n - 1) / 2; ++j) {
    constraints(j, j) = 1;
    constraints(j, n - j) = 1;
  }
  report.constraint_nullity = n - linalg::rank(constraints);

  report.basis_in_lattice = true;
  report.basis_in_kernel = true;
  for (const auto& u : basis) {
    report.basis_in_lattice = report.basis_in_lattice && lattice_member(n, u);
    report.basis_in_kernel = report.basis_in_kernel && kernel_test(n, u);
  }
  report.consistent = report.lattice_rank == report.expected && report.constraint_nullity == report.expected &&
                      report.basis_in_lattice && report.basis_in_kernel;
  return report;
}

}  // namespace fsr::cyclo
