// Floating-point cross-checks for the cyclo module, kept in their own
// translation unit because the multiprecision SVD is slow to compile.
#include <algorithm>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "fsr/cyclo.hpp"
#include "fsr/error.hpp"
#include "fsr/numtheory.hpp"
#include "fsr/ofs.hpp"

namespace fsr::cyclo {

namespace {

using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<kNumericPrecisionBits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// log|1 + ω_n^k| = log|2 cos(π k / n)|
Real log_abs_one_plus_root(std::uint64_t n, std::uint64_t k) {
  const Real angle = boost::math::constants::pi<Real>() * Real(k % n) / Real(n);
  return log(abs(2 * cos(angle)));
}

}  // namespace

NumericRankReport unit_group_rank_numeric(std::uint64_t n, double tolerance, std::uint64_t cap) {
  if (n == 0 || n % 2 == 0) throw DomainError("unit_group_rank_numeric: expected an odd positive integer, got " + std::to_string(n));
  if (n > cap) throw ResourceError("unit_group_rank_numeric: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (!(tolerance > 0 && tolerance < 1)) throw DomainError("unit_group_rank_numeric: tolerance must lie in (0, 1)");

  std::vector<std::uint64_t> units;
  for (std::uint64_t a = 1; a <= n; ++a)
    if (nt::gcd(a, n) == 1) units.push_back(a % n);

  Matrix m(static_cast<Eigen::Index>(units.size()), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < units.size(); ++r)
    for (std::uint64_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = log_abs_one_plus_root(n, units[r] * j % n);

  const Eigen::JacobiSVD<Matrix> svd(m);
  NumericRankReport report;
  report.n = n;
  report.tolerance = tolerance;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    report.singular_values.push_back(static_cast<double>(sv(i)));
    if (sv(i) > Real(tolerance)) ++report.numeric_rank;
  }
  std::sort(report.singular_values.begin(), report.singular_values.end(), std::greater<>());
  if (n == 1) {
    report.expected = 1;
  } else if (ofs::is_member(static_cast<std::int64_t>(n)).member) {
    report.expected = nt::totient(n) / 2;
  }
  return report;
}

double log_embedding_residual(std::uint64_t n, const ExponentVector& x) {
  if (x.n != n) throw StructuralError("log_embedding_residual: vector length does not match n");
  Real worst = 0;
  for (std::uint64_t d : nt::divisors(n)) {
    const ExponentVector y = project_exponents(n, d, x);
    Real s = 0;
    for (std::uint64_t j = 0; j < d; ++j)
      if (y.entries[j] != 0) s += Real(y.entries[j]) * log_abs_one_plus_root(d, j);
    worst = std::max(worst, Real(abs(s)));
  }
  return static_cast<double>(worst);
}

}  // namespace fsr::cyclo
