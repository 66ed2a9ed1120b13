#include "fsr/radon.hpp"

#include <map>
#include <string>

#include "fsr/cyclo.hpp"
#include "fsr/error.hpp"
#include "fsr/numtheory.hpp"
#include "fsr/parallel.hpp"

namespace fsr::radon {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

// ---- exact rationals as integers over a common denominator

struct Scaled {
  mpz_class denom = 1;
  std::vector<mpz_class> nums;
  mpz_class abs_sum = 0;
};

Scaled scale(const std::vector<mpq_class>& v) {
  Scaled s;
  for (const auto& q : v)
    if (q.get_den() != 1) mpz_lcm(s.denom.get_mpz_t(), s.denom.get_mpz_t(), q.get_den_mpz_t());
  s.nums.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    s.nums[i] = v[i].get_num() * (s.denom / v[i].get_den());
    s.abs_sum += abs(s.nums[i]);
  }
  return s;
}

template <class Acc>
Acc to_acc(const mpz_class& z) {
  if constexpr (std::is_same_v<Acc, mpz_class>) {
    return z;
  } else if constexpr (std::is_same_v<Acc, std::int64_t>) {
    return z.get_si();
  } else {
    const mpz_class mag = abs(z);
    const mpz_class hi = mag >> 64;
    const mpz_class lo = mag - (hi << 64);
    u64 lo64 = 0, hi64 = 0;
    mpz_export(&lo64, nullptr, -1, sizeof(u64), 0, 0, lo.get_mpz_t());
    mpz_export(&hi64, nullptr, -1, sizeof(u64), 0, 0, hi.get_mpz_t());
    const i128 r = static_cast<i128>((static_cast<unsigned __int128>(hi64) << 64) | lo64);
    return sgn(z) < 0 ? -r : r;
  }
}

template <class Acc>
mpz_class to_mpz(const Acc& a) {
  if constexpr (std::is_same_v<Acc, mpz_class>) {
    return a;
  } else if constexpr (std::is_same_v<Acc, std::int64_t>) {
    return mpz_class(static_cast<long>(a));
  } else {
    const bool neg = a < 0;
    const auto mag = neg ? static_cast<unsigned __int128>(-a) : static_cast<unsigned __int128>(a);
    mpz_class r = mpz_class(static_cast<unsigned long>(mag >> 64)) << 64;
    r += static_cast<unsigned long>(mag & ~u64{0});
    return neg ? mpz_class(-r) : r;
  }
}

// Runs kernel<Acc>(values) with the narrowest accumulator that cannot overflow:
// every intermediate is a signed sum of distinct inputs, so |.| <= abs_sum.
template <class Kernel>
std::vector<mpq_class> run_scaled(const Scaled& in, Kernel&& kernel) {
  auto finish = [&](const auto& acc) {
    std::vector<mpq_class> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0) continue;
      out[i] = mpq_class(to_mpz(acc[i]), in.denom);
      out[i].canonicalize();
    }
    return out;
  };
  auto convert = [&](auto tag) {
    using Acc = decltype(tag);
    std::vector<Acc> v(in.nums.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = to_acc<Acc>(in.nums[i]);
    return v;
  };
  if (mpz_sizeinbase(in.abs_sum.get_mpz_t(), 2) < 62) return finish(kernel(convert(std::int64_t{})));
  if (mpz_sizeinbase(in.abs_sum.get_mpz_t(), 2) < 126) return finish(kernel(convert(i128{})));
  return finish(kernel(convert(mpz_class{})));
}

u64 ipow(u64 b, std::size_t e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// ---- fiber sums: T[a * n + s] = Σ_x w[x] [a·x = s]

// Calls fn(x_index, a·x mod n) for every x, for a fixed coefficient vector a (d <= 2).
template <class Fn>
void sweep(u64 n, const std::vector<u64>& a, Fn&& fn) {
  if (a.size() == 1) {
    u64 s = 0;
    for (u64 x = 0; x < n; ++x) {
      fn(x, s);
      s += a[0];
      if (s >= n) s -= n;
    }
    return;
  }
  u64 s1 = 0, idx = 0;
  for (u64 x1 = 0; x1 < n; ++x1) {
    u64 s = s1;
    for (u64 x2 = 0; x2 < n; ++x2) {
      fn(idx++, s);
      s += a[1];
      if (s >= n) s -= n;
    }
    s1 += a[0];
    if (s1 >= n) s1 -= n;
  }
}

template <class Acc>
std::vector<Acc> fiber_sums_direct(u64 n, std::size_t d, const std::vector<Acc>& w, unsigned jobs) {
  const u64 points = ipow(n, d);
  std::vector<Acc> out(points * n);
  parallel_for(points, jobs, [&](std::size_t begin, std::size_t end) {
    for (u64 a = begin; a < end; ++a) {
      Acc* row = &out[a * n];
      sweep(n, coords_of(a, n, d), [&](u64 x, u64 s) { row[s] += w[x]; });
    }
  });
  return out;
}

// One coordinate at a time: slot k of the state switches from x_k to a_k.
// Cost d n^(d+2) instead of n^(2d). With zero_slice_only the last step fills s = 0 only.
template <class Acc>
std::vector<Acc> fiber_sums_dp(u64 n, std::size_t d, const std::vector<Acc>& w, bool zero_slice_only) {
  const u64 points = ipow(n, d);
  std::vector<Acc> cur(points * n), next(points * n);
  for (u64 x = 0; x < points; ++x) cur[x * n] = w[x];
  for (std::size_t k = 0; k < d; ++k) {
    const bool last_zero = zero_slice_only && k + 1 == d;
    const u64 outer = ipow(n, k), inner = ipow(n, d - 1 - k);
    std::fill(next.begin(), next.end(), Acc(0));
    for (u64 o = 0; o < outer; ++o) {
      for (u64 i = 0; i < inner; ++i) {
        auto row = [&](u64 v) { return ((o * n + v) * inner + i) * n; };
        for (u64 a = 0; a < n; ++a) {
          Acc* dst = &next[row(a)];
          for (u64 x = 0; x < n; ++x) {
            const Acc* src = &cur[row(x)];
            const u64 m = a * x % n;
            // dst[(t + m) mod n] += src[t]
            if (last_zero) {
              dst[0] += src[(n - m) % n];
              continue;
            }
            for (u64 t = 0; t + m < n; ++t) dst[t + m] += src[t];
            for (u64 t = n - m; t < n; ++t) dst[t + m - n] += src[t];
          }
        }
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

template <class Acc>
std::vector<Acc> fiber_sums(u64 n, std::size_t d, const std::vector<Acc>& w, unsigned jobs, bool zero_slice_only = false) {
  return d <= 2 ? fiber_sums_direct(n, d, w, jobs) : fiber_sums_dp(n, d, w, zero_slice_only);
}

// ---- slice sums: out[x] = Σ_a g[a * n + a·x]

template <class Acc>
std::vector<Acc> slice_sums_direct(u64 n, std::size_t d, const std::vector<Acc>& g, unsigned jobs) {
  const u64 points = ipow(n, d);
  const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(jobs, points));
  std::vector<std::vector<Acc>> partial(blocks, std::vector<Acc>(points));
  parallel_for(blocks, static_cast<unsigned>(blocks), [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      auto& out = partial[b];
      for (u64 a = points * b / blocks; a < points * (b + 1) / blocks; ++a) {
        const Acc* row = &g[a * n];
        sweep(n, coords_of(a, n, d), [&](u64 x, u64 s) { out[x] += row[s]; });
      }
    }
  });
  for (std::size_t b = 1; b < blocks; ++b)
    for (u64 x = 0; x < points; ++x) partial[0][x] += partial[b][x];
  return std::move(partial[0]);
}

template <class Acc>
std::vector<Acc> slice_sums_dp(u64 n, std::size_t d, const std::vector<Acc>& g) {
  const u64 points = ipow(n, d);
  std::vector<Acc> cur = g, next(points * n);
  for (std::size_t k = 0; k < d; ++k) {
    const bool last = k + 1 == d;
    const u64 outer = ipow(n, k), inner = ipow(n, d - 1 - k);
    std::fill(next.begin(), next.end(), Acc(0));
    for (u64 o = 0; o < outer; ++o) {
      for (u64 i = 0; i < inner; ++i) {
        auto row = [&](u64 v) { return ((o * n + v) * inner + i) * n; };
        for (u64 x = 0; x < n; ++x) {
          Acc* dst = &next[row(x)];
          for (u64 a = 0; a < n; ++a) {
            const Acc* src = &cur[row(a)];
            const u64 m = a * x % n;
            // dst[s] += src[(s + m) mod n]
            if (last) {
              dst[0] += src[m];
              continue;
            }
            for (u64 s = 0; s + m < n; ++s) dst[s] += src[s + m];
            for (u64 s = n - m; s < n; ++s) dst[s] += src[s + m - n];
          }
        }
      }
    }
    std::swap(cur, next);
  }
  std::vector<Acc> out(points);
  for (u64 x = 0; x < points; ++x) out[x] = std::move(cur[x * n]);
  return out;
}

template <class Acc>
std::vector<Acc> slice_sums(u64 n, std::size_t d, const std::vector<Acc>& g, unsigned jobs) {
  return d <= 2 ? slice_sums_direct(n, d, g, jobs) : slice_sums_dp(n, d, g);
}

void check_size(std::size_t got, std::uint64_t expected, const char* what) {
  if (got != expected) {
    throw StructuralError(std::string(what) + ": expected " + std::to_string(expected) + " values, got " + std::to_string(got));
  }
}

u64 hom_index(const Hom& psi, u64 n, std::size_t d, const char* what) {
  if (psi.n != n || psi.coeffs.size() != d) throw StructuralError(std::string(what) + ": homomorphism does not match the table");
  for (u64 a : psi.coeffs)
    if (a >= n) throw StructuralError(std::string(what) + ": coefficient out of range");
  return index_of(psi.coeffs, n);
}

u64 point_index(const GroupElement& x, u64 n, std::size_t d) {
  GroupSpec::power(static_cast<std::int64_t>(n), d).check(x);
  u64 idx = 0;
  for (auto c : x.coords) idx = idx * n + static_cast<u64>(c);
  return idx;
}

}  // namespace

// ---- indexing

std::uint64_t Hom::apply(const GroupElement& x) const {
  if (x.arity() != coeffs.size()) throw StructuralError("Hom::apply: dimension mismatch");
  u64 s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s = (s + nt::mul_mod(coeffs[i], nt::mod(x[i], n), n)) % n;
  return s;
}

std::uint64_t point_count(std::uint64_t n, std::size_t d) {
  if (n == 0 || d == 0) throw DomainError("radon: n and d must be positive");
  u64 size = n;  // n^(d+1)
  for (std::size_t i = 0; i < d; ++i) {
    if (size > kMaxImageEntries / n) {
      throw ResourceError("radon: (Z/" + std::to_string(n) + ")^" + std::to_string(d) + " exceeds the table size limit");
    }
    size *= n;
  }
  return size / n;
}

std::uint64_t index_of(const std::vector<std::uint64_t>& coords, std::uint64_t n) {
  u64 idx = 0;
  for (u64 c : coords) idx = idx * n + c;
  return idx;
}

std::vector<std::uint64_t> coords_of(std::uint64_t index, std::uint64_t n, std::size_t d) {
  std::vector<u64> c(d);
  for (std::size_t i = d; i-- > 0;) {
    c[i] = index % n;
    index /= n;
  }
  return c;
}

Hom hom_at(std::uint64_t index, std::uint64_t n, std::size_t d) { return Hom{n, coords_of(index, n, d)}; }

// ---- tables

FunctionTable::FunctionTable(std::uint64_t n, std::size_t d) : n_(n), d_(d), values_(point_count(n, d)) {}

FunctionTable::FunctionTable(std::uint64_t n, std::size_t d, std::vector<mpq_class> values)
    : n_(n), d_(d), values_(std::move(values)) {
  check_size(values_.size(), point_count(n, d), "FunctionTable");
}

mpq_class& FunctionTable::at(const GroupElement& x) { return values_[point_index(x, n_, d_)]; }
const mpq_class& FunctionTable::at(const GroupElement& x) const { return values_[point_index(x, n_, d_)]; }

RadonImage::RadonImage(std::uint64_t n, std::size_t d) : n_(n), d_(d), entries_(point_count(n, d) * n) {}

RadonImage::RadonImage(std::uint64_t n, std::size_t d, std::vector<mpq_class> entries)
    : n_(n), d_(d), entries_(std::move(entries)) {
  check_size(entries_.size(), point_count(n, d) * n, "RadonImage");
}

mpq_class& RadonImage::at(const Hom& psi, std::uint64_t c) {
  if (c >= n_) throw StructuralError("RadonImage: residue out of range");
  return entries_[hom_index(psi, n_, d_, "RadonImage") * n_ + c];
}
const mpq_class& RadonImage::at(const Hom& psi, std::uint64_t c) const {
  if (c >= n_) throw StructuralError("RadonImage: residue out of range");
  return entries_[hom_index(psi, n_, d_, "RadonImage") * n_ + c];
}

InvertingFunction::InvertingFunction(std::uint64_t n, std::size_t d) : n_(n), d_(d), weights_(point_count(n, d)) {}

InvertingFunction::InvertingFunction(std::uint64_t n, std::size_t d, std::vector<mpq_class> weights)
    : n_(n), d_(d), weights_(std::move(weights)) {
  check_size(weights_.size(), point_count(n, d), "InvertingFunction");
}

mpq_class& InvertingFunction::at(const Hom& psi) { return weights_[hom_index(psi, n_, d_, "InvertingFunction")]; }
const mpq_class& InvertingFunction::at(const Hom& psi) const { return weights_[hom_index(psi, n_, d_, "InvertingFunction")]; }

// ---- transform

RadonImage forward(const FunctionTable& f, unsigned jobs) {
  const u64 n = f.n();
  const std::size_t d = f.d();
  auto entries = run_scaled(scale(f.values()), [&](const auto& w) { return fiber_sums(n, d, w, jobs); });
  return RadonImage(n, d, std::move(entries));
}

bool divides_hom(std::uint64_t p, const Hom& psi) {
  if (p == 0 || psi.n % p != 0) {
    throw DomainError("divides_hom: " + std::to_string(p) + " does not divide n = " + std::to_string(psi.n));
  }
  for (u64 a : psi.coeffs)
    if (a % p != 0) return false;
  return true;
}

namespace {

mpq_class weight_for_primes(u64 n, std::size_t d, const std::vector<u64>& primes) {
  mpz_class den = nt::totient(n);
  mpz_class nd;
  mpz_ui_pow_ui(nd.get_mpz_t(), n, d - 1);
  den *= nd;
  mpz_class num = 1;
  for (u64 p : primes) {
    mpz_class pp;
    mpz_ui_pow_ui(pp.get_mpz_t(), p, d - 1);
    num *= 1 - pp;
  }
  mpq_class w(num, den);
  w.canonicalize();
  return w;
}

}  // namespace

mpq_class inversion_weight(std::uint64_t n, std::size_t d, const Hom& psi) {
  point_count(n, d);
  hom_index(psi, n, d, "inversion_weight");
  std::vector<u64> primes;
  for (u64 p : nt::prime_divisors(n))
    if (divides_hom(p, psi)) primes.push_back(p);
  return weight_for_primes(n, d, primes);
}

InvertingFunction inverting_function(std::uint64_t n, std::size_t d) {
  InvertingFunction lambda(n, d);
  const auto primes = nt::prime_divisors(n);
  // The weight depends only on which primes divide gcd(coeffs, n).
  std::map<u64, mpq_class> by_gcd;
  auto& w = lambda.weights();
  for (u64 idx = 0; idx < w.size(); ++idx) {
    u64 g = n;
    for (u64 a : coords_of(idx, n, d)) g = nt::gcd(g, a);
    auto it = by_gcd.find(g);
    if (it == by_gcd.end()) {
      std::vector<u64> dividing;
      for (u64 p : primes)
        if (g % p == 0) dividing.push_back(p);
      it = by_gcd.emplace(g, weight_for_primes(n, d, dividing)).first;
    }
    w[idx] = it->second;
  }
  return lambda;
}

FunctionTable invert(const RadonImage& rf, const InvertingFunction& lambda, unsigned jobs) {
  const u64 n = rf.n();
  const std::size_t d = rf.d();
  if (lambda.n() != n || lambda.d() != d) throw StructuralError("invert: inverting function does not match the image");
  const Scaled l = scale(lambda.weights());
  const Scaled r = scale(rf.entries());
  Scaled g;
  g.denom = l.denom * r.denom;
  g.nums.resize(r.nums.size());
  for (u64 a = 0; a < l.nums.size(); ++a) {
    if (l.nums[a] == 0) continue;
    for (u64 c = 0; c < n; ++c) {
      mpz_class& v = g.nums[a * n + c];
      v = l.nums[a] * r.nums[a * n + c];
      g.abs_sum += abs(v);
    }
  }
  auto values = run_scaled(g, [&](const auto& w) { return slice_sums(n, d, w, jobs); });
  return FunctionTable(n, d, std::move(values));
}

FunctionTable invert(const RadonImage& rf, unsigned jobs) { return invert(rf, inverting_function(rf.n(), rf.d()), jobs); }

bool verify_inverting(const InvertingFunction& lambda) {
  const u64 n = lambda.n();
  const std::size_t d = lambda.d();
  // Σ_{ψ(x)=0} λ(ψ) is the fiber sum of λ, viewed as a function on (Z/nZ)^d, at (x, 0).
  const auto sums = run_scaled(scale(lambda.weights()), [&](const auto& w) { return fiber_sums(n, d, w, 1, true); });
  for (u64 x = 0; x < lambda.weights().size(); ++x)
    if (sums[x * n] != (x == 0 ? 1 : 0)) return false;
  return true;
}

InvertingFunction product_lift(const InvertingFunction& lambda_m, const InvertingFunction& lambda_n) {
  const u64 m = lambda_m.n(), n = lambda_n.n();
  const std::size_t d = lambda_m.d();
  if (lambda_n.d() != d) throw StructuralError("product_lift: dimensions differ");
  if (nt::gcd(m, n) != 1) {
    throw DomainError("product_lift: moduli " + std::to_string(m) + " and " + std::to_string(n) + " are not coprime");
  }
  InvertingFunction out(m * n, d);
  auto& w = out.weights();
  for (u64 idx = 0; idx < w.size(); ++idx) {
    const auto c = coords_of(idx, m * n, d);
    u64 im = 0, in = 0;
    for (u64 a : c) {
      im = im * m + a % m;
      in = in * n + a % n;
    }
    w[idx] = lambda_m.weights()[im] * lambda_n.weights()[in];
  }
  return out;
}

mpq_class fourier_invert_at_zero(const RadonImage& rf) {
  const u64 n = rf.n();
  std::vector<mpq_class> by_residue(n);
  for (u64 i = 0; i < rf.entries().size(); ++i) by_residue[i % n] += rf.entries()[i];
  // Σ_c S_c ω^(-c): the coefficient of t^((n - c) mod n) is S_c.
  std::vector<mpq_class> coeffs(n);
  for (u64 c = 0; c < n; ++c) coeffs[(n - c) % n] = by_residue[c];
  const cyclo::CycloElement total = cyclo::CycloElement::from_coefficients(n, coeffs);
  if (!total.is_rational()) throw DomainError("fourier_invert_at_zero: character sum is not rational; corrupted image");
  mpz_class nd;
  mpz_ui_pow_ui(nd.get_mpz_t(), n, rf.d());
  return total.rational_value() / nd;
}

bool is_consistent(const RadonImage& rf) {
  const u64 n = rf.n();
  const auto& e = rf.entries();
  mpq_class mass;
  for (u64 a = 0; a * n < e.size(); ++a) {
    mpq_class s;
    for (u64 c = 0; c < n; ++c) s += e[a * n + c];
    if (a == 0) {
      mass = s;
    } else if (s != mass) {
      return false;
    }
  }
  return true;
}

}  // namespace fsr::radon
