#include "fsr/group.hpp"

#include <limits>

#include "fsr/error.hpp"
#include "fsr/numtheory.hpp"

namespace fsr {

std::string to_string(const GroupElement& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x.coords[i]);
  }
  return s + ")";
}

GroupSpec::GroupSpec(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  for (auto m : moduli_) {
    if (m < 0) throw StructuralError("group modulus must be >= 0, got " + std::to_string(m));
  }
}

bool GroupSpec::is_finite() const noexcept {
  for (auto m : moduli_)
    if (m == 0) return false;
  return true;
}

bool GroupSpec::has_two_torsion() const noexcept {
  for (auto m : moduli_)
    if (m > 0 && m % 2 == 0) return true;
  return false;
}

std::uint64_t GroupSpec::size() const {
  if (!is_finite()) throw UnsupportedError("group " + to_string() + " is infinite");
  std::uint64_t s = 1;
  for (auto m : moduli_) {
    if (s > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(m))
      throw ResourceError("group order overflows 64 bits");
    s *= static_cast<std::uint64_t>(m);
  }
  return s;
}

std::uint64_t GroupSpec::exponent() const {
  if (!is_finite()) throw UnsupportedError("group " + to_string() + " is infinite");
  std::uint64_t e = 1;
  for (auto m : moduli_) e = nt::lcm(e, static_cast<std::uint64_t>(m));
  return e;
}

bool GroupSpec::contains(const GroupElement& x) const noexcept {
  if (x.arity() != arity()) return false;
  for (std::size_t i = 0; i < arity(); ++i) {
    const auto m = moduli_[i];
    if (m > 0 && (x[i] < 0 || x[i] >= m)) return false;
  }
  return true;
}

void GroupSpec::check(const GroupElement& x) const {
  if (!contains(x)) {
    throw StructuralError("element " + fsr::to_string(x) + " is not a canonical element of " + to_string());
  }
}

GroupElement GroupSpec::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != arity()) {
    throw StructuralError("expected " + std::to_string(arity()) + " coordinates for " + to_string() + ", got " +
                          std::to_string(coords.size()));
  }
  for (std::size_t i = 0; i < arity(); ++i) {
    if (moduli_[i] > 0) coords[i] = static_cast<std::int64_t>(nt::mod(coords[i], moduli_[i]));
  }
  return GroupElement(std::move(coords));
}

GroupElement GroupSpec::add(const GroupElement& x, const GroupElement& y) const {
  check(x);
  check(y);
  GroupElement r = x;
  for (std::size_t i = 0; i < arity(); ++i) {
    const auto m = moduli_[i];
    r.coords[i] += y[i];
    if (m > 0 && r.coords[i] >= m) r.coords[i] -= m;
  }
  return r;
}

GroupElement GroupSpec::neg(const GroupElement& x) const {
  check(x);
  GroupElement r = x;
  for (std::size_t i = 0; i < arity(); ++i) {
    const auto m = moduli_[i];
    if (m == 0)
      r.coords[i] = -x[i];
    else
      r.coords[i] = x[i] == 0 ? 0 : m - x[i];
  }
  return r;
}

GroupElement GroupSpec::sub(const GroupElement& x, const GroupElement& y) const { return add(x, neg(y)); }

GroupElement GroupSpec::scale(const mpz_class& k, const GroupElement& x) const {
  check(x);
  GroupElement r = x;
  for (std::size_t i = 0; i < arity(); ++i) {
    const auto m = moduli_[i];
    if (m == 0) {
      mpz_class v = k * mpz_class(static_cast<long>(x[i]));
      if (!v.fits_slong_p()) throw ResourceError("integer coordinate overflow in scale");
      r.coords[i] = v.get_si();
    } else {
      mpz_class v = k * mpz_class(static_cast<long>(x[i]));
      mpz_class red;
      mpz_fdiv_r_ui(red.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
      r.coords[i] = red.get_si();
    }
  }
  return r;
}

std::optional<std::uint64_t> GroupSpec::order(const GroupElement& x) const {
  check(x);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < arity(); ++i) {
    const auto m = moduli_[i];
    if (m == 0) {
      if (x[i] != 0) return std::nullopt;
      continue;
    }
    const auto um = static_cast<std::uint64_t>(m);
    ord = nt::lcm(ord, um / nt::gcd(static_cast<std::uint64_t>(x[i]), um));
  }
  return ord;
}

void GroupSpec::for_each_element(const std::function<void(const GroupElement&)>& fn) const {
  if (!is_finite()) throw UnsupportedError("cannot enumerate infinite group " + to_string());
  GroupElement x = zero();
  if (arity() == 0) {
    fn(x);
    return;
  }
  while (true) {
    fn(x);
    std::size_t i = arity();
    while (i > 0) {
      --i;
      if (++x.coords[i] < moduli_[i]) break;
      x.coords[i] = 0;
      if (i == 0) return;
    }
  }
}

std::vector<GroupElement> GroupSpec::elements() const {
  std::vector<GroupElement> out;
  out.reserve(size());
  for_each_element([&](const GroupElement& x) { out.push_back(x); });
  return out;
}

std::string GroupSpec::to_string() const {
  if (moduli_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) s += " + ";
    s += moduli_[i] == 0 ? std::string("Z") : "Z/" + std::to_string(moduli_[i]);
  }
  return s;
}

}  // namespace fsr
