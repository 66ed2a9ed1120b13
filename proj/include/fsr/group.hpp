#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fsr {

/// An element of a finitely generated abelian group, as its coordinate vector.
/// Coordinates over finite factors Z/mZ are kept canonical in [0, m).
struct GroupElement {
  std::vector<std::int64_t> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  GroupElement(std::initializer_list<std::int64_t> c) : coords(c) {}

  std::size_t arity() const noexcept { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

std::string to_string(const GroupElement& x);

/// Z^a + Z/m1 + ... + Z/mk, described by its list of cyclic factors.
/// A modulus m >= 1 denotes Z/mZ, a modulus 0 denotes an infinite cyclic factor.
///
/// All element operations validate that their operands are canonical elements
/// of this group and throw StructuralError otherwise; this is how elements of
/// a different group are detected.
class GroupSpec {
 public:
  GroupSpec() = default;
  explicit GroupSpec(std::vector<std::int64_t> moduli);

  static GroupSpec cyclic(std::int64_t n) { return GroupSpec({n}); }
  static GroupSpec integers() { return GroupSpec({0}); }
  /// (Z/nZ)^d
  static GroupSpec power(std::int64_t n, std::size_t d) {
    return GroupSpec(std::vector<std::int64_t>(d, n));
  }

  const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  std::size_t arity() const noexcept { return moduli_.size(); }
  bool is_finite() const noexcept;
  bool has_two_torsion() const noexcept;

  /// Number of elements. Throws UnsupportedError for infinite groups.
  std::uint64_t size() const;
  /// lcm of the element orders. Throws UnsupportedError for infinite groups.
  std::uint64_t exponent() const;

  bool contains(const GroupElement& x) const noexcept;
  /// Throws StructuralError unless contains(x).
  void check(const GroupElement& x) const;
  /// Reduces arbitrary integer coordinates into canonical form.
  GroupElement element(std::vector<std::int64_t> coords) const;

  GroupElement zero() const { return GroupElement(std::vector<std::int64_t>(arity(), 0)); }
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement sub(const GroupElement& x, const GroupElement& y) const;
  GroupElement neg(const GroupElement& x) const;
  GroupElement scale(const mpz_class& k, const GroupElement& x) const;
  GroupElement scale(std::int64_t k, const GroupElement& x) const { return scale(mpz_class(static_cast<long>(k)), x); }
  bool is_self_negative(const GroupElement& x) const { return neg(x) == x; }

  /// Least k >= 1 with k*x = 0; std::nullopt means infinite order.
  std::optional<std::uint64_t> order(const GroupElement& x) const;

  /// All elements, each once, in lexicographic coordinate order.
  /// Throws UnsupportedError when an infinite factor is present.
  std::vector<GroupElement> elements() const;
  void for_each_element(const std::function<void(const GroupElement&)>& fn) const;

  std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  std::vector<std::int64_t> moduli_;
};

}  // namespace fsr
