#include "fsr/multiset.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fsr/error.hpp"

namespace fsr {

namespace {

void require_same_group(const Multiset& a, const Multiset& b, const char* op) {
  if (!(a.group() == b.group())) {
    throw StructuralError(std::string(op) + ": group mismatch (" + a.group().to_string() + " vs " +
                          b.group().to_string() + ")");
  }
}

}  // namespace

Multiset::Multiset(GroupSpec group, const std::vector<GroupElement>& elements) : group_(std::move(group)) {
  for (const auto& x : elements) insert(x);
}

Multiset Multiset::of(const GroupSpec& group, std::initializer_list<std::int64_t> values) {
  Multiset m(group);
  for (auto v : values) m.insert(group.element({v}));
  return m;
}

void Multiset::insert(const GroupElement& x, const mpz_class& count) {
  group_.check(x);
  if (count < 0) throw StructuralError("negative multiplicity");
  if (count == 0) return;
  auto [it, inserted] = entries_.try_emplace(x, count);
  if (!inserted) it->second += count;
}

mpz_class Multiset::multiplicity(const GroupElement& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? mpz_class(0) : it->second;
}

mpz_class Multiset::cardinality() const {
  mpz_class c = 0;
  for (const auto& [x, m] : entries_) c += m;
  return c;
}

std::size_t Multiset::size() const {
  const mpz_class c = cardinality();
  if (!c.fits_ulong_p()) throw ResourceError("multiset cardinality exceeds machine range");
  return c.get_ui();
}

bool Multiset::is_subset_of(const Multiset& other) const {
  if (!(group_ == other.group_)) return false;
  for (const auto& [x, m] : entries_) {
    if (other.multiplicity(x) < m) return false;
  }
  return true;
}

GroupElement Multiset::sum() const {
  GroupElement s = group_.zero();
  for (const auto& [x, m] : entries_) s = group_.add(s, group_.scale(m, x));
  return s;
}

std::vector<GroupElement> Multiset::expanded() const {
  std::vector<GroupElement> out;
  for (const auto& [x, m] : entries_) {
    if (!m.fits_ulong_p() || m.get_ui() > (1u << 28)) throw ResourceError("multiset too large to expand");
    out.insert(out.end(), m.get_ui(), x);
  }
  return out;
}

bool operator<(const Multiset& a, const Multiset& b) {
  if (a.group_.moduli() != b.group_.moduli()) return a.group_.moduli() < b.group_.moduli();
  return std::lexicographical_compare(
      a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
      [](const auto& l, const auto& r) { return l.first != r.first ? l.first < r.first : l.second < r.second; });
}

std::string to_string(const Multiset& a) {
  std::string s = "{";
  bool first = true;
  for (const auto& [x, m] : a.entries()) {
    if (!first) s += ", ";
    first = false;
    s += x.arity() == 1 ? std::to_string(x[0]) : to_string(x);
    if (m != 1) s += "^" + m.get_str();
  }
  return s + "}";
}

Multiset multiset_union(const Multiset& a, const Multiset& b) {
  require_same_group(a, b, "union");
  Multiset out = a;
  for (const auto& [x, m] : b.entries()) out.insert(x, m);
  return out;
}

Multiset difference(const Multiset& b, const Multiset& a) {
  require_same_group(a, b, "difference");
  Multiset out(b.group());
  for (const auto& [x, m] : a.entries()) {
    if (b.multiplicity(x) < m) {
      throw StructuralError("difference: element " + to_string(x) + " occurs " + m.get_str() +
                            " times in the subtrahend but " + b.multiplicity(x).get_str() + " times in the minuend");
    }
  }
  for (const auto& [x, m] : b.entries()) out.insert(x, m - a.multiplicity(x));
  return out;
}

Multiset pushforward(const Multiset& a, const GroupSpec& target,
                     const std::function<GroupElement(const GroupElement&)>& f) {
  Multiset out(target);
  for (const auto& [x, m] : a.entries()) out.insert(f(x), m);
  return out;
}

Multiset shift(const Multiset& s, const GroupElement& g) {
  const GroupSpec& G = s.group();
  G.check(g);
  return pushforward(s, G, [&](const GroupElement& x) { return G.add(x, g); });
}

Multiset negate(const Multiset& a) {
  const GroupSpec& G = a.group();
  return pushforward(a, G, [&](const GroupElement& x) { return G.neg(x); });
}

Multiset sumset(const Multiset& a, const Multiset& b) {
  require_same_group(a, b, "sumset");
  const GroupSpec& G = a.group();
  Multiset out(G);
  for (const auto& [x, mx] : a.entries())
    for (const auto& [y, my] : b.entries()) out.insert(G.add(x, y), mx * my);
  return out;
}

Multiset flip(const Multiset& a, const Multiset& b) { return multiset_union(difference(a, b), negate(b)); }

Multiset subset_sums(const Multiset& a, std::size_t cap) {
  if (a.cardinality() > cap) {
    throw ResourceError("subset_sums: |A| = " + a.cardinality().get_str() + " exceeds cap " + std::to_string(cap));
  }
  const GroupSpec& G = a.group();
  std::map<GroupElement, mpz_class> acc{{G.zero(), 1}};
  for (const auto& [x, m] : a.entries()) {
    const unsigned long mult = m.get_ui();
    std::vector<mpz_class> binom(mult + 1);
    for (unsigned long i = 0; i <= mult; ++i) mpz_bin_uiui(binom[i].get_mpz_t(), mult, i);
    std::map<GroupElement, mpz_class> next;
    for (const auto& [s, c] : acc) {
      GroupElement y = s;
      for (unsigned long i = 0; i <= mult; ++i) {
        next[y] += c * binom[i];
        if (i < mult) y = G.add(y, x);
      }
    }
    acc = std::move(next);
  }
  Multiset out(G);
  for (const auto& [s, c] : acc) out.insert(s, c);
  return out;
}

bool sim_check(const Multiset& a, const Multiset& a_prime) {
  require_same_group(a, a_prime, "sim_check");
  const GroupSpec& G = a.group();
  auto balanced = [&](const GroupElement& x) {
    const GroupElement nx = G.neg(x);
    if (nx == x) return a.multiplicity(x) == a_prime.multiplicity(x);
    return a.multiplicity(x) + a.multiplicity(nx) == a_prime.multiplicity(x) + a_prime.multiplicity(nx);
  };
  for (const auto& [x, m] : a.entries())
    if (!balanced(x)) return false;
  for (const auto& [x, m] : a_prime.entries())
    if (!balanced(x)) return false;
  return true;
}

Sim0Result sim0_check(const Multiset& a, const Multiset& a_prime) {
  if (!sim_check(a, a_prime)) return {};
  const GroupSpec& G = a.group();
  const GroupElement zero = G.zero();

  Multiset forced(G);
  GroupElement base = zero;
  std::vector<GroupElement> slack;
  for (const auto& [x, m] : a.entries()) {
    if (G.is_self_negative(x)) {
      if (x != zero) slack.push_back(x);
      continue;
    }
    const mpz_class excess = m - a_prime.multiplicity(x);
    if (excess > 0) {
      forced.insert(x, excess);
      base = G.add(base, G.scale(excess, x));
    }
  }

  // Reachable sums base + Σ(subset of slack), remembering how each was reached.
  struct Step {
    GroupElement from;
    std::size_t via;
  };
  std::map<GroupElement, std::optional<Step>> reached{{base, std::nullopt}};
  for (std::size_t i = 0; i < slack.size() && !reached.contains(zero); ++i) {
    std::vector<GroupElement> frontier;
    for (const auto& [s, step] : reached) frontier.push_back(s);
    for (const auto& s : frontier) {
      GroupElement t = G.add(s, slack[i]);
      if (!reached.contains(t)) reached.emplace(std::move(t), Step{s, i});
    }
  }
  auto it = reached.find(zero);
  if (it == reached.end()) return {};

  Multiset b = forced;
  for (GroupElement cur = zero; reached.at(cur).has_value();) {
    const Step& step = *reached.at(cur);
    b.insert(slack[step.via]);
    cur = step.from;
  }
  GroupElement total = b.sum();
  if (total != zero || !(flip(a, b) == a_prime)) {
    throw InvariantViolation("sim0_check: constructed flip set does not witness the equivalence");
  }
  return {true, Sim0Witness{std::move(b), std::move(total)}};
}

}  // namespace fsr
