#pragma once

#include "primbase/backtrack.hpp"
#include "primbase/errors.hpp"
#include "primbase/group.hpp"
#include "primbase/numeric.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace primbase {

struct ConjClassRecord {
  std::string label;
  Permutation representative;
  std::uint64_t element_order = 1;
  BigInt class_size = 1;
  BigInt centralizer_order = 1;
  std::size_t fixed_point_count = 0;
};

struct ClassInventory {
  std::string group_name;
  std::size_t degree = 0;
  BigInt group_order = 1;
  std::vector<ConjClassRecord> records;
  bool complete = false;
  bool prime_only = false;
  std::string method;  // how completeness was certified
};

struct ClassOptions {
  std::uint64_t seed = kDefaultSeed;
  BigInt order_budget = BigInt(1000000000000ULL);
  std::size_t degree_budget = 2000;
  std::size_t exhaustive_limit = 100000;  // enumerate every element up to this order
  std::size_t orbit_cap = 20000;          // conjugation-orbit enumeration cap per class
  std::size_t max_samples = 2000000;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline void sort_and_label(ClassInventory& inv) {
  std::sort(inv.records.begin(), inv.records.end(), [](const ConjClassRecord& a, const ConjClassRecord& b) {
    if (a.element_order != b.element_order) return a.element_order < b.element_order;
    if (a.class_size != b.class_size) return a.class_size < b.class_size;
    const auto ca = a.representative.cycle_type(), cb = b.representative.cycle_type();
    if (ca != cb) return ca < cb;
    return a.representative < b.representative;
  });
  std::map<std::uint64_t, int> seen;
  for (auto& r : inv.records) {
    const int k = seen[r.element_order]++;
    std::string suffix;
    for (int v = k;; v = v / 26 - 1) {
      suffix.insert(suffix.begin(), static_cast<char>('A' + v % 26));
      if (v < 26) break;
    }
    r.label = std::to_string(r.element_order) + suffix;
  }
}

inline ConjClassRecord make_record(const GroupHandle& G, const Permutation& rep, const BigInt& size) {
  ConjClassRecord r;
  r.representative = rep;
  r.element_order = rep.order();
  r.class_size = size;
  r.centralizer_order = G.order() / size;
  r.fixed_point_count = rep.fixed_point_count();
  if (r.centralizer_order * size != G.order()) throw InternalError("class size does not divide group order");
  return r;
}

/// Conjugation orbit of x under the generators; empty if it exceeds `cap`.
inline std::vector<Permutation> conjugation_orbit(const std::vector<Permutation>& gens, const Permutation& x,
                                                  std::size_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen{x};
  std::vector<Permutation> orb{x};
  for (std::size_t k = 0; k < orb.size(); ++k)
    for (const auto& g : gens) {
      Permutation y = orb[k].conjugate_by(g);
      if (seen.insert(y).second) {
        orb.push_back(std::move(y));
        if (orb.size() > cap) return {};
      }
    }
  return orb;
}

inline ClassInventory exhaustive_classes(const GroupHandle& G) {
  ClassInventory inv;
  inv.group_name = G.name();
  inv.degree = G.degree();
  inv.group_order = G.order();
  inv.method = "exhaustive-enumeration";
  std::vector<Permutation> all;
  G.chain().for_each_element([&](const Permutation& g) { all.push_back(g); });
  std::unordered_set<Permutation, PermutationHash> assigned;
  std::sort(all.begin(), all.end());
  BigInt total = 0;
  for (const auto& g : all) {
    if (assigned.count(g)) continue;
    auto orb = conjugation_orbit(G.generators(), g, all.size());
    for (auto& y : orb) assigned.insert(y);
    inv.records.push_back(make_record(G, *std::min_element(orb.begin(), orb.end()), orb.size()));
    total += orb.size();
  }
  if (total != G.order()) throw InternalError("class sizes do not sum to the group order");
  inv.complete = true;
  return inv;
}

class SampledClasses {
public:
  SampledClasses(const GroupHandle& G, const ClassOptions& opt) : G_(G), opt_(opt) {}

  /// Returns the index of the class of x, adding a new class when needed.
  std::size_t classify(const Permutation& x) {
    const Key key{x.order(), x.cycle_type()};
    auto& bucket = buckets_[key];
    for (std::size_t idx : bucket) {
      const auto& c = classes_[idx];
      if (c.members.empty()) {
        if (find_conjugator(G_, x, c.record.representative, c.centralizer_gens)) return idx;
      } else if (c.members.count(x)) {
        return idx;
      }
    }
    Entry e;
    auto orb = conjugation_orbit(G_.generators(), x, opt_.orbit_cap);
    if (!orb.empty()) {
      e.record = make_record(G_, *std::min_element(orb.begin(), orb.end()), orb.size());
      e.members.insert(orb.begin(), orb.end());
    } else {
      auto c = centralizer_data(G_, x);
      e.record = make_record(G_, x, G_.order() / c.order);
      e.centralizer_gens = std::move(c.generators);
    }
    total_ += e.record.class_size;
    classes_.push_back(std::move(e));
    bucket.push_back(classes_.size() - 1);
    return classes_.size() - 1;
  }

  const BigInt& total() const { return total_; }
  std::size_t size() const { return classes_.size(); }

  ClassInventory inventory() const {
    ClassInventory inv;
    inv.group_name = G_.name();
    inv.degree = G_.degree();
    inv.group_order = G_.order();
    inv.method = "random-sampling+power-maps+centralizer-backtrack";
    for (const auto& c : classes_) inv.records.push_back(c.record);
    inv.complete = (total_ == G_.order());
    return inv;
  }

private:
  struct Key {
    std::uint64_t order;
    std::vector<std::size_t> cycle_type;
    bool operator<(const Key& o) const {
      return order != o.order ? order < o.order : cycle_type < o.cycle_type;
    }
  };
  struct Entry {
    ConjClassRecord record;
    std::unordered_set<Permutation, PermutationHash> members;
    std::vector<Permutation> centralizer_gens;
  };
  const GroupHandle& G_;
  ClassOptions opt_;
  std::map<Key, std::vector<std::size_t>> buckets_;
  std::vector<Entry> classes_;
  BigInt total_ = 0;
};

inline ClassInventory sampled_classes(const GroupHandle& G, const ClassOptions& opt) {
  SampledClasses sc(G, opt);
  Rng rng(opt.seed);
  sc.classify(Permutation::identity(G.degree()));
  std::size_t samples = 0;
  while (sc.total() < G.order()) {
    if (++samples > opt.max_samples)
      throw ResourceError("class enumeration did not complete within " + std::to_string(opt.max_samples) +
                          " samples; supply an external class table instead");
    const Permutation g = G.random_element(rng);
    const std::uint64_t o = g.order();
    for (std::uint64_t d : detail::divisors(o)) sc.classify(g.pow(static_cast<long long>(d)));
  }
  if (sc.total() != G.order()) throw InternalError("class sizes overshoot the group order");
  return sc.inventory();
}

} // namespace detail

/// Every conjugacy class of G (all element orders), certified by the sum of
/// class sizes equalling |G|.
inline ClassInventory all_classes(const GroupHandle& G, const ClassOptions& opt = {}) {
  if (G.order() > opt.order_budget || G.degree() > opt.degree_budget)
    throw ResourceError("group " + G.name() + " of order " + G.order().str() +
                        " exceeds the class-enumeration budget; use an external class table");
  ClassInventory inv = G.order() <= opt.exhaustive_limit ? detail::exhaustive_classes(G) : detail::sampled_classes(G, opt);
  detail::sort_and_label(inv);
  return inv;
}

/// One record per conjugacy class; with `prime_only`, just the classes of
/// elements of prime order. Completeness is certified on the full list first.
inline ClassInventory class_inventory(const GroupHandle& G, bool prime_only, const ClassOptions& opt = {}) {
  ClassInventory inv = all_classes(G, opt);
  if (prime_only) {
    std::vector<ConjClassRecord> keep;
    for (auto& r : inv.records)
      if (is_prime(r.element_order)) keep.push_back(std::move(r));
    inv.records = std::move(keep);
    inv.prime_only = true;
  }
  return inv;
}

/// |x^G| = |G| / |C_G(x)|, the centralizer found by backtrack.
inline BigInt class_size(const GroupHandle& G, const Permutation& x) {
  auto c = centralizer_data(G, x);
  return G.order() / c.order;
}

/// i_r: number of elements of order exactly r.
inline BigInt count_elements_of_prime_order(const ClassInventory& inv, std::uint64_t r) {
  if (!inv.complete) throw StateError("class inventory of " + inv.group_name + " is not complete");
  if (!is_prime(r)) throw InputError(std::to_string(r) + " is not prime");
  BigInt total = 0;
  for (const auto& rec : inv.records)
    if (rec.element_order == r) total += rec.class_size;
  return total;
}

/// Sum over all classes of |class| * fixed points; equals |G| times the
/// number of orbits (Burnside).
inline BigInt burnside_sum(const ClassInventory& inv) {
  if (!inv.complete || inv.prime_only) throw StateError("Burnside sum needs a complete inventory of all classes");
  BigInt s = 0;
  for (const auto& r : inv.records) s += r.class_size * r.fixed_point_count;
  return s;
}

} // namespace primbase
