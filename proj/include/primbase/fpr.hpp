#pragma once

#include "primbase/backtrack.hpp"
#include "primbase/classes.hpp"
#include "primbase/errors.hpp"
#include "primbase/group.hpp"
#include "primbase/numeric.hpp"

#include <vector>

namespace primbase {

/// Proportion of points fixed by x.
inline Rational fpr_by_fixes(const Permutation& x) {
  if (x.degree() == 0) throw InputError("empty action");
  return Rational(static_cast<long long>(x.fixed_point_count()), static_cast<long long>(x.degree()));
}

inline Rational fpr_by_fixes(const Permutation& x, std::size_t action_degree) {
  if (x.degree() != action_degree)
    throw InputError("element acts on " + std::to_string(x.degree()) + " points, not " +
                     std::to_string(action_degree));
  return fpr_by_fixes(x);
}

struct FusionEntry {
  std::size_t h_class = 0;  // index into the H inventory
  std::size_t g_class = 0;  // index into the G inventory
  BigInt h_class_size = 0;
};

struct FusionMap {
  ClassInventory g_classes;  // prime-order classes of G
  ClassInventory h_classes;  // prime-order classes of H
  std::vector<FusionEntry> entries;
  std::vector<BigInt> meet;  // |x^G ∩ H| per G-class
};

namespace detail {

inline bool same_g_class(const GroupHandle& G, const Permutation& h, const ConjClassRecord& g) {
  if (h.order() != g.element_order) return false;
  return find_conjugator(G, h, g.representative).has_value();
}

} // namespace detail

/// Which G-class each prime-order H-class falls into, and |x^G ∩ H|.
inline FusionMap fuse_classes(const GroupHandle& G, const GroupHandle& H, const ClassOptions& opt = {}) {
  require_subgroup(G, H);
  FusionMap fm;
  fm.g_classes = class_inventory(G, true, opt);
  fm.h_classes = class_inventory(H, true, opt);
  fm.meet.assign(fm.g_classes.records.size(), 0);
  for (std::size_t i = 0; i < fm.h_classes.records.size(); ++i) {
    const auto& hr = fm.h_classes.records[i];
    bool placed = false;
    for (std::size_t j = 0; j < fm.g_classes.records.size() && !placed; ++j) {
      if (!detail::same_g_class(G, hr.representative, fm.g_classes.records[j])) continue;
      fm.entries.push_back({i, j, hr.class_size});
      fm.meet[j] += hr.class_size;
      placed = true;
    }
    if (!placed) throw InternalError("H-class " + hr.label + " fuses into no G-class");
  }
  return fm;
}

/// fpr(x) = |x^G ∩ H| / |x^G|, counting H-classes that fuse into x^G.
inline Rational fpr_by_fusion(const GroupHandle& G, const GroupHandle& H, const Permutation& x,
                              const ClassOptions& opt = {}) {
  require_subgroup(G, H);
  require_member(G, x);
  if (x.is_identity()) return Rational(1);
  const ClassInventory hinv = all_classes(H, opt);
  BigInt meet = 0;
  for (const auto& hr : hinv.records) {
    if (hr.element_order != x.order()) continue;
    if (find_conjugator(G, hr.representative, x)) meet += hr.class_size;
  }
  return Rational(meet, class_size(G, x));
}

} // namespace primbase
