#pragma once

#include "primbase/class_table.hpp"
#include "primbase/classes.hpp"
#include "primbase/errors.hpp"
#include "primbase/numeric.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace primbase {

struct LedgerRow {
  std::string label;
  BigInt class_size;
  Rational fpr;
  Rational contribution;  // class_size * fpr^c
};

struct BoundLedger {
  int c = 0;
  std::vector<LedgerRow> per_class_contributions;
  Rational total = 0;
  std::string source;  // "computed" or "imported-table"
  bool certified = true;
};

namespace detail {

inline void add_row(BoundLedger& L, std::string label, const BigInt& size, const Rational& fpr) {
  if (size < 0 || fpr < 0) throw InputError("negative class size or fpr in row " + label);
  LedgerRow r{std::move(label), size, fpr, Rational(size) * pow_rational(fpr, static_cast<unsigned>(L.c))};
  L.total += r.contribution;
  L.per_class_contributions.push_back(std::move(r));
}

} // namespace detail

/// Q̂(G,c) = Σ |x^G| fpr(x)^c over prime-order classes, fpr = fix(x)/|Ω|.
inline BoundLedger qhat_from_inventory(const ClassInventory& inv, int c) {
  if (!inv.complete) throw StateError("class inventory of " + inv.group_name + " is not complete");
  if (c < 0) throw InputError("c must be non-negative");
  BoundLedger L;
  L.c = c;
  L.source = "computed";
  for (const auto& r : inv.records) {
    if (!is_prime(r.element_order)) continue;
    detail::add_row(L, r.label, r.class_size,
                    Rational(static_cast<long long>(r.fixed_point_count), static_cast<long long>(inv.degree)));
  }
  return L;
}

/// Same bound from an imported table; rows are uncertified literature data.
inline BoundLedger qhat_from_table(const std::vector<ClassTableRow>& rows, int c) {
  if (c < 0) throw InputError("c must be non-negative");
  BoundLedger L;
  L.c = c;
  L.source = "imported-table";
  L.certified = false;
  for (const auto& r : rows) {
    if (r.element_order != 0 && !is_prime(r.element_order)) continue;
    Rational f;
    if (r.fpr) f = *r.fpr;
    else if (r.xg_cap_h) {
      if (r.class_size == 0) throw InputError("row " + r.label + " has class_size 0");
      f = Rational(*r.xg_cap_h, r.class_size);
    } else if (r.fixed_points && r.degree) {
      if (*r.degree == 0) throw InputError("row " + r.label + " has degree 0");
      f = Rational(*r.fixed_points, *r.degree);
    } else {
      throw InputError("row " + r.label + " needs fpr, xg_cap_h, or fixed_points with degree");
    }
    detail::add_row(L, r.label, r.class_size, f);
  }
  return L;
}

/// B (A/B)^c.
inline Rational aggregate_bound(const BigInt& A, const BigInt& B, int c) {
  if (B == 0) throw InputError("B must be positive");
  if (B < 0 || A < 0) throw InputError("A and B must be non-negative");
  if (c < 1) throw InputError("c must be at least 1");
  return Rational(B) * pow_rational(Rational(A, B), static_cast<unsigned>(c));
}

inline void write_ledger_csv(std::ostream& os, const BoundLedger& L) {
  os << "label,class_size,fpr,contribution,contribution_decimal\n";
  for (const auto& r : L.per_class_contributions)
    os << r.label << ',' << r.class_size << ',' << to_string(r.fpr) << ',' << to_string(r.contribution) << ','
       << to_decimal(r.contribution) << '\n';
  os << "total,,," << to_string(L.total) << ',' << to_decimal(L.total) << '\n';
}

inline void write_ledger_text(std::ostream& os, const BoundLedger& L) {
  os << "Qhat ledger (c = " << L.c << ", source = " << L.source << (L.certified ? "" : ", uncertified") << ")\n";
  for (const auto& r : L.per_class_contributions)
    os << "  " << r.label << "  |x^G| = " << r.class_size << "  fpr = " << to_string(r.fpr)
       << "  contribution = " << to_string(r.contribution) << " (" << to_decimal(r.contribution) << ")\n";
  os << "  total = " << to_string(L.total) << " (" << to_decimal(L.total) << ")\n";
}

} // namespace primbase
