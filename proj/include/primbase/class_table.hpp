#pragma once

#include "primbase/classes.hpp"
#include "primbase/errors.hpp"
#include "primbase/group_io.hpp"
#include "primbase/numeric.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace primbase {

/// One row of an external class table. Only label and class_size are
/// mandatory; the fixed point ratio comes from `fpr`, from `fixed_points`
/// with `degree`, or from `xg_cap_h` (|x^G ∩ H|).
struct ClassTableRow {
  std::string label;
  std::uint64_t element_order = 0;
  BigInt class_size = 0;
  std::optional<BigInt> centralizer_order;
  std::optional<BigInt> fixed_points;
  std::optional<BigInt> degree;
  std::optional<Rational> fpr;
  std::optional<BigInt> xg_cap_h;
};

inline void write_class_table(std::ostream& os, const ClassInventory& inv) {
  os << "label,element_order,class_size,centralizer_order,fixed_points\n";
  for (const auto& r : inv.records)
    os << r.label << ',' << r.element_order << ',' << r.class_size << ',' << r.centralizer_order << ','
       << r.fixed_point_count << '\n';
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline BigInt parse_big(const std::string& s, const std::string& where) {
  if (s.empty()) throw InputError(where + "empty integer field");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-')))
      throw InputError(where + "invalid integer '" + s + "'");
  return BigInt(s);
}

} // namespace detail

/// Reads a class-table CSV. The header names the columns; unknown columns
/// are ignored.
inline std::vector<ClassTableRow> read_class_table(std::istream& in, const std::string& source = "<table>") {
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> col;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto head = detail::split_csv(t);
    for (std::size_t i = 0; i < head.size(); ++i) col[head[i]] = i;
    break;
  }
  if (col.empty()) throw InputError(source + ": class table has no header");
  if (!col.count("class_size")) throw InputError(source + ": class table lacks a 'class_size' column");

  std::vector<ClassTableRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    auto f = detail::split_csv(t);
    auto field = [&](const std::string& name) -> std::optional<std::string> {
      auto it = col.find(name);
      if (it == col.end() || it->second >= f.size() || f[it->second].empty()) return std::nullopt;
      return f[it->second];
    };
    ClassTableRow r;
    r.label = field("label").value_or("row" + std::to_string(rows.size() + 1));
    if (auto v = field("element_order")) r.element_order = detail::parse_big(*v, where).convert_to<std::uint64_t>();
    auto cs = field("class_size");
    if (!cs) throw InputError(where + "missing class_size");
    r.class_size = detail::parse_big(*cs, where);
    if (auto v = field("centralizer_order")) r.centralizer_order = detail::parse_big(*v, where);
    if (auto v = field("fixed_points")) r.fixed_points = detail::parse_big(*v, where);
    if (auto v = field("degree")) r.degree = detail::parse_big(*v, where);
    if (auto v = field("xg_cap_h")) r.xg_cap_h = detail::parse_big(*v, where);
    if (auto v = field("fpr")) {
      try {
        r.fpr = parse_rational(*v);
      } catch (const std::exception&) {
        throw InputError(where + "invalid fpr '" + *v + "'");
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ClassTableRow> read_class_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open class table '" + path + "'");
  return read_class_table(in, path);
}

} // namespace primbase
