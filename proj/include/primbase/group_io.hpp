#pragma once

#include "primbase/errors.hpp"
#include "primbase/group.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace primbase {

/// A parsed but not yet chained group document.
struct GroupSpec {
  std::size_t degree = 0;
  std::string name;
  std::vector<Permutation> generators;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

} // namespace detail

/// Parses one or more group documents separated by `---` lines.
///
///     degree: 4
///     name: S4
///     1 0 2 3
///     1 2 3 0
///
/// Blank lines and lines starting with `#` are ignored.
inline std::vector<GroupSpec> parse_groups(std::istream& in, const std::string& source = "<input>") {
  std::vector<GroupSpec> out;
  GroupSpec cur;
  bool have_degree = false;
  bool started = false;
  std::string raw;
  std::size_t lineno = 0;

  auto finish = [&](std::size_t at) {
    if (!started) return;
    if (!have_degree) throw InputError(detail::where(source, at) + "document has no 'degree:' line");
    out.push_back(std::move(cur));
    cur = GroupSpec{};
    have_degree = false;
    started = false;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line == "---") {
      finish(lineno);
      continue;
    }
    started = true;
    if (line.rfind("degree:", 0) == 0) {
      if (have_degree) throw InputError(detail::where(source, lineno) + "duplicate 'degree:' line");
      const std::string v = detail::trim(line.substr(7));
      try {
        std::size_t pos = 0;
        const long long d = std::stoll(v, &pos);
        if (pos != v.size() || d <= 0) throw std::invalid_argument("bad");
        cur.degree = static_cast<std::size_t>(d);
      } catch (const std::exception&) {
        throw InputError(detail::where(source, lineno) + "invalid degree '" + v + "'");
      }
      have_degree = true;
      continue;
    }
    if (line.rfind("name:", 0) == 0) {
      cur.name = detail::trim(line.substr(5));
      continue;
    }
    if (!have_degree) throw InputError(detail::where(source, lineno) + "generator before 'degree:' line");
    std::istringstream ls(line);
    std::vector<Point> img;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t pos = 0;
        const long long v = std::stoll(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument("bad");
        img.push_back(static_cast<Point>(v));
      } catch (const std::exception&) {
        throw InputError(detail::where(source, lineno) + "invalid point '" + tok + "'");
      }
    }
    if (img.size() != cur.degree)
      throw InputError(detail::where(source, lineno) + "generator has " + std::to_string(img.size()) +
                       " images, expected " + std::to_string(cur.degree));
    try {
      cur.generators.emplace_back(std::move(img));
    } catch (const InputError& e) {
      throw InputError(detail::where(source, lineno) + e.what());
    }
  }
  finish(lineno);
  return out;
}

inline std::vector<GroupSpec> parse_groups_text(const std::string& text, const std::string& source = "<input>") {
  std::istringstream in(text);
  return parse_groups(in, source);
}

inline GroupHandle make_group(const GroupSpec& spec, std::uint64_t seed = kDefaultSeed) {
  return GroupHandle(spec.degree, spec.generators, spec.name, seed);
}

inline std::vector<GroupSpec> read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open group file '" + path + "'");
  return parse_groups(in, path);
}

/// Loads the single group in `path`, building and verifying its chain.
inline GroupHandle load_group(const std::string& path, std::uint64_t seed = kDefaultSeed) {
  auto specs = read_group_file(path);
  if (specs.size() != 1)
    throw InputError("'" + path + "' holds " + std::to_string(specs.size()) + " groups, expected 1");
  return make_group(specs.front(), seed);
}

inline std::vector<GroupHandle> load_groups(const std::string& path, std::uint64_t seed = kDefaultSeed) {
  std::vector<GroupHandle> out;
  for (const auto& s : read_group_file(path)) out.push_back(make_group(s, seed));
  return out;
}

inline void write_group(std::ostream& os, const GroupSpec& g) {
  os << "degree: " << g.degree << "\n";
  os << "name: " << g.name << "\n";
  for (const auto& p : g.generators) os << p.to_image_string() << "\n";
}

inline void write_group(std::ostream& os, const GroupHandle& G) {
  write_group(os, GroupSpec{G.degree(), G.name(), G.generators()});
}

inline void write_groups(std::ostream& os, const std::vector<GroupSpec>& groups) {
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) os << "---\n";
    write_group(os, groups[i]);
  }
}

} // namespace primbase
