#pragma once

#include "primbase/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace primbase {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1}, stored as its image list.
///
/// Composition follows the right-action convention used throughout the
/// library: x^(a*b) = (x^a)^b, i.e. `a * b` applies `a` first.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), Point{0});
  }

  /// Throws InputError unless `images` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<char> hit(img_.size(), 0);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      const Point x = img_[i];
      if (x >= img_.size())
        throw InputError("image " + std::to_string(x) + " of point " + std::to_string(i) +
                         " is out of range for degree " + std::to_string(img_.size()));
      if (hit[x])
        throw InputError("image " + std::to_string(x) + " repeated; not a bijection");
      hit[x] = 1;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds a permutation from disjoint cycles, e.g. {{0,1,2},{3,4}}.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<char> used(degree, 0);
    for (const auto& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        const Point a = cyc[i];
        if (a >= degree) throw InputError("cycle point out of range");
        if (used[a]) throw InputError("cycles are not disjoint");
        used[a] = 1;
        img[a] = cyc[(i + 1) % cyc.size()];
      }
    }
    return Permutation(std::move(img));
  }

  std::size_t degree() const { return img_.size(); }
  Point operator[](Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
    return r;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
      throw InputError("degree mismatch in composition: " + std::to_string(a.degree()) +
                       " vs " + std::to_string(b.degree()));
    Permutation r;
    r.img_.resize(a.img_.size());
    for (std::size_t i = 0; i < a.img_.size(); ++i) r.img_[i] = b.img_[a.img_[i]];
    return r;
  }

  Permutation& operator*=(const Permutation& b) { return *this = *this * b; }

  /// g^-1 * this * g
  Permutation conjugate_by(const Permutation& g) const {
    if (g.degree() != degree()) throw InputError("degree mismatch in conjugation");
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[g.img_[i]] = g.img_[img_[i]];
    return r;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation out(degree());
    while (k) {
      if (k & 1ULL) out = out * base;
      base = base * base;
      k >>= 1;
    }
    return out;
  }

  /// Cycles of length >= 2, each starting at its least point, ordered by that point.
  std::vector<std::vector<Point>> cycles(bool include_fixed = false) const {
    std::vector<std::vector<Point>> out;
    std::vector<char> seen(img_.size(), 0);
    for (Point i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::vector<Point> cyc;
      for (Point j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        cyc.push_back(j);
      }
      if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
    }
    return out;
  }

  /// Sorted cycle lengths, fixed points included.
  std::vector<std::size_t> cycle_type() const {
    std::vector<std::size_t> ct;
    std::vector<char> seen(img_.size(), 0);
    for (Point i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (Point j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        ++len;
      }
      ct.push_back(len);
    }
    std::sort(ct.begin(), ct.end());
    return ct;
  }

  std::size_t fixed_point_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) n += (img_[i] == i);
    return n;
  }

  /// Least common multiple of the cycle lengths.
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (std::size_t len : cycle_type()) o = std::lcm(o, static_cast<std::uint64_t>(len));
    return o;
  }

  std::string to_cycle_string() const {
    auto cyc = cycles();
    if (cyc.empty()) return "()";
    std::ostringstream os;
    for (const auto& c : cyc) {
      os << '(';
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
      os << ')';
    }
    return os.str();
  }

  std::string to_image_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < img_.size(); ++i) os << (i ? " " : "") << img_[i];
    return os.str();
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

private:
  std::vector<Point> img_;
};

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  return os << p.to_cycle_string();
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace primbase
