#pragma once

#include "primbase/errors.hpp"
#include "primbase/group.hpp"
#include "primbase/numeric.hpp"
#include "primbase/tuple_tree.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace primbase {

struct BaseCertificate {
  std::vector<Point> points;
  std::vector<BigInt> stabilizer_order_trace;  // |G_(p1..pi)| for i = 1..k
};

struct IsBaseResult {
  bool is_base = false;
  BaseCertificate certificate;
};

/// Orders of the pointwise stabilizers of successive prefixes of `points`.
inline std::vector<BigInt> stabilizer_order_trace(const GroupHandle& G, const std::vector<Point>& points) {
  std::vector<Point> distinct;
  std::vector<std::size_t> level_after;
  for (Point p : points) {
    if (p >= G.degree()) throw InputError("point " + std::to_string(p) + " out of range");
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
    level_after.push_back(distinct.size());
  }
  const StabilizerChain ch = G.chain_with_base(distinct);
  const auto& lv = ch.levels();
  std::vector<BigInt> suffix(lv.size() + 1, 1);
  for (std::size_t l = lv.size(); l-- > 0;) suffix[l] = suffix[l + 1] * lv[l].orbit.size();
  std::vector<BigInt> trace;
  for (std::size_t k : level_after) trace.push_back(suffix[k]);
  return trace;
}

inline IsBaseResult is_base(const GroupHandle& G, const std::vector<Point>& points) {
  IsBaseResult r;
  r.certificate.points = points;
  r.certificate.stabilizer_order_trace = stabilizer_order_trace(G, points);
  r.is_base = points.empty() ? G.order() == 1 : r.certificate.stabilizer_order_trace.back() == 1;
  return r;
}

/// Recomputes the trace from scratch and checks every certificate invariant.
inline bool verify_certificate(const GroupHandle& G, const BaseCertificate& c, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (c.points.size() != c.stabilizer_order_trace.size()) return fail("trace length differs from point count");
  for (Point p : c.points)
    if (p >= G.degree()) return fail("point out of range");
  if (c.points.empty()) return G.order() == 1 ? true : fail("empty tuple for a nontrivial group");
  const auto trace = stabilizer_order_trace(G, c.points);
  if (trace != c.stabilizer_order_trace) return fail("recorded trace differs from recomputed trace");
  BigInt prev = G.order();
  for (const auto& t : trace) {
    if (t > prev || prev % t != 0) return fail("trace is not a divisor chain");
    prev = t;
  }
  if (trace.back() != 1) return fail("final stabilizer is not trivial");
  return true;
}

inline std::string to_string(const BaseCertificate& c) {
  std::ostringstream os;
  os << "points";
  for (Point p : c.points) os << ' ' << p;
  os << "\ntrace";
  for (const auto& t : c.stabilizer_order_trace) os << ' ' << t;
  return os.str();
}

/// Repeatedly fixes a point from a largest orbit of the current stabilizer.
inline BaseCertificate greedy_base(const GroupHandle& G) {
  TupleTree tree(G);
  TupleTree::Node* nd = &tree.root();
  std::vector<Point> pts;
  while (nd->order != 1) {
    tree.expand(*nd);
    std::size_t best = 0;
    for (std::size_t o = 1; o < nd->orbit_size.size(); ++o)
      if (nd->orbit_size[o] > nd->orbit_size[best]) best = o;
    if (nd->orbit_size[best] == 1)
      throw InputError("action is not faithful: kernel of order " + nd->order.str());
    pts.push_back(nd->orbit_rep[best]);
    nd = &tree.child(*nd, best);
  }
  BaseCertificate c;
  c.points = pts;
  c.stabilizer_order_trace = stabilizer_order_trace(G, pts);
  return c;
}

struct LowerBoundTranscript {
  int c = 0;
  std::string method = "exhaustive-canonical";
  std::size_t tuples_examined = 0;
  bool orbit_reduction_used = true;
  std::string verdict;
  std::vector<std::vector<Point>> explored;  // canonical prefixes visited
  std::vector<std::vector<Point>> pruned;    // prefixes cut by the order bound
  bool explored_truncated = false;
};

struct MinimalBaseResult {
  bool exact = false;
  int b = 0;  // exact value when `exact`
  int lo = 0, hi = 0;
  BaseCertificate witness;
  std::optional<LowerBoundTranscript> lower;
};

namespace detail {

class BaseDfs {
public:
  BaseDfs(TupleTree& t, std::size_t budget, std::size_t record_cap) : tree_(t), budget_(budget), cap_(record_cap) {}

  /// Exhaustive search for a base of size at most c among canonical tuples.
  std::optional<std::vector<Point>> run(int c, LowerBoundTranscript& tr) {
    tr_ = &tr;
    tr.c = c;
    path_.clear();
    if (dfs(tree_.root(), c)) return path_;
    return std::nullopt;
  }

  bool out_of_budget() const { return over_; }

private:
  void note(std::vector<std::vector<Point>>& where) {
    if (where.size() < cap_) where.push_back(path_);
    else tr_->explored_truncated = true;
  }

  bool dfs(TupleTree::Node& nd, int r) {
    if (++tr_->tuples_examined > budget_) {
      over_ = true;
      return false;
    }
    note(tr_->explored);
    if (nd.order == 1) return true;
    if (r == 0) return false;
    tree_.expand(nd);
    BigInt reach = 1;
    for (int i = 0; i < r && reach < nd.order; ++i) reach *= nd.max_orbit;
    if (reach < nd.order) {
      note(tr_->pruned);
      return false;
    }
    for (std::size_t o = 0; o < nd.orbit_rep.size(); ++o) {
      if (nd.orbit_size[o] == 1) continue;
      path_.push_back(nd.orbit_rep[o]);
      if (dfs(tree_.child(nd, o), r - 1)) return true;
      path_.pop_back();
      if (over_) return false;
    }
    return false;
  }

  TupleTree& tree_;
  std::size_t budget_;
  std::size_t cap_;
  LowerBoundTranscript* tr_ = nullptr;
  std::vector<Point> path_;
  bool over_ = false;
};

} // namespace detail

/// Exact b(G): iterative deepening over canonical tuples. The search at
/// c = b-1 is exhaustive and is returned as the lower-bound transcript.
inline MinimalBaseResult minimal_base_size_exact(const GroupHandle& G, std::size_t node_budget = 50000000,
                                                 std::size_t record_cap = 100000) {
  MinimalBaseResult res;
  const BaseCertificate greedy = greedy_base(G);
  res.hi = static_cast<int>(greedy.points.size());
  res.witness = greedy;
  if (G.order() == 1) {
    res.exact = true;
    return res;
  }
  TupleTree tree(G);
  detail::BaseDfs dfs(tree, node_budget, record_cap);
  std::optional<LowerBoundTranscript> last_fail;
  for (int c = 0; c <= res.hi; ++c) {
    LowerBoundTranscript tr;
    auto found = dfs.run(c, tr);
    if (dfs.out_of_budget()) {
      res.lo = c;
      res.lower = last_fail;
      return res;
    }
    if (found) {
      res.exact = true;
      res.b = res.lo = res.hi = c;
      res.witness.points = *found;
      res.witness.stabilizer_order_trace = stabilizer_order_trace(G, *found);
      res.lower = last_fail;
      return res;
    }
    tr.verdict = "no base of size " + std::to_string(c) + " exists";
    last_fail = std::move(tr);
    res.lo = c + 1;
  }
  throw InternalError("greedy base is shorter than every searched size");
}

} // namespace primbase
