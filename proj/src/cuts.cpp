#include "multiflow/core.hpp"
#include "multiflow/error.hpp"

#include <cstdlib>
#include <algorithm>
#include <type_traits>

namespace multiflow {

int node_cap() {
  if (const char* env = std::getenv("MULTIFLOW_NODE_CAP")) {
    int v = std::atoi(env);
    if (v > 0 && v <= 62) return v;
  }
  return 22;
}

Cut make_cut(const Instance& inst, const std::vector<int>& side) {
  std::vector<bool> in(inst.num_nodes(), false);
  for (int v : side) in.at(v) = true;
  Cut c;
  c.side = side;
  std::sort(c.side.begin(), c.side.end());
  for (const auto& [p, w] : inst.supply)
    if (in[p.first] != in[p.second]) c.supply_across += w;
  for (const auto& [p, w] : inst.demand)
    if (in[p.first] != in[p.second]) c.demand_across += w;
  c.surplus = c.supply_across - c.demand_across;
  return c;
}

Rational surplus(const Instance& inst, const std::vector<int>& side) { return make_cut(inst, side).surplus; }

namespace {

// Sorted-list order on node sets encoded as bit masks over ascending nodes.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  std::uint64_t d = a ^ b;
  if (d == 0) return false;
  int i = __builtin_ctzll(d);
  if ((a >> i) & 1) return (b >> (i + 1)) != 0;
  return (a >> (i + 1)) == 0;
}

// Net weight (capacity minus demand) per node pair over the active nodes,
// scaled to integers by the common denominator.
class CutSpace {
 public:
  explicit CutSpace(const Instance& inst) : nodes_(inst.active_nodes()) {
    if (static_cast<int>(nodes_.size()) > node_cap())
      throw Error(ErrorKind::TooLarge, std::to_string(nodes_.size()) + " active nodes exceed the brute-force bound of " +
                                           std::to_string(node_cap()));
    bit_.assign(inst.num_nodes(), -1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) bit_[nodes_[i]] = static_cast<int>(i);
    EdgeMap net;
    for (const auto& [p, w] : inst.supply) net[p] += w;
    for (const auto& [p, w] : inst.demand) net[p] -= w;
    scale_ = 1;
    for (const auto& [p, w] : net) mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), w.get_den_mpz_t());
    mpz_class total = 0;
    for (const auto& [p, w] : net) {
      if (w == 0) continue;
      mpz_class s = w.get_num() * (scale_ / w.get_den());
      total += abs(s);
      pairs_.push_back({bit_[p.first], bit_[p.second], s});
    }
    small_ = total < (mpz_class(1) << 62);
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  int bit(int v) const { return v >= 0 && v < static_cast<int>(bit_.size()) ? bit_[v] : -1; }
  const mpz_class& scale() const { return scale_; }

  std::vector<int> side(std::uint64_t mask) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if ((mask >> i) & 1) out.push_back(nodes_[i]);
    return out;
  }

  // Calls f(mask, scaled surplus) for every set that contains the first active
  // node and misses some other node, in Gray-code order.
  template <class F>
  void scan(F&& f) const {
    if (small_)
      run<long long>(f);
    else
      run<mpz_class>(f);
  }

 private:
  struct Pair {
    int i, j;
    mpz_class w;
  };

  template <class T>
  static T convert(const mpz_class& v) {
    if constexpr (std::is_same_v<T, long long>)
      return static_cast<long long>(v.get_si());
    else
      return v;
  }

  template <class T, class F>
  void run(F& f) const {
    int n = size();
    if (n < 2) return;
    std::vector<std::vector<std::pair<int, T>>> adj(n);
    T s = 0;
    for (const auto& p : pairs_) {
      T w = convert<T>(p.w);
      adj[p.i].push_back({p.j, w});
      adj[p.j].push_back({p.i, w});
      if (p.i == 0 || p.j == 0) s += w;
    }
    std::uint64_t mask = 1;
    std::uint64_t full = n == 64 ? ~0ull : ((1ull << n) - 1);
    f(mask, s);
    std::uint64_t count = 1ull << (n - 1);
    for (std::uint64_t g = 1; g < count; ++g) {
      int b = __builtin_ctzll(g) + 1;
      mask ^= 1ull << b;
      bool in = (mask >> b) & 1;
      for (const auto& [o, w] : adj[b]) {
        if (in != static_cast<bool>((mask >> o) & 1))
          s += w;
        else
          s -= w;
      }
      if (mask != full) f(mask, s);
    }
  }

  std::vector<int> nodes_;
  std::vector<int> bit_;
  std::vector<Pair> pairs_;
  mpz_class scale_;
  bool small_ = true;
};

// Tracks the minimum surplus with lexicographic tie-breaking.
struct MinTracker {
  bool found = false;
  Rational best = 0;
  std::uint64_t mask = 0;
  long long best_small = 0;
  mpz_class best_big = 0;

  template <class T>
  void offer(std::uint64_t m, const T& s) {
    if constexpr (std::is_same_v<T, long long>) {
      if (!found || s < best_small || (s == best_small && lex_less(m, mask))) {
        found = true;
        best_small = s;
        mask = m;
        best_big = mpz_class(static_cast<long>(s));
      }
    } else {
      if (!found || s < best_big || (s == best_big && lex_less(m, mask))) {
        found = true;
        best_big = s;
        mask = m;
      }
    }
  }
};

}  // namespace

CutReport check_cut_condition(const Instance& inst) {
  CutSpace space(inst);
  MinTracker t;
  space.scan([&](std::uint64_t m, const auto& s) { t.offer(m, s); });
  CutReport rep;
  if (!t.found) return rep;
  rep.worst = make_cut(inst, space.side(t.mask));
  rep.holds = rep.worst.surplus >= 0;
  return rep;
}

std::optional<Cut> min_separating_cut(const Instance& inst, int a, int b) {
  CutSpace space(inst);
  int ba = space.bit(a), bb = space.bit(b);
  if (ba < 0 || bb < 0 || ba == bb) return std::nullopt;
  MinTracker t;
  space.scan([&](std::uint64_t m, const auto& s) {
    if (((m >> ba) & 1) != ((m >> bb) & 1)) t.offer(m, s);
  });
  if (!t.found) return std::nullopt;
  return make_cut(inst, space.side(t.mask));
}

EdgeMap min_surplus_across(const Instance& inst, const std::vector<NodePair>& pairs) {
  CutSpace space(inst);
  struct Slot {
    int i, j;
    bool found = false;
    long long small = 0;
    mpz_class big = 0;
  };
  std::vector<Slot> slots;
  for (const auto& p : pairs) slots.push_back({space.bit(p.first), space.bit(p.second)});
  space.scan([&](std::uint64_t m, const auto& s) {
    using T = std::decay_t<decltype(s)>;
    for (auto& sl : slots) {
      if (sl.i < 0 || sl.j < 0 || sl.i == sl.j) continue;
      if (((m >> sl.i) & 1) == ((m >> sl.j) & 1)) continue;
      if constexpr (std::is_same_v<T, long long>) {
        if (!sl.found || s < sl.small) {
          sl.small = s;
          sl.big = mpz_class(static_cast<long>(s));
          sl.found = true;
        }
      } else {
        if (!sl.found || s < sl.big) sl.big = s, sl.found = true;
      }
    }
  });
  EdgeMap out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& sl = slots[k];
    if (!sl.found) continue;
    Rational v(sl.big, space.scale());
    v.canonicalize();
    out[key(pairs[k].first, pairs[k].second)] = v;
  }
  return out;
}

}  // namespace multiflow
