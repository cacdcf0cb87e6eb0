#include "multiflow/routing.hpp"

#include "multiflow/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace multiflow {

void Routing::add(int a, int b, std::vector<int> path, const Rational& amount) {
  if (amount <= 0) return;
  if (path.empty() || path.front() != a || path.back() != b)
    throw Error(ErrorKind::InternalError, "path endpoints do not match its demand");
  if (a > b) {
    std::reverse(path.begin(), path.end());
    std::swap(a, b);
  }
  auto& list = flows[{a, b}];
  for (auto& pf : list)
    if (pf.path == path) {
      pf.amount += amount;
      return;
    }
  list.push_back({std::move(path), amount});
}

void Routing::add_all(int a, int b, const std::vector<PathFlow>& pieces) {
  for (const auto& pf : pieces) add(a, b, pf.path, pf.amount);
}

Rational Routing::total(int a, int b) const {
  auto it = flows.find(key(a, b));
  Rational s = 0;
  if (it == flows.end()) return s;
  for (const auto& pf : it->second) s += pf.amount;
  return s;
}

std::vector<PathFlow> Routing::draw(int a, int b, const Rational& amount) {
  std::vector<PathFlow> out;
  if (amount <= 0) return out;
  auto it = flows.find(key(a, b));
  if (it == flows.end())
    throw Error(ErrorKind::MissingCoverage, "no flow available between the requested endpoints");
  auto& list = it->second;
  std::stable_sort(list.begin(), list.end(),
                   [](const PathFlow& x, const PathFlow& y) { return x.path.size() < y.path.size(); });
  Rational need = amount;
  std::size_t i = 0;
  for (; i < list.size() && need > 0; ++i) {
    Rational take = min_of(need, list[i].amount);
    out.push_back({list[i].path, take});
    list[i].amount -= take;
    need -= take;
  }
  if (need > 0) throw Error(ErrorKind::MissingCoverage, "insufficient flow to draw from");
  list.erase(std::remove_if(list.begin(), list.end(), [](const PathFlow& pf) { return pf.amount == 0; }),
             list.end());
  if (list.empty()) flows.erase(it);
  if (a > b)
    for (auto& pf : out) std::reverse(pf.path.begin(), pf.path.end());
  return out;
}

void Routing::merge(const Routing& other) {
  for (const auto& [p, list] : other.flows)
    for (const auto& pf : list) add(p.first, p.second, pf.path, pf.amount);
}

EdgeMap Routing::loads() const {
  EdgeMap load;
  for (const auto& [p, list] : flows)
    for (const auto& pf : list)
      for (std::size_t i = 0; i + 1 < pf.path.size(); ++i) load[key(pf.path[i], pf.path[i + 1])] += pf.amount;
  return load;
}

bool Routing::amounts_integral() const {
  for (const auto& [p, list] : flows)
    for (const auto& pf : list)
      if (!is_integer(pf.amount)) return false;
  return true;
}

Rational Routing::max_congestion(const Instance& inst) const {
  Rational best = 0;
  for (const auto& [e, load] : loads()) {
    Rational c = inst.capacity(e.first, e.second);
    if (c == 0) throw Error(ErrorKind::InvalidInput, "flow on a pair without capacity");
    Rational q = load / c;
    if (q > best) best = q;
  }
  return best;
}

Routing Routing::scaled(const Rational& factor) const {
  Routing out;
  out.integral = false;
  for (const auto& [p, list] : flows)
    for (const auto& pf : list) out.add(p.first, p.second, pf.path, pf.amount * factor);
  out.integral = out.amounts_integral();
  return out;
}

std::vector<int> shortcut(const std::vector<int>& walk) {
  std::vector<int> out;
  std::unordered_map<int, std::size_t> pos;
  for (int v : walk) {
    auto it = pos.find(v);
    if (it != pos.end()) {
      for (std::size_t i = it->second + 1; i < out.size(); ++i) pos.erase(out[i]);
      out.resize(it->second + 1);
      continue;
    }
    pos[v] = out.size();
    out.push_back(v);
  }
  return out;
}

std::vector<PathFlow> concatenate(const std::vector<std::vector<PathFlow>>& segments) {
  std::vector<PathFlow> out;
  if (segments.empty()) return out;
  std::vector<std::size_t> idx(segments.size(), 0);
  std::vector<Rational> left(segments.size());
  for (std::size_t s = 0; s < segments.size(); ++s)
    if (!segments[s].empty()) left[s] = segments[s][0].amount;
  while (true) {
    bool done = false;
    for (std::size_t s = 0; s < segments.size(); ++s)
      if (idx[s] >= segments[s].size()) done = true;
    if (done) break;
    Rational take = left[0];
    for (std::size_t s = 1; s < segments.size(); ++s) take = min_of(take, left[s]);
    std::vector<int> walk;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      const auto& p = segments[s][idx[s]].path;
      if (!walk.empty() && walk.back() != p.front())
        throw Error(ErrorKind::InternalError, "segments do not chain");
      walk.insert(walk.end(), walk.empty() ? p.begin() : p.begin() + 1, p.end());
    }
    out.push_back({shortcut(walk), take});
    for (std::size_t s = 0; s < segments.size(); ++s) {
      left[s] -= take;
      if (left[s] == 0) {
        ++idx[s];
        if (idx[s] < segments[s].size()) left[s] = segments[s][idx[s]].amount;
      }
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s)
    if (idx[s] < segments[s].size()) throw Error(ErrorKind::InternalError, "segment totals differ");
  return out;
}

Rational substitute_hop(Routing& r, int a, int b, const std::vector<int>& detour, const Rational& limit) {
  Rational moved = 0;
  if (limit <= 0) return moved;
  std::vector<int> rev(detour.rbegin(), detour.rend());
  Routing out;
  for (const auto& [p, list] : r.flows) {
    for (const auto& pf : list) {
      std::size_t hop = pf.path.size();
      bool forward = true;
      for (std::size_t i = 0; i + 1 < pf.path.size(); ++i) {
        if (pf.path[i] == a && pf.path[i + 1] == b) { hop = i; forward = true; break; }
        if (pf.path[i] == b && pf.path[i + 1] == a) { hop = i; forward = false; break; }
      }
      Rational room = limit - moved;
      if (hop == pf.path.size() || room <= 0) {
        out.add(p.first, p.second, pf.path, pf.amount);
        continue;
      }
      Rational take = min_of(room, pf.amount);
      std::vector<int> walk(pf.path.begin(), pf.path.begin() + hop);
      const auto& d = forward ? detour : rev;
      walk.insert(walk.end(), d.begin(), d.end());
      walk.insert(walk.end(), pf.path.begin() + hop + 2, pf.path.end());
      out.add(p.first, p.second, shortcut(walk), take);
      if (pf.amount > take) out.add(p.first, p.second, pf.path, pf.amount - take);
      moved += take;
    }
  }
  out.integral = r.integral;
  r = std::move(out);
  return moved;
}

}  // namespace multiflow
