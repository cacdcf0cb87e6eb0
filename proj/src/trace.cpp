#include "multiflow/trace.hpp"

#include "multiflow/error.hpp"

namespace multiflow {

const char* step_name(StepKind kind) {
  switch (kind) {
    case StepKind::OneCut: return "OneCut";
    case StepKind::ParallelReduce: return "ParallelReduce";
    case StepKind::SupplySlack: return "SupplySlack";
    case StepKind::DemandSlack: return "DemandSlack";
    case StepKind::Push: return "Push";
    case StepKind::Contract: return "Contract";
    case StepKind::SpokeTighten: return "SpokeTighten";
  }
  return "Unknown";
}

void ReductionTrace::append(const ReductionTrace& later) {
  steps.insert(steps.end(), later.steps.begin(), later.steps.end());
}

namespace {

void sub_supply(Instance& inst, int a, int b, const Rational& amt) {
  Rational c = inst.capacity(a, b) - amt;
  if (c < 0) throw Error(ErrorKind::InternalError, "trace removes more supply than present");
  inst.set_supply(a, b, c);
}

void sub_demand(Instance& inst, int a, int b, const Rational& amt) {
  Rational d = inst.demand_of(a, b) - amt;
  if (d < 0) throw Error(ErrorKind::InternalError, "trace removes more demand than present");
  inst.set_demand(a, b, d);
}

}  // namespace

Instance ReductionTrace::replay(const Instance& original) const {
  Instance cur = original;
  for (const auto& s : steps) {
    switch (s.kind) {
      case StepKind::OneCut:
        sub_demand(cur, s.x, s.y, s.amount);
        for (std::size_t i = 0; i + 1 < s.chain.size(); ++i) cur.add_demand(s.chain[i], s.chain[i + 1], s.amount);
        break;
      case StepKind::ParallelReduce:
        sub_supply(cur, s.x, s.y, s.amount);
        sub_demand(cur, s.x, s.y, s.amount);
        break;
      case StepKind::SupplySlack:
        sub_supply(cur, s.x, s.y, s.amount);
        cur.add_demand(s.x, s.y, s.amount);
        break;
      case StepKind::DemandSlack:
        cur.add_demand(s.x, s.y, s.amount);
        break;
      case StepKind::Push:
        sub_demand(cur, s.x, s.y, s.amount);
        cur.add_demand(s.x, s.w, s.amount);
        cur.add_demand(s.w, s.y, s.amount);
        break;
      case StepKind::Contract:
        cur.set_supply(s.w, s.x, 0);
        cur.set_supply(s.w, s.y, 0);
        cur.add_supply(s.x, s.y, s.amount);
        break;
      case StepKind::SpokeTighten:
        sub_supply(cur, s.w, s.x, s.amount);
        sub_supply(cur, s.w, s.y, s.amount);
        cur.add_supply(s.x, s.y, s.amount);
        break;
    }
  }
  return cur;
}

void lift_step(const TraceStep& s, Routing& r) {
  switch (s.kind) {
    case StepKind::OneCut: {
      std::vector<std::vector<PathFlow>> segs;
      for (std::size_t i = 0; i + 1 < s.chain.size(); ++i) segs.push_back(r.draw(s.chain[i], s.chain[i + 1], s.amount));
      r.add_all(s.x, s.y, concatenate(segs));
      break;
    }
    case StepKind::ParallelReduce:
      r.add(s.x, s.y, {s.x, s.y}, s.amount);
      break;
    case StepKind::SupplySlack:
    case StepKind::DemandSlack:
      r.draw(s.x, s.y, s.amount);
      break;
    case StepKind::Push: {
      auto a = r.draw(s.x, s.w, s.amount);
      auto b = r.draw(s.w, s.y, s.amount);
      r.add_all(s.x, s.y, concatenate({a, b}));
      break;
    }
    case StepKind::Contract:
      substitute_hop(r, s.x, s.y, {s.x, s.w, s.y}, s.amount);
      break;
    case StepKind::SpokeTighten:
      substitute_hop(r, s.x, s.y, {s.x, s.w, s.y}, s.amount);
      break;
  }
}

Routing ReductionTrace::lift(const Routing& reduced) const {
  Routing r = reduced;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) lift_step(*it, r);
  return r;
}

}  // namespace multiflow
