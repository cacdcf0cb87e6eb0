#pragma once

#include "multiflow/instance.hpp"
#include "multiflow/routing.hpp"

#include <string>
#include <vector>

namespace multiflow {

enum class StepKind {
  OneCut,         // demand x-y replaced by demands along `chain` of cut nodes
  ParallelReduce, // `amount` removed from both supply and demand on x-y
  SupplySlack,    // `amount` of supply x-y turned into demand x-y
  DemandSlack,    // `amount` of extra demand added on x-y
  Push,           // `amount` of demand x-y replaced by x-w and w-y
  Contract,       // node w with neighbours x, y replaced by a supply edge x-y of `amount`
  SpokeTighten,   // spoke w loses `amount` on w-x and w-y, hub edge x-y gains it
};

const char* step_name(StepKind kind);

struct TraceStep {
  StepKind kind;
  int x = -1;
  int y = -1;
  int w = -1;
  Rational amount = 0;
  std::vector<int> chain;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;

  void add(TraceStep step) { steps.push_back(std::move(step)); }
  void append(const ReductionTrace& later);
  bool empty() const { return steps.empty(); }

  // Applies the steps to an instance, reproducing the reduced instance.
  Instance replay(const Instance& original) const;

  // Turns a routing of the reduced instance into one of the original instance.
  Routing lift(const Routing& reduced) const;
};

// Undoes one step.
void lift_step(const TraceStep& step, Routing& r);

}  // namespace multiflow
