// Copyright 2026 The PPRL-CBF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pprl/simnet/scheduler.h"

#include <random>
#include <utility>

#include "pprl/common/error.h"

namespace pprl {

namespace {

bool runnable(const Network& network, const Task& task) {
  if (task.steps.empty()) return false;
  const Step& s = task.steps.front();
  return !s.awaits || network.has_message(s.awaits->from, s.awaits->to);
}

}  // namespace

std::string_view interleaving_name(Interleaving mode) {
  switch (mode) {
    case Interleaving::kInOrder: return "in-order";
    case Interleaving::kRoundRobin: return "round-robin";
    case Interleaving::kSeededRandom: return "random";
  }
  return "unknown";
}

Interleaving parse_interleaving(std::string_view name) {
  if (name == "in-order") return Interleaving::kInOrder;
  if (name == "round-robin") return Interleaving::kRoundRobin;
  if (name == "random") return Interleaving::kSeededRandom;
  throw InvalidArgument("unknown interleaving: " + std::string(name));
}

void run_tasks(Network& network, std::vector<Task> tasks, SchedulePolicy policy) {
  std::mt19937_64 rng(policy.seed);
  std::size_t cursor = 0;
  std::vector<std::size_t> ready;
  while (true) {
    ready.clear();
    bool unfinished = false;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (!tasks[i].steps.empty()) unfinished = true;
      if (runnable(network, tasks[i])) ready.push_back(i);
    }
    if (!unfinished) return;
    if (ready.empty()) {
      std::string msg = "no runnable step;";
      for (const auto& t : tasks) {
        if (t.steps.empty()) continue;
        const Step& s = t.steps.front();
        msg += " " + party_name(s.actor) + " waits at '" + s.name + "' for " +
               party_name(s.awaits->from) + ";";
      }
      throw Deadlock(msg);
    }

    std::size_t pick = ready.front();
    switch (policy.interleaving) {
      case Interleaving::kInOrder:
        break;
      case Interleaving::kRoundRobin:
        pick = ready.front();
        for (std::size_t i : ready) {
          if (i >= cursor) {
            pick = i;
            break;
          }
        }
        cursor = pick + 1;
        break;
      case Interleaving::kSeededRandom:
        pick = ready[std::uniform_int_distribution<std::size_t>(
            0, ready.size() - 1)(rng)];
        break;
    }

    Task& task = tasks[pick];
    Step step = std::move(task.steps.front());
    task.steps.pop_front();
    StepContext ctx(network);
    step.action(ctx);
    for (auto it = ctx.follow_ups_.rbegin(); it != ctx.follow_ups_.rend(); ++it) {
      task.steps.push_front(std::move(*it));
    }
  }
}

}  // namespace pprl
