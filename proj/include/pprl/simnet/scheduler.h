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

#ifndef PPRL_SIMNET_SCHEDULER_H_
#define PPRL_SIMNET_SCHEDULER_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pprl/common/types.h"
#include "pprl/simnet/network.h"

namespace pprl {

enum class Interleaving { kInOrder, kRoundRobin, kSeededRandom };

struct SchedulePolicy {
  Interleaving interleaving = Interleaving::kInOrder;
  std::uint64_t seed = 0;
};

class StepContext;

// One unit of work performed by a single actor. A step with `awaits` set is
// runnable only once a message is queued on that channel.
struct Step {
  std::string name;
  PartyId actor = 0;
  std::optional<ChannelKey> awaits;
  std::function<void(StepContext&)> action;
};

// A sequential chain of steps. Steps run in order; a running step may insert
// follow-up steps that run before the rest of the chain.
struct Task {
  std::string name;
  std::deque<Step> steps;
};

class StepContext {
 public:
  explicit StepContext(Network& network) : network_(network) {}

  Network& network() { return network_; }
  // Queues a step to run right after the current one (in call order).
  void then(Step step) { follow_ups_.push_back(std::move(step)); }

 private:
  friend void run_tasks(Network&, std::vector<Task>, SchedulePolicy);
  Network& network_;
  std::vector<Step> follow_ups_;
};

std::string_view interleaving_name(Interleaving mode);
Interleaving parse_interleaving(std::string_view name);

// Runs all tasks to completion against `network`, picking among tasks whose
// next step is runnable according to `policy`. Throws Deadlock, naming the
// blocked actors and steps, when unfinished tasks remain but none can run.
void run_tasks(Network& network, std::vector<Task> tasks, SchedulePolicy policy);

}  // namespace pprl

#endif  // PPRL_SIMNET_SCHEDULER_H_
