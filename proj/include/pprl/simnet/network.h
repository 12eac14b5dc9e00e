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

#ifndef PPRL_SIMNET_NETWORK_H_
#define PPRL_SIMNET_NETWORK_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "pprl/common/types.h"
#include "pprl/simnet/wire.h"

namespace pprl {

struct ChannelKey {
  PartyId from = 0;
  PartyId to = 0;

  friend auto operator<=>(const ChannelKey&, const ChannelKey&) = default;
};

struct TrafficCounters {
  std::uint64_t messages = 0;
  std::uint64_t header_bytes = 0;
  std::uint64_t vector_bytes = 0;
  std::uint64_t other_bytes = 0;

  std::uint64_t bytes() const { return header_bytes + vector_bytes + other_bytes; }
  void add(const WireSize& size);
  TrafficCounters& operator+=(const TrafficCounters& o);

  friend bool operator==(const TrafficCounters&, const TrafficCounters&) = default;
};

// Every byte sent through a Network, broken down by channel, message kind and
// protocol step.
class TrafficLedger {
 public:
  void record(const Message& message, const WireSize& size);

  const TrafficCounters& total() const { return total_; }
  const std::map<ChannelKey, TrafficCounters>& by_channel() const { return channels_; }
  const std::map<MessageKind, TrafficCounters>& by_kind() const { return kinds_; }
  const std::map<std::string, TrafficCounters>& by_step() const { return steps_; }

  std::uint64_t messages_of(MessageKind kind) const;
  std::uint64_t bytes_sent_by(PartyId party) const;

  void merge(const TrafficLedger& other);

 private:
  TrafficCounters total_;
  std::map<ChannelKey, TrafficCounters> channels_;
  std::map<MessageKind, TrafficCounters> kinds_;
  std::map<std::string, TrafficCounters> steps_;
};

struct TraceEntry {
  std::uint64_t sequence = 0;
  PartyId from = 0;
  PartyId to = 0;
  std::string step;
  MessageKind kind = MessageKind::kMaskedBatch;
  std::size_t bytes = 0;
};

// In-process message fabric. Channels are directed FIFO queues that must be
// opened before use.
class Network {
 public:
  explicit Network(WireFormat format = {});

  const WireFormat& format() const { return format_; }
  void set_ciphertext_bytes(std::size_t bytes) { format_.ciphertext_bytes = bytes; }

  void open_channel(PartyId from, PartyId to);
  void close_channel(PartyId from, PartyId to);
  bool is_open(PartyId from, PartyId to) const;

  // Throws ChannelClosed when the channel is not open.
  void send(Message message);
  bool has_message(PartyId from, PartyId to) const;
  // Throws ChannelClosed when the channel is not open or nothing is queued.
  Message receive(PartyId from, PartyId to);
  std::size_t pending() const;

  const TrafficLedger& ledger() const { return ledger_; }

  void enable_trace(bool on) { trace_on_ = on; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  void dump_trace(std::ostream& out) const;

  // When enabled, every masked batch delivered to a party is copied into its
  // view so tests can inspect exactly what each party observed.
  void enable_views(bool on) { views_on_ = on; }
  const std::vector<CandidateBatch>& view_of(PartyId party) const;

 private:
  WireFormat format_;
  std::map<ChannelKey, std::deque<Message>> channels_;
  std::set<ChannelKey> open_;
  TrafficLedger ledger_;
  bool trace_on_ = false;
  std::vector<TraceEntry> trace_;
  std::uint64_t sequence_ = 0;
  bool views_on_ = false;
  std::map<PartyId, std::vector<CandidateBatch>> views_;
};

}  // namespace pprl

#endif  // PPRL_SIMNET_NETWORK_H_
