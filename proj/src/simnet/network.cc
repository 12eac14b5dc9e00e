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

#include "pprl/simnet/network.h"

#include <utility>

#include "pprl/common/error.h"

namespace pprl {

namespace {

std::string channel_name(PartyId from, PartyId to) {
  return party_name(from) + "->" + party_name(to);
}

}  // namespace

void TrafficCounters::add(const WireSize& size) {
  ++messages;
  header_bytes += size.header;
  vector_bytes += size.vector_values;
  other_bytes += size.other;
}

TrafficCounters& TrafficCounters::operator+=(const TrafficCounters& o) {
  messages += o.messages;
  header_bytes += o.header_bytes;
  vector_bytes += o.vector_bytes;
  other_bytes += o.other_bytes;
  return *this;
}

void TrafficLedger::record(const Message& message, const WireSize& size) {
  total_.add(size);
  channels_[{message.from, message.to}].add(size);
  kinds_[message.kind()].add(size);
  steps_[message.step].add(size);
}

std::uint64_t TrafficLedger::messages_of(MessageKind kind) const {
  auto it = kinds_.find(kind);
  return it == kinds_.end() ? 0 : it->second.messages;
}

std::uint64_t TrafficLedger::bytes_sent_by(PartyId party) const {
  std::uint64_t sum = 0;
  for (const auto& [key, c] : channels_) {
    if (key.from == party) sum += c.bytes();
  }
  return sum;
}

void TrafficLedger::merge(const TrafficLedger& other) {
  total_ += other.total_;
  for (const auto& [k, c] : other.channels_) channels_[k] += c;
  for (const auto& [k, c] : other.kinds_) kinds_[k] += c;
  for (const auto& [k, c] : other.steps_) steps_[k] += c;
}

Network::Network(WireFormat format) : format_(format) {}

void Network::open_channel(PartyId from, PartyId to) {
  if (from == to) throw InvalidArgument("channel endpoints must differ");
  open_.insert({from, to});
  channels_[{from, to}];
}

void Network::close_channel(PartyId from, PartyId to) { open_.erase({from, to}); }

bool Network::is_open(PartyId from, PartyId to) const {
  return open_.contains({from, to});
}

void Network::send(Message message) {
  if (!is_open(message.from, message.to)) {
    throw ChannelClosed("send on closed channel " +
                        channel_name(message.from, message.to));
  }
  const WireSize size = wire_size(message.payload, format_);
  ledger_.record(message, size);
  if (trace_on_) {
    trace_.push_back({sequence_, message.from, message.to, message.step,
                      message.kind(), size.total()});
  }
  ++sequence_;
  channels_[{message.from, message.to}].push_back(std::move(message));
}

bool Network::has_message(PartyId from, PartyId to) const {
  auto it = channels_.find({from, to});
  return it != channels_.end() && !it->second.empty();
}

Message Network::receive(PartyId from, PartyId to) {
  if (!is_open(from, to)) {
    throw ChannelClosed("receive on closed channel " + channel_name(from, to));
  }
  auto& queue = channels_[{from, to}];
  if (queue.empty()) {
    throw ChannelClosed("no message queued on " + channel_name(from, to));
  }
  Message m = std::move(queue.front());
  queue.pop_front();
  if (views_on_) {
    if (const auto* batch = std::get_if<CandidateBatch>(&m.payload)) {
      views_[to].push_back(*batch);
    }
  }
  return m;
}

std::size_t Network::pending() const {
  std::size_t n = 0;
  for (const auto& [key, queue] : channels_) n += queue.size();
  return n;
}

void Network::dump_trace(std::ostream& out) const {
  out << "seq\tfrom\tto\tstep\tkind\tbytes\n";
  for (const auto& e : trace_) {
    out << e.sequence << '\t' << party_name(e.from) << '\t' << party_name(e.to)
        << '\t' << e.step << '\t' << message_kind_name(e.kind) << '\t'
        << e.bytes << '\n';
  }
}

const std::vector<CandidateBatch>& Network::view_of(PartyId party) const {
  static const std::vector<CandidateBatch> kEmpty;
  auto it = views_.find(party);
  return it == views_.end() ? kEmpty : it->second;
}

}  // namespace pprl
