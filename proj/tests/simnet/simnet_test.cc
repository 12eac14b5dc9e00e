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

#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pprl/common/error.h"
#include "pprl/securesum/paillier.h"
#include "pprl/simnet/network.h"
#include "pprl/simnet/scheduler.h"
#include "pprl/simnet/wire.h"

namespace pprl {
namespace {

CandidateBatch batch_of(Scheme scheme, std::size_t sets, std::size_t l) {
  CandidateBatch batch{0, "t", {}};
  for (std::size_t i = 0; i < sets; ++i) {
    CandidateSet s;
    s.members = {{1, 0}, {2, 0}};
    s.partial = scheme == Scheme::kHss
                    ? MaskedVector::hss_identity(l)
                    : MaskedVector::from_mask(RandomMaskVector::zero(l, 0), scheme);
    batch.sets.push_back(std::move(s));
  }
  return batch;
}

TEST(WireTest, FixedWidthAccounting) {
  WireFormat f;
  EXPECT_EQ(wire_size(batch_of(Scheme::kBss, 1, 500), f).total(), 1000u + 16u);
  EXPECT_EQ(wire_size(batch_of(Scheme::kHss, 1, 500), f).total(), 2000u + 16u);
  EXPECT_EQ(wire_size(batch_of(Scheme::kSss, 3, 500), f).vector_values, 3000u);
  EXPECT_EQ(wire_size(CandidateBatch{}, f).total(), 16u);
}

TEST(WireTest, ActualAccountingMatchesSerializedWidth) {
  const auto kp = paillier_keygen(64, 1);
  WireFormat f{AccountingMode::kActual, 16, kp.public_key.ciphertext_bytes()};
  for (Scheme scheme : {Scheme::kBss, Scheme::kSss, Scheme::kHss}) {
    auto batch = batch_of(scheme, 1, 37);
    const auto bytes = serialize_masked_vector(batch.sets[0].partial, f.ciphertext_bytes);
    EXPECT_EQ(wire_size(batch, f).vector_values + 9, bytes.size());
  }
}

TEST(WireTest, MaskedVectorRoundTrip) {
  const auto mask = RandomMaskVector::derive(3, 4, 21, 0);
  auto v = MaskedVector::from_mask(mask, Scheme::kSss);
  v.bump_hop();
  EXPECT_EQ(deserialize_masked_vector(serialize_masked_vector(v, 0), 0), v);

  const auto kp = paillier_keygen(64, 2);
  BigRandom rng(1);
  std::vector<mpz_class> c;
  for (int i = 0; i < 5; ++i) c.push_back(kp.public_key.encrypt(i, rng));
  auto h = MaskedVector::hss_from_ciphertexts(c);
  h.bump_hop();
  h.bump_hop();
  const std::size_t w = kp.public_key.ciphertext_bytes();
  EXPECT_EQ(deserialize_masked_vector(serialize_masked_vector(h, w), w), h);
  EXPECT_THROW(deserialize_masked_vector("\x00\x01", 0), InvalidArgument);
}

TEST(WireTest, SaltAndBkvRoundTrip) {
  SaltRegistration reg{3, 77, 0xdeadbeefcafeULL};
  const auto bytes = serialize_salt_registration(reg);
  EXPECT_EQ(bytes.size(), 20u);
  const auto back = deserialize_salt_registration(bytes);
  EXPECT_EQ(back.party, 3u);
  EXPECT_EQ(back.run_id, 77u);
  EXPECT_EQ(back.salt_key, reg.salt_key);

  BkvAnnouncement bkv{2, {{"P360", {0, 4}}, {"A261", {}}}};
  const auto got = deserialize_bkv_announcement(serialize_bkv_announcement(bkv));
  EXPECT_EQ(got.party, 2u);
  EXPECT_EQ(got.keys, bkv.keys);
}

TEST(NetworkTest, ClosedChannelsReject) {
  Network net;
  EXPECT_THROW(net.send({1, 2, "s", MatchList{}}), ChannelClosed);
  net.open_channel(1, 2);
  net.send({1, 2, "s", MatchList{}});
  EXPECT_THROW(net.receive(2, 1), ChannelClosed);
  net.close_channel(1, 2);
  EXPECT_THROW(net.receive(1, 2), ChannelClosed);
}

TEST(NetworkTest, FifoAndLedgerTotals) {
  Network net;
  net.open_channel(0, 1);
  net.open_channel(1, 0);
  net.enable_trace(true);
  for (std::uint64_t i = 0; i < 3; ++i) net.send({0, 1, "a", MatchList{i, "", {}}});
  net.send({1, 0, "b", batch_of(Scheme::kBss, 2, 10)});
  for (std::uint64_t i = 0; i < 3; ++i) {
    EXPECT_EQ(std::get<MatchList>(net.receive(0, 1).payload).block, i);
  }
  const auto& ledger = net.ledger();
  std::uint64_t sum = 0;
  for (const auto& [k, c] : ledger.by_channel()) sum += c.bytes();
  EXPECT_EQ(sum, ledger.total().bytes());
  EXPECT_EQ(ledger.total().messages, 4u);
  EXPECT_EQ(ledger.messages_of(MessageKind::kMatchList), 3u);
  EXPECT_EQ(ledger.by_step().at("b").vector_bytes, 40u);
  EXPECT_EQ(net.trace().size(), 4u);
  std::ostringstream out;
  net.dump_trace(out);
  EXPECT_NE(out.str().find("LU\tP1\ta\tmatches"), std::string::npos);
}

Task relay(Network& net, std::vector<PartyId> route, std::vector<std::string>* log) {
  Task t{"relay", {}};
  t.steps.push_back({"start", route[0], std::nullopt, [=](StepContext& ctx) {
    log->push_back("start");
    ctx.network().send({route[0], route[1], "relay", MatchList{}});
  }});
  for (std::size_t i = 1; i < route.size(); ++i) {
    const PartyId from = route[i - 1];
    const PartyId me = route[i];
    const PartyId to = route[(i + 1) % route.size()];
    t.steps.push_back({"hop", me, ChannelKey{from, me}, [=](StepContext& ctx) {
      ctx.network().receive(from, me);
      log->push_back(party_name(me));
      if (i + 1 < route.size()) ctx.network().send({me, to, "relay", MatchList{}});
    }});
  }
  (void)net;
  return t;
}

TEST(SchedulerTest, RunsTasksAndFollowUps) {
  Network net;
  for (PartyId a = 1; a <= 3; ++a) {
    for (PartyId b = 1; b <= 3; ++b) {
      if (a != b) net.open_channel(a, b);
    }
  }
  std::vector<std::string> log;
  std::vector<Task> tasks;
  tasks.push_back(relay(net, {1, 2, 3}, &log));
  Task extra{"extra", {}};
  extra.steps.push_back({"outer", 1, std::nullopt, [&](StepContext& ctx) {
    log.push_back("outer");
    ctx.then({"inner", 1, std::nullopt, [&](StepContext&) { log.push_back("inner"); }});
  }});
  extra.steps.push_back({"last", 1, std::nullopt, [&](StepContext&) { log.push_back("last"); }});
  tasks.push_back(std::move(extra));
  run_tasks(net, std::move(tasks), {});
  EXPECT_EQ(log, (std::vector<std::string>{"start", "P2", "P3", "outer", "inner", "last"}));
}

TEST(SchedulerTest, DeadlockNamesWaitingActor) {
  Network net;
  net.open_channel(1, 2);
  std::vector<Task> tasks(1);
  tasks[0].steps.push_back({"wait-for-p1", 2, ChannelKey{1, 2}, [](StepContext&) {}});
  try {
    run_tasks(net, std::move(tasks), {});
    FAIL() << "expected a deadlock";
  } catch (const Deadlock& e) {
    EXPECT_NE(std::string(e.what()).find("P2 waits at 'wait-for-p1' for P1"), std::string::npos);
  }
}

TEST(SchedulerTest, RandomInterleavingCompletes) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Network net;
    for (PartyId a = 1; a <= 6; ++a) {
      for (PartyId b = 1; b <= 6; ++b) {
        if (a != b) net.open_channel(a, b);
      }
    }
    std::vector<std::string> log;
    std::vector<Task> tasks;
    tasks.push_back(relay(net, {1, 2, 3}, &log));
    tasks.push_back(relay(net, {4, 5, 6}, &log));
    run_tasks(net, std::move(tasks), {Interleaving::kSeededRandom, seed});
    EXPECT_EQ(log.size(), 6u);
    EXPECT_EQ(net.pending(), 0u);
  }
}

}  // namespace
}  // namespace pprl
