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

#include "pprl/protocol/linkage.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include "pprl/blocking/blocks.h"
#include "pprl/common/error.h"
#include "pprl/encoding/clk.h"
#include "pprl/encoding/similarity.h"
#include "pprl/securesum/paillier.h"
#include "pprl/securesum/prf.h"
#include "pprl/securesum/summation.h"
#include "pprl/simnet/scheduler.h"

namespace pprl {

namespace {

using Clock = std::chrono::steady_clock;
using IdsByBlock = std::map<BlockKey, std::vector<std::uint32_t>>;

constexpr int kGlobalEncoding = -1;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Owner {
  PartyId id = 0;
  const PartyDatabase* db = nullptr;
  std::vector<BloomFilter> bfs;
  std::vector<BloomFilter> ring_bfs;
  BlockMap blocks;
  SaltKey salt;
  std::map<PartyId, PaillierPublicKey> keys;
  std::map<std::tuple<PartyId, int, std::uint32_t>, EncryptedBloomFilter> encrypted;
  BigRandom rng{0};
  std::vector<BlockKey> common;
  std::vector<MatchList> results;
};

struct Coordinator {
  PartyId id = 0;
  std::uint64_t mask_seed = 0;
  std::optional<PaillierKeypair> keypair;
  std::map<PartyId, SaltKey> salts;
  BigRandom rng{0};
  std::map<PartyId, IdsByBlock> announced;
  std::vector<BlockKey> common;
  std::uint64_t next_set = 0;
  // Phase-1 matches per (block, ring), gathered by the RBR final coordinator.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<MatchEntry>> ring_matches;
};

struct SeedSet {
  std::vector<RecordRef> members;
  std::uint32_t carried = 0;
  std::vector<std::int32_t> carried_counts;
};

struct RoundResult {
  std::vector<RecordRef> members;
  CountingBloomFilter cbf;
  double similarity = 0.0;
  bool match = false;
};

using RoundDone = std::function<void(StepContext&, std::vector<RoundResult>)>;

struct Round {
  std::size_t stage = 0;
  std::size_t block = 0;
  PartyId coordinator = 0;
  std::vector<PartyId> route;
  bool coordinator_contributes = false;
  int encoding = kGlobalEncoding;
  // Contributor count used in the Dice numerator; 0 means the set size.
  std::size_t dice_x = 0;
  // Prefix lengths whose distinct prefixes count as partial sets.
  std::vector<std::size_t> prefixes;
  RoundDone done;
};

// Cartesian product of `lists`, in lexicographic order.
template <typename T>
std::vector<std::vector<T>> cross_product(const std::vector<std::vector<T>>& lists) {
  std::vector<std::vector<T>> out(1);
  for (const auto& list : lists) {
    std::vector<std::vector<T>> next;
    next.reserve(out.size() * list.size());
    for (const auto& prefix : out) {
      for (const T& item : list) {
        next.push_back(prefix);
        next.back().push_back(item);
      }
    }
    out = std::move(next);
  }
  return out;
}

std::uint64_t distinct_prefixes(const std::vector<SeedSet>& sets, std::size_t len) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i == 0 || !std::equal(sets[i].members.begin(), sets[i].members.begin() + len,
                              sets[i - 1].members.begin())) {
      ++count;
    }
  }
  return count;
}

std::vector<RecordRef> canonical(std::vector<RecordRef> members) {
  std::sort(members.begin(), members.end());
  return members;
}

class Engine {
 public:
  Engine(std::span<const PartyDatabase> parties, const LinkageConfig& config)
      : config_(config), network_(config.wire) {
    config_.validate();
    if (parties.size() < 2) {
      throw InvalidArgument("secure summation needs at least two database owners");
    }
    std::set<PartyId> ids;
    for (const auto& db : parties) {
      if (db.id == kLinkageUnit) throw InvalidArgument("party id 0 is the linkage unit");
      if (!ids.insert(db.id).second) throw InvalidArgument("duplicate party id");
      Owner& o = owners_[db.id];
      o.id = db.id;
      o.db = &db;
      o.rng = BigRandom(derive_seed(derive_seed(config_.seed, "hss-rng"), db.id, 0));
      o.salt = SaltKey{db.id, salt_key_for(config_.seed, db.id), kLinkageUnit};
      order_.push_back(db.id);
    }
    std::sort(order_.begin(), order_.end());
    network_.enable_trace(config_.trace);
    network_.enable_views(config_.capture_party_views);
  }

  LinkageOutcome run();

 private:
  std::size_t p() const { return order_.size(); }
  bool uses_lu() const { return config_.pattern != Pattern::kRbr; }
  PartyId final_coordinator() const {
    return uses_lu() ? kLinkageUnit : outcome_.plan.rings.front().front();
  }
  PartyId leader_of(PartyId party) const {
    return outcome_.plan.rings[*outcome_.plan.ring_of(party)].front();
  }

  Coordinator& coordinator(PartyId id);
  std::vector<PartyId> holders_for(PartyId party) const;
  void open_channels();
  Task setup_task();
  void launch_round(StepContext& ctx, Round round, std::vector<SeedSet> seeds);
  void contribute(Owner& owner, CandidateBatch& batch, int encoding,
                  PartyId holder);
  const EncryptedBloomFilter& encrypted(Owner& owner, PartyId holder,
                                        int encoding, std::uint32_t record);
  std::vector<RoundResult> unmask(Coordinator& coord, const Round& round,
                                  const CandidateBatch& batch);
  void finish_block(StepContext& ctx, PartyId coord, std::size_t block,
                    std::vector<RoundResult> results);
  std::vector<SeedSet> block_seeds(const Coordinator& coord, std::size_t block,
                                   std::span<const PartyId> route) const;

  Task nai_task();
  Task seq_task();
  void seq_ring(StepContext& ctx, std::size_t block, std::size_t ring,
                std::vector<SeedSet> seeds);
  Task rbr_ring_task(std::size_t ring);
  Task rbr_final_task();

  LinkageConfig config_;
  Network network_;
  std::map<PartyId, Owner> owners_;
  std::map<PartyId, Coordinator> coordinators_;
  std::vector<PartyId> order_;
  LinkageOutcome outcome_;
};

Coordinator& Engine::coordinator(PartyId id) {
  auto [it, inserted] = coordinators_.try_emplace(id);
  if (inserted) {
    it->second.id = id;
    it->second.mask_seed = mask_seed_for(config_.seed, id);
    it->second.rng = BigRandom(derive_seed(derive_seed(config_.seed, "hss-carry"), id, 0));
  }
  return it->second;
}

// Parties that unmask sums containing `party`'s contributions.
std::vector<PartyId> Engine::holders_for(PartyId party) const {
  if (uses_lu()) return {kLinkageUnit};
  std::vector<PartyId> out;
  const PartyId leader = leader_of(party);
  if (leader != party) out.push_back(leader);
  const PartyId star = final_coordinator();
  if (star != party && star != leader) out.push_back(star);
  return out;
}

void Engine::open_channels() {
  std::vector<PartyId> actors = order_;
  if (uses_lu()) actors.push_back(kLinkageUnit);
  for (PartyId a : actors) {
    for (PartyId b : actors) {
      if (a != b) network_.open_channel(a, b);
    }
  }
}

Task Engine::setup_task() {
  Task task{"setup", {}};
  const PartyId hub = final_coordinator();
  const std::string step = "setup";

  // Block key exchange: every owner announces its blocks to the hub (and, for
  // RBR, to its ring leader); the hub returns the intersection.
  for (PartyId id : order_) {
    std::vector<PartyId> targets;
    if (id != hub) targets.push_back(hub);
    if (!uses_lu() && leader_of(id) != id && leader_of(id) != hub) {
      targets.push_back(leader_of(id));
    }
    for (PartyId to : targets) {
      task.steps.push_back({"bkv-send", id, std::nullopt, [this, id, to, step](StepContext& ctx) {
        BkvAnnouncement bkv{id, {}};
        for (const auto& [key, recs] : owners_.at(id).blocks.blocks()) {
          bkv.keys.emplace_back(key, recs);
        }
        ctx.network().send({id, to, step + "/bkv", std::move(bkv)});
      }});
      task.steps.push_back({"bkv-receive", to, ChannelKey{id, to}, [this, id, to](StepContext& ctx) {
        auto bkv = std::get<BkvAnnouncement>(ctx.network().receive(id, to).payload);
        IdsByBlock& ids = coordinator(to).announced[bkv.party];
        for (auto& [key, recs] : bkv.keys) ids[key] = std::move(recs);
      }});
    }
  }
  task.steps.push_back({"bkv-intersect", hub, std::nullopt, [this, hub, step](StepContext& ctx) {
    Coordinator& c = coordinator(hub);
    if (!uses_lu()) {
      IdsByBlock& own = c.announced[hub];
      for (const auto& [key, recs] : owners_.at(hub).blocks.blocks()) own[key] = recs;
    }
    std::vector<BlockKey> common;
    for (const auto& [key, recs] : c.announced.at(order_.front())) {
      bool everywhere = true;
      for (PartyId id : order_) everywhere = everywhere && c.announced.at(id).contains(key);
      if (everywhere) common.push_back(key);
    }
    c.common = common;
    for (PartyId id : order_) {
      if (id == hub) {
        owners_.at(id).common = common;
        continue;
      }
      ctx.network().send({hub, id, step + "/intersection", BlockIntersection{common}});
      ctx.then({"intersection-receive", id, ChannelKey{hub, id}, [this, hub, id](StepContext& ctx2) {
        owners_.at(id).common =
            std::get<BlockIntersection>(ctx2.network().receive(hub, id).payload).keys;
      }});
    }
  }});

  if (config_.scheme == Scheme::kHss) {
    std::set<PartyId> holders;
    for (PartyId id : order_) {
      for (PartyId h : holders_for(id)) holders.insert(h);
    }
    if (!uses_lu()) {
      for (const auto& ring : outcome_.plan.rings) holders.insert(ring.front());
    }
    for (PartyId h : holders) {
      task.steps.push_back({"keygen", h, std::nullopt, [this, h, step](StepContext& ctx) {
        Coordinator& c = coordinator(h);
        c.keypair = paillier_keygen(
            config_.paillier_bits, derive_seed(derive_seed(config_.seed, "paillier"), h, 0));
        const PaillierPublicKey& pk = c.keypair->public_key;
        ctx.network().set_ciphertext_bytes(pk.ciphertext_bytes());
        if (owners_.contains(h)) owners_.at(h).keys[h] = pk;
        for (PartyId id : order_) {
          const auto hs = holders_for(id);
          if (std::find(hs.begin(), hs.end(), h) == hs.end()) continue;
          ctx.network().send({h, id, step + "/public-key", PublicKeyAnnouncement{h, pk}});
          ctx.then({"key-receive", id, ChannelKey{h, id}, [this, h, id](StepContext& ctx2) {
            auto ann = std::get<PublicKeyAnnouncement>(ctx2.network().receive(h, id).payload);
            owners_.at(id).keys[ann.holder] = ann.key;
          }});
        }
      }});
    }
  }

  if (config_.scheme == Scheme::kSss) {
    for (PartyId id : order_) {
      if (!uses_lu() && leader_of(id) == id) coordinator(id).salts[id] = owners_.at(id).salt;
      for (PartyId h : holders_for(id)) {
        task.steps.push_back({"salt-send", id, std::nullopt, [this, id, h, step](StepContext& ctx) {
          SaltRegistration reg{id, config_.seed, owners_.at(id).salt.key};
          ctx.network().send({id, h, step + "/salt", reg});
        }});
        task.steps.push_back({"salt-receive", h, ChannelKey{id, h}, [this, id, h](StepContext& ctx) {
          auto reg = std::get<SaltRegistration>(ctx.network().receive(id, h).payload);
          if (reg.run_id != config_.seed) {
            throw ProtocolViolation("salt registered for a different run");
          }
          coordinator(h).salts[reg.party] = SaltKey{reg.party, reg.salt_key, h};
        }});
      }
    }
  }
  return task;
}

const EncryptedBloomFilter& Engine::encrypted(Owner& owner, PartyId holder,
                                              int encoding, std::uint32_t record) {
  const auto key = std::make_tuple(holder, encoding, record);
  auto it = owner.encrypted.find(key);
  if (it != owner.encrypted.end()) return it->second;
  const auto& bf = encoding == kGlobalEncoding ? owner.bfs.at(record)
                                               : owner.ring_bfs.at(record);
  auto pk = owner.keys.find(holder);
  if (pk == owner.keys.end()) {
    throw ProtocolViolation(party_name(owner.id) + " has no public key of " +
                            party_name(holder));
  }
  return owner.encrypted
      .emplace(key, encrypt_bloom_filter(bf, pk->second, owner.rng))
      .first->second;
}

void Engine::contribute(Owner& owner, CandidateBatch& batch, int encoding,
                        PartyId holder) {
  for (CandidateSet& set : batch.sets) {
    auto it = std::find_if(set.members.begin() + set.carried, set.members.end(),
                           [&](const RecordRef& r) { return r.party == owner.id; });
    if (it == set.members.end()) {
      throw ProtocolViolation(party_name(owner.id) + " is not a member of a set it received");
    }
    const std::uint32_t rec = it->record;
    const auto& bf = encoding == kGlobalEncoding ? owner.bfs.at(rec)
                                                 : owner.ring_bfs.at(rec);
    switch (config_.scheme) {
      case Scheme::kBss:
        set.partial = bss_add(std::move(set.partial), bf);
        break;
      case Scheme::kSss:
        set.partial = sss_add(std::move(set.partial), bf, owner.salt, rec);
        break;
      case Scheme::kHss:
        set.partial = hss_add(std::move(set.partial),
                              encrypted(owner, holder, encoding, rec),
                              owner.keys.at(holder));
        break;
    }
  }
}

std::vector<RoundResult> Engine::unmask(Coordinator& coord, const Round& round,
                                        const CandidateBatch& batch) {
  std::vector<RoundResult> results;
  results.reserve(batch.sets.size());
  StageCounts& stats = outcome_.counts.stages.at(round.stage);
  const std::size_t l = config_.params.length;
  for (const CandidateSet& set : batch.sets) {
    const std::size_t x = set.members.size();
    if (set.partial.hop_count() != x - set.carried) {
      throw ProtocolViolation("candidate set returned with a missing contribution");
    }
    CountingBloomFilter cbf;
    switch (config_.scheme) {
      case Scheme::kBss:
        cbf = bss_unmask(set.partial,
                         RandomMaskVector::derive(coord.mask_seed, set.set_id, l, coord.id), x);
        break;
      case Scheme::kSss: {
        std::vector<SaltShare> shares;
        for (std::size_t i = set.carried; i < x; ++i) {
          const RecordRef& m = set.members[i];
          auto salt = coord.salts.find(m.party);
          if (salt == coord.salts.end()) {
            throw ProtocolViolation("no salt registered for " + party_name(m.party));
          }
          shares.push_back({salt->second, m.record});
        }
        cbf = sss_unmask(set.partial,
                         RandomMaskVector::derive(coord.mask_seed, set.set_id, l, coord.id),
                         shares, x);
        break;
      }
      case Scheme::kHss:
        cbf = hss_unmask(set.partial, *coord.keypair, x);
        break;
    }
    RoundResult r;
    r.members = set.members;
    r.similarity = dice_from_counts(cbf.counts(), round.dice_x ? round.dice_x : x);
    r.match = r.similarity >= config_.threshold;
    if (config_.capture_lu_view) {
      outcome_.lu_view.push_back(
          {coord.id, stats.stage, canonical(set.members), cbf});
    }
    r.cbf = std::move(cbf);
    ++stats.classified;
    if (r.match) ++stats.matches;
    results.push_back(std::move(r));
  }
  return results;
}

void Engine::launch_round(StepContext& ctx, Round round, std::vector<SeedSet> seeds) {
  if (seeds.empty()) {
    round.done(ctx, {});
    return;
  }
  if (round.route.size() < 2) throw InvalidArgument("a summation round needs two contributors");
  StageCounts& stats = outcome_.counts.stages.at(round.stage);
  for (std::size_t len : round.prefixes) stats.partial_sets += distinct_prefixes(seeds, len);

  auto shared = std::make_shared<Round>(std::move(round));
  const std::string step = stats.stage + "/b" + std::to_string(shared->block);
  const PartyId coord_id = shared->coordinator;
  const PartyId holder = coord_id;

  ctx.then({step + "/mask", coord_id, std::nullopt,
            [this, shared, seeds = std::move(seeds), step, holder](StepContext& c) {
    Coordinator& coord = coordinator(shared->coordinator);
    const std::size_t l = config_.params.length;
    CandidateBatch batch{shared->block, step, {}};
    batch.sets.reserve(seeds.size());
    for (const SeedSet& seed : seeds) {
      CandidateSet set;
      set.members = seed.members;
      set.carried = seed.carried;
      set.set_id = coord.next_set++;
      if (config_.scheme == Scheme::kHss) {
        if (seed.carried_counts.empty()) {
          set.partial = MaskedVector::hss_identity(l);
        } else {
          std::vector<mpz_class> cipher;
          cipher.reserve(l);
          for (std::int32_t v : seed.carried_counts) {
            cipher.push_back(coord.keypair->private_key.encrypt(mpz_class(v), coord.rng));
          }
          set.partial = MaskedVector::hss_from_ciphertexts(std::move(cipher));
        }
      } else {
        const auto mask = RandomMaskVector::derive(coord.mask_seed, set.set_id, l, coord.id);
        set.partial = seed.carried_counts.empty()
                          ? MaskedVector::from_mask(mask, config_.scheme)
                          : MaskedVector::from_masked_counts(seed.carried_counts, mask,
                                                             config_.scheme);
      }
      batch.sets.push_back(std::move(set));
    }
    PartyId to = shared->route.front();
    if (shared->coordinator_contributes) {
      contribute(owners_.at(shared->coordinator), batch, shared->encoding, holder);
      to = shared->route[1];
    }
    c.network().send({shared->coordinator, to, step, std::move(batch)});
  }});

  const std::size_t first = shared->coordinator_contributes ? 1 : 0;
  for (std::size_t i = first; i < shared->route.size(); ++i) {
    const PartyId me = shared->route[i];
    const PartyId from = i == 0 ? coord_id : shared->route[i - 1];
    const PartyId to = i + 1 < shared->route.size() ? shared->route[i + 1] : coord_id;
    ctx.then({step + "/add", me, ChannelKey{from, me},
              [this, shared, me, from, to, step, holder](StepContext& c) {
      auto batch = std::get<CandidateBatch>(c.network().receive(from, me).payload);
      contribute(owners_.at(me), batch, shared->encoding, holder);
      c.network().send({me, to, step, std::move(batch)});
    }});
  }

  ctx.then({step + "/unmask", coord_id, ChannelKey{shared->route.back(), coord_id},
            [this, shared](StepContext& c) {
    auto batch = std::get<CandidateBatch>(
        c.network().receive(shared->route.back(), shared->coordinator).payload);
    auto results = unmask(coordinator(shared->coordinator), *shared, batch);
    shared->done(c, std::move(results));
  }});
}

void Engine::finish_block(StepContext& ctx, PartyId coord, std::size_t block,
                          std::vector<RoundResult> results) {
  MatchList list{block, "final", {}};
  for (auto& r : results) {
    if (!r.match) continue;
    auto members = canonical(std::move(r.members));
    outcome_.matches.push_back({members, r.similarity});
    list.matches.push_back({std::move(members), r.similarity});
  }
  const std::string step = "result/b" + std::to_string(block);
  for (PartyId id : order_) {
    if (id == coord) continue;
    ctx.network().send({coord, id, step, list});
    ctx.then({step + "/receive", id, ChannelKey{coord, id}, [this, coord, id](StepContext& c) {
      owners_.at(id).results.push_back(
          std::get<MatchList>(c.network().receive(coord, id).payload));
    }});
  }
}

std::vector<SeedSet> Engine::block_seeds(const Coordinator& coord, std::size_t block,
                                         std::span<const PartyId> route) const {
  const BlockKey& key = coord.common.at(block);
  std::vector<std::vector<RecordRef>> lists;
  for (PartyId id : route) {
    std::vector<RecordRef> refs;
    for (std::uint32_t rec : coord.announced.at(id).at(key)) refs.push_back({id, rec});
    lists.push_back(std::move(refs));
  }
  std::vector<SeedSet> seeds;
  for (auto& members : cross_product(lists)) seeds.push_back({std::move(members), 0, {}});
  return seeds;
}

Task Engine::nai_task() {
  Task task{"nai", {}};
  for (std::size_t b = 0; b < outcome_.common_blocks; ++b) {
    task.steps.push_back({"nai/launch", kLinkageUnit, std::nullopt, [this, b](StepContext& ctx) {
      Round round;
      round.stage = 0;
      round.block = b;
      round.coordinator = kLinkageUnit;
      round.route = order_;
      for (std::size_t i = 1; i <= p(); ++i) round.prefixes.push_back(i);
      round.done = [this, b](StepContext& c, std::vector<RoundResult> results) {
        finish_block(c, kLinkageUnit, b, std::move(results));
      };
      launch_round(ctx, std::move(round), block_seeds(coordinator(kLinkageUnit), b, order_));
    }});
  }
  return task;
}

void Engine::seq_ring(StepContext& ctx, std::size_t block, std::size_t ring,
                      std::vector<SeedSet> seeds) {
  const auto& members = outcome_.plan.rings[ring];
  Round round;
  round.stage = ring;
  round.block = block;
  round.coordinator = kLinkageUnit;
  round.route = members;
  if (config_.seq_dice_denominator == SeqDiceDenominator::kGlobalP) round.dice_x = p();
  const std::size_t carried = ring == 0 ? 0 : seeds.front().carried;
  for (std::size_t i = ring == 0 ? 1 : carried; i <= carried + members.size(); ++i) {
    round.prefixes.push_back(i);
  }
  const bool last = ring + 1 == outcome_.plan.rings.size();
  round.done = [this, block, ring, last](StepContext& c, std::vector<RoundResult> results) {
    std::erase_if(results, [](const RoundResult& r) { return !r.match; });
    if (last || results.empty()) {
      finish_block(c, kLinkageUnit, block, std::move(results));
      return;
    }
    // Surviving sets are carried into the next ring as re-masked partial sums.
    const auto& next = outcome_.plan.rings[ring + 1];
    const Coordinator& lu = coordinator(kLinkageUnit);
    const BlockKey& key = lu.common.at(block);
    std::vector<std::vector<RecordRef>> lists;
    for (PartyId id : next) {
      std::vector<RecordRef> refs;
      for (std::uint32_t rec : lu.announced.at(id).at(key)) refs.push_back({id, rec});
      lists.push_back(std::move(refs));
    }
    const auto extensions = cross_product(lists);
    std::vector<SeedSet> seeds;
    for (const RoundResult& r : results) {
      std::vector<std::int32_t> counts(r.cbf.counts().begin(), r.cbf.counts().end());
      for (const auto& ext : extensions) {
        SeedSet s{r.members, static_cast<std::uint32_t>(r.members.size()), counts};
        s.members.insert(s.members.end(), ext.begin(), ext.end());
        seeds.push_back(std::move(s));
      }
    }
    seq_ring(c, block, ring + 1, std::move(seeds));
  };
  launch_round(ctx, std::move(round), std::move(seeds));
}

Task Engine::seq_task() {
  Task task{"seq", {}};
  for (std::size_t b = 0; b < outcome_.common_blocks; ++b) {
    task.steps.push_back({"seq/launch", kLinkageUnit, std::nullopt, [this, b](StepContext& ctx) {
      seq_ring(ctx, b, 0,
               block_seeds(coordinator(kLinkageUnit), b, outcome_.plan.rings.front()));
    }});
  }
  return task;
}

Task Engine::rbr_ring_task(std::size_t ring) {
  const auto members = outcome_.plan.rings[ring];
  const PartyId leader = members.front();
  const PartyId star = final_coordinator();
  Task task{"ring-" + std::to_string(ring + 1), {}};
  for (std::size_t b = 0; b < outcome_.common_blocks; ++b) {
    task.steps.push_back({"ring/launch", leader, std::nullopt,
                          [this, b, ring, members, leader, star](StepContext& ctx) {
      Coordinator& coord = coordinator(leader);
      coord.common = owners_.at(leader).common;
      IdsByBlock& own = coord.announced[leader];
      if (own.empty()) {
        for (const auto& [key, recs] : owners_.at(leader).blocks.blocks()) own[key] = recs;
      }
      Round round;
      round.stage = ring;
      round.block = b;
      round.coordinator = leader;
      round.route = members;
      round.coordinator_contributes = true;
      round.encoding = config_.per_ring_encoding ? static_cast<int>(ring) : kGlobalEncoding;
      for (std::size_t i = 1; i <= members.size(); ++i) round.prefixes.push_back(i);
      round.done = [this, b, ring, members, leader, star](StepContext& c,
                                                           std::vector<RoundResult> results) {
        MatchList list{b, "ring-" + std::to_string(ring + 1), {}};
        for (auto& r : results) {
          if (r.match) list.matches.push_back({std::move(r.members), r.similarity});
        }
        std::vector<PartyId> targets(members.begin() + 1, members.end());
        if (leader == star) {
          coordinator(star).ring_matches[{b, ring}] = list.matches;
        } else {
          targets.push_back(star);
        }
        const std::string step = list.stage + "/b" + std::to_string(b) + "/matches";
        for (PartyId to : targets) {
          c.network().send({leader, to, step, list});
          c.then({step + "/receive", to, ChannelKey{leader, to},
                  [this, leader, to, star, b, ring](StepContext& c2) {
            auto got = std::get<MatchList>(c2.network().receive(leader, to).payload);
            if (to == star) {
              coordinator(star).ring_matches[{b, ring}] = got.matches;
            } else {
              owners_.at(to).results.push_back(std::move(got));
            }
          }});
        }
      };
      launch_round(ctx, std::move(round), block_seeds(coord, b, members));
    }});
  }
  return task;
}

Task Engine::rbr_final_task() {
  const PartyId star = final_coordinator();
  Task task{"final", {}};
  const auto& rings = outcome_.plan.rings;
  for (std::size_t b = 0; b < outcome_.common_blocks; ++b) {
    task.steps.push_back({"final/launch", star, std::nullopt, [this, b, star, &rings](StepContext& ctx) {
      Coordinator& coord = coordinator(star);
      std::vector<std::vector<std::vector<RecordRef>>> lists;
      for (std::size_t j = 0; j < rings.size(); ++j) {
        std::vector<std::vector<RecordRef>> entries;
        for (const auto& e : coord.ring_matches.at({b, j})) entries.push_back(e.members);
        lists.push_back(std::move(entries));
      }
      std::vector<SeedSet> seeds;
      for (const auto& combo : cross_product(lists)) {
        SeedSet s;
        for (const auto& part : combo) s.members.insert(s.members.end(), part.begin(), part.end());
        seeds.push_back(std::move(s));
      }
      Round round;
      round.stage = rings.size();
      round.block = b;
      round.coordinator = star;
      round.coordinator_contributes = true;
      std::size_t boundary = 0;
      for (const auto& ring : rings) {
        round.route.insert(round.route.end(), ring.begin(), ring.end());
        boundary += ring.size();
        round.prefixes.push_back(boundary);
      }
      round.done = [this, b, star](StepContext& c, std::vector<RoundResult> results) {
        finish_block(c, star, b, std::move(results));
      };
      launch_round(ctx, std::move(round), std::move(seeds));
    }});
  }
  return task;
}

LinkageOutcome Engine::run() {
  const auto start = Clock::now();

  auto t = Clock::now();
  for (auto& [id, o] : owners_) o.blocks = build_blocks(o.db->records, config_.blocking_attrs);
  outcome_.timings["blocking"] = seconds_since(t);

  if (config_.pattern != Pattern::kNai) {
    std::vector<std::pair<PartyId, std::size_t>> sizes;
    for (PartyId id : order_) sizes.emplace_back(id, owners_.at(id).db->records.size());
    outcome_.plan = group_rings(sizes, config_.min_ring_size);
  }

  t = Clock::now();
  for (auto& [id, o] : owners_) {
    o.bfs.reserve(o.db->records.size());
    for (const Record& r : o.db->records) {
      o.bfs.push_back(encode_clk(r, config_.qid_attrs, config_.params));
    }
    if (config_.per_ring_encoding) {
      const BfParams rp = ring_params(config_.params, config_.seed, *outcome_.plan.ring_of(id));
      for (const Record& r : o.db->records) {
        o.ring_bfs.push_back(encode_clk(r, config_.qid_attrs, rp));
      }
    }
  }
  outcome_.timings["encoding"] = seconds_since(t);

  std::vector<std::string> stages;
  switch (config_.pattern) {
    case Pattern::kNai:
      stages = {"nai"};
      break;
    case Pattern::kSeq:
      for (std::size_t j = 0; j < outcome_.plan.rings.size(); ++j) {
        stages.push_back("ring-" + std::to_string(j + 1));
      }
      break;
    case Pattern::kRbr:
      for (std::size_t j = 0; j < outcome_.plan.rings.size(); ++j) {
        stages.push_back("ring-" + std::to_string(j + 1));
      }
      stages.push_back("final");
      break;
  }
  for (const auto& s : stages) outcome_.counts.stages.push_back({s, 0, 0, 0});

  open_channels();
  t = Clock::now();
  std::vector<Task> setup;
  setup.push_back(setup_task());
  run_tasks(network_, std::move(setup), config_.schedule);
  outcome_.common_blocks = owners_.at(order_.front()).common.size();
  outcome_.timings["setup"] = seconds_since(t);

  t = Clock::now();
  if (config_.pattern == Pattern::kNai) {
    std::vector<Task> tasks;
    tasks.push_back(nai_task());
    run_tasks(network_, std::move(tasks), config_.schedule);
  } else if (config_.pattern == Pattern::kSeq) {
    std::vector<Task> tasks;
    tasks.push_back(seq_task());
    run_tasks(network_, std::move(tasks), config_.schedule);
  } else {
    std::vector<Task> phase1;
    for (std::size_t j = 0; j < outcome_.plan.rings.size(); ++j) {
      phase1.push_back(rbr_ring_task(j));
    }
    run_tasks(network_, std::move(phase1), config_.schedule);
    outcome_.timings["linkage.phase1"] = seconds_since(t);
    const auto t2 = Clock::now();
    std::vector<Task> phase2;
    phase2.push_back(rbr_final_task());
    run_tasks(network_, std::move(phase2), config_.schedule);
    outcome_.timings["linkage.phase2"] = seconds_since(t2);
  }
  outcome_.timings["linkage"] = seconds_since(t);
  if (network_.pending() != 0) {
    throw ProtocolViolation("messages left undelivered at the end of the run");
  }

  std::sort(outcome_.matches.begin(), outcome_.matches.end(),
            [](const MatchResult& a, const MatchResult& b) { return a.members < b.members; });
  for (const auto& s : outcome_.counts.stages) {
    outcome_.counts.partial_sets += s.partial_sets;
    outcome_.counts.classified += s.classified;
  }
  outcome_.traffic = network_.ledger();
  outcome_.trace = network_.trace();
  if (config_.capture_party_views) {
    for (PartyId id : order_) outcome_.party_views[id] = network_.view_of(id);
  }
  outcome_.timings["total"] = seconds_since(start);
  return std::move(outcome_);
}

}  // namespace

LinkageOutcome run_linkage(std::span<const PartyDatabase> parties,
                           const LinkageConfig& config) {
  Engine engine(parties, config);
  return engine.run();
}

std::vector<MatchResult> run_nai(std::span<const PartyDatabase> parties,
                                 LinkageConfig config) {
  config.pattern = Pattern::kNai;
  return run_linkage(parties, config).matches;
}

std::vector<MatchResult> run_seq(std::span<const PartyDatabase> parties,
                                 LinkageConfig config) {
  config.pattern = Pattern::kSeq;
  return run_linkage(parties, config).matches;
}

std::vector<MatchResult> run_rbr(std::span<const PartyDatabase> parties,
                                 LinkageConfig config) {
  config.pattern = Pattern::kRbr;
  return run_linkage(parties, config).matches;
}

std::uint64_t mask_seed_for(std::uint64_t run_seed, PartyId owner) {
  return derive_seed(derive_seed(run_seed, "mask"), owner, 0);
}

std::uint64_t salt_key_for(std::uint64_t run_seed, PartyId party) {
  const std::uint64_t key = derive_seed(derive_seed(run_seed, "salt"), party, 0);
  return key == 0 ? 1 : key;
}

BfParams ring_params(const BfParams& base, std::uint64_t run_seed, std::size_t ring) {
  BfParams out = base;
  const std::uint64_t root = derive_seed(run_seed, "ring-encoding");
  out.hash_seed_a = derive_seed(root, ring, 0);
  out.hash_seed_b = derive_seed(root, ring, 1);
  return out;
}

}  // namespace pprl
