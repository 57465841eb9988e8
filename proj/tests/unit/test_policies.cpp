#include <doctest.h>

#include <memory>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "zipfcache/errors.hpp"
#include "zipfcache/policies/baselines.hpp"
#include "zipfcache/policies/registry.hpp"
#include "zipfcache/policies/zbs.hpp"
#include "zipfcache/sim/simulator.hpp"

using namespace zipfcache;
using namespace zipfcache::policies;
using sim::CacheConfig;
using sim::CapacityUnit;
using sim::FetchCause;
using sim::ObjectKey;
using testing::mod;
using testing::req;

namespace {

constexpr double kHour = 3600.0;
constexpr double kDay = 86400.0;

sim::CacheConfig objectConfig(const std::string& id, std::uint64_t slots) {
  CacheConfig c;
  c.policyId = id;
  c.capacityBytes = slots;
  c.capacityUnit = CapacityUnit::objects;
  return c;
}

// Simulator over a ZbsPolicy whose state the test can inspect.
struct ZbsRig {
  explicit ZbsRig(std::uint64_t slots, double statsDays = 30.0) {
    CacheConfig c = objectConfig("zbs", slots);
    c.statsRetentionSeconds = statsDays * kDay;
    sim = std::make_unique<sim::Simulator>(c, std::make_unique<ZbsPolicy>(c));
  }
  void run(const std::vector<trace::TraceEvent>& events) {
    compiled = sim::compileTrace(events);
    sim->run(compiled.events);
  }
  const ZbsPolicy& zbs() const { return dynamic_cast<const ZbsPolicy&>(sim->policy()); }
  ObjectKey key(const std::string& name) const {
    for (std::size_t i = 0; i < compiled.names.size(); ++i)
      if (compiled.names[i] == name) return static_cast<ObjectKey>(i);
    throw std::out_of_range(name);
  }

  std::unique_ptr<sim::Simulator> sim;
  sim::CompiledTrace compiled;
};

// One full admission through the staging protocol.
std::vector<ObjectKey> admit(sim::ReplacementPolicy& p, ObjectKey key, std::uint64_t size, double now,
                             std::uint64_t need) {
  REQUIRE(p.onMissAdmit(key, size, now));
  auto v = p.chooseVictims(need, now);
  REQUIRE(v.has_value());
  return *v;
}

}  // namespace

TEST_CASE("LRU evicts the least recently requested object") {
  const auto ev = testing::requests({"A", "B", "C", "A"});
  const auto r = sim::simulate(ev, objectConfig("lru", 2));
  CHECK(r.hits == 0);
  CHECK(r.evictions == 2);

  // Recency matters: touching A before C saves it.
  const auto r2 = sim::simulate(testing::requests({"A", "B", "A", "C", "A", "B"}), objectConfig("lru", 2));
  CHECK(r2.hits == 2);  // A at t=2 and t=4; B was evicted by C
}

TEST_CASE("LFU evicts the least frequently requested object") {
  LfuPolicy p;
  admit(p, 0, 1, 0, 0);
  admit(p, 1, 1, 1, 0);
  p.onHit(0, 2);
  p.onHit(0, 3);  // A: 3, B: 1
  CHECK(admit(p, 2, 1, 4, 1) == std::vector<ObjectKey>{1});

  // Equal counts fall back to least recent.
  LfuPolicy q;
  admit(q, 0, 1, 0, 0);
  admit(q, 1, 1, 1, 0);
  q.onHit(1, 2);
  q.onHit(0, 3);
  CHECK(admit(q, 2, 1, 4, 1) == std::vector<ObjectKey>{1});
}

TEST_CASE("FIFO ignores request recency") {
  const auto r = sim::simulate(testing::requests({"A", "B", "A", "C", "A"}), objectConfig("fifo", 2));
  // C evicts A despite A's recent hit, so the last A misses.
  CHECK(r.hits == 1);
  CHECK(r.evictions == 2);

  FifoPolicy p;
  admit(p, 0, 1, 0, 0);
  admit(p, 1, 1, 1, 0);
  p.onHit(0, 2);
  CHECK(admit(p, 2, 1, 3, 1) == std::vector<ObjectKey>{0});
}

TEST_CASE("baselines: refetch never evicts the refetched object") {
  for (const std::string id : {"lru", "lfu", "fifo"}) {
    CAPTURE(id);
    auto p = makePolicy(objectConfig(id, 3));
    admit(*p, 0, 1, 0, 0);
    admit(*p, 1, 1, 1, 0);
    p->onModificationFetched(0, 2, 2, FetchCause::prefetch);
    const auto v = p->chooseVictims(1, 2);
    REQUIRE(v.has_value());
    CHECK(*v == std::vector<ObjectKey>{1});
    // Nothing left to give up except the staged object itself.
    p->onModificationFetched(0, 3, 3, FetchCause::demand);
    CHECK_FALSE(p->chooseVictims(1, 3).has_value());
  }
}

TEST_CASE("zbsMetric") {
  KernelEntry e{0, 1, 0.0, 1, 0.0};
  CHECK(zbsMetric(e, 100.0, false) == 100.0);
  e.theta = 2;
  CHECK(zbsMetric(e, 100.0, false) == 50.0);

  KernelEntry big{0, 3, 10.0, 1000000, 0.0};
  KernelEntry small{1, 3, 10.0, 1000, 0.0};
  CHECK(zbsMetric(small, 70.0, true) / zbsMetric(big, 70.0, true) == doctest::Approx(1000.0));
  CHECK(zbsMetric(big, 70.0, false) == zbsMetric(small, 70.0, false));

  KernelEntry zero{0, 0, 0.0, 1, 0.0};
  CHECK_THROWS_AS(zbsMetric(zero, 1.0, false), std::logic_error);
}

TEST_CASE("zbsMetric is monotone in now and theta") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> t(0.0, 1e7);
  std::uniform_int_distribution<std::uint32_t> th(1, 1000);
  for (int i = 0; i < 1000; ++i) {
    KernelEntry e{0, th(gen), t(gen), 1 + th(gen), 0.0};
    const double now = e.lastModified + t(gen);
    for (bool byteMode : {false, true}) {
      CHECK(zbsMetric(e, now + 1.0, byteMode) > zbsMetric(e, now, byteMode));
      KernelEntry heavier = e;
      heavier.theta += 1;
      if (now > e.lastModified) CHECK(zbsMetric(heavier, now, byteMode) < zbsMetric(e, now, byteMode));
    }
  }
}

TEST_CASE("ZBS: first request lands in the accessory part with theta 1") {
  ZbsRig rig(100);
  rig.run({req(0, "A")});
  const auto a = rig.key("A");
  CHECK(rig.zbs().part(a) == ZbsPolicy::Part::accessory);
  CHECK(rig.zbs().statsTheta(a) == 1);
  CHECK(rig.zbs().accessoryUsed() == 1);
  CHECK(rig.zbs().kernelCount() == 0);
}

TEST_CASE("ZBS: second request moves the object to the kernel") {
  ZbsRig rig(100);
  rig.run({req(0, "A"), req(kHour, "A")});
  const auto a = rig.key("A");
  CHECK(rig.zbs().part(a) == ZbsPolicy::Part::kernel);
  CHECK(rig.zbs().accessoryUsed() == 0);
  const auto entry = rig.zbs().kernelEntry(a);
  REQUIRE(entry.has_value());
  CHECK(entry->theta == 2);
  CHECK(entry->lastModified == 0.0);  // never modified: T_z from admission
  CHECK(entry->admittedAt == 0.0);
  CHECK(rig.sim->report().hits == 1);
}

TEST_CASE("ZBS: an evicted object returning within t_s enters the kernel") {
  // 20 slots: accessory budget 2, so a third first-timer pushes A out.
  ZbsRig rig(20);
  rig.run({req(0, "A"), req(1, "B"), req(2, "C"), req(3, "A")});
  const auto a = rig.key("A");
  CHECK(rig.sim->report().hits == 0);
  CHECK(rig.zbs().part(a) == ZbsPolicy::Part::kernel);
  CHECK(rig.zbs().kernelEntry(a)->theta == 2);
  CHECK(rig.zbs().kernelEntry(a)->lastModified == 3.0);
  CHECK(rig.zbs().part(rig.key("B")) == ZbsPolicy::Part::accessory);
  CHECK(rig.zbs().part(rig.key("C")) == ZbsPolicy::Part::accessory);
}

TEST_CASE("ZBS: a refetched modification re-enters the kernel with theta 1") {
  ZbsRig rig(100);
  std::vector<trace::TraceEvent> ev;
  for (int i = 0; i < 7; ++i) ev.push_back(req(i, "A"));
  ev.push_back(mod(10, "A", 2));
  ev.push_back(req(20, "A", 2));
  rig.run(ev);
  const auto a = rig.key("A");
  const auto entry = rig.zbs().kernelEntry(a);
  REQUIRE(entry.has_value());
  CHECK(entry->theta == 1);
  CHECK(entry->lastModified == 20.0);
  CHECK(rig.zbs().modCount(a) == 1);
  CHECK(rig.sim->report().staleRefetches == 1);
  CHECK(zbsMetric(*entry, 20.0, false) == 0.0);

  // Before refetch the copy held theta 7.
  ZbsRig before(100);
  before.run(std::vector<trace::TraceEvent>(ev.begin(), ev.begin() + 7));
  CHECK(before.zbs().kernelEntry(before.key("A"))->theta == 7);

  // Another modification-refetch adds exactly one more.
  ev.push_back(mod(30, "A", 3));
  ev.push_back(req(40, "A", 3));
  ZbsRig twice(100);
  twice.run(ev);
  CHECK(twice.zbs().modCount(twice.key("A")) == 2);
  CHECK(twice.zbs().kernelEntry(twice.key("A"))->theta == 1);
}

TEST_CASE("ZBS: the kernel victim has the largest metric") {
  ZbsPolicy p(100, 0.1, 30 * kDay, false);
  admit(p, 0, 1, 0, 0);
  for (double t : {1.0, 2.0, 3.0}) p.onHit(0, t);  // theta 4, T_z from 0
  admit(p, 1, 1, 2, 0);
  p.onHit(1, 3);  // theta 2, T_z from 2
  // At t = 20 the metrics are 20/4 = 5 and 18/2 = 9.
  CHECK(zbsMetric(*p.kernelEntry(0), 20, false) == 5.0);
  CHECK(zbsMetric(*p.kernelEntry(1), 20, false) == 9.0);
  CHECK(admit(p, 2, 1, 20, 1) == std::vector<ObjectKey>{1});
}

TEST_CASE("ZBS: exact metric ties evict the older admission") {
  for (bool promoteNewerFirst : {false, true}) {
    ZbsPolicy p(100, 0.1, 30 * kDay, false);
    admit(p, 0, 1, 0, 0);
    admit(p, 1, 1, 0, 0);
    if (promoteNewerFirst) {
      p.onHit(1, 1);
      p.onHit(0, 1);
    } else {
      p.onHit(0, 1);
      p.onHit(1, 1);
    }
    CHECK(admit(p, 2, 1, 50, 1) == std::vector<ObjectKey>{0});
  }
}

TEST_CASE("ZBS: the accessory part is FIFO within its budget") {
  ZbsPolicy p(50, 0.1, 30 * kDay, false);  // budget 5
  CHECK(p.accessoryBudget() == 5);
  for (ObjectKey k = 0; k < 5; ++k) CHECK(admit(p, k, 1, k, 0).empty());
  p.onMissAdmit(5, 1, 5);
  CHECK(*p.chooseVictims(0, 5) == std::vector<ObjectKey>{0});
  p.onMissAdmit(6, 2, 6);
  CHECK(*p.chooseVictims(0, 6) == std::vector<ObjectKey>{1, 2});
  CHECK(p.accessoryUsed() == 5);
  // Larger than the whole budget: not stored, but remembered.
  CHECK_FALSE(p.onMissAdmit(9, 6, 7));
  CHECK(p.statsTheta(9) == 1);
  CHECK(p.onMissAdmit(9, 6, 8));
  CHECK(p.chooseVictims(0, 8)->empty());
  CHECK(p.part(9) == ZbsPolicy::Part::kernel);
}

TEST_CASE("ZBS: part limits and kernel provenance hold through a long random run") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> pick(0, 399);
  std::uniform_int_distribution<int> size(1, 40);
  std::bernoulli_distribution modify(0.05);
  std::vector<trace::TraceEvent> ev;
  std::vector<int> sizes(400);
  for (auto& s : sizes) s = size(gen);
  for (int i = 0; i < 20000; ++i) {
    const int obj = pick(gen);
    const std::string id = "o" + std::to_string(obj);
    const double t = i * 600.0;
    if (modify(gen)) {
      sizes[obj] = size(gen);
      ev.push_back(mod(t, id, sizes[obj]));
    } else {
      ev.push_back(req(t, id, sizes[obj]));
    }
  }
  for (double fraction : {0.02, 0.1}) {
    CacheConfig c;
    c.policyId = "zbs";
    c.capacityBytes = 1500;
    c.accessoryFraction = fraction;
    c.statsRetentionSeconds = 30 * kDay;
    const auto compiled = sim::compileTrace(ev);
    sim::Simulator s(c, std::make_unique<ZbsPolicy>(c));
    const auto& zbs = dynamic_cast<const ZbsPolicy&>(s.policy());
    for (const auto& e : compiled.events) {
      const bool wasResident = s.resident(e.key);
      s.process(e);
      REQUIRE(zbs.accessoryUsed() <= zbs.accessoryBudget());
      REQUIRE(zbs.accessoryUsed() + zbs.kernelUsed() == s.used());
      REQUIRE(s.used() <= c.capacityBytes);
      if (e.kind == trace::EventKind::request && !wasResident && zbs.part(e.key) == ZbsPolicy::Part::kernel) {
        // A fresh kernel admission has a request history of two or more.
        REQUIRE(zbs.statsTheta(e.key) >= 2);
      }
    }
    CHECK(s.report().evictions > 0);
  }
}

TEST_CASE("ZBS: statistics expire after t_s") {
  ZbsPolicy p(100, 0.1, 30 * kDay, false);
  admit(p, 0, 1, 0, 0);
  p.onHit(0, kHour);
  CHECK(p.statsTheta(0) == 2);
  p.onExpireStats(29 * kDay);
  CHECK(p.statsTheta(0) == 2);
  p.onExpireStats(30 * kDay);
  CHECK(p.statsTheta(0) == 0);
  // Resident objects keep their (empty) stats and a weight of 1.
  CHECK(p.hasStats(0));
  CHECK(p.kernelEntry(0)->theta == 1);

  // Stats for an object no longer cached are dropped entirely.
  ZbsPolicy q(20, 0.1, 30 * kDay, false);  // budget 2
  admit(q, 0, 1, 0, 0);
  admit(q, 1, 1, 1, 0);
  CHECK(admit(q, 2, 1, 2, 0) == std::vector<ObjectKey>{0});
  q.onExpireStats(31 * kDay);
  CHECK_FALSE(q.hasStats(0));
  // So a return after the horizon starts over in the accessory part.
  admit(q, 0, 1, 32 * kDay, 0);
  CHECK(q.part(0) == ZbsPolicy::Part::accessory);
}

TEST_CASE("ZBS: byte mode divides the metric by size") {
  ZbsPolicy p(10000, 0.1, 30 * kDay, true);
  CHECK(p.id() == "zbs-byte");
  admit(p, 0, 10, 0, 0);
  p.onHit(0, 1);
  admit(p, 1, 900, 0, 0);
  p.onHit(1, 1);
  // 100 / (2 * 10) beats 100 / (2 * 900): the small copy goes.
  CHECK(admit(p, 2, 10, 100, 1) == std::vector<ObjectKey>{0});
}

TEST_CASE("ZBS: infeasible when nothing is left to evict") {
  ZbsPolicy p(10, 0.1, 30 * kDay, false);
  p.onMissAdmit(0, 1, 0);
  p.onMissAdmit(0, 1, 1);  // second request: kernel target
  CHECK_FALSE(p.chooseVictims(5, 1).has_value());
}

TEST_CASE("registry") {
  CHECK(policyIds() == std::vector<std::string>{"zbs", "zbs-byte", "lru", "lfu", "fifo"});
  for (const auto& id : policyIds()) {
    CacheConfig c;
    c.policyId = id;
    c.capacityBytes = 100;
    CHECK(makePolicy(c)->id() == id);
  }
  CacheConfig bad;
  bad.policyId = "arc";
  try {
    makePolicy(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("zbs-byte") != std::string::npos);
  }
}
