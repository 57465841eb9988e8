#include "zipfcache/policies/baselines.hpp"

namespace zipfcache::policies {

using sim::FetchCause;
using sim::ObjectKey;

namespace {

// Shared by the two list-ordered policies: unlink from the back, skipping
// `keep`, until enough space is freed, then link `fresh` at the front.
template <class Slots>
std::optional<std::vector<ObjectKey>> evictFromBack(std::list<ObjectKey>& order, Slots& slots,
                                                    std::optional<ObjectKey> keep,
                                                    std::optional<std::pair<ObjectKey, std::uint64_t>> fresh,
                                                    std::uint64_t bytesNeeded) {
  std::vector<ObjectKey> victims;
  std::uint64_t freed = 0;
  auto it = order.end();
  while (freed < bytesNeeded) {
    if (it == order.begin()) return std::nullopt;
    --it;
    if (keep && *it == *keep) continue;
    const auto slot = slots.find(*it);
    freed += slot->second.size;
    victims.push_back(*it);
    slots.erase(slot);
    it = order.erase(it);
  }
  if (fresh) {
    order.push_front(fresh->first);
    slots[fresh->first] = {order.begin(), fresh->second};
  }
  return victims;
}

// Splits a staged key into one to link fresh and one to protect in place.
template <class Slots>
std::pair<std::optional<ObjectKey>, std::optional<std::pair<ObjectKey, std::uint64_t>>> takeStaged(
    std::optional<ObjectKey>& staged, const std::list<ObjectKey>& order, Slots& slots) {
  std::optional<ObjectKey> keep;
  std::optional<std::pair<ObjectKey, std::uint64_t>> fresh;
  if (staged) {
    const auto it = slots.find(*staged);
    if (it->second.pos == order.end()) {
      fresh = std::pair{*staged, it->second.size};
      slots.erase(it);
    } else {
      keep = *staged;
    }
  }
  staged.reset();
  return {keep, fresh};
}

}  // namespace

void LruPolicy::onHit(ObjectKey key, double) {
  auto& slot = slots_.at(key);
  order_.splice(order_.begin(), order_, slot.pos);
}

bool LruPolicy::onMissAdmit(ObjectKey key, std::uint64_t size, double) {
  staged_ = key;
  slots_[key] = {order_.end(), size};
  return true;
}

std::optional<std::vector<ObjectKey>> LruPolicy::chooseVictims(std::uint64_t bytesNeeded, double) {
  const auto [keep, fresh] = takeStaged(staged_, order_, slots_);
  return evictFromBack(order_, slots_, keep, fresh, bytesNeeded);
}

void LruPolicy::onModificationFetched(ObjectKey key, std::uint64_t size, double, FetchCause cause) {
  auto& slot = slots_.at(key);
  slot.size = size;
  if (cause == FetchCause::demand) {
    order_.erase(slot.pos);
    slot.pos = order_.end();
  }
  staged_ = key;
}

void LruPolicy::erase(ObjectKey key) {
  auto it = slots_.find(key);
  if (it == slots_.end()) return;
  if (it->second.pos != order_.end()) order_.erase(it->second.pos);
  slots_.erase(it);
}

bool FifoPolicy::onMissAdmit(ObjectKey key, std::uint64_t size, double) {
  staged_ = key;
  slots_[key] = {order_.end(), size};
  return true;
}

std::optional<std::vector<ObjectKey>> FifoPolicy::chooseVictims(std::uint64_t bytesNeeded, double) {
  const auto [keep, fresh] = takeStaged(staged_, order_, slots_);
  return evictFromBack(order_, slots_, keep, fresh, bytesNeeded);
}

void FifoPolicy::onModificationFetched(ObjectKey key, std::uint64_t size, double, FetchCause) {
  // A refetch keeps the original admission position.
  slots_.at(key).size = size;
  staged_ = key;
}

void FifoPolicy::erase(ObjectKey key) {
  auto it = slots_.find(key);
  if (it == slots_.end()) return;
  if (it->second.pos != order_.end()) order_.erase(it->second.pos);
  slots_.erase(it);
}

void LfuPolicy::touch(ObjectKey key, bool countIt) {
  auto& slot = slots_.at(key);
  ranks_.erase({slot.count, slot.tick, key});
  if (countIt) ++slot.count;
  slot.tick = ++clock_;
  ranks_.insert({slot.count, slot.tick, key});
}

void LfuPolicy::onHit(ObjectKey key, double) { touch(key, true); }

bool LfuPolicy::onMissAdmit(ObjectKey key, std::uint64_t size, double) {
  staged_ = key;
  slots_[key] = {1, ++clock_, size};
  return true;
}

std::optional<std::vector<ObjectKey>> LfuPolicy::chooseVictims(std::uint64_t bytesNeeded, double) {
  std::vector<ObjectKey> victims;
  std::uint64_t freed = 0;
  while (freed < bytesNeeded) {
    if (ranks_.empty()) return std::nullopt;
    const auto [count, tick, v] = *ranks_.begin();
    ranks_.erase(ranks_.begin());
    auto it = slots_.find(v);
    freed += it->second.size;
    slots_.erase(it);
    victims.push_back(v);
  }
  if (staged_) {
    const auto& slot = slots_.at(*staged_);
    ranks_.insert({slot.count, slot.tick, *staged_});
    staged_.reset();
  }
  return victims;
}

void LfuPolicy::onModificationFetched(ObjectKey key, std::uint64_t size, double, FetchCause cause) {
  auto& slot = slots_.at(key);
  ranks_.erase({slot.count, slot.tick, key});
  slot.size = size;
  if (cause == FetchCause::demand) {
    ++slot.count;
    slot.tick = ++clock_;
  }
  staged_ = key;
}

void LfuPolicy::erase(ObjectKey key) {
  auto it = slots_.find(key);
  if (it == slots_.end()) return;
  ranks_.erase({it->second.count, it->second.tick, key});
  slots_.erase(it);
}

}  // namespace zipfcache::policies
