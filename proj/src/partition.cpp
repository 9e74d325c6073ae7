#include "admnet/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "admnet/error.hpp"

namespace admnet {

Partition::Partition(int n, std::vector<std::vector<int>> blocks) : n_(n) {
  if (n < 0) throw ValidationError("negative partition size");
  label_.assign(n, -1);
  for (auto& b : blocks) {
    if (b.empty()) throw ValidationError("partition block is empty");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (int i : blocks[k]) {
      if (i < 0 || i >= n) throw ValidationError("partition element out of range");
      if (label_[i] != -1) throw ValidationError("partition blocks overlap");
      label_[i] = static_cast<int>(k);
    }
  }
  if (std::find(label_.begin(), label_.end(), -1) != label_.end()) {
    throw ValidationError("partition blocks do not cover the ground set");
  }
  blocks_ = std::move(blocks);
}

Partition Partition::from_labels(std::span<const int> labels) {
  std::vector<std::vector<int>> blocks;
  std::vector<std::pair<int, int>> seen;  // label -> block
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& s) { return s.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], static_cast<int>(blocks.size()));
      blocks.push_back({i});
    } else {
      blocks[it->second].push_back(i);
    }
  }
  return Partition(static_cast<int>(labels.size()), std::move(blocks));
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) blocks[i] = {i};
  return Partition(n, std::move(blocks));
}

Partition Partition::whole(int n) {
  if (n == 0) return Partition(0, {});
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return Partition(n, {all});
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.n_ != n_) return false;
  for (const auto& b : blocks_) {
    for (int i : b) {
      if (coarser.label_[i] != coarser.label_[b.front()]) return false;
    }
  }
  return true;
}

Partition Partition::join(const Partition& other) const {
  if (other.n_ != n_) throw ValidationError("join of partitions of different sizes");
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto* p : {this, &other}) {
    for (const auto& b : p->blocks_) {
      for (int i : b) parent[find(i)] = find(b.front());
    }
  }
  std::vector<int> labels(n_);
  for (int i = 0; i < n_; ++i) labels[i] = find(i);
  return from_labels(labels);
}

std::string Partition::to_string() const {
  std::ostringstream out;
  for (const auto& b : blocks_) {
    out << '{';
    for (std::size_t k = 0; k < b.size(); ++k) out << (k ? "," : "") << b[k] + 1;
    out << '}';
  }
  return out.str();
}

void for_each_partition(const Partition& allowed,
                        const std::function<void(std::span<const int>)>& visit) {
  const int n = allowed.size();
  std::vector<int> rgs(n, 0);
  if (n == 0) {
    visit(rgs);
    return;
  }
  std::vector<int> block_class;  // allowed-class of each open block
  auto rec = [&](auto&& self, int i, int nblocks) -> void {
    if (i == n) {
      visit(rgs);
      return;
    }
    for (int b = 0; b < nblocks; ++b) {
      if (block_class[b] != allowed.block_of(i)) continue;
      rgs[i] = b;
      self(self, i + 1, nblocks);
    }
    rgs[i] = nblocks;
    block_class.push_back(allowed.block_of(i));
    self(self, i + 1, nblocks + 1);
    block_class.pop_back();
  };
  rec(rec, 0, 0);
}

std::vector<Partition> enumerate_partitions(const Partition& allowed) {
  std::vector<Partition> out;
  for_each_partition(allowed, [&](std::span<const int> labels) {
    out.push_back(Partition::from_labels(labels));
  });
  return out;
}

}  // namespace admnet
