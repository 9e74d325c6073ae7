#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace admnet {

/// Set partition of {0, ..., n-1}. Blocks are sorted internally and ordered
/// by their minimum element, so equal partitions compare equal.
class Partition {
 public:
  Partition() = default;

  /// Throws ValidationError unless the blocks are disjoint, nonempty and
  /// cover {0, ..., n-1}.
  Partition(int n, std::vector<std::vector<int>> blocks);

  static Partition from_labels(std::span<const int> labels);
  static Partition singletons(int n);
  static Partition whole(int n);

  int size() const { return n_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int b) const { return blocks_[b]; }
  /// Index of the block containing element i.
  int block_of(int i) const { return label_[i]; }
  const std::vector<int>& labels() const { return label_; }
  bool same_block(int a, int b) const { return label_[a] == label_[b]; }

  bool is_bottom() const { return num_blocks() == n_; }
  bool is_top() const { return n_ > 0 && num_blocks() == 1; }

  /// True iff every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  /// Finest common coarsening.
  Partition join(const Partition& other) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }
  friend bool operator<(const Partition& a, const Partition& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.blocks_ < b.blocks_;
  }

  /// "{1,3,5}{2,4,6}" with 1-based ids.
  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> label_;
};

/// All set partitions of {0..n-1} whose blocks stay inside blocks of
/// `allowed` (pass Partition::whole(n) for no restriction), in restricted
/// growth string order.
std::vector<Partition> enumerate_partitions(const Partition& allowed);

/// Streaming form of enumerate_partitions: `visit` receives the restricted
/// growth string (block label per element) of each partition.
void for_each_partition(const Partition& allowed,
                        const std::function<void(std::span<const int>)>& visit);

}  // namespace admnet
