#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace moralnet {

/// Byte-keyed prefix trie. Every node can carry two payloads: one for keys that
/// must match exactly and one for stems that accept any continuation.
class ByteTrie {
  template <typename Vec>
  static auto lower_bound(Vec& kids, unsigned char c) {
    return std::lower_bound(kids.begin(), kids.end(), c,
                            [](const auto& kid, unsigned char x) { return kid.first < x; });
  }

 public:
  using NodeId = std::uint32_t;
  static constexpr std::int32_t kNone = -1;

  struct Node {
    std::vector<std::pair<unsigned char, NodeId>> children;  // sorted by byte
    std::int32_t exact = kNone;
    std::int32_t stem = kNone;
  };

  ByteTrie() : nodes_(1) {}

  /// Returns false when the slot for (key, is_stem) is already occupied.
  bool insert(std::string_view key, std::int32_t value, bool is_stem) {
    NodeId cur = 0;
    for (char ch : key) {
      const auto c = static_cast<unsigned char>(ch);
      auto& kids = nodes_[cur].children;
      auto it = lower_bound(kids, c);
      if (it != kids.end() && it->first == c) {
        cur = it->second;
        continue;
      }
      const auto next = static_cast<NodeId>(nodes_.size());
      kids.insert(it, {c, next});
      nodes_.emplace_back();
      cur = next;
    }
    auto& slot = is_stem ? nodes_[cur].stem : nodes_[cur].exact;
    if (slot != kNone) return false;
    slot = value;
    return true;
  }

  std::optional<NodeId> child(NodeId node, unsigned char c) const {
    const auto& kids = nodes_[node].children;
    auto it = lower_bound(kids, c);
    if (it == kids.end() || it->first != c) return std::nullopt;
    return it->second;
  }

  const Node& node(NodeId id) const { return nodes_[id]; }
  static constexpr NodeId root() { return 0; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<Node> nodes_;
};

}  // namespace moralnet
