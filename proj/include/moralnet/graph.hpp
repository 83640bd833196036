#pragma once

#include "moralnet/foundation.hpp"
#include "moralnet/text.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace moralnet {

/// Weighted undirected user graph. Nodes are ordered by user_id, edges by
/// (u, v) node index with u < v. No self-loops; one edge per unordered pair.
class RetweetNetwork {
 public:
  using NodeIndex = std::uint32_t;

  struct Node {
    std::string user_id;
    std::optional<Foundation> label;
  };

  struct Edge {
    NodeIndex u;
    NodeIndex v;
    std::uint64_t weight;
    bool operator==(const Edge&) const = default;
  };

  struct Neighbor {
    NodeIndex node;
    std::uint64_t weight;
  };

  class Builder {
   public:
    /// Adds or relabels a node.
    void add_node(const std::string& user_id, std::optional<Foundation> label);

    /// Accumulates weight onto the unordered pair, adding unseen endpoints as
    /// unlabelled nodes. Throws std::invalid_argument for a self-loop or zero weight.
    void add_interaction(const std::string& a, const std::string& b, std::uint64_t weight = 1);

    RetweetNetwork build() const;

   private:
    std::map<std::string, std::optional<Foundation>> nodes_;
    std::map<std::pair<std::string, std::string>, std::uint64_t> weights_;
  };

  RetweetNetwork() = default;

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  std::span<const Neighbor> neighbors(NodeIndex i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeIndex i) const { return offsets_[i + 1] - offsets_[i]; }
  std::optional<NodeIndex> find(std::string_view user_id) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

struct NetworkBuildStats {
  std::uint64_t retweets = 0;
  std::uint64_t self_retweets = 0;       // skipped
  std::uint64_t unlabelled_endpoint = 0;  // skipped
  std::uint64_t accepted = 0;
};

/// Users appear only when they take part in at least one retweet between two
/// distinct labelled users.
RetweetNetwork build_network(std::span<const TweetRecord> records,
                             const std::map<std::string, Foundation>& labels,
                             NetworkBuildStats* stats = nullptr);

/// Maximal subgraph with every node of degree >= k (unweighted), by peeling.
RetweetNetwork k_core(const RetweetNetwork& net, std::size_t k);

/// Share of incident edge weight leading to same-labelled neighbours. nullopt
/// for isolated or unlabelled nodes.
std::optional<double> node_homophily(const RetweetNetwork& net, RetweetNetwork::NodeIndex i);

struct NodeHomophily {
  RetweetNetwork::NodeIndex node;
  Foundation label;
  double h;
};

struct FoundationHomophily {
  std::size_t n_nodes = 0;       // labelled nodes with at least one edge
  std::optional<double> score;   // mean of h over those nodes; nullopt when n_nodes == 0
};

struct HomophilyReport {
  std::array<FoundationHomophily, kNumBasic> by_foundation{};
  std::vector<NodeHomophily> nodes;  // node order
};

/// Node scores computed in parallel (OpenMP); the averages are reduced in node
/// order so the report does not depend on the thread count.
HomophilyReport network_homophily(const RetweetNetwork& net, int threads = 0);

/// Single-threaded reference kept for testing and benchmarking.
HomophilyReport network_homophily_serial(const RetweetNetwork& net);

// File formats ---------------------------------------------------------------

/// src,dst,weight,src_label,dst_label
std::string edge_list_csv(const RetweetNetwork& net);
RetweetNetwork parse_edge_list_csv(std::string_view text, const std::string& stage,
                                   const std::string& source);

/// GEXF 1.2 with a `moral_label` node attribute and edge weights. No layout.
std::string to_gexf(const RetweetNetwork& net);

/// lang,foundation,n_nodes,H,status; H is "NA" with status no_data when a
/// foundation has no nodes.
std::string homophily_csv(const std::map<std::string, HomophilyReport>& by_lang);
std::string node_homophily_csv(const RetweetNetwork& net, const HomophilyReport& report);

}  // namespace moralnet
