#include "moralnet/graph.hpp"

#include "moralnet/error.hpp"
#include "moralnet/io.hpp"
#include "moralnet/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace moralnet {

// ---------------------------------------------------------------------------
// Construction

void RetweetNetwork::Builder::add_node(const std::string& user_id, std::optional<Foundation> label) {
  nodes_[user_id] = label;
}

void RetweetNetwork::Builder::add_interaction(const std::string& a, const std::string& b,
                                              std::uint64_t weight) {
  if (a == b) throw std::invalid_argument(fmt::format("self-loop on '{}'", a));
  if (weight == 0) throw std::invalid_argument("edge weight must be positive");
  nodes_.try_emplace(a);
  nodes_.try_emplace(b);
  weights_[a < b ? std::pair{a, b} : std::pair{b, a}] += weight;
}

RetweetNetwork RetweetNetwork::Builder::build() const {
  RetweetNetwork net;
  std::map<std::string_view, NodeIndex> index;
  for (const auto& [id, label] : nodes_) {
    index.emplace(id, static_cast<NodeIndex>(net.nodes_.size()));
    net.nodes_.push_back({id, label});
  }
  // weights_ is ordered by (name, name), which matches (index, index) order.
  std::vector<std::size_t> degree(net.nodes_.size(), 0);
  for (const auto& [pair, w] : weights_) {
    const Edge e{index.at(pair.first), index.at(pair.second), w};
    net.edges_.push_back(e);
    ++degree[e.u];
    ++degree[e.v];
  }
  net.offsets_.assign(net.nodes_.size() + 1, 0);
  for (std::size_t i = 0; i < degree.size(); ++i) net.offsets_[i + 1] = net.offsets_[i] + degree[i];
  net.adjacency_.resize(net.offsets_.back());
  std::vector<std::size_t> fill(net.offsets_.begin(), net.offsets_.end() - 1);
  for (const auto& e : net.edges_) {
    net.adjacency_[fill[e.u]++] = {e.v, e.weight};
    net.adjacency_[fill[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t i = 0; i < net.nodes_.size(); ++i)
    std::sort(net.adjacency_.begin() + static_cast<std::ptrdiff_t>(net.offsets_[i]),
              net.adjacency_.begin() + static_cast<std::ptrdiff_t>(net.offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  return net;
}

std::optional<RetweetNetwork::NodeIndex> RetweetNetwork::find(std::string_view user_id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), user_id,
                             [](const Node& n, std::string_view id) { return n.user_id < id; });
  if (it == nodes_.end() || it->user_id != user_id) return std::nullopt;
  return static_cast<NodeIndex>(it - nodes_.begin());
}

RetweetNetwork build_network(std::span<const TweetRecord> records,
                             const std::map<std::string, Foundation>& labels,
                             NetworkBuildStats* stats) {
  NetworkBuildStats local;
  RetweetNetwork::Builder builder;
  for (const auto& r : records) {
    if (!r.retweet_of_user_id) continue;
    ++local.retweets;
    const auto& src = r.user_id;
    const auto& dst = *r.retweet_of_user_id;
    if (src == dst) {
      ++local.self_retweets;
      continue;
    }
    const auto a = labels.find(src);
    const auto b = labels.find(dst);
    if (a == labels.end() || b == labels.end()) {
      ++local.unlabelled_endpoint;
      continue;
    }
    builder.add_node(src, a->second);
    builder.add_node(dst, b->second);
    builder.add_interaction(src, dst);
    ++local.accepted;
  }
  if (stats) *stats = local;
  return builder.build();
}

RetweetNetwork k_core(const RetweetNetwork& net, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  const auto n = net.node_count();
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::deque<RetweetNetwork::NodeIndex> queue;
  for (RetweetNetwork::NodeIndex i = 0; i < n; ++i) {
    degree[i] = net.degree(i);
    if (degree[i] < k) {
      removed[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    for (const auto& nb : net.neighbors(i)) {
      if (removed[nb.node]) continue;
      if (--degree[nb.node] < k) {
        removed[nb.node] = true;
        queue.push_back(nb.node);
      }
    }
  }
  RetweetNetwork::Builder builder;
  for (RetweetNetwork::NodeIndex i = 0; i < n; ++i)
    if (!removed[i]) builder.add_node(net.nodes()[i].user_id, net.nodes()[i].label);
  for (const auto& e : net.edges())
    if (!removed[e.u] && !removed[e.v])
      builder.add_interaction(net.nodes()[e.u].user_id, net.nodes()[e.v].user_id, e.weight);
  return builder.build();
}

// ---------------------------------------------------------------------------
// Homophily

std::optional<double> node_homophily(const RetweetNetwork& net, RetweetNetwork::NodeIndex i) {
  const auto& label = net.nodes()[i].label;
  if (!label) return std::nullopt;
  std::uint64_t same = 0;
  std::uint64_t total = 0;
  for (const auto& nb : net.neighbors(i)) {
    total += nb.weight;
    if (net.nodes()[nb.node].label == label) same += nb.weight;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(same) / static_cast<double>(total);
}

namespace {

HomophilyReport reduce(const RetweetNetwork& net, const std::vector<std::optional<double>>& h) {
  HomophilyReport report;
  std::array<double, kNumBasic> sums{};
  for (RetweetNetwork::NodeIndex i = 0; i < net.node_count(); ++i) {
    if (!h[i]) continue;
    const Foundation f = *net.nodes()[i].label;
    report.nodes.push_back({i, f, *h[i]});
    sums[index_of(f)] += *h[i];
    ++report.by_foundation[index_of(f)].n_nodes;
  }
  for (std::size_t j = 0; j < kNumBasic; ++j) {
    auto& fh = report.by_foundation[j];
    if (fh.n_nodes > 0) fh.score = sums[j] / static_cast<double>(fh.n_nodes);
  }
  return report;
}

}  // namespace

HomophilyReport network_homophily(const RetweetNetwork& net, int threads) {
  std::vector<std::optional<double>> h(net.node_count());
  const auto n = static_cast<std::ptrdiff_t>(net.node_count());
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::ptrdiff_t i = 0; i < n; ++i)
    h[static_cast<std::size_t>(i)] = node_homophily(net, static_cast<RetweetNetwork::NodeIndex>(i));
  return reduce(net, h);
}

HomophilyReport network_homophily_serial(const RetweetNetwork& net) {
  std::vector<std::optional<double>> h(net.node_count());
  for (RetweetNetwork::NodeIndex i = 0; i < net.node_count(); ++i) h[i] = node_homophily(net, i);
  return reduce(net, h);
}

// ---------------------------------------------------------------------------
// File formats

namespace {

std::string label_name(const std::optional<Foundation>& l) {
  return l ? std::string(to_string(*l)) : std::string();
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string edge_list_csv(const RetweetNetwork& net) {
  io::CsvWriter w({"src", "dst", "weight", "src_label", "dst_label"});
  for (const auto& e : net.edges()) {
    const auto& a = net.nodes()[e.u];
    const auto& b = net.nodes()[e.v];
    w.add_row({a.user_id, b.user_id, std::to_string(e.weight), label_name(a.label), label_name(b.label)});
  }
  return w.str();
}

RetweetNetwork parse_edge_list_csv(std::string_view text, const std::string& stage,
                                   const std::string& source) {
  const auto table = io::parse_csv(text, stage, source);
  std::size_t c_src, c_dst, c_w, c_sl, c_dl;
  try {
    c_src = table.column("src");
    c_dst = table.column("dst");
    c_w = table.column("weight");
    c_sl = table.column("src_label");
    c_dl = table.column("dst_label");
  } catch (const std::out_of_range& e) {
    throw DataError(stage, source, 1, e.what());
  }
  RetweetNetwork::Builder builder;
  std::map<std::string, std::optional<Foundation>> labels;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.line_numbers[r];
    auto label_of = [&](const std::string& user, const std::string& name) {
      std::optional<Foundation> l;
      if (!name.empty()) {
        l = parse_foundation(name);
        if (!l || !is_basic(*l)) throw DataError(stage, source, line, fmt::format("bad label '{}'", name));
      }
      auto [it, inserted] = labels.emplace(user, l);
      if (!inserted && it->second != l)
        throw DataError(stage, source, line, fmt::format("conflicting labels for '{}'", user));
    };
    label_of(row[c_src], row[c_sl]);
    label_of(row[c_dst], row[c_dl]);
    try {
      std::size_t used = 0;
      const auto w = std::stoull(row[c_w], &used);
      if (used != row[c_w].size()) throw std::invalid_argument("weight is not an integer");
      builder.add_interaction(row[c_src], row[c_dst], w);
    } catch (const std::logic_error& e) {
      throw DataError(stage, source, line, e.what());
    }
  }
  for (const auto& [user, l] : labels) builder.add_node(user, l);
  return builder.build();
}

std::string to_gexf(const RetweetNetwork& net) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<gexf xmlns=\"http://gexf.net/1.2\" version=\"1.2\">\n"
      "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n"
      "    <attributes class=\"node\">\n"
      "      <attribute id=\"0\" title=\"moral_label\" type=\"string\"/>\n"
      "    </attributes>\n"
      "    <nodes>\n";
  for (const auto& n : net.nodes()) {
    const auto id = xml_escape(n.user_id);
    out += fmt::format("      <node id=\"{0}\" label=\"{0}\">\n", id);
    out += fmt::format("        <attvalues><attvalue for=\"0\" value=\"{}\"/></attvalues>\n",
                       n.label ? to_string(*n.label) : std::string_view("none"));
    out += "      </node>\n";
  }
  out += "    </nodes>\n    <edges>\n";
  for (std::size_t i = 0; i < net.edges().size(); ++i) {
    const auto& e = net.edges()[i];
    out += fmt::format("      <edge id=\"{}\" source=\"{}\" target=\"{}\" weight=\"{}\"/>\n", i,
                       xml_escape(net.nodes()[e.u].user_id), xml_escape(net.nodes()[e.v].user_id),
                       e.weight);
  }
  out += "    </edges>\n  </graph>\n</gexf>\n";
  return out;
}

std::string homophily_csv(const std::map<std::string, HomophilyReport>& by_lang) {
  io::CsvWriter w({"lang", "foundation", "n_nodes", "H", "status"});
  for (const auto& [lang, report] : by_lang)
    for (Foundation f : kBasicFoundations) {
      const auto& fh = report.by_foundation[index_of(f)];
      w.add_row({lang, std::string(to_string(f)), std::to_string(fh.n_nodes),
                 fh.score ? io::format_double(*fh.score) : "NA", fh.score ? "ok" : "no_data"});
    }
  return w.str();
}

std::string node_homophily_csv(const RetweetNetwork& net, const HomophilyReport& report) {
  io::CsvWriter w({"user_id", "label", "h"});
  for (const auto& n : report.nodes)
    w.add_row({net.nodes()[n.node].user_id, std::string(to_string(n.label)), io::format_double(n.h)});
  return w.str();
}

}  // namespace moralnet
