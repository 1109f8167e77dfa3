#include "lexalign/reorder.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <functional>
#include <queue>
#include <set>

#include "lexalign/error.hpp"
#include "lexalign/files.hpp"

namespace lexalign {

void OrderingStats::observe(const std::string& head, const std::string& first,
                            const std::string& second) {
  PairCount& fwd = counts_[Key{head, first, second}];
  fwd.before += 1;
  fwd.total += 1;
  // Same entry when first == second, so a same-label pair ends at
  // before == total / 2.
  counts_[Key{head, second, first}].total += 1;
}

std::optional<double> OrderingStats::probability(const std::string& head, const std::string& li,
                                                 const std::string& lj) const {
  auto it = counts_.find(Key{head, li, lj});
  if (it == counts_.end()) return std::nullopt;
  return static_cast<double>(it->second.before) / static_cast<double>(it->second.total);
}

void OrderingStats::merge(const OrderingStats& other) {
  for (const auto& [key, count] : other.counts_) {
    PairCount& mine = counts_[key];
    mine.before += count.before;
    mine.total += count.total;
  }
}

void OrderingStats::save(const std::filesystem::path& path) const {
  std::vector<std::string> rows;
  rows.reserve(counts_.size());
  for (const auto& [key, count] : counts_) {
    const auto& [head, li, lj] = key;
    rows.push_back(head + "\t" + li + "\t" + lj + "\t" + std::to_string(count.before) + "\t" +
                   std::to_string(count.total));
  }
  write_lines(path, rows);
}

OrderingStats OrderingStats::load(const std::filesystem::path& path) {
  OrderingStats stats;
  std::size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (line.empty()) continue;
    auto where = [&] { return path.string() + ":" + std::to_string(lineno); };
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab = line.find('\t'); tab != std::string::npos;
         start = tab + 1, tab = line.find('\t', start))
      fields.push_back(line.substr(start, tab - start));
    fields.push_back(line.substr(start));
    if (fields.size() != 5) fail(where() + ": expected 5 tab-separated fields");
    PairCount count;
    auto parse = [&](const std::string& text, std::uint64_t& out) {
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
      if (ec != std::errc() || ptr != text.data() + text.size())
        fail(where() + ": bad count '" + text + "'");
    };
    parse(fields[3], count.before);
    parse(fields[4], count.total);
    if (count.before > count.total) fail(where() + ": before exceeds total");
    if (!stats.counts_.emplace(Key{fields[0], fields[1], fields[2]}, count).second)
      fail(where() + ": duplicate ordering entry");
  }
  for (const auto& [key, count] : stats.counts_) {
    const auto& [head, li, lj] = key;
    auto mirror = stats.counts_.find(Key{head, lj, li});
    if (mirror == stats.counts_.end() || mirror->second.total != count.total ||
        mirror->second.before + count.before != count.total)
      fail(path.string() + ": asymmetric counts for (" + head + ", " + li + ", " + lj + ")");
  }
  return stats;
}

std::string coarse_label(const std::string& deprel) {
  return deprel.substr(0, deprel.find(':'));
}

namespace {

std::string family_label(const DepNode& node, bool coarse) {
  return coarse ? coarse_label(node.deprel) : node.deprel;
}

// (surface position, label) for head + direct children of `id`, or empty
// when the node is a leaf.
std::vector<std::pair<int, std::string>> family_elements(const DependencyTree& tree, int id,
                                                         bool coarse) {
  const auto& kids = tree.children(id);
  if (kids.empty()) return {};
  std::vector<std::pair<int, std::string>> elems;
  elems.reserve(kids.size() + 1);
  elems.emplace_back(id, family_label(tree.node(id), coarse));
  for (int child : kids) elems.emplace_back(child, family_label(tree.node(child), coarse));
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

OrderingStats estimate_ordering_stats(const std::vector<DependencyTree>& treebank, bool coarse) {
  if (treebank.empty()) fail("cannot estimate ordering statistics from an empty treebank");
  std::vector<OrderingStats> shards(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < treebank.size(); ++t) {
    OrderingStats& shard = shards[static_cast<std::size_t>(omp_get_thread_num())];
    const DependencyTree& tree = treebank[t];
    for (const DepNode& node : tree.nodes()) {
      auto elems = family_elements(tree, node.id, coarse);
      const std::string head = family_label(node, coarse);
      for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
          shard.observe(head, elems[i].second, elems[j].second);
    }
  }
  OrderingStats stats;
  for (const OrderingStats& shard : shards) stats.merge(shard);
  return stats;
}

std::vector<std::pair<std::string, std::string>> extract_constraints(
    const std::string& head_label, const std::vector<OrderElement>& elements,
    const OrderingStats& stats) {
  std::set<std::string> labels;
  for (const OrderElement& e : elements) labels.insert(e.label);
  std::vector<std::pair<std::string, std::string>> constraints;
  for (auto i = labels.begin(); i != labels.end(); ++i)
    for (auto j = std::next(i); j != labels.end(); ++j) {
      auto p = stats.probability(head_label, *i, *j);
      if (!p) continue;
      if (*p >= 0.5)
        constraints.emplace_back(*i, *j);
      else
        constraints.emplace_back(*j, *i);
    }
  return constraints;
}

std::vector<std::size_t> solve_order(
    const std::vector<OrderElement>& elements,
    const std::vector<std::pair<std::string, std::string>>& constraints) {
  const std::size_t n = elements.size();
  std::vector<std::set<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  auto add_edge = [&](std::size_t from, std::size_t to) {
    if (succ[from].insert(to).second) ++indegree[to];
  };

  for (const auto& [first, second] : constraints)
    for (std::size_t i = 0; i < n; ++i) {
      if (elements[i].label != first) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && elements[j].label == second) add_edge(i, j);
    }
  // Equal-labeled elements keep their original relative order.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && elements[i].label == elements[j].label &&
          elements[i].position < elements[j].position)
        add_edge(i, j);

  using Entry = std::pair<std::size_t, std::size_t>;  // (position, index)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.emplace(elements[i].position, i);

  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t i = ready.top().second;
    ready.pop();
    order.push_back(i);
    for (std::size_t j : succ[i])
      if (--indegree[j] == 0) ready.emplace(elements[j].position, j);
  }
  if (order.size() < n) {
    // Contradictory constraints: fall back to the original order.
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
  }
  return order;
}

std::vector<int> reorder_tree(const DependencyTree& tree, const OrderingStats& stats,
                              bool coarse) {
  std::function<std::vector<int>(int)> linearize = [&](int id) -> std::vector<int> {
    const auto& kids = tree.children(id);
    if (kids.empty()) return {id};

    struct Block {
      int position;
      std::string label;
      std::vector<int> ids;
    };
    std::vector<Block> blocks;
    blocks.reserve(kids.size() + 1);
    blocks.push_back({id, family_label(tree.node(id), coarse), {id}});
    for (int child : kids)
      blocks.push_back({child, family_label(tree.node(child), coarse), linearize(child)});
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return a.position < b.position; });

    std::vector<OrderElement> elements;
    elements.reserve(blocks.size());
    for (const Block& b : blocks)
      elements.push_back({b.label, static_cast<std::size_t>(b.position)});
    const auto constraints =
        extract_constraints(family_label(tree.node(id), coarse), elements, stats);
    const auto perm = solve_order(elements, constraints);

    std::vector<int> out;
    out.reserve(tree.size());
    for (std::size_t k : perm)
      out.insert(out.end(), blocks[k].ids.begin(), blocks[k].ids.end());
    return out;
  };
  return linearize(tree.root());
}

std::string reorder_to_line(const DependencyTree& tree, const OrderingStats& stats, bool coarse) {
  std::string line;
  for (int id : reorder_tree(tree, stats, coarse)) {
    if (!line.empty()) line += ' ';
    line += tree.node(id).form;
  }
  return line;
}

std::vector<std::string> reorder_corpus(const std::vector<DependencyTree>& treebank,
                                        const OrderingStats& stats, bool coarse) {
  std::vector<std::string> out(treebank.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < treebank.size(); ++i)
    out[i] = reorder_to_line(treebank[i], stats, coarse);
  return out;
}

}  // namespace lexalign
