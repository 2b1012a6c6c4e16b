#include "morseq/flow_poset.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "morseq/errors.hpp"

namespace morseq {

namespace {

struct Indexed {
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> out;
};

Indexed index_graph(const FlowDigraph& g) {
  g.validate();
  Indexed ix;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) ix.index.emplace(g.vertices[i], i);
  ix.out.resize(g.vertices.size());
  for (const auto& [a, b] : g.edges) ix.out[ix.index.at(a)].push_back(ix.index.at(b));
  return ix;
}

std::string join(const std::vector<std::string>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? " -> " : "") + ids[i];
  return s;
}

}  // namespace

void FlowDigraph::validate() const {
  std::set<std::string> seen;
  for (const auto& v : vertices) {
    if (!seen.insert(v).second) throw InvalidInput("duplicate vertex id '" + v + "'");
  }
  for (const auto& [a, b] : edges) {
    if (!seen.contains(a)) throw InvalidInput("edge references unknown vertex '" + a + "'");
    if (!seen.contains(b)) throw InvalidInput("edge references unknown vertex '" + b + "'");
  }
}

FlowDigraph FlowDigraph::reversed() const {
  FlowDigraph r{vertices, {}};
  for (const auto& [a, b] : edges) r.edges.emplace_back(b, a);
  return r;
}

std::map<std::string, std::size_t> Filtration::layer_map() const {
  std::map<std::string, std::size_t> m;
  for (std::size_t p = 0; p < layers.size(); ++p) {
    for (const auto& id : layers[p]) m.emplace(id, p);
  }
  return m;
}

std::size_t Filtration::layer_of(const std::string& id) const {
  for (std::size_t p = 0; p < layers.size(); ++p) {
    if (std::find(layers[p].begin(), layers[p].end(), id) != layers[p].end()) return p;
  }
  throw InvalidInput("vertex '" + id + "' is not in the filtration");
}

std::optional<std::vector<std::string>> detect_quasicycle(const FlowDigraph& g) {
  const Indexed ix = index_graph(g);
  const std::size_t n = g.vertices.size();
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::size_t> stack;
  std::optional<std::vector<std::string>> cycle;

  std::function<bool(std::size_t)> visit = [&](std::size_t u) {
    mark[u] = Mark::Grey;
    stack.push_back(u);
    for (auto w : ix.out[u]) {
      if (mark[w] == Mark::Grey) {
        auto from = std::find(stack.begin(), stack.end(), w);
        std::vector<std::string> c;
        for (auto it = from; it != stack.end(); ++it) c.push_back(g.vertices[*it]);
        cycle = std::move(c);
        return true;
      }
      if (mark[w] == Mark::White && visit(w)) return true;
    }
    stack.pop_back();
    mark[u] = Mark::Black;
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (mark[u] == Mark::White && visit(u)) break;
  }
  return cycle;
}

Filtration build_filtration(const FlowDigraph& g) {
  if (auto cycle = detect_quasicycle(g)) {
    throw NotFilterable("flow relation has a quasicycle of length " + std::to_string(cycle->size()) + ": " +
                        join(*cycle) + " -> " + cycle->front());
  }
  const Indexed ix = index_graph(g);
  const std::size_t n = g.vertices.size();

  // Kahn's order, then longest path ending at each vertex.
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& outs : ix.out) {
    for (auto w : outs) ++indeg[w];
  }
  std::vector<std::size_t> order;
  for (std::size_t u = 0; u < n; ++u) {
    if (indeg[u] == 0) order.push_back(u);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (auto w : ix.out[order[k]]) {
      if (--indeg[w] == 0) order.push_back(w);
    }
  }
  std::vector<std::size_t> level(n, 0);
  for (auto u : order) {
    for (auto w : ix.out[u]) level[w] = std::max(level[w], level[u] + 1);
  }

  Filtration f;
  const std::size_t top = n == 0 ? 0 : *std::max_element(level.begin(), level.end());
  f.layers.resize(n == 0 ? 0 : top + 1);
  for (std::size_t u = 0; u < n; ++u) f.layers[level[u]].push_back(g.vertices[u]);
  return f;
}

bool is_valid_filtration(const FlowDigraph& g, const Filtration& f) {
  const Indexed ix = index_graph(g);
  const auto layer = f.layer_map();
  std::size_t members = 0;
  for (const auto& l : f.layers) members += l.size();
  if (members != g.vertices.size() || layer.size() != members) return false;
  for (const auto& v : g.vertices) {
    if (!layer.contains(v)) return false;
  }
  // Strict increase along edges implies strict increase along paths, so no
  // two members of one layer are comparable.
  return std::all_of(g.edges.begin(), g.edges.end(),
                     [&](const auto& e) { return layer.at(e.first) < layer.at(e.second); });
}

}  // namespace morseq
