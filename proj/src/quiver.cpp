#include "wstruct/quiver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wstruct {

Quiver Quiver::make(std::vector<std::string> vertices, std::vector<std::pair<int, int>> arrows) {
  std::set<std::string> seen;
  for (const auto& v : vertices)
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate vertex label '" + v + "'");
  const int n = static_cast<int>(vertices.size());
  for (const auto& [s, t] : arrows)
    if (s < 0 || s >= n || t < 0 || t >= n)
      throw std::invalid_argument("arrow endpoint out of range");

  // Kahn's algorithm; leftover vertices lie on a cycle.
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (const auto& a : arrows) ++indeg[static_cast<std::size_t>(a.second)];
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
  std::size_t done = 0;
  while (done < queue.size()) {
    const int v = queue[done++];
    for (const auto& a : arrows)
      if (a.first == v && --indeg[static_cast<std::size_t>(a.second)] == 0) queue.push_back(a.second);
  }
  if (done != static_cast<std::size_t>(n)) {
    std::string where;
    for (int v = 0; v < n; ++v)
      if (indeg[static_cast<std::size_t>(v)] > 0) {
        where = vertices[static_cast<std::size_t>(v)];
        break;
      }
    throw std::invalid_argument("quiver has a directed cycle (through vertex '" + where + "')");
  }

  Quiver q;
  q.vertices_ = std::move(vertices);
  q.arrows_ = std::move(arrows);
  q.enumerate_paths();
  return q;
}

Quiver Quiver::from_labels(std::vector<std::string> vertices,
                           const std::vector<std::pair<std::string, std::string>>& arrows) {
  std::vector<std::pair<int, int>> idx;
  for (const auto& [s, t] : arrows) {
    auto find = [&](const std::string& label) {
      auto it = std::find(vertices.begin(), vertices.end(), label);
      if (it == vertices.end()) throw std::invalid_argument("arrow references unknown vertex '" + label + "'");
      return static_cast<int>(it - vertices.begin());
    };
    idx.emplace_back(find(s), find(t));
  }
  return make(std::move(vertices), std::move(idx));
}

Quiver Quiver::single_vertex() { return make({"k"}, {}); }

Quiver Quiver::linear_a(int n) {
  std::vector<std::string> v;
  std::vector<std::pair<int, int>> a;
  for (int i = 0; i < n; ++i) v.push_back(std::to_string(i + 1));
  for (int i = 0; i + 1 < n; ++i) a.emplace_back(i, i + 1);
  return make(std::move(v), std::move(a));
}

int Quiver::vertex_index(const std::string& label) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), label);
  if (it == vertices_.end()) throw std::invalid_argument("unknown vertex '" + label + "'");
  return static_cast<int>(it - vertices_.begin());
}

void Quiver::enumerate_paths() {
  const std::size_t n = vertices_.size();
  paths_.clear();
  for (std::size_t v = 0; v < n; ++v) paths_.push_back(Path{static_cast<int>(v), static_cast<int>(v), {}});
  // Breadth-first by length; terminates because the quiver is acyclic.
  std::size_t frontier_begin = 0, frontier_end = paths_.size();
  while (frontier_begin < frontier_end) {
    for (std::size_t k = frontier_begin; k < frontier_end; ++k)
      for (std::size_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].first == paths_[k].end) {
          Path p = paths_[k];
          p.arrows.push_back(static_cast<int>(a));
          p.end = arrows_[a].second;
          paths_.push_back(std::move(p));
        }
    frontier_begin = frontier_end;
    frontier_end = paths_.size();
  }

  between_.assign(n * n, {});
  local_.assign(paths_.size(), 0);
  for (std::size_t id = 0; id < paths_.size(); ++id) {
    auto& bucket = between_[static_cast<std::size_t>(paths_[id].start) * n + static_cast<std::size_t>(paths_[id].end)];
    local_[id] = static_cast<int>(bucket.size());
    bucket.push_back(static_cast<int>(id));
  }

  const std::size_t np = paths_.size();
  concat_.assign(np * np, -1);
  for (std::size_t q = 0; q < np; ++q)
    for (std::size_t p = 0; p < np; ++p) {
      if (paths_[q].end != paths_[p].start) continue;
      std::vector<int> joined = paths_[q].arrows;
      joined.insert(joined.end(), paths_[p].arrows.begin(), paths_[p].arrows.end());
      for (const int id : between_[static_cast<std::size_t>(paths_[q].start) * n + static_cast<std::size_t>(paths_[p].end)])
        if (paths_[static_cast<std::size_t>(id)].arrows == joined) {
          concat_[q * np + p] = id;
          break;
        }
    }
}

std::string Quiver::path_label(int path_id) const {
  const Path& p = path(path_id);
  if (p.arrows.empty()) return "e:" + vertices_[static_cast<std::size_t>(p.start)];
  std::string s = "p:";
  for (std::size_t k = 0; k < p.arrows.size(); ++k) s += (k ? "." : "") + std::string("a") + std::to_string(p.arrows[k]);
  return s;
}

int Quiver::path_from_label(const std::string& label) const {
  for (std::size_t id = 0; id < paths_.size(); ++id)
    if (path_label(static_cast<int>(id)) == label) return static_cast<int>(id);
  throw std::invalid_argument("unknown path label '" + label + "'");
}

}  // namespace wstruct
