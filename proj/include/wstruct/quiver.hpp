#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wstruct {

/// A directed path: a sequence of composable arrows from `start` to `end`.
/// Trivial paths have no arrows and start == end.
struct Path {
  int start = 0;
  int end = 0;
  std::vector<int> arrows;

  std::size_t length() const { return arrows.size(); }
};

/// Finite acyclic quiver with an enumerated path basis.
///
/// Paths are numbered with the trivial path e_v at index v, followed by the
/// nontrivial paths in order of length. Arrow (s, t) points from s to t.
class Quiver {
 public:
  Quiver() = default;

  /// Throws std::invalid_argument on duplicate labels, bad indices or a cycle.
  static Quiver make(std::vector<std::string> vertices, std::vector<std::pair<int, int>> arrows);
  static Quiver from_labels(std::vector<std::string> vertices,
                            const std::vector<std::pair<std::string, std::string>>& arrows);
  /// One vertex, no arrows: the path algebra is the ground field.
  static Quiver single_vertex();
  /// Linearly oriented A_n: 1 -> 2 -> ... -> n.
  static Quiver linear_a(int n);

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }
  int vertex_index(const std::string& label) const;

  std::size_t path_count() const { return paths_.size(); }
  const Path& path(int id) const { return paths_[static_cast<std::size_t>(id)]; }
  /// Path ids from `from` to `to`, in id order.
  const std::vector<int>& paths_between(int from, int to) const {
    return between_[static_cast<std::size_t>(from) * vertices_.size() + static_cast<std::size_t>(to)];
  }
  /// Position of a path inside paths_between(start, end).
  int local_index(int path_id) const { return local_[static_cast<std::size_t>(path_id)]; }
  /// Id of "q followed by p", or -1 when q does not end where p starts.
  int concat(int q, int p) const { return concat_[static_cast<std::size_t>(q) * paths_.size() + static_cast<std::size_t>(p)]; }

  /// "e:<vertex>" for trivial paths, "p:a0.a3" (arrow indices) otherwise.
  std::string path_label(int path_id) const;
  /// Throws std::invalid_argument for unknown labels.
  int path_from_label(const std::string& label) const;

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

 private:
  void enumerate_paths();

  std::vector<std::string> vertices_;
  std::vector<std::pair<int, int>> arrows_;
  std::vector<Path> paths_;
  std::vector<std::vector<int>> between_;
  std::vector<int> local_;
  std::vector<int> concat_;
};

}  // namespace wstruct
