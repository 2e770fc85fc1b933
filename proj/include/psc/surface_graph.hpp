#pragma once

#include <string>
#include <utility>
#include <vector>

#include "psc/geometry.hpp"

namespace psc {

struct GraphSpec {
  std::vector<std::pair<int, Vec2>> qubits;  // (id, position)
  std::vector<std::pair<int, int>> edges;    // by id
};

// Planar qubit graph with a straight-line embedding. Vertices carry degree
// 2, 3 or 4; faces are derived from the angular rotation system and the
// outer face is the unique clockwise-traced cycle.
class SurfaceGraph {
 public:
  struct Face {
    std::vector<int> cycle;  // vertex indices in traced order (interior ccw)
    bool outer = false;
    double area2 = 0.0;
    double circumference = 0.0;
    std::string key;  // comma-joined sorted qubit ids
  };

  static SurfaceGraph build(const GraphSpec& spec);
  static GraphSpec parse(const std::string& text);
  static SurfaceGraph load(const std::string& path);
  std::string serialize() const;  // normalized: qubits by id, edges lexicographic

  int num_qubits() const { return (int)ids_.size(); }
  int qubit_id(int idx) const { return ids_[idx]; }
  int index_of(int id) const;  // -1 if absent
  const Vec2& pos(int idx) const { return pos_[idx]; }
  int degree(int idx) const { return (int)rot_[idx].size(); }
  // Neighbors sorted by edge angle, ccw.
  const std::vector<int>& rotation(int idx) const { return rot_[idx]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool edge_exists(int a, int b) const;

  const std::vector<Face>& faces() const { return faces_; }
  int outer_face() const { return outer_; }
  int num_stabilizers() const;
  int num_sigma() const;
  void check_euler() const;
  // N_Q - N_S == N_sigma / 2 - 1 for a disk.
  bool counting_law_holds() const;

 private:
  std::vector<int> ids_;
  std::vector<Vec2> pos_;
  std::vector<std::vector<int>> rot_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Face> faces_;
  int outer_ = -1;

  void trace_faces();
};

}  // namespace psc
