#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "psc/geometry.hpp"
#include "psc/surface_graph.hpp"

namespace psc {

// Majorana decoration of a surface graph: one diamond of four corners per
// qubit. Corner c of qubit q has id 4q+c, ordered ccw by slot angle with c0
// at the smallest angle. l-edge k joins corners k and k+1 (mod 4) of one
// diamond; L-links pair corners of adjacent diamonds (at most one per
// corner). Unpaired corners are the sigma anyons.
//
// The geometric slot directions are frozen at decoration time; surgeries
// (link deletion/addition, elementary moves) only rewire the pairing, so the
// object stays a purely combinatorial planar map afterwards.
class DecoratedGraph {
 public:
  struct Face {
    std::vector<int> corners;  // traced cycle (interior faces ccw)
    bool diamond = false;
    bool outer = false;
    std::vector<int> qubit_ids;  // sorted unique original ids
    std::string key;             // "q1,q2,..." or "d<id>" for diamonds
  };

  struct MoveSurgeryResult;

  static DecoratedGraph decorate(const SurfaceGraph& sg);

  int num_qubits() const { return nq_; }
  int num_corners() const { return 4 * nq_; }
  int qubit_id(int q) const { return qubit_ids_[q]; }
  int qubit_index_of_id(int id) const;
  const Vec2& qubit_pos(int q) const { return qubit_pos_[q]; }
  int corner_qubit(int c) const { return c / 4; }
  int corner_index(int c) const { return c % 4; }
  Vec2 corner_dir(int c) const { return corner_dir_[c]; }
  Vec2 corner_pos(int c) const { return qubit_pos_[c / 4] + corner_dir_[c] * delta_; }
  double delta() const { return delta_; }

  int link_of(int c) const { return link_of_[c]; }
  bool unpaired(int c) const { return link_of_[c] < 0; }
  std::vector<int> sigmas() const;
  int num_sigma() const;
  int degree(int q) const;
  bool g_edge_exists(int qa, int qb) const;
  // Corner of q whose slot points at the compass letter (E/N/W/S), by the
  // frozen geometric direction. SlotMissing if no corner is close.
  int corner_by_compass(int q, char compass) const;

  // Pauli letter carried by l-edge k of any diamond: even k -> Z, odd -> X.
  static char l_letter(int k) { return (k % 2 == 0) ? 'Z' : 'X'; }

  // Edge ids: l-edges are 0..4n-1 (id = 4q+k joins corners 4q+k, 4q+(k+1)%4);
  // L-links follow, in sorted canonical (low corner, high corner) order.
  int num_l_edges() const { return 4 * nq_; }
  int num_edges() const { return 4 * nq_ + (int)links_.size(); }
  const std::vector<std::pair<int, int>>& links() const { return links_; }
  bool is_l_edge(int edge_id) const { return edge_id < 4 * nq_; }
  std::pair<int, int> edge_corners(int edge_id) const;  // canonical direction
  int edge_between(int ca, int cb) const;               // -1 if none

  const std::vector<Face>& faces() const { return faces_; }
  int outer_face() const { return outer_; }
  int face_at(int c_from, int c_to) const;  // face on the left of the dart
  // The single non-diamond face incident to a corner's outward side.
  int big_face_at(int c) const;
  std::vector<int> stabilizer_faces() const;
  int face_by_key(const std::string& key) const;  // -1 if absent
  int enclosing_plaquette(int sigma_corner) const;  // -1 if it is the outer face

  int num_stabilizers() const;
  void check_euler() const;
  bool counting_law_holds() const;

  // Surgeries. All return modified copies and retrace faces.
  DecoratedGraph delete_L_link(int ca, int cb) const;
  DecoratedGraph add_L_link(int ca, int cb) const;
  // Validation and rewiring of an elementary anyon move; the caller derives
  // the movement rotation from the returned plaquette path.
  MoveSurgeryResult rewire_move(int anyon_corner, int target_corner) const;

  std::string canonical_dump() const;
  uint64_t structure_hash() const;
  bool same_structure(const DecoratedGraph& o) const;

 private:
  int nq_ = 0;
  std::vector<int> qubit_ids_;
  std::vector<Vec2> qubit_pos_;
  std::vector<Vec2> corner_dir_;
  std::vector<int> link_of_;
  std::vector<std::pair<int, int>> links_;
  std::vector<Face> faces_;
  std::vector<int> dart_face_;  // dart id -> face index
  int outer_ = -1;
  double delta_ = 0.25;

  // Darts: each corner has up to 3 (to prev corner, to next corner, to link
  // partner); dart id = 3*corner + {0:prev, 1:link, 2:next}.
  int dart_id(int c_from, int c_to) const;
  void rebuild_links();
  void retrace_faces();
  void relocate_outer(const DecoratedGraph& old);
  void validate_map() const;
};

struct DecoratedGraph::MoveSurgeryResult {
  DecoratedGraph graph;
  std::vector<int> path_corners;  // anyon corner ... target corner, along the plaquette
};

}  // namespace psc
