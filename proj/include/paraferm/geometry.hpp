#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace paraferm {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Rectangular grid of rhombic plaquettes.  Vertices sit at i*e1 + j*e2 with
/// e1 = (1,0) and e2 = (cos alpha, sin alpha), so every face is a unit rhombus
/// with interior angles alpha and pi-alpha.  At alpha = pi/2 this is the unit
/// square lattice.
struct Edge {
  int v0, v1;  // canonical orientation: v0 -> v1 along +e1 or +e2
};

struct Plaquette {
  std::array<int, 4> edge;  // CCW order: bottom, right, top, left
  std::array<int, 4> sign;  // +1 if traversal follows the canonical edge direction
  int row, col;
};

struct RhombicDomain {
  int rows = 0, cols = 0;
  double alpha = 0.0;
  std::vector<cplx> vertices;
  std::vector<Edge> edges;
  std::vector<cplx> midpoints;
  std::vector<Plaquette> plaquettes;
  // faces on each side of an edge, -1 if outside the domain.
  // side 0 = CCW-left of the canonical edge direction, side 1 = right.
  std::vector<std::array<int, 2>> edge_faces;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_faces() const { return static_cast<int>(plaquettes.size()); }

  int vertex_index(int i, int j) const { return j * (cols + 1) + i; }
  // edge along e1 from (i,j) to (i+1,j); i in [0,cols), j in [0,rows]
  int h_edge(int i, int j) const { return j * cols + i; }
  // edge along e2 from (i,j) to (i,j+1); i in [0,cols], j in [0,rows)
  int v_edge(int i, int j) const { return (rows + 1) * cols + j * (cols + 1) + i; }
  bool edge_is_h(int e) const { return e < (rows + 1) * cols; }
  int face_index(int r, int c) const { return r * cols + c; }

  cplx edge_vector(int e) const { return vertices[edges[e].v1] - vertices[edges[e].v0]; }
  bool is_interior_edge(int e) const { return edge_faces[e][0] >= 0 && edge_faces[e][1] >= 0; }
  bool is_boundary_edge(int e) const { return !is_interior_edge(e); }
  // unit normal of edge e pointing into face f (f must be adjacent)
  cplx normal_into_face(int e, int f) const;
  bool face_touches_boundary(int f) const;
};

RhombicDomain build_domain(int rows, int cols, double alpha);

/// How a curve crosses one plaquette: a quarter-turn around one corner of the
/// rhombus (left or right), straight through, or not at all.
enum class TurnKind { left, right, straight, none };

struct Turn {
  TurnKind kind = TurnKind::none;
  bool around_acute = true;  // corner the arc bends around: interior angle beta vs pi-beta
};

/// Winding-angle increment for one plaquette crossing.  Turning around a
/// corner of interior angle beta contributes +-beta, around the complementary
/// corner +-(pi-beta); straight-through contributes 0.  beta defaults to the
/// embedding angle alpha.
double winding_increment(Turn turn, double alpha, double beta);
inline double winding_increment(Turn turn, double alpha) { return winding_increment(turn, alpha, alpha); }

/// Map from edge-midpoint ids to complex observable values.
struct ObservableField {
  double spin = 0.0;
  int origin_edge = -1;
  std::vector<cplx> value;
  std::vector<char> defined;

  cplx at(int midpoint) const;
  bool has(int midpoint) const { return midpoint >= 0 && midpoint < (int)defined.size() && defined[midpoint]; }
};

/// Discrete contour sum around one face: sum over the four edges, traversed
/// counter-clockwise, of F(midpoint) * (z_j - z_i).
cplx contour_sum(const ObservableField& field, int face, const RhombicDomain& dom);

// wrap to (-pi, pi]
double wrap_angle(double a);

std::string domain_to_json(const RhombicDomain& dom);

}  // namespace paraferm
