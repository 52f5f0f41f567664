#include "paraferm/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace paraferm {

double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

RhombicDomain build_domain(int rows, int cols, double alpha) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("build_domain: rows and cols must be >= 1");
  if (!(alpha > 0.0 && alpha < kPi)) throw std::invalid_argument("build_domain: alpha must lie in (0, pi)");

  RhombicDomain d;
  d.rows = rows;
  d.cols = cols;
  d.alpha = alpha;

  const cplx e1(1.0, 0.0);
  const cplx e2(std::cos(alpha), std::sin(alpha));

  d.vertices.resize((rows + 1) * (cols + 1));
  for (int j = 0; j <= rows; ++j)
    for (int i = 0; i <= cols; ++i)
      d.vertices[d.vertex_index(i, j)] = double(i) * e1 + double(j) * e2;

  const int n_h = (rows + 1) * cols;
  const int n_v = (cols + 1) * rows;
  d.edges.resize(n_h + n_v);
  d.edge_faces.assign(n_h + n_v, {-1, -1});
  for (int j = 0; j <= rows; ++j)
    for (int i = 0; i < cols; ++i) {
      int e = d.h_edge(i, j);
      d.edges[e] = {d.vertex_index(i, j), d.vertex_index(i + 1, j)};
      // left of +e1 is the face above, right the face below
      d.edge_faces[e][0] = (j < rows) ? d.face_index(j, i) : -1;
      d.edge_faces[e][1] = (j > 0) ? d.face_index(j - 1, i) : -1;
    }
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i <= cols; ++i) {
      int e = d.v_edge(i, j);
      d.edges[e] = {d.vertex_index(i, j), d.vertex_index(i, j + 1)};
      // left of +e2 is the face at column i-1, right the face at column i
      d.edge_faces[e][0] = (i > 0) ? d.face_index(j, i - 1) : -1;
      d.edge_faces[e][1] = (i < cols) ? d.face_index(j, i) : -1;
    }

  d.midpoints.resize(d.edges.size());
  for (size_t e = 0; e < d.edges.size(); ++e)
    d.midpoints[e] = 0.5 * (d.vertices[d.edges[e].v0] + d.vertices[d.edges[e].v1]);

  d.plaquettes.resize(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Plaquette& p = d.plaquettes[d.face_index(r, c)];
      p.row = r;
      p.col = c;
      p.edge = {d.h_edge(c, r), d.v_edge(c + 1, r), d.h_edge(c, r + 1), d.v_edge(c, r)};
      p.sign = {+1, +1, -1, -1};
    }
  return d;
}

cplx RhombicDomain::normal_into_face(int e, int f) const {
  cplx t = edge_vector(e);
  t /= std::abs(t);
  cplx left_normal = t * cplx(0.0, 1.0);
  if (edge_faces[e][0] == f) return left_normal;
  if (edge_faces[e][1] == f) return -left_normal;
  throw std::invalid_argument("normal_into_face: face not adjacent to edge");
}

bool RhombicDomain::face_touches_boundary(int f) const {
  for (int k = 0; k < 4; ++k)
    if (is_boundary_edge(plaquettes[f].edge[k])) return true;
  return false;
}

double winding_increment(Turn turn, double alpha, double beta) {
  (void)alpha;
  switch (turn.kind) {
    case TurnKind::straight:
      return 0.0;
    case TurnKind::none:
      throw std::invalid_argument("winding_increment: turn kind 'none' has no increment");
    case TurnKind::left:
      return turn.around_acute ? beta : kPi - beta;
    case TurnKind::right:
      return turn.around_acute ? -beta : -(kPi - beta);
  }
  throw std::logic_error("winding_increment: unreachable");
}

cplx ObservableField::at(int midpoint) const {
  if (!has(midpoint)) throw std::out_of_range("ObservableField: no value at requested midpoint");
  return value[midpoint];
}

cplx contour_sum(const ObservableField& field, int face, const RhombicDomain& dom) {
  const Plaquette& p = dom.plaquettes.at(face);
  cplx sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    int e = p.edge[k];
    cplx dz = dom.edge_vector(e) * double(p.sign[k]);
    sum += field.at(e) * dz;
  }
  return sum;
}

std::string domain_to_json(const RhombicDomain& dom) {
  std::string out;
  char buf[128];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
  };
  out += "{\"rows\":" + std::to_string(dom.rows) + ",\"cols\":" + std::to_string(dom.cols) + ",\"alpha\":";
  num(dom.alpha);
  out += ",\"vertices\":[";
  for (int i = 0; i < dom.n_vertices(); ++i) {
    if (i) out += ',';
    out += '[';
    num(dom.vertices[i].real());
    out += ',';
    num(dom.vertices[i].imag());
    out += ']';
  }
  out += "],\"edges\":[";
  for (int e = 0; e < dom.n_edges(); ++e) {
    if (e) out += ',';
    out += '[' + std::to_string(dom.edges[e].v0) + ',' + std::to_string(dom.edges[e].v1) + ']';
  }
  out += "],\"faces\":[";
  for (int f = 0; f < dom.n_faces(); ++f) {
    if (f) out += ',';
    const Plaquette& p = dom.plaquettes[f];
    out += '[' + std::to_string(p.edge[0]) + ',' + std::to_string(p.edge[1]) + ',' + std::to_string(p.edge[2]) +
           ',' + std::to_string(p.edge[3]) + ']';
  }
  out += "]}";
  return out;
}

}  // namespace paraferm
