#include "paraferm/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paraferm {

std::vector<BoundaryArc> boundary_arcs(const RhombicDomain& dom) {
  std::vector<int> walk;  // boundary midpoints, CCW from the bottom-left edge
  for (int i = 0; i < dom.cols; ++i) walk.push_back(dom.h_edge(i, 0));
  for (int j = 0; j < dom.rows; ++j) walk.push_back(dom.v_edge(dom.cols, j));
  for (int i = dom.cols - 1; i >= 0; --i) walk.push_back(dom.h_edge(i, dom.rows));
  for (int j = dom.rows - 1; j >= 0; --j) walk.push_back(dom.v_edge(0, j));
  std::vector<BoundaryArc> arcs;
  const int n = static_cast<int>(walk.size());
  for (int k = 1; k < n; k += 2) arcs.push_back({walk[k], walk[(k + 1) % n]});
  return arcs;
}

namespace {

struct Cons {
  int f0, s0, f1, s1;
  signed char mode;  // 0: occupancies equal, 1: (1,0) required, 2: occupancies differ
};

struct Ctx {
  const RhombicDomain* dom = nullptr;
  ModelId model{};
  const std::vector<Tile>* catalog = nullptr;
  std::vector<double> tile_weight;  // dense/dilute; unused for the two-colour model
  double fug = 0.0;
  std::vector<BoundaryArc> barcs;
  std::vector<std::vector<Cons>> cons_at;
  int n_faces = 0;
  bool all_occupied = false;
  int path_target = -1;  // open-path endpoint, when enumerating path ensembles
  // winding twin: same combinatorics embedded at angle pi - beta, so that a
  // strand turning around a corner of interior angle beta picks up pi - beta
  // and vice versa (the increment convention of the holomorphicity systems)
  RhombicDomain winding_dom;

  int slot_mid(int f, int s) const { return dom->plaquettes[f].edge[s]; }
};

int slot_of_edge(const RhombicDomain& dom, int f, int e) {
  for (int s = 0; s < 4; ++s)
    if (dom.plaquettes[f].edge[s] == e) return s;
  throw std::logic_error("slot_of_edge: edge not on face");
}

// origin/target occupancy exceptions for the open-path ensemble
struct PathMarks {
  int origin_edge = -1, origin_face = -1;
  int target_edge = -1;
};

Ctx make_ctx(const RhombicDomain& dom, ModelId model, const WeightSet& ws, const EnumOptions& opt,
             const PathMarks* marks = nullptr) {
  Ctx ctx;
  ctx.dom = &dom;
  ctx.model = model;
  ctx.catalog = &tile_catalog(model);
  ctx.fug = ws.fugacity;
  ctx.n_faces = dom.n_faces();
  ctx.all_occupied = (model != ModelId::DiluteOn);
  ctx.winding_dom = build_domain(dom.rows, dom.cols, kPi - dom.alpha);

  double raw = 1.0;
  for (int f = 0; f < ctx.n_faces; ++f) raw *= double(ctx.catalog->size());
  if (raw > double(opt.cap))
    throw std::invalid_argument("enumeration: tile-assignment count exceeds the configured cap");

  if (model != ModelId::C2Loop)
    for (const Tile& t : *ctx.catalog) ctx.tile_weight.push_back(ws.at(t.symbol));

  ctx.barcs = boundary_arcs(dom);

  ctx.cons_at.assign(ctx.n_faces, {});
  if (!ctx.all_occupied) {
    auto add = [&](int f0, int s0, int f1, int s1, signed char mode) {
      ctx.cons_at[std::max(f0, f1)].push_back({f0, s0, f1, s1, mode});
    };
    for (int e = 0; e < dom.n_edges(); ++e) {
      if (!dom.is_interior_edge(e)) continue;
      int fa = dom.edge_faces[e][0], fb = dom.edge_faces[e][1];
      int sa = slot_of_edge(dom, fa, e), sb = slot_of_edge(dom, fb, e);
      if (marks && e == marks->origin_edge) {
        if (fa == marks->origin_face)
          add(fa, sa, fb, sb, 1);
        else
          add(fb, sb, fa, sa, 1);
      } else if (marks && e == marks->target_edge) {
        add(fa, sa, fb, sb, 2);
      } else {
        add(fa, sa, fb, sb, 0);
      }
    }
    for (const BoundaryArc& arc : ctx.barcs) {
      int fa = dom.edge_faces[arc.m0][0] >= 0 ? dom.edge_faces[arc.m0][0] : dom.edge_faces[arc.m0][1];
      int fb = dom.edge_faces[arc.m1][0] >= 0 ? dom.edge_faces[arc.m1][0] : dom.edge_faces[arc.m1][1];
      int sa = slot_of_edge(dom, fa, arc.m0), sb = slot_of_edge(dom, fb, arc.m1);
      // a path may end on a boundary midpoint from either side: through its
      // face or along the boundary arc from the arc partner
      bool target = marks && (arc.m0 == marks->target_edge || arc.m1 == marks->target_edge);
      add(fa, sa, fb, sb, target ? 2 : 0);
    }
  }
  if (marks) ctx.path_target = marks->target_edge;
  return ctx;
}

bool cons_ok(const Ctx& ctx, const std::vector<int>& tiles, int f) {
  for (const Cons& c : ctx.cons_at[f]) {
    bool o0 = (*ctx.catalog)[tiles[c.f0]].occupies[c.s0];
    bool o1 = (*ctx.catalog)[tiles[c.f1]].occupies[c.s1];
    switch (c.mode) {
      case 0:
        if (o0 != o1) return false;
        break;
      case 1:
        if (!o0 || o1) return false;
        break;
      case 2:
        if (o0 == o1) return false;
        break;
    }
  }
  return true;
}

template <class Leaf>
void recurse(const Ctx& ctx, std::vector<int>& tiles, int f, double wprod, Leaf&& leaf) {
  if (f == ctx.n_faces) {
    leaf(tiles, wprod);
    return;
  }
  const int nt = static_cast<int>(ctx.catalog->size());
  for (int t = 0; t < nt; ++t) {
    tiles[f] = t;
    if (!cons_ok(ctx, tiles, f)) continue;
    recurse(ctx, tiles, f + 1, wprod * (ctx.tile_weight.empty() ? 1.0 : ctx.tile_weight[t]), leaf);
  }
}

struct Prefix {
  std::vector<int> tiles;
  double wprod;
};

std::vector<Prefix> enumerate_prefixes(const Ctx& ctx, int depth) {
  std::vector<Prefix> out;
  std::vector<int> tiles(ctx.n_faces, 0);
  const int nt = static_cast<int>(ctx.catalog->size());
  std::function<void(int, double)> rec = [&](int f, double wprod) {
    if (f == depth) {
      out.push_back({std::vector<int>(tiles.begin(), tiles.begin() + depth), wprod});
      return;
    }
    for (int t = 0; t < nt; ++t) {
      tiles[f] = t;
      if (!cons_ok(ctx, tiles, f)) continue;
      rec(f + 1, wprod * (ctx.tile_weight.empty() ? 1.0 : ctx.tile_weight[t]));
    }
  };
  rec(0, 1.0);
  return out;
}

// strand structure of one configuration
struct Strand {
  int m0, m1;
  int face;  // -1 for a boundary arc
};

struct StrandGraph {
  std::vector<Strand> strands;
  // per midpoint: up to two incident strand ends
  std::vector<std::array<int, 2>> ends;  // strand indices, -1 if none
  std::vector<int> degree;

  void init(int n_mid) {
    strands.clear();
    ends.assign(n_mid, {-1, -1});
    degree.assign(n_mid, 0);
  }
  void add(int m0, int m1, int face) {
    int idx = static_cast<int>(strands.size());
    strands.push_back({m0, m1, face});
    ends[m0][degree[m0]++] = idx;
    ends[m1][degree[m1]++] = idx;
  }
};

void build_strands(const Ctx& ctx, const std::vector<int>& tiles, StrandGraph& g) {
  const RhombicDomain& dom = *ctx.dom;
  g.init(dom.n_edges());
  for (int f = 0; f < ctx.n_faces; ++f) {
    const Tile& t = (*ctx.catalog)[tiles[f]];
    for (const TileArc& a : t.arcs) g.add(ctx.slot_mid(f, a.s0), ctx.slot_mid(f, a.s1), f);
  }
  for (const BoundaryArc& arc : ctx.barcs) {
    bool o0 = g.degree[arc.m0] > 0, o1 = g.degree[arc.m1] > 0;
    bool on = o0 && o1 && g.degree[arc.m0] < 2 && g.degree[arc.m1] < 2;
    // an arc ending the open path carries the strand onto the target midpoint
    if (arc.m0 == ctx.path_target && !o0 && o1 && g.degree[arc.m1] < 2) on = true;
    if (arc.m1 == ctx.path_target && !o1 && o0 && g.degree[arc.m0] < 2) on = true;
    if (on) g.add(arc.m0, arc.m1, -1);
  }
}

struct UnionFind {
  std::vector<int> parent;
  void init(int n) {
    parent.resize(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // returns true if the union closed a cycle
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    parent[a] = b;
    return false;
  }
};

int count_cycles(const StrandGraph& g, UnionFind& uf) {
  uf.init(static_cast<int>(g.degree.size()));
  int cycles = 0;
  for (const Strand& s : g.strands)
    if (uf.unite(s.m0, s.m1)) ++cycles;
  return cycles;
}

// travel tangent when crossing midpoint m into/out of a structure,
// evaluated in the winding twin
cplx tangent_into(const Ctx& ctx, int m, int face) {
  const RhombicDomain& dom = ctx.winding_dom;
  if (face >= 0) return dom.normal_into_face(m, face);
  int f = dom.edge_faces[m][0] >= 0 ? dom.edge_faces[m][0] : dom.edge_faces[m][1];
  return -dom.normal_into_face(m, f);  // out of the domain
}

double strand_increment(const Ctx& ctx, const Strand& s, int from) {
  const RhombicDomain& dom = ctx.winding_dom;
  int to = (s.m0 == from) ? s.m1 : s.m0;
  cplx t_in = tangent_into(ctx, from, s.face);
  cplx t_out = -tangent_into(ctx, to, s.face);  // leaving the structure at `to`
  cplx chord = dom.midpoints[to] - dom.midpoints[from];
  double a0 = std::arg(t_in), ac = std::arg(chord), a1 = std::arg(t_out);
  return wrap_angle(ac - a0) + wrap_angle(a1 - ac);
}

int other_strand(const StrandGraph& g, int m, int strand) {
  if (g.ends[m][0] == strand) return g.ends[m][1];
  return g.ends[m][0];
}

int first_strand_in_face(const StrandGraph& g, int m, int face) {
  for (int k = 0; k < g.degree[m]; ++k) {
    int s = g.ends[m][k];
    if (s >= 0 && g.strands[s].face == face) return s;
  }
  return -1;
}

// walk the open path or loop starting at `m0` through strand `s0`;
// reports every visited midpoint with its accumulated winding.
// Returns total winding; stops when back at m0 (loop) or at a dead end (path).
template <class Visit>
double trace_from(const Ctx& ctx, const StrandGraph& g, int m0, int s0, Visit&& visit, int* end_mid = nullptr) {
  double theta = 0.0;
  int m = m0, s = s0;
  while (true) {
    const Strand& st = g.strands[s];
    int next = (st.m0 == m) ? st.m1 : st.m0;
    theta += strand_increment(ctx, st, m);
    if (next == m0) {
      if (end_mid) *end_mid = next;
      return theta;
    }
    visit(next, theta);
    int ns = other_strand(g, next, s);
    if (ns < 0) {
      if (end_mid) *end_mid = next;
      return theta;
    }
    m = next;
    s = ns;
  }
}

// trace every cycle; fills LoopConfiguration::loops / loop_winding
void trace_all_loops(const Ctx& ctx, const StrandGraph& g, LoopConfiguration& cfg) {
  cfg.loops.clear();
  cfg.loop_winding.clear();
  std::vector<char> seen(g.strands.size(), 0);
  for (size_t s0 = 0; s0 < g.strands.size(); ++s0) {
    if (seen[s0]) continue;
    std::vector<int> cyc;
    int m0 = g.strands[s0].m0;
    cyc.push_back(m0);
    double theta = 0.0;
    int m = m0, s = static_cast<int>(s0);
    while (true) {
      seen[s] = 1;
      const Strand& st = g.strands[s];
      int next = (st.m0 == m) ? st.m1 : st.m0;
      theta += strand_increment(ctx, st, m);
      if (next == m0) break;
      cyc.push_back(next);
      s = other_strand(g, next, s);
      m = next;
    }
    cfg.loops.push_back(std::move(cyc));
    cfg.loop_winding.push_back(theta);
  }
  cfg.n_loops = static_cast<int>(cfg.loops.size());
}

// ---------------------------------------------------------------------------
// two-colour weight evaluation
// ---------------------------------------------------------------------------

// per face: the indices of the colour variables its two strand passes carry,
// resolved against loop ids or defect-segment ids
struct C2FaceColours {
  int c0 = -1, c1 = -1;
  int pattern = 0;  // catalog index
};

// colour-summed product of face weights; `colour_bits` enumerated outside
double c2_face_product(const Ctx& ctx, const std::vector<C2FaceColours>& faces, std::uint32_t bits,
                       const WeightSet& ws) {
  double prod = 1.0;
  const std::vector<Tile>& cat = *ctx.catalog;
  for (const C2FaceColours& fc : faces) {
    bool eq = (((bits >> fc.c0) ^ (bits >> fc.c1)) & 1u) == 0;
    const Tile& t = cat[fc.pattern];
    if (t.crossing) {
      if (eq) return 0.0;
      prod *= ws.at(t.symbol_diff);
    } else {
      prod *= ws.at(eq ? t.symbol : t.symbol_diff);
    }
  }
  return prod;
}

double c2_colour_sum(const Ctx& ctx, const std::vector<C2FaceColours>& faces, int n_colour_vars,
                     const WeightSet& ws) {
  double sum = 0.0;
  for (std::uint32_t bits = 0; bits < (1u << n_colour_vars); ++bits)
    sum += c2_face_product(ctx, faces, bits, ws);
  return sum;
}

// strand -> owning loop index, and position along the loop (strand walked k-th)
struct LoopIndex {
  std::vector<int> loop_of_strand;
  std::vector<int> pos_of_strand;
  std::vector<std::vector<int>> loop_strands;  // orderered strand ids per loop
  std::vector<std::vector<int>> loop_mids;     // visited midpoints (entry points per strand)
  std::vector<std::vector<double>> loop_theta; // winding accumulated at each visited midpoint
  std::vector<double> loop_total;
};

void index_loops(const Ctx& ctx, const StrandGraph& g, int origin_mid, int origin_face, LoopIndex& li) {
  li.loop_of_strand.assign(g.strands.size(), -1);
  li.pos_of_strand.assign(g.strands.size(), -1);
  li.loop_strands.clear();
  li.loop_mids.clear();
  li.loop_theta.clear();
  li.loop_total.clear();
  std::vector<char> seen(g.strands.size(), 0);

  auto walk = [&](int m0, int s0) {
    int id = static_cast<int>(li.loop_strands.size());
    li.loop_strands.emplace_back();
    li.loop_mids.emplace_back();
    li.loop_theta.emplace_back();
    double theta = 0.0;
    int m = m0, s = s0, pos = 0;
    while (true) {
      seen[s] = 1;
      li.loop_of_strand[s] = id;
      li.pos_of_strand[s] = pos++;
      li.loop_strands[id].push_back(s);
      li.loop_mids[id].push_back(m);
      li.loop_theta[id].push_back(theta);
      const Strand& st = g.strands[s];
      int next = (st.m0 == m) ? st.m1 : st.m0;
      theta += strand_increment(ctx, st, m);
      if (next == m0) break;
      s = other_strand(g, next, s);
      m = next;
    }
    li.loop_total.push_back(theta);
  };

  // trace the origin loop first, starting in the marked direction
  if (origin_mid >= 0) {
    int s0 = first_strand_in_face(g, origin_mid, origin_face);
    if (s0 >= 0) walk(origin_mid, s0);
  }
  for (size_t s = 0; s < g.strands.size(); ++s)
    if (!seen[s]) walk(g.strands[s].m0, static_cast<int>(s));
}

}  // namespace

// ---------------------------------------------------------------------------
// partition functions
// ---------------------------------------------------------------------------

namespace {

double leaf_weight_closed(const Ctx& ctx, const std::vector<int>& tiles, double wprod, UnionFind& uf,
                          StrandGraph& g, const WeightSet& ws) {
  build_strands(ctx, tiles, g);
  if (ctx.model == ModelId::C2Loop) {
    LoopIndex li;
    index_loops(ctx, g, -1, -1, li);
    int k = static_cast<int>(li.loop_strands.size());
    std::vector<C2FaceColours> faces(ctx.n_faces);
    for (int f = 0; f < ctx.n_faces; ++f) faces[f].pattern = tiles[f];
    std::vector<int> arc_seen(ctx.n_faces, 0);
    for (size_t s = 0; s < g.strands.size(); ++s) {
      int f = g.strands[s].face;
      if (f < 0) continue;
      if (arc_seen[f]++ == 0)
        faces[f].c0 = li.loop_of_strand[s];
      else
        faces[f].c1 = li.loop_of_strand[s];
    }
    double cs = c2_colour_sum(ctx, faces, k, ws);
    return cs * std::pow(ctx.fug, k);
  }
  int k = count_cycles(g, uf);
  return wprod * std::pow(ctx.fug, k);
}

}  // namespace

double partition_function_reference(const RhombicDomain& dom, ModelId model, const WeightSet& ws,
                                    const EnumOptions& opt) {
  Ctx ctx = make_ctx(dom, model, ws, opt);
  double z = 0.0;
  std::vector<int> tiles(ctx.n_faces, 0);
  UnionFind uf;
  StrandGraph g;
  recurse(ctx, tiles, 0, 1.0,
          [&](const std::vector<int>& t, double w) { z += leaf_weight_closed(ctx, t, w, uf, g, ws); });
  return z;
}

double partition_function(const RhombicDomain& dom, ModelId model, const WeightSet& ws,
                          const EnumOptions& opt) {
  Ctx ctx = make_ctx(dom, model, ws, opt);
  const int depth = std::min(opt.prefix_faces, ctx.n_faces);
  std::vector<Prefix> prefixes = enumerate_prefixes(ctx, depth);
  std::vector<double> partial(prefixes.size(), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
#endif
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(prefixes.size()); ++b) {
    std::vector<int> tiles(ctx.n_faces, 0);
    std::copy(prefixes[b].tiles.begin(), prefixes[b].tiles.end(), tiles.begin());
    UnionFind uf;
    StrandGraph g;
    double acc = 0.0;
    recurse(ctx, tiles, depth, prefixes[b].wprod,
            [&](const std::vector<int>& t, double w) { acc += leaf_weight_closed(ctx, t, w, uf, g, ws); });
    partial[b] = acc;
  }
  double z = 0.0;
  for (double p : partial) z += p;  // fixed order
  return z;
}

void for_each_configuration(const RhombicDomain& dom, ModelId model, const WeightSet& ws,
                            const std::function<void(const LoopConfiguration&)>& visit,
                            const EnumOptions& opt) {
  Ctx ctx = make_ctx(dom, model, ws, opt);
  std::vector<int> tiles(ctx.n_faces, 0);
  StrandGraph g;
  LoopConfiguration cfg;
  recurse(ctx, tiles, 0, 1.0, [&](const std::vector<int>& t, double wprod) {
    build_strands(ctx, t, g);
    cfg.tile = t;
    cfg.tile_weight_product = wprod;
    trace_all_loops(ctx, g, cfg);
    if (model == ModelId::C2Loop) {
      LoopIndex li;
      index_loops(ctx, g, -1, -1, li);
      int k = static_cast<int>(li.loop_strands.size());
      std::vector<C2FaceColours> faces(ctx.n_faces);
      for (int f = 0; f < ctx.n_faces; ++f) faces[f].pattern = t[f];
      std::vector<int> arc_seen(ctx.n_faces, 0);
      for (size_t s = 0; s < g.strands.size(); ++s) {
        int f = g.strands[s].face;
        if (f < 0) continue;
        if (arc_seen[f]++ == 0)
          faces[f].c0 = li.loop_of_strand[s];
        else
          faces[f].c1 = li.loop_of_strand[s];
      }
      cfg.weight = c2_colour_sum(ctx, faces, k, ws) * std::pow(ctx.fug, k);
    } else {
      cfg.weight = wprod * std::pow(ctx.fug, cfg.n_loops);
    }
    visit(cfg);
  });
}

// ---------------------------------------------------------------------------
// observable
// ---------------------------------------------------------------------------

namespace {

void check_origin(const RhombicDomain& dom, const MarkedPoint& origin) {
  if (origin.edge < 0 || origin.edge >= dom.n_edges())
    throw std::invalid_argument("observable: origin midpoint outside the domain");
  if (!dom.is_interior_edge(origin.edge))
    throw std::invalid_argument("observable: origin must sit on an interior edge");
  if (origin.side != 0 && origin.side != 1) throw std::invalid_argument("observable: side must be 0 or 1");
}

ObservableField observable_dense(const RhombicDomain& dom, const WeightSet& ws, double spin,
                                 const MarkedPoint& origin, const EnumOptions& opt) {
  Ctx ctx = make_ctx(dom, ModelId::DensePotts, ws, opt);
  const int n_mid = dom.n_edges();
  const int face0 = dom.edge_faces[origin.edge][origin.side];
  const int depth = std::min(opt.prefix_faces, ctx.n_faces);
  std::vector<Prefix> prefixes = enumerate_prefixes(ctx, depth);
  std::vector<std::vector<cplx>> partialF(prefixes.size());
  std::vector<double> partialZ(prefixes.size(), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
#endif
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(prefixes.size()); ++b) {
    std::vector<int> tiles(ctx.n_faces, 0);
    std::copy(prefixes[b].tiles.begin(), prefixes[b].tiles.end(), tiles.begin());
    std::vector<cplx> F(n_mid, 0.0);
    double Z = 0.0;
    UnionFind uf;
    StrandGraph g;
    recurse(ctx, tiles, depth, prefixes[b].wprod, [&](const std::vector<int>& t, double wprod) {
      build_strands(ctx, t, g);
      int k = count_cycles(g, uf);
      double W = wprod * std::pow(ctx.fug, k);
      Z += W;
      int s0 = first_strand_in_face(g, origin.edge, face0);
      F[origin.edge] += W;
      trace_from(ctx, g, origin.edge, s0, [&](int m, double theta) {
        F[m] += W * std::exp(cplx(0.0, -spin * theta));
      });
    });
    partialF[b] = std::move(F);
    partialZ[b] = Z;
  }

  double Z = 0.0;
  std::vector<cplx> F(n_mid, 0.0);
  for (size_t b = 0; b < prefixes.size(); ++b) {
    Z += partialZ[b];
    for (int m = 0; m < n_mid; ++m) F[m] += partialF[b][m];
  }
  if (Z == 0.0) throw std::domain_error("observable: zero partition function");

  ObservableField out;
  out.spin = spin;
  out.origin_edge = origin.edge;
  out.value.resize(n_mid);
  out.defined.assign(n_mid, 1);
  for (int m = 0; m < n_mid; ++m) out.value[m] = F[m] / Z;
  return out;
}

ObservableField observable_dilute(const RhombicDomain& dom, const WeightSet& ws, double spin,
                                  const MarkedPoint& origin, const EnumOptions& opt) {
  const int n_mid = dom.n_edges();
  double Z = partition_function(dom, ModelId::DiluteOn, ws, opt);
  if (Z == 0.0) throw std::domain_error("observable: zero partition function");
  const int face0 = dom.edge_faces[origin.edge][origin.side];

  std::vector<cplx> F(n_mid, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
#endif
  for (int z = 0; z < n_mid; ++z) {
    if (z == origin.edge) continue;
    PathMarks marks{origin.edge, face0, z};
    Ctx ctx = make_ctx(dom, ModelId::DiluteOn, ws, opt, &marks);
    std::vector<int> tiles(ctx.n_faces, 0);
    UnionFind uf;
    StrandGraph g;
    cplx acc = 0.0;
    recurse(ctx, tiles, 0, 1.0, [&](const std::vector<int>& t, double wprod) {
      build_strands(ctx, t, g);
      int s0 = first_strand_in_face(g, origin.edge, face0);
      if (s0 < 0) return;
      int end = -1;
      double theta = trace_from(ctx, g, origin.edge, s0, [](int, double) {}, &end);
      if (end != z) return;  // stray endpoint pattern; not a 0->z path
      // closed loops: connected components minus the path component
      uf.init(n_mid);
      int cycles = 0;
      for (const Strand& s : g.strands)
        if (uf.unite(s.m0, s.m1)) ++cycles;
      double W = wprod * std::pow(ctx.fug, cycles);
      acc += W * std::exp(cplx(0.0, -spin * theta));
    });
    F[z] = acc;
  }

  // value at the origin itself: probability that the origin midpoint is occupied
  double occ_weight = 0.0;
  {
    Ctx ctx = make_ctx(dom, ModelId::DiluteOn, ws, opt);
    std::vector<int> tiles(ctx.n_faces, 0);
    UnionFind uf;
    StrandGraph g;
    recurse(ctx, tiles, 0, 1.0, [&](const std::vector<int>& t, double wprod) {
      build_strands(ctx, t, g);
      if (g.degree[origin.edge] == 0) return;
      int k = count_cycles(g, uf);
      occ_weight += wprod * std::pow(ctx.fug, k);
    });
  }

  ObservableField out;
  out.spin = spin;
  out.origin_edge = origin.edge;
  out.value.resize(n_mid);
  out.defined.assign(n_mid, 1);
  for (int m = 0; m < n_mid; ++m) out.value[m] = F[m] / Z;
  out.value[origin.edge] = occ_weight / Z;
  return out;
}

ObservableField observable_c2(const RhombicDomain& dom, const WeightSet& ws, double spin,
                              const MarkedPoint& origin, const EnumOptions& opt) {
  Ctx ctx = make_ctx(dom, ModelId::C2Loop, ws, opt);
  const int n_mid = dom.n_edges();
  const int face0 = dom.edge_faces[origin.edge][origin.side];
  const int depth = std::min(opt.prefix_faces, ctx.n_faces);
  std::vector<Prefix> prefixes = enumerate_prefixes(ctx, depth);
  std::vector<std::vector<cplx>> partialF(prefixes.size());
  std::vector<double> partialZ(prefixes.size(), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
#endif
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(prefixes.size()); ++b) {
    std::vector<int> tiles(ctx.n_faces, 0);
    std::copy(prefixes[b].tiles.begin(), prefixes[b].tiles.end(), tiles.begin());
    std::vector<cplx> F(n_mid, 0.0);
    double Z = 0.0;
    StrandGraph g;
    LoopIndex li;
    recurse(ctx, tiles, depth, 1.0, [&](const std::vector<int>& t, double) {
      build_strands(ctx, t, g);
      index_loops(ctx, g, origin.edge, face0, li);
      const int k = static_cast<int>(li.loop_strands.size());
      std::vector<C2FaceColours> faces(ctx.n_faces);
      for (int f = 0; f < ctx.n_faces; ++f) faces[f].pattern = t[f];
      // colour variables 0..k-1 are the loops; variable k is the defect
      // segment "B" of the origin loop (used only in the defect sums)
      std::vector<int> arc_var(g.strands.size());
      std::vector<int> arc_seen(ctx.n_faces, 0);
      for (size_t s = 0; s < g.strands.size(); ++s) arc_var[s] = li.loop_of_strand[s];
      auto assign_faces = [&]() {
        std::fill(arc_seen.begin(), arc_seen.end(), 0);
        for (size_t s = 0; s < g.strands.size(); ++s) {
          int f = g.strands[s].face;
          if (f < 0) continue;
          if (arc_seen[f]++ == 0)
            faces[f].c0 = arc_var[s];
          else
            faces[f].c1 = arc_var[s];
        }
      };
      assign_faces();
      double zc = c2_colour_sum(ctx, faces, k, ws) * std::pow(ctx.fug, k);
      Z += zc;

      // defect contributions: origin loop is loop 0 (traced from the origin)
      const std::vector<int>& mids = li.loop_mids[0];
      const std::vector<double>& th = li.loop_theta[0];
      const double total = li.loop_total[0];
      const int L = static_cast<int>(mids.size());
      for (int j = 1; j < L; ++j) {
        int z = mids[j];
        // strands at positions [0, j) form segment A, positions [j, L) segment B;
        // segment B gets the extra colour variable k (opposite of A by the
        // flip at the origin; the constraint is enforced by summing only
        // colourings where var k differs from var of loop 0)
        for (int p = 0; p < L; ++p) arc_var[li.loop_strands[0][p]] = (p < j) ? 0 : k;
        assign_faces();
        double contrib = 0.0;
        for (std::uint32_t bits = 0; bits < (2u << k); ++bits) {
          bool a_col = bits & 1u;
          bool b_col = (bits >> k) & 1u;
          if (a_col == b_col) continue;  // colour flips at both defects
          contrib += c2_face_product(ctx, faces, bits, ws);
        }
        // both strands traced from the origin to z: forward winding th[j],
        // backward winding th[j] - total
        double theta_z = 2.0 * th[j] - total;
        F[z] += contrib * std::pow(ctx.fug, k) * std::exp(cplx(0.0, -spin * theta_z));
      }
    });
    partialF[b] = std::move(F);
    partialZ[b] = Z;
  }

  double Z = 0.0;
  std::vector<cplx> F(n_mid, 0.0);
  for (size_t b = 0; b < prefixes.size(); ++b) {
    Z += partialZ[b];
    for (int m = 0; m < n_mid; ++m) F[m] += partialF[b][m];
  }
  if (Z == 0.0) throw std::domain_error("observable: zero partition function");

  ObservableField out;
  out.spin = spin;
  out.origin_edge = origin.edge;
  out.value.resize(n_mid);
  out.defined.assign(n_mid, 1);
  for (int m = 0; m < n_mid; ++m) out.value[m] = F[m] / Z;
  out.value[origin.edge] = 1.0;
  return out;
}

}  // namespace

ObservableField observable(const RhombicDomain& dom, ModelId model, const WeightSet& ws, double spin,
                           const MarkedPoint& origin, const EnumOptions& opt) {
  check_origin(dom, origin);
  switch (model) {
    case ModelId::DensePotts: return observable_dense(dom, ws, spin, origin, opt);
    case ModelId::DiluteOn: return observable_dilute(dom, ws, spin, origin, opt);
    case ModelId::C2Loop: return observable_c2(dom, ws, spin, origin, opt);
  }
  throw std::logic_error("observable");
}

HoloReport holo_residual_report(const ObservableField& field, const RhombicDomain& dom) {
  HoloReport rep;
  rep.residual.resize(dom.n_faces());
  rep.origin_adjacent.assign(dom.n_faces(), 0);
  rep.touches_boundary.assign(dom.n_faces(), 0);
  for (int f = 0; f < dom.n_faces(); ++f) {
    rep.residual[f] = contour_sum(field, f, dom);
    const Plaquette& p = dom.plaquettes[f];
    for (int k = 0; k < 4; ++k)
      if (p.edge[k] == field.origin_edge) rep.origin_adjacent[f] = 1;
    rep.touches_boundary[f] = dom.face_touches_boundary(f) ? 1 : 0;
    double a = std::abs(rep.residual[f]);
    if (rep.origin_adjacent[f])
      rep.origin_adjacent_max = std::max(rep.origin_adjacent_max, a);
    else
      rep.interior_max = std::max(rep.interior_max, a);
  }
  return rep;
}

CancellationReport pairwise_cancellation_check(const RhombicDomain& dom, const WeightSet& ws, double spin,
                                               const MarkedPoint& origin, int face) {
  check_origin(dom, origin);
  if (face < 0 || face >= dom.n_faces()) throw std::invalid_argument("pairwise_cancellation_check: bad face");
  EnumOptions opt;
  Ctx ctx = make_ctx(dom, ModelId::DensePotts, ws, opt);
  const int face0 = dom.edge_faces[origin.edge][origin.side];
  const double a = ws.at("a"), b = ws.at("b"), fug = ws.fugacity;

  struct Half {
    double W = 0.0;
    int loops = 0;
    bool enters = false;
    cplx contour = 0.0;
  };
  // key: tile assignment of all faces except `face`
  std::vector<std::array<Half, 2>> table(std::size_t(1) << (ctx.n_faces - 1));

  std::vector<int> tiles(ctx.n_faces, 0);
  UnionFind uf;
  StrandGraph g;
  recurse(ctx, tiles, 0, 1.0, [&](const std::vector<int>& t, double wprod) {
    build_strands(ctx, t, g);
    int k = count_cycles(g, uf);
    double W = wprod * std::pow(fug, k);
    // contributions of this configuration to the contour sum at `face`
    std::vector<cplx> Fm(4, 0.0);
    const Plaquette& p = dom.plaquettes[face];
    int s0 = first_strand_in_face(g, origin.edge, face0);
    bool enters = false;
    auto record = [&](int m, double theta) {
      for (int kk = 0; kk < 4; ++kk)
        if (p.edge[kk] == m) {
          Fm[kk] += W * std::exp(cplx(0.0, -spin * theta));
          enters = true;
        }
    };
    record(origin.edge, 0.0);
    trace_from(ctx, g, origin.edge, s0, record);
    cplx contour = 0.0;
    for (int kk = 0; kk < 4; ++kk) contour += Fm[kk] * dom.edge_vector(p.edge[kk]) * double(p.sign[kk]);

    std::uint64_t key = 0;
    for (int f = 0; f < ctx.n_faces; ++f) {
      if (f == face) continue;
      key = key * 2 + std::uint64_t(t[f]);
    }
    Half& h = table[key][t[face]];
    h.W = W;
    h.loops = k;
    h.enters = enters;
    h.contour = contour;
  });

  CancellationReport rep;
  for (std::size_t key = 0; key < table.size(); ++key) {
    const Half& G = table[key][0];   // tile "a" at the plaquette
    const Half& Gp = table[key][1];  // tile "b"
    if (!G.enters && !Gp.enters) continue;
    CancellationPair pr;
    pr.rest_key = key;
    double scale = std::max(std::abs(G.W), std::abs(Gp.W));
    if (Gp.loops == G.loops - 1) {
      pr.case_id = 1;  // P(G')/b = P(G)/(a sqrt(Q))
      pr.ratio_residual = std::abs(Gp.W * a * fug - G.W * b) / std::max(scale, 1e-300);
    } else if (Gp.loops == G.loops + 1) {
      pr.case_id = 2;  // P(G')/(b sqrt(Q)) = P(G)/a
      pr.ratio_residual = std::abs(Gp.W * a - G.W * b * fug) / std::max(scale, 1e-300);
    } else {
      pr.case_id = 0;
      pr.ratio_residual = 1.0;  // should not happen for Temperley-Lieb tiles
    }
    pr.pair_contour_abs = std::abs(G.contour + Gp.contour);
    rep.max_ratio_residual = std::max(rep.max_ratio_residual, pr.ratio_residual);
    rep.max_pair_contour = std::max(rep.max_pair_contour, pr.pair_contour_abs);
    rep.pairs.push_back(pr);
  }
  return rep;
}

}  // namespace paraferm
