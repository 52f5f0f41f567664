#include "paraferm/ybe.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace paraferm {

// basis: 0 -> 1, 1 -> E1, 2 -> E2, 3 -> E1E2, 4 -> E2E1
TLWord tl_generator(double a, double b, int which) {
  TLWord w;
  w.c[0] = a;
  w.c[which] = b;
  return w;
}

TLWord tl_mul(const TLWord& x, const TLWord& y, double delta) {
  // product table for basis elements: entries (coefficient, basis index)
  struct Ent {
    double k;
    int b;
  };
  static const Ent table[5][5] = {
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}},
      {{1, 1}, {-1, 1}, {1, 3}, {-1, 3}, {1, 1}},   // -1 marks a delta factor
      {{1, 2}, {1, 4}, {-1, 2}, {1, 2}, {-1, 4}},
      {{1, 3}, {1, 1}, {-1, 3}, {1, 3}, {-1, 1}},
      {{1, 4}, {-1, 4}, {1, 2}, {-1, 2}, {1, 4}},
  };
  TLWord out;
  for (int i = 0; i < 5; ++i) {
    if (x.c[i] == 0.0) continue;
    for (int j = 0; j < 5; ++j) {
      if (y.c[j] == 0.0) continue;
      Ent e = table[i][j];
      double k = (e.k < 0) ? delta : 1.0;
      out.c[e.b] += k * x.c[i] * y.c[j];
    }
  }
  return out;
}

namespace {

TLWord tl_r(double gamma, double x, int which) {
  return tl_generator(std::sin(x), std::sin(gamma - x), which);
}

}  // namespace

std::array<double, 5> tl_ybe_coefficient_diffs(double gamma, double u, double mid, double v) {
  const double delta = 2.0 * std::cos(gamma);
  TLWord lhs = tl_mul(tl_mul(tl_r(gamma, u, 1), tl_r(gamma, mid, 2), delta), tl_r(gamma, v, 1), delta);
  TLWord rhs = tl_mul(tl_mul(tl_r(gamma, v, 2), tl_r(gamma, mid, 1), delta), tl_r(gamma, u, 2), delta);
  std::array<double, 5> d;
  for (int i = 0; i < 5; ++i) d[i] = lhs.c[i] - rhs.c[i];
  return d;
}

double tl_ybe_residual_mid(double gamma, double u, double mid, double v) {
  auto d = tl_ybe_coefficient_diffs(gamma, u, mid, v);
  double m = 0.0;
  for (double x : d) m = std::max(m, std::abs(x));
  return m;
}

double dense_ybe_middle(double gamma, double u, double v) { return u + v - gamma; }

double tl_ybe_residual(double gamma, double u, double v) {
  return tl_ybe_residual_mid(gamma, u, dense_ybe_middle(gamma, u, v), v);
}

// ---------------------------------------------------------------------------
// hexagon-flip diagrammatics
// ---------------------------------------------------------------------------

namespace {

using cpx = std::complex<double>;

struct Rhomb {
  cpx base, p, q;
  const WeightSet* w;
};

struct MidRegistry {
  std::vector<cpx> pos;
  int id(cpx z) {
    for (size_t i = 0; i < pos.size(); ++i)
      if (std::abs(pos[i] - z) < 1e-9) return static_cast<int>(i);
    pos.push_back(z);
    return static_cast<int>(pos.size()) - 1;
  }
  int find(cpx z) const {
    for (size_t i = 0; i < pos.size(); ++i)
      if (std::abs(pos[i] - z) < 1e-9) return static_cast<int>(i);
    return -1;
  }
};

struct Assembly {
  std::array<Rhomb, 3> rh;
  MidRegistry reg;
  std::array<std::array<int, 4>, 3> mid;  // midpoint id per rhombus slot (S, E, N, W)
  std::vector<int> external;              // the six outer midpoints, cyclic
  std::vector<char> is_external;

  void finish(const std::array<cpx, 6>& ext_pos) {
    for (int r = 0; r < 3; ++r) {
      const Rhomb& R = rh[r];
      mid[r][kS] = reg.id(R.base + 0.5 * R.p);
      mid[r][kE] = reg.id(R.base + R.p + 0.5 * R.q);
      mid[r][kN] = reg.id(R.base + R.q + 0.5 * R.p);
      mid[r][kW] = reg.id(R.base + 0.5 * R.q);
    }
    is_external.assign(reg.pos.size(), 0);
    for (const cpx& z : ext_pos) {
      int m = reg.find(z);
      if (m < 0) throw std::logic_error("hexagon assembly: missing external midpoint");
      external.push_back(m);
      is_external[m] = 1;
    }
  }
};

struct ClassAccumulator {
  std::map<std::string, double>* sums;
  void add(const std::string& key, double v) { (*sums)[key] += v; }
};

// strand bookkeeping during one tile assignment
struct HexStrand {
  int m0, m1, rhomb;
};

struct HexTrace {
  std::vector<HexStrand> strands;
  std::vector<std::array<int, 2>> ends;
  std::vector<int> degree;

  void init(int n) {
    strands.clear();
    ends.assign(n, {-1, -1});
    degree.assign(n, 0);
  }
  void add(int m0, int m1, int r) {
    int idx = static_cast<int>(strands.size());
    strands.push_back({m0, m1, r});
    ends[m0][degree[m0]++] = idx;
    ends[m1][degree[m1]++] = idx;
  }
};

// components of the strand graph: open paths (between externals) and loops
struct HexComponents {
  // per strand: component id; per component: type (0 path, 1 loop) and the
  // two external endpoints for paths
  std::vector<int> comp_of_strand;
  struct Comp {
    bool loop = false;
    int e0 = -1, e1 = -1;
  };
  std::vector<Comp> comps;
};

void trace_components(const Assembly& a, const HexTrace& g, HexComponents& out) {
  out.comp_of_strand.assign(g.strands.size(), -1);
  out.comps.clear();
  std::vector<char> seen(g.strands.size(), 0);
  // open paths first: start from externals
  for (int ext : a.external) {
    if (g.degree[ext] == 0) continue;
    int s = g.ends[ext][0];
    if (seen[s]) continue;
    int id = static_cast<int>(out.comps.size());
    out.comps.push_back({});
    out.comps[id].e0 = ext;
    int m = ext;
    while (true) {
      seen[s] = 1;
      out.comp_of_strand[s] = id;
      const HexStrand& st = g.strands[s];
      int next = (st.m0 == m) ? st.m1 : st.m0;
      if (a.is_external[next]) {
        out.comps[id].e1 = next;
        break;
      }
      int ns = (g.ends[next][0] == s) ? g.ends[next][1] : g.ends[next][0];
      if (ns < 0) throw std::logic_error("hexagon: dangling internal strand");
      m = next;
      s = ns;
    }
  }
  // remaining strands form internal loops
  for (size_t s0 = 0; s0 < g.strands.size(); ++s0) {
    if (seen[s0]) continue;
    int id = static_cast<int>(out.comps.size());
    out.comps.push_back({});
    out.comps[id].loop = true;
    int m = g.strands[s0].m0;
    int s = static_cast<int>(s0);
    while (true) {
      seen[s] = 1;
      out.comp_of_strand[s] = id;
      const HexStrand& st = g.strands[s];
      int next = (st.m0 == m) ? st.m1 : st.m0;
      if (next == g.strands[s0].m0) break;
      int ns = (g.ends[next][0] == s) ? g.ends[next][1] : g.ends[next][0];
      m = next;
      s = ns;
    }
  }
}

std::string pair_key(const Assembly& a, const HexComponents& hc, const std::vector<int>& colour = {}) {
  // canonical external pairing string; colours appended per pair when given
  std::vector<std::array<int, 3>> pairs;
  for (size_t c = 0; c < hc.comps.size(); ++c) {
    if (hc.comps[c].loop) continue;
    int i0 = -1, i1 = -1;
    for (size_t k = 0; k < a.external.size(); ++k) {
      if (a.external[k] == hc.comps[c].e0) i0 = static_cast<int>(k);
      if (a.external[k] == hc.comps[c].e1) i1 = static_cast<int>(k);
    }
    if (i0 > i1) std::swap(i0, i1);
    int col = colour.empty() ? -1 : colour[c];
    pairs.push_back({i0, i1, col});
  }
  std::sort(pairs.begin(), pairs.end());
  std::string key;
  for (const auto& p : pairs) {
    key += '(' + std::to_string(p[0]) + ',' + std::to_string(p[1]);
    if (p[2] >= 0) key += p[2] ? ",g" : ",b";
    key += ')';
  }
  return key;
}

void accumulate_assembly(ModelId model, const Assembly& a, std::map<std::string, double>& sums) {
  const std::vector<Tile>& cat = tile_catalog(model);
  const int nt = static_cast<int>(cat.size());
  const double fug = a.rh[0].w->fugacity;
  HexTrace g;
  HexComponents hc;

  for (int t0 = 0; t0 < nt; ++t0)
    for (int t1 = 0; t1 < nt; ++t1)
      for (int t2 = 0; t2 < nt; ++t2) {
        const int tiles[3] = {t0, t1, t2};
        // occupancy consistency at internal midpoints
        std::vector<int> occ(a.reg.pos.size(), 0);
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 4; ++s)
            if (cat[tiles[r]].occupies[s]) occ[a.mid[r][s]]++;
        bool ok = true;
        for (size_t m = 0; m < occ.size(); ++m) {
          if (a.is_external[m]) continue;
          // internal midpoints are shared by exactly two rhombi
          int shares = 0;
          for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 4; ++s)
              if (a.mid[r][s] == static_cast<int>(m)) ++shares;
          if (occ[m] != 0 && occ[m] != shares) ok = false;
        }
        if (!ok) continue;

        g.init(static_cast<int>(a.reg.pos.size()));
        for (int r = 0; r < 3; ++r)
          for (const TileArc& arc : cat[tiles[r]].arcs)
            g.add(a.mid[r][arc.s0], a.mid[r][arc.s1], r);
        trace_components(a, g, hc);

        int n_loops = 0, n_paths = 0;
        for (const auto& c : hc.comps) (c.loop ? n_loops : n_paths)++;

        if (model != ModelId::C2Loop) {
          double w = 1.0;
          for (int r = 0; r < 3; ++r) w *= a.rh[r].w->at(cat[tiles[r]].symbol);
          sums[pair_key(a, hc)] += w * std::pow(fug, n_loops);
        } else {
          // colour sum: path colours label the class, loop colours are summed
          const int nc = static_cast<int>(hc.comps.size());
          for (std::uint32_t bits = 0; bits < (1u << nc); ++bits) {
            double w = 1.0;
            for (int r = 0; r < 3 && w != 0.0; ++r) {
              // the two strand passes of rhombus r
              int cvar[2] = {-1, -1}, np = 0;
              for (size_t s = 0; s < g.strands.size(); ++s)
                if (g.strands[s].rhomb == r) cvar[np++] = hc.comp_of_strand[s];
              bool eq = (((bits >> cvar[0]) ^ (bits >> cvar[1])) & 1u) == 0;
              const Tile& tl = cat[tiles[r]];
              if (tl.crossing)
                w = eq ? 0.0 : w * a.rh[r].w->at(tl.symbol_diff);
              else
                w *= a.rh[r].w->at(eq ? tl.symbol : tl.symbol_diff);
            }
            if (w == 0.0) continue;
            std::vector<int> path_colour(hc.comps.size(), -1);
            for (int c = 0; c < nc; ++c)
              if (!hc.comps[c].loop) path_colour[c] = (bits >> c) & 1u;
            sums[pair_key(a, hc, path_colour)] += w * std::pow(fug, n_loops);
          }
        }
      }
}

std::array<cpx, 6> hexagon_external_positions(cpx d1, cpx d2, cpx d3) {
  cpx s = d1 + d2 + d3;
  return {0.5 * d1,           d1 + 0.5 * d2, d1 + d2 + 0.5 * d3,
          s - 0.5 * d1,       d2 + d3 - 0.5 * d2, 0.5 * d3};
}

}  // namespace

YbeReport diagram_ybe_residual(ModelId model, const WeightSet& w1, const WeightSet& w2,
                               const WeightSet& w3) {
  const cpx d1 = std::polar(1.0, 0.35);
  const cpx d2 = std::polar(1.0, 1.05);
  const cpx d3 = std::polar(1.0, 1.85);
  auto ext = hexagon_external_positions(d1, d2, d3);

  Assembly A;  // rhombi sharing vertex d2
  A.rh[0] = {cpx(0, 0), d1, d2, &w1};  // (1,2)
  A.rh[1] = {d2, d1, d3, &w2};         // (1,3)
  A.rh[2] = {cpx(0, 0), d2, d3, &w3};  // (2,3)
  A.finish(ext);

  Assembly B;  // rhombi sharing vertex d1 + d3
  B.rh[0] = {d3, d1, d2, &w1};         // (1,2)
  B.rh[1] = {cpx(0, 0), d1, d3, &w2};  // (1,3)
  B.rh[2] = {d1, d2, d3, &w3};         // (2,3)
  B.finish(ext);

  std::map<std::string, double> lhs, rhs;
  accumulate_assembly(model, A, lhs);
  accumulate_assembly(model, B, rhs);

  YbeReport rep;
  std::map<std::string, std::pair<double, double>> merged;
  for (const auto& [k, v] : lhs) merged[k].first = v;
  for (const auto& [k, v] : rhs) merged[k].second = v;
  for (const auto& [k, v] : merged) {
    rep.classes.push_back({k, v.first, v.second});
    rep.max_residual = std::max(rep.max_residual, std::abs(v.first - v.second));
    rep.scale = std::max({rep.scale, std::abs(v.first), std::abs(v.second)});
  }
  return rep;
}

std::vector<ConventionResult> ybe_convention_scan(ModelId model, double eta, double psi1, double psi2) {
  if (model == ModelId::DensePotts)
    throw std::invalid_argument("ybe_convention_scan: use tl/diagram checks for the dense family");
  auto weights = [&](double phi) {
    return model == ModelId::DiluteOn ? on_integrable_weights(eta, phi) : c2_integrable_weights(eta, phi);
  };
  // arg of lambda at the integrable spin: pi*s (dilute) or 2*pi*s (two-colour)
  const double lam = (model == ModelId::DiluteOn) ? (1.5 * eta - 0.5 * kPi) : (3.0 * eta - kPi);
  struct Conv {
    std::string name;
    double shift;   // applied to all three arguments
    double offset;  // subtracted from the middle argument
    bool diff;
  };
  const double nu = (kPi + eta) / 4.0;
  const std::vector<Conv> convs = {
      {"sum", 0.0, 0.0, false},
      {"diff", 0.0, 0.0, true},
      {"sum:nu-shift", nu, 0.0, false},
      {"diff:nu-shift", nu, 0.0, true},
      {"sum:spin-phase", 0.0, lam, false},
      {"diff:spin-phase", 0.0, lam, true},
  };
  std::vector<ConventionResult> out;
  for (const Conv& c : convs) {
    double mid = (c.diff ? (psi2 - psi1) : (psi1 + psi2)) - c.offset;
    WeightSet W1 = weights(psi1 + c.shift);
    WeightSet Wm = weights(mid + c.shift);
    WeightSet W3 = weights(psi2 + c.shift);
    YbeReport rep = diagram_ybe_residual(model, W1, Wm, W3);
    out.push_back({c.name, rep.max_residual, rep.scale});
  }
  return out;
}

}  // namespace paraferm
