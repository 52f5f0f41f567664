#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "paraferm/geometry.hpp"
#include "paraferm/models.hpp"

namespace paraferm {

/// Fixed closure of the domain border: arcs outside the domain joining
/// adjacent boundary midpoints, phase-locked so that on a 1x1 domain the arcs
/// pair (E,N) and (W,S).
struct BoundaryArc {
  int m0, m1;
};
std::vector<BoundaryArc> boundary_arcs(const RhombicDomain& dom);

/// Origin of the observable: an interior edge midpoint plus the side (adjacent
/// face) the traced strand leaves through.
struct MarkedPoint {
  int edge = -1;
  int side = 0;  // index into edge_faces[edge]
};

struct EnumOptions {
  std::uint64_t cap = 100000000ull;  // raw tile-assignment bound
  int prefix_faces = 2;              // block-partition depth (fixed, for determinism)
  bool parallel = true;
};

struct LoopConfiguration {
  std::vector<int> tile;  // catalog index per face
  double tile_weight_product = 1.0;
  int n_loops = 0;
  double weight = 0.0;                  // colour-summed for the two-colour model
  std::vector<std::vector<int>> loops;  // midpoint cycles
  std::vector<double> loop_winding;     // accumulated turning per cycle
};

/// Serial enumeration of every edge-consistent closed configuration,
/// with loops traced and windings accumulated.  Test and inspection path.
void for_each_configuration(const RhombicDomain& dom, ModelId model, const WeightSet& ws,
                            const std::function<void(const LoopConfiguration&)>& visit,
                            const EnumOptions& opt = {});

double partition_function(const RhombicDomain& dom, ModelId model, const WeightSet& ws,
                          const EnumOptions& opt = {});
/// Plain recursive reference without block partitioning; kept for testing the
/// parallel kernel.
double partition_function_reference(const RhombicDomain& dom, ModelId model, const WeightSet& ws,
                                    const EnumOptions& opt = {});

/// Parafermionic observable by exact enumeration, normalised by the partition
/// function.  Dense: value at every midpoint of the loop through the origin.
/// Dilute: open oriented path from the origin.  Two-colour: colour defects at
/// the origin and the target, phase from the sum of both strand windings.
ObservableField observable(const RhombicDomain& dom, ModelId model, const WeightSet& ws, double spin,
                           const MarkedPoint& origin, const EnumOptions& opt = {});

struct HoloReport {
  std::vector<cplx> residual;  // per face
  std::vector<char> origin_adjacent;
  std::vector<char> touches_boundary;
  double interior_max = 0.0;
  double origin_adjacent_max = 0.0;
};
HoloReport holo_residual_report(const ObservableField& field, const RhombicDomain& dom);

/// Dense-model cancellation bookkeeping for one plaquette: for every pair of
/// configurations differing only there, the loop-weight ratio identity and the
/// summed contour contribution of the pair.
struct CancellationPair {
  std::uint64_t rest_key = 0;
  int case_id = 0;  // 1: flip loses a loop, 2: flip gains one
  double ratio_residual = 0.0;
  double pair_contour_abs = 0.0;
};
struct CancellationReport {
  std::vector<CancellationPair> pairs;
  double max_ratio_residual = 0.0;
  double max_pair_contour = 0.0;
};
CancellationReport pairwise_cancellation_check(const RhombicDomain& dom, const WeightSet& ws, double spin,
                                               const MarkedPoint& origin, int face);

}  // namespace paraferm
