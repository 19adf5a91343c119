// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "reeb/levelset.hpp"
#include "reeb/mesh.hpp"
#include "reeb/morse.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/reeb_seq.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

/// thresholds[t] != 0 when a boundary edge crosses the level t - 1/2.
std::vector<std::uint8_t> boundary_blocked_thresholds(const Mesh& mesh, const ScalarField& field);

struct CutPlan {
  std::vector<Rank> thresholds;  ///< cut c sits at rank level thresholds[c] - 1/2
  std::vector<std::string> warnings;
};

/// k cuts at vertex-count quantiles round(i*N/(k+1)), each moved to the
/// nearest threshold t where neither rank t-1 nor rank t is critical and no
/// boundary edge crosses. Cuts that cannot be placed are dropped with a
/// warning.
CutPlan choose_cuts(const ScalarField& field, const CriticalInventory& inventory, std::size_t k,
                    const std::vector<std::uint8_t>& blocked = {});

struct CutCycle {
  std::uint32_t cut = 0;
  LevelCycle cycle;
  /// Source edge for the slab above: smallest upper-endpoint rank, then edge id.
  EdgeId canonical = kInvalid;
};

/// Vertices with rank in [lo, hi), the crossing edges of its two cuts, and
/// the non-critical endpoints of those edges that lie outside.
struct Slab {
  Rank lo = 0;
  Rank hi = 0;
  std::vector<EdgeId> lower_crossing;
  std::vector<EdgeId> upper_crossing;
  std::vector<VertexId> extension;

  std::size_t num_vertices() const { return hi - lo; }
};

struct Partition {
  std::vector<Rank> thresholds;
  std::vector<Slab> slabs;
  std::vector<CutCycle> cycles;             ///< grouped by cut, ascending
  std::vector<std::uint32_t> cycle_offset;  ///< per cut, size cuts+1
  /// Per cut: crossing edge -> global cycle id.
  std::vector<std::unordered_map<EdgeId, std::uint32_t>> cycle_of_edge;
};

Partition build_partition(const Mesh& mesh, const ScalarField& field,
                          const CriticalInventory& inventory, const std::vector<Rank>& thresholds,
                          unsigned workers = 1);

/// Global crossing edge -> crossing node map. An edge can cross several
/// cuts, so entries are keyed by (cut, edge). Locked per stripe so that
/// tasks can insert concurrently.
class CrossingMap {
 public:
  void insert(std::uint32_t cut, EdgeId e, NodeId node);
  /// Node ids recorded for e at this cut (0, 1 or 2 of them).
  std::vector<NodeId> get(std::uint32_t cut, EdgeId e) const;
  std::size_t size() const;

 private:
  static constexpr std::size_t kStripes = 64;
  struct Stripe {
    mutable std::mutex mutex;
    std::unordered_map<std::uint64_t, std::array<NodeId, 2>> map;
  };
  std::array<Stripe, kStripes> stripes_;
};

struct LocalArc {
  NodeId lo = kInvalid;
  NodeId hi = kInvalid;
  std::vector<EmbeddedEdge> embedding;
};

/// Arcs produced by one slab component, with node ids in the layout of
/// NodeLayout (criticals, loops, crossing nodes).
struct LocalGraph {
  std::uint32_t slab = 0;
  std::vector<LocalArc> arcs;
};

/// Shared state of one parallel run.
struct ParallelContext {
  const Mesh* mesh = nullptr;
  const ScalarField* field = nullptr;
  const CriticalInventory* inventory = nullptr;
  const BoundaryReport* boundary = nullptr;
  const TerminationIndex* index = nullptr;
  const Partition* partition = nullptr;
  NodeLayout layout;
};

/// A slab component: its sources in start order.
struct SlabTask {
  std::uint32_t slab = 0;
  std::vector<std::uint32_t> lower_cycles;  ///< cut cycles entering from below
  std::vector<std::uint32_t> criticals;     ///< inventory slots
  std::vector<std::uint32_t> loops;         ///< lower boundary loops
};

/// Splits every slab into connected components (over edges whose rank span
/// meets the slab) and assigns each path source to one of them.
std::vector<SlabTask> build_tasks(const ParallelContext& ctx, unsigned workers = 1);

/// Runs the ascending-path engine inside one slab component. Paths leaving
/// through the upper cut end at crossing nodes; lower cut cycles start
/// paths from crossing nodes. Records both in G.
LocalGraph reeb_local(const ParallelContext& ctx, const SlabTask& task, VisitState& visited,
                      CrossingMap& G);

/// Identifies the two crossing nodes of every cut cycle through G and
/// concatenates arcs across them. Throws InternalError when a cycle does
/// not own exactly two node ids.
ReebGraph glue(const ParallelContext& ctx, const std::vector<LocalGraph>& locals,
               const CrossingMap& G);

struct ParallelOptions {
  unsigned workers = 1;
  int cuts = -1;  ///< -1: workers - 1
};

struct ParallelReport {
  std::vector<Rank> thresholds;
  std::vector<std::size_t> slab_sizes;
  std::size_t tasks = 0;
  std::vector<std::string> warnings;
};

/// Three-stage pipeline. With no cuts it runs reeb_sequential, so the
/// output is identical.
ReebGraph reeb_parallel(const Mesh& mesh, const ScalarField& field, ParallelOptions options,
                        ParallelReport* report = nullptr);

}  // namespace reeb
