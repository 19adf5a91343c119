// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reeb/mesh.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

struct BenchRecord {
  std::string mesh_id;
  std::size_t vertices = 0;
  std::string algo;
  unsigned workers = 1;
  int cuts = 0;
  double seconds = 0.0;  ///< median over repeats
  double speedup = 1.0;  ///< t(1) / t(workers)
  double efficiency = 1.0;
};

double median(std::vector<double> xs);

/// Times reeb_parallel for each worker count (workers = 1 runs the
/// sequential engine). A workers = 1 baseline is measured when absent from
/// the list. `cuts` < 0 means workers - 1.
std::vector<BenchRecord> run_bench(const Mesh& mesh, const ScalarField& field,
                                   const std::string& mesh_id,
                                   const std::vector<unsigned>& workers, unsigned repeats,
                                   int cuts = -1);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace reeb
