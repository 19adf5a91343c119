// SPDX-License-Identifier: Apache-2.0
#include "reeb/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include "reeb/error.hpp"
#include "reeb/reeb_par.hpp"

namespace reeb {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const auto n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

namespace {

double time_run(const Mesh& mesh, const ScalarField& field, unsigned workers, int cuts,
                unsigned repeats) {
  std::vector<double> times;
  for (unsigned r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    auto g = reeb_parallel(mesh, field, {workers, cuts});
    const auto t1 = std::chrono::steady_clock::now();
    if (g.num_nodes() == 0 && mesh.num_vertices() > 0) throw InternalError("empty graph");
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  return median(std::move(times));
}

}  // namespace

std::vector<BenchRecord> run_bench(const Mesh& mesh, const ScalarField& field,
                                   const std::string& mesh_id,
                                   const std::vector<unsigned>& workers, unsigned repeats,
                                   int cuts) {
  if (repeats == 0) throw InputError("repeats must be positive");
  for (unsigned w : workers)
    if (w == 0) throw InputError("worker counts must be positive");
  double base = 0.0;
  if (std::find(workers.begin(), workers.end(), 1u) == workers.end())
    base = time_run(mesh, field, 1, 0, repeats);
  std::vector<BenchRecord> out;
  for (unsigned w : workers) {
    BenchRecord r;
    r.mesh_id = mesh_id;
    r.vertices = mesh.num_vertices();
    r.algo = w == 1 ? "seq" : "par";
    r.workers = w;
    r.cuts = w == 1 ? 0 : (cuts < 0 ? static_cast<int>(w) - 1 : cuts);
    r.seconds = time_run(mesh, field, w, w == 1 ? 0 : cuts, repeats);
    if (w == 1) base = r.seconds;
    out.push_back(r);
  }
  for (auto& r : out) {
    r.speedup = r.seconds > 0.0 ? base / r.seconds : 1.0;
    r.efficiency = r.speedup / r.workers;
  }
  return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "mesh,vertices,algo,workers,cuts,seconds,speedup,efficiency\n";
  for (const auto& r : records)
    out << r.mesh_id << ',' << r.vertices << ',' << r.algo << ',' << r.workers << ',' << r.cuts
        << ',' << r.seconds << ',' << r.speedup << ',' << r.efficiency << '\n';
}

}  // namespace reeb
