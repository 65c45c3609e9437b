#include "macrograph/simmatrix.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace macrograph {

namespace {

const char* status_name(PairStatus status) {
  switch (status) {
    case PairStatus::Computed: return "computed";
    case PairStatus::ZeroCapped: return "zero-capped";
    case PairStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

struct PairTask {
  std::size_t i, j;
};

}  // namespace

SimilarityReport pairwise(const Corpus& corpus, const Engine& engine, int workers) {
  if (corpus.ids.empty()) throw SimMatrixError("empty corpus");
  if (corpus.ids.size() != corpus.graphs.size())
    throw SimMatrixError("ids and graphs size mismatch");
  if (workers < 1) throw SimMatrixError("workers must be positive");

  const std::size_t n = corpus.ids.size();
  SimilarityReport report;
  report.ids = corpus.ids;
  report.matrix.assign(n, std::vector<double>(n, 0.0));
  report.status.assign(n, std::vector<PairStatus>(n, PairStatus::Computed));

  std::vector<PairTask> tasks;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) tasks.push_back({i, j});
  report.pairs_total = static_cast<int>(tasks.size());

  // GED needs label distances; build them once from the shared library
  // unless matrices were injected.
  std::optional<SubstitutionMatrix> node_matrix, edge_matrix;
  if (const auto* ged = std::get_if<GedEngine>(&engine)) {
    node_matrix = ged->node_matrix ? *ged->node_matrix
                                   : build_substitution_matrix(corpus.library,
                                                               ged->node_params);
    edge_matrix = ged->edge_matrix ? *ged->edge_matrix
                                   : build_substitution_matrix(corpus.library,
                                                               ged->edge_params);
  }

  const auto started = std::chrono::steady_clock::now();
  std::vector<std::string> errors(workers);
  std::vector<int> budget_exceeded(workers, 0);

  auto run_range = [&](int worker, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const auto [i, j] = tasks[t];
      try {
        if (const auto* ged = std::get_if<GedEngine>(&engine)) {
          if (i == j) {
            report.matrix[i][j] = 0.0;
            continue;
          }
          try {
            const GedResult result = ged_exact(
                corpus.graphs[i], corpus.graphs[j], ged->costs,
                matrix_label_distance(*node_matrix),
                matrix_label_distance(*edge_matrix), ged->budget);
            report.matrix[i][j] = report.matrix[j][i] = result.distance;
          } catch (const BudgetExceeded&) {
            report.matrix[i][j] = report.matrix[j][i] = 0.0;
            report.status[i][j] = report.status[j][i] = PairStatus::BudgetExceeded;
            ++budget_exceeded[worker];
          }
        } else {
          const auto& kernel = std::get<KernelEngine>(engine);
          const double k = propagation_kernel(corpus.graphs[i], corpus.graphs[j],
                                              kernel.cfg);
          report.matrix[i][j] = report.matrix[j][i] = k;
        }
      } catch (const std::exception& e) {
        if (errors[worker].empty())
          errors[worker] = "pair (" + corpus.ids[i] + ", " + corpus.ids[j] +
                           "): " + e.what();
      }
    }
  };

  if (workers == 1) {
    run_range(0, 0, tasks.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (tasks.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(tasks.size(), w * chunk);
      const std::size_t end = std::min(tasks.size(), begin + chunk);
      pool.emplace_back(run_range, w, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  for (const std::string& err : errors)
    if (!err.empty()) throw SimMatrixError(err);
  for (int count : budget_exceeded) report.pairs_budget_exceeded += count;

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

std::vector<std::vector<double>> row_max_normalize(
    const std::vector<std::vector<double>>& matrix) {
  std::vector<std::vector<double>> out = matrix;
  for (std::vector<double>& row : out) {
    double max = 0.0;
    for (double v : row) {
      if (v < 0.0) throw SimMatrixError("negative entry in normalization input");
      max = std::max(max, v);
    }
    if (max > 0.0)
      for (double& v : row) v /= max;
  }
  return out;
}

MatrixStats matrix_stats(const SimilarityReport& report) {
  MatrixStats stats;
  const std::size_t n = report.matrix.size();
  int zero_pairs = 0, total_pairs = 0, zero_indices = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = report.matrix[i][j];
      if (v == 0.0) ++zero_indices;
      sum += v;
      stats.max = std::max(stats.max, v);
      if (j > i) {
        ++total_pairs;
        if (v == 0.0) ++zero_pairs;
      }
    }
  }
  stats.zero_fraction_pairs =
      total_pairs ? static_cast<double>(zero_pairs) / total_pairs : 0.0;
  stats.zero_fraction_indices = static_cast<double>(zero_indices) / (n * n);
  stats.mean = sum / (n * n);
  stats.histogram.assign(50, 0);
  if (stats.max > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      for (double v : report.matrix[i]) {
        const int bin = static_cast<int>(v / stats.max * 50.0);
        stats.histogram[std::min(bin, 49)] += 1;
      }
    }
  }
  return stats;
}

std::string report_to_csv(const SimilarityReport& report, bool normalized) {
  const std::vector<std::vector<double>>* values = &report.matrix;
  if (normalized) {
    if (!report.normalized)
      throw SimMatrixError("report has no normalized matrix");
    values = &*report.normalized;
  }
  std::ostringstream out;
  for (const std::string& id : report.ids) out << ',' << id;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < report.ids.size(); ++i) {
    out << report.ids[i];
    for (double v : (*values)[i]) {
      std::snprintf(buf, sizeof buf, "%.6f", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const SimilarityReport& report) {
  nlohmann::json j;
  j["ids"] = report.ids;
  j["matrix"] = report.matrix;
  if (report.normalized) j["normalized"] = *report.normalized;
  nlohmann::json status = nlohmann::json::array();
  for (const auto& row : report.status) {
    nlohmann::json r = nlohmann::json::array();
    for (PairStatus s : row) r.push_back(status_name(s));
    status.push_back(std::move(r));
  }
  j["status"] = std::move(status);
  const MatrixStats stats = matrix_stats(report);
  j["stats"] = {{"zero_fraction_pairs", stats.zero_fraction_pairs},
                {"zero_fraction_indices", stats.zero_fraction_indices},
                {"mean", stats.mean},
                {"max", stats.max},
                {"histogram", stats.histogram}};
  j["pairs_total"] = report.pairs_total;
  j["pairs_budget_exceeded"] = report.pairs_budget_exceeded;
  j["wall_time_seconds"] = report.wall_time_seconds;
  return j.dump(2);
}

}  // namespace macrograph
