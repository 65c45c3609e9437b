// macrograph: similarity toolkit for macromolecule graphs.
//
// Subcommands: validate, stats, fpstats, submatrix, ged, kernel, matrix.
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 compute error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "macrograph/ged.hpp"
#include "macrograph/kernel.hpp"
#include "macrograph/macrofile.hpp"
#include "macrograph/simmatrix.hpp"
#include "macrograph/substitution.hpp"

namespace {

namespace mg = macrograph;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCompute = 3;

class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationFailure("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationFailure("cannot write '" + path + "'");
  out << content;
}

// library CSV: one "name,smiles" pair per line; an optional "name,smiles"
// header line is skipped
std::map<std::string, std::string> read_library_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::map<std::string, std::string> library;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line == "name,smiles") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == line.size())
      throw ValidationFailure(path + ":" + std::to_string(line_no) +
                              ": expected 'name,smiles'");
    library[line.substr(0, comma)] = line.substr(comma + 1);
  }
  if (library.empty()) throw ValidationFailure(path + ": empty library");
  return library;
}

struct LoadedFile {
  mg::MacroFile file;
  mg::MacroGraph graph;
};

LoadedFile load_macrofile(const std::string& path) {
  LoadedFile loaded;
  try {
    loaded.file = mg::parse_macrofile(read_file(path));
  } catch (const mg::MacroFileError& e) {
    throw ValidationFailure(path + ": " + e.what());
  }
  loaded.graph = mg::to_graph(loaded.file);
  return loaded;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> values;
  std::stringstream ss(csv);
  std::string field;
  while (std::getline(ss, field, ',')) values.push_back(std::stoi(field));
  return values;
}

struct FpFlags {
  int radius = 3;
  int node_bits = 128;
  int edge_bits = 16;
  bool no_stereo = false;

  mg::FingerprintParams node_params() const {
    return {radius, node_bits, !no_stereo};
  }
  mg::FingerprintParams edge_params() const {
    return {radius, edge_bits, !no_stereo};
  }
};

void add_fp_flags(CLI::App* cmd, FpFlags& flags) {
  cmd->add_option("--fp-radius", flags.radius, "Fingerprint radius")
      ->default_val(3);
  cmd->add_option("--node-bits", flags.node_bits, "Node fingerprint length")
      ->default_val(128);
  cmd->add_option("--edge-bits", flags.edge_bits, "Edge fingerprint length")
      ->default_val(16);
  cmd->add_flag("--no-stereo", flags.no_stereo,
                "Drop chirality from atom invariants");
}

int cmd_validate(const std::vector<std::string>& paths) {
  bool all_ok = true;
  for (const std::string& path : paths) {
    try {
      mg::parse_macrofile(read_file(path));
      std::cout << "OK " << path << '\n';
    } catch (const std::exception& e) {
      std::cout << "FAIL " << path << ": " << e.what() << '\n';
      all_ok = false;
    }
  }
  return all_ok ? kExitOk : kExitValidation;
}

int cmd_stats(const std::vector<std::string>& paths) {
  std::cout << "file,n_nodes,n_edges,density\n";
  std::vector<mg::GraphStats> all;
  for (const std::string& path : paths) {
    const LoadedFile loaded = load_macrofile(path);
    const mg::GraphStats stats = mg::graph_stats(loaded.graph);
    all.push_back(stats);
    std::printf("%s,%d,%d,%.6f\n", path.c_str(), stats.n_nodes, stats.n_edges,
                stats.density);
  }
  if (all.size() > 1) {
    std::vector<int> density_bins(10, 0);
    int dense = 0;
    for (const mg::GraphStats& s : all) {
      density_bins[std::min(static_cast<int>(s.density * 10), 9)] += 1;
      dense += s.density > 0.5;
    }
    std::cout << "# density histogram (10 bins on [0,1]):";
    for (int c : density_bins) std::cout << ' ' << c;
    std::cout << "\n# dense graphs (density > 0.5): " << dense << " of "
              << all.size() << '\n';
  }
  return kExitOk;
}

int cmd_fpstats(const std::string& library_path, const std::string& radii_csv,
                const std::string& bits_csv, bool no_stereo,
                const std::string& output) {
  const auto library = read_library_csv(library_path);
  std::vector<mg::FingerprintParams> grid;
  for (int radius : parse_int_list(radii_csv))
    for (int bits : parse_int_list(bits_csv))
      grid.push_back({radius, bits, !no_stereo});
  const auto stats = mg::similarity_stats(library, grid);
  std::ostringstream out;
  out << "radius,bits,mean,std";
  for (int i = 0; i < 50; ++i) out << ",h" << i;
  out << '\n';
  char buf[64];
  for (const mg::SimilarityStats& s : stats) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f", s.params.radius,
                  s.params.n_bits, s.mean, s.stddev);
    out << buf;
    for (int c : s.histogram) out << ',' << c;
    out << '\n';
  }
  write_output(output, out.str());
  return kExitOk;
}

int cmd_submatrix(const std::string& library_path, const FpFlags& fp,
                  const std::string& output) {
  const auto library = read_library_csv(library_path);
  const mg::SubstitutionMatrix matrix =
      mg::build_substitution_matrix(library, fp.node_params());
  if (output.empty() || output == "-") {
    const std::string tmp = fs::temp_directory_path() / "macrograph_submatrix.csv";
    mg::save_matrix_csv(matrix, tmp);
    std::cout << read_file(tmp);
    fs::remove(tmp);
  } else {
    mg::save_matrix_csv(matrix, output);
  }
  return kExitOk;
}

mg::LabelDistance make_distance(const std::optional<mg::SubstitutionMatrix>& matrix) {
  if (matrix) return mg::matrix_label_distance(*matrix);
  return mg::uniform_label_distance();
}

int cmd_ged(const std::string& path_a, const std::string& path_b, double indel,
            double sub, const std::string& submatrix_path,
            const std::string& edge_submatrix_path, int budget, const FpFlags& fp) {
  const LoadedFile a = load_macrofile(path_a);
  const LoadedFile b = load_macrofile(path_b);

  std::map<std::string, std::string> library = a.file.smiles_section;
  library.insert(b.file.smiles_section.begin(), b.file.smiles_section.end());

  std::optional<mg::SubstitutionMatrix> node_matrix, edge_matrix;
  if (!submatrix_path.empty())
    node_matrix = mg::load_matrix_csv(submatrix_path);
  else
    node_matrix = mg::build_substitution_matrix(library, fp.node_params());
  if (!edge_submatrix_path.empty())
    edge_matrix = mg::load_matrix_csv(edge_submatrix_path);
  else
    edge_matrix = mg::build_substitution_matrix(library, fp.edge_params());

  const mg::EditCostConfig costs{indel, sub, sub};
  const mg::GedResult result =
      mg::ged_exact(a.graph, b.graph, costs, make_distance(node_matrix),
                    make_distance(edge_matrix), budget);
  nlohmann::json j = nlohmann::json::parse(result.path.to_json());
  j["distance"] = result.distance;
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

mg::MacroGraph featurized_graph(const LoadedFile& loaded, const FpFlags& fp) {
  mg::FeaturizationScheme scheme;
  scheme.kind = mg::FeaturizationScheme::Kind::Fingerprint;
  scheme.node_params = fp.node_params();
  scheme.edge_params = fp.edge_params();
  return mg::featurize(loaded.graph, scheme, loaded.file.smiles_section);
}

int cmd_kernel(const std::string& path_a, const std::string& path_b,
               double bin_width, const std::string& metric, int iters,
               std::uint64_t seed, const FpFlags& fp) {
  const LoadedFile a = load_macrofile(path_a);
  const LoadedFile b = load_macrofile(path_b);
  mg::KernelConfig cfg;
  cfg.bin_width = bin_width;
  cfg.metric = metric == "L1" ? mg::LshMetric::L1 : mg::LshMetric::L2;
  cfg.t_max = iters;
  cfg.seed = seed;
  const double k =
      mg::propagation_kernel(featurized_graph(a, fp), featurized_graph(b, fp), cfg);
  std::printf("%.6f\n", k);
  return kExitOk;
}

int cmd_matrix(const std::string& dir, const std::string& engine_name,
               double indel, double sub, int budget, double bin_width,
               const std::string& metric, int iters, std::uint64_t seed,
               int workers, bool normalize, const std::string& output,
               const std::string& report_path, const std::string& submatrix_path,
               const std::string& edge_submatrix_path, const FpFlags& fp) {
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw ValidationFailure("no files in '" + dir + "'");

  mg::Corpus corpus;
  const bool is_kernel = engine_name == "kernel";
  for (const std::string& path : paths) {
    const LoadedFile loaded = load_macrofile(path);
    corpus.ids.push_back(fs::path(path).stem().string());
    corpus.graphs.push_back(is_kernel ? featurized_graph(loaded, fp)
                                      : loaded.graph);
    for (const auto& [name, smiles] : loaded.file.smiles_section) {
      const auto it = corpus.library.find(name);
      if (it != corpus.library.end() && it->second != smiles)
        throw ValidationFailure("label '" + name +
                                "' maps to different SMILES across files");
      corpus.library[name] = smiles;
    }
  }

  mg::Engine engine;
  if (is_kernel) {
    mg::KernelConfig cfg;
    cfg.bin_width = bin_width;
    cfg.metric = metric == "L1" ? mg::LshMetric::L1 : mg::LshMetric::L2;
    cfg.t_max = iters;
    cfg.seed = seed;
    engine = mg::KernelEngine{cfg};
  } else {
    mg::GedEngine ged;
    ged.costs = {indel, sub, sub};
    ged.budget = budget;
    ged.node_params = fp.node_params();
    ged.edge_params = fp.edge_params();
    if (!submatrix_path.empty()) ged.node_matrix = mg::load_matrix_csv(submatrix_path);
    if (!edge_submatrix_path.empty())
      ged.edge_matrix = mg::load_matrix_csv(edge_submatrix_path);
    engine = std::move(ged);
  }

  mg::SimilarityReport report = mg::pairwise(corpus, engine, workers);
  if (normalize) report.normalized = mg::row_max_normalize(report.matrix);
  write_output(output, mg::report_to_csv(report, normalize));
  if (!report_path.empty()) write_output(report_path, mg::report_to_json(report));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Macromolecule graph similarity toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Plain-text key=value config; flags win");

  // validate
  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "Check macromolecule files");
  validate->add_option("files", validate_files, "Input files")->required();

  // stats
  std::vector<std::string> stats_files;
  auto* stats = app.add_subcommand("stats", "Graph size and density statistics");
  stats->add_option("files", stats_files, "Input files")->required();

  // fpstats
  std::string fp_library, fp_radii = "3", fp_bits = "128", fp_output;
  bool fp_no_stereo = false;
  auto* fpstats =
      app.add_subcommand("fpstats", "Pairwise Tanimoto statistics for a library");
  fpstats->add_option("library", fp_library, "name,smiles CSV")->required();
  fpstats->add_option("--radii", fp_radii, "Comma list of radii")->capture_default_str();
  fpstats->add_option("--bits", fp_bits, "Comma list of bit lengths")
      ->capture_default_str();
  fpstats->add_flag("--no-stereo", fp_no_stereo, "Drop chirality");
  fpstats->add_option("--output", fp_output, "Output CSV (default stdout)");

  // submatrix
  std::string sm_library, sm_output;
  FpFlags sm_fp;
  auto* submatrix =
      app.add_subcommand("submatrix", "Tanimoto substitution matrix for a library");
  submatrix->add_option("library", sm_library, "name,smiles CSV")->required();
  submatrix->add_option("--output", sm_output, "Output CSV (default stdout)");
  add_fp_flags(submatrix, sm_fp);

  // ged
  std::string ged_a, ged_b, ged_submatrix, ged_edge_submatrix;
  double ged_indel = 1.0, ged_sub = 1.0;
  int ged_budget = mg::kDefaultGedBudget;
  FpFlags ged_fp;
  auto* ged = app.add_subcommand("ged", "Exact graph edit distance of two files");
  ged->add_option("file_a", ged_a)->required();
  ged->add_option("file_b", ged_b)->required();
  ged->add_option("--indel", ged_indel, "Insertion/deletion constant")
      ->capture_default_str();
  ged->add_option("--sub", ged_sub, "Substitution multiplier")->capture_default_str();
  ged->add_option("--submatrix", ged_submatrix, "Node similarity CSV to inject");
  ged->add_option("--edge-submatrix", ged_edge_submatrix,
                  "Edge similarity CSV to inject");
  ged->add_option("--budget", ged_budget, "Node count limit")->capture_default_str();
  add_fp_flags(ged, ged_fp);

  // kernel
  std::string ker_a, ker_b, ker_metric = "L2";
  double ker_w = 1.0;
  int ker_iters = 30;
  std::uint64_t ker_seed = 0;
  FpFlags ker_fp;
  auto* kernel =
      app.add_subcommand("kernel", "Propagation kernel value of two files");
  kernel->add_option("file_a", ker_a)->required();
  kernel->add_option("file_b", ker_b)->required();
  kernel->add_option("--bin-width", ker_w)->capture_default_str();
  kernel->add_option("--metric", ker_metric)->check(CLI::IsMember({"L1", "L2"}))
      ->capture_default_str();
  kernel->add_option("--iters", ker_iters)->capture_default_str();
  kernel->add_option("--seed", ker_seed)->capture_default_str();
  add_fp_flags(kernel, ker_fp);

  // matrix
  std::string mx_dir, mx_engine = "kernel", mx_metric = "L2", mx_output,
              mx_report, mx_submatrix, mx_edge_submatrix;
  double mx_indel = 1.0, mx_sub = 1.0, mx_w = 1.0;
  int mx_budget = mg::kDefaultGedBudget, mx_iters = 30, mx_workers = 1;
  std::uint64_t mx_seed = 0;
  bool mx_normalize = false;
  FpFlags mx_fp;
  auto* matrix =
      app.add_subcommand("matrix", "Pairwise similarity matrix over a directory");
  matrix->add_option("dir", mx_dir, "Directory of macromolecule files")->required();
  matrix->add_option("--engine", mx_engine)->check(CLI::IsMember({"ged", "kernel"}))
      ->capture_default_str();
  matrix->add_option("--indel", mx_indel)->capture_default_str();
  matrix->add_option("--sub", mx_sub)->capture_default_str();
  matrix->add_option("--budget", mx_budget)->capture_default_str();
  matrix->add_option("--bin-width", mx_w)->capture_default_str();
  matrix->add_option("--metric", mx_metric)->check(CLI::IsMember({"L1", "L2"}))
      ->capture_default_str();
  matrix->add_option("--iters", mx_iters)->capture_default_str();
  matrix->add_option("--seed", mx_seed)->capture_default_str();
  matrix->add_option("--workers", mx_workers)->check(CLI::PositiveNumber)
      ->capture_default_str();
  matrix->add_flag("--normalize", mx_normalize, "Row-max normalize the output");
  matrix->add_option("--output", mx_output, "CSV path (default stdout)");
  matrix->add_option("--report", mx_report, "JSON report path");
  matrix->add_option("--submatrix", mx_submatrix, "Node similarity CSV to inject");
  matrix->add_option("--edge-submatrix", mx_edge_submatrix,
                     "Edge similarity CSV to inject");
  add_fp_flags(matrix, mx_fp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_files);
    if (*stats) return cmd_stats(stats_files);
    if (*fpstats)
      return cmd_fpstats(fp_library, fp_radii, fp_bits, fp_no_stereo, fp_output);
    if (*submatrix) return cmd_submatrix(sm_library, sm_fp, sm_output);
    if (*ged)
      return cmd_ged(ged_a, ged_b, ged_indel, ged_sub, ged_submatrix,
                     ged_edge_submatrix, ged_budget, ged_fp);
    if (*kernel)
      return cmd_kernel(ker_a, ker_b, ker_w, ker_metric, ker_iters, ker_seed,
                        ker_fp);
    if (*matrix)
      return cmd_matrix(mx_dir, mx_engine, mx_indel, mx_sub, mx_budget, mx_w,
                        mx_metric, mx_iters, mx_seed, mx_workers, mx_normalize,
                        mx_output, mx_report, mx_submatrix, mx_edge_submatrix,
                        mx_fp);
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const mg::MacroFileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const mg::SmilesError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitUsage;
}
