// Command-line front end. Links only the public C API; all numerics live in
// the shared library. Every run writes <out>/report.json (validating against
// docs/report.schema.json); exit 0 = ok, 1 = input error, 2 = numerical
// failure. With a fixed --seed, reports and artifacts are byte-identical
// across runs (timings are emitted only under --timings).

#include <chrono>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beltrami/beltrami.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct CliError {
  blt_status status;
  std::string message;
};

void check(blt_status status) {
  if (status != BLT_OK) throw CliError{status, blt_last_error()};
}

struct MeshHandle {
  blt_mesh* ptr = nullptr;
  int32_t dropped = 0;
  ~MeshHandle() { blt_mesh_free(ptr); }
};

struct BasisHandle {
  blt_basis* ptr = nullptr;
  ~BasisHandle() { blt_basis_free(ptr); }
};

struct DistanceSetHandle {
  blt_distance_set* ptr = nullptr;
  ~DistanceSetHandle() { blt_distance_set_free(ptr); }
};

struct EmbeddingHandle {
  blt_embedding* ptr = nullptr;
  ~EmbeddingHandle() { blt_embedding_free(ptr); }
};

struct Options {
  std::string mesh_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool timings = false;
  int threads = 1;
  std::string matrix_format = "csv";  // csv | bin

  // numeric parameters shared by subcommands
  int k = 0;
  double alpha = 0.0;
  double epsilon = 1e-8;
  double tol = 1e-9;
  int maxit = 60;
  bool dense = false;
  std::vector<int> n_list;
  int random_fields = 1;
  int trials = 50;
  int source = 0;
  int samples = 0;
  bool refine = false;
  int m = 3;
  double eta = -1.0;
  int dense_cap = 4000;
  std::string method = "classical";
  std::vector<std::string> data_specs;
  std::string mu_spec = "0";
  bool full_stress = false;
};

std::string out_path(const Options& opt, const std::string& name) {
  return (std::filesystem::path(opt.out_dir) / name).string();
}

MeshHandle load_mesh(const Options& opt) {
  MeshHandle mesh;
  check(blt_mesh_load(opt.mesh_path.c_str(), BLT_FORMAT_AUTO, &mesh.ptr, &mesh.dropped));
  return mesh;
}

BasisHandle compute_basis(const Options& opt, const blt_mesh* mesh, int k) {
  BasisHandle basis;
  check(blt_eigs(mesh, k, opt.alpha, opt.epsilon, opt.tol, opt.maxit, opt.seed,
                 opt.dense ? 1 : 0, &basis.ptr));
  return basis;
}

void write_matrix(const Options& opt, const std::string& stem, const std::vector<double>& data,
                  int32_t rows, int32_t cols, json& outputs, const char* csv_header = nullptr) {
  if (opt.matrix_format == "bin") {
    const std::string path = out_path(opt, stem + ".spmx");
    check(blt_write_spmx(path.c_str(), data.data(), rows, cols));
    outputs.push_back(stem + ".spmx");
  } else {
    const std::string path = out_path(opt, stem + ".csv");
    check(blt_write_matrix_csv(path.c_str(), data.data(), rows, cols, csv_header));
    outputs.push_back(stem + ".csv");
  }
}

// Deterministic standard normals for --random-fields (the library RNG is not
// exposed through the C API; the mapping here is pinned, not stdlib-defined).
struct FieldRng {
  std::mt19937_64 gen;
  explicit FieldRng(std::uint64_t seed) : gen(seed) {}
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * uniform());
  }
};

json run_info(const Options& opt, json& outputs) {
  MeshHandle mesh = load_mesh(opt);
  (void)outputs;
  return json{{"vertices", blt_mesh_vertex_count(mesh.ptr)},
              {"faces", blt_mesh_face_count(mesh.ptr)},
              {"edges", blt_mesh_edge_count(mesh.ptr)},
              {"boundary_vertices", blt_mesh_boundary_vertex_count(mesh.ptr)},
              {"euler_characteristic", blt_mesh_euler_characteristic(mesh.ptr)},
              {"surface_area", blt_mesh_surface_area(mesh.ptr)},
              {"closed", blt_mesh_boundary_vertex_count(mesh.ptr) == 0},
              {"dropped_faces", mesh.dropped}};
}

json run_curvature(const Options& opt, json& outputs) {
  MeshHandle mesh = load_mesh(opt);
  const int n = blt_mesh_vertex_count(mesh.ptr);
  std::vector<double> curvature(n), area(n), weights(n);
  double area_scale = 0.0;
  check(blt_curvature(mesh.ptr, curvature.data(), area.data()));
  check(blt_metric_weights(mesh.ptr, opt.alpha, opt.epsilon, weights.data(), &area_scale));

  std::vector<double> table(static_cast<std::size_t>(n) * 4);
  double defect = 0.0;
  for (int v = 0; v < n; ++v) {
    table[v * 4 + 0] = v;
    table[v * 4 + 1] = curvature[v];
    table[v * 4 + 2] = area[v];
    table[v * 4 + 3] = weights[v];
    defect += curvature[v] * area[v];
  }
  const std::string path = out_path(opt, "curvature.csv");
  check(blt_write_matrix_csv(path.c_str(), table.data(), n, 4, "vertex_index,K,area,weight"));
  outputs.push_back("curvature.csv");
  return json{{"alpha", opt.alpha},
              {"area_scale", area_scale},
              {"total_angle_defect", defect},
              {"two_pi_chi", 2.0 * 3.141592653589793 * blt_mesh_euler_characteristic(mesh.ptr)}};
}

json run_eigs(const Options& opt, json& outputs) {
  MeshHandle mesh = load_mesh(opt);
  BasisHandle basis = compute_basis(opt, mesh.ptr, opt.k);
  const int k = blt_basis_size(basis.ptr);
  const int n = blt_basis_dimension(basis.ptr);

  std::vector<double> values(k);
  check(blt_basis_eigenvalues(basis.ptr, values.data()));
  check(blt_write_matrix_csv(out_path(opt, "eigenvalues.csv").c_str(), values.data(), k, 1,
                             "lambda"));
  outputs.push_back("eigenvalues.csv");

  std::vector<double> vectors(static_cast<std::size_t>(n) * k);
  check(blt_basis_eigenvectors(basis.ptr, vectors.data()));
  write_matrix(opt, "eigenvectors", vectors, n, k, outputs);

  json head = json::array();
  for (int i = 0; i < std::min(k, 10); ++i) head.push_back(values[i]);
  return json{{"k", k}, {"lambda_first", head}, {"lambda_max", values[k - 1]}};
}

json run_bound_check(const Options& opt, json& outputs) {
  (void)outputs;
  MeshHandle mesh = load_mesh(opt);
  std::vector<int> orders = opt.n_list.empty() ? std::vector<int>{20} : opt.n_list;
  int max_order = 0;
  for (int n : orders) max_order = std::max(max_order, n);
  const int k = opt.k > 0 ? opt.k : max_order + 1;

  BasisHandle basis = compute_basis(opt, mesh.ptr, k);
  const int nv = blt_basis_dimension(basis.ptr);

  json checks = json::array();
  double max_ratio = 0.0;
  for (int field_idx = 0; field_idx < opt.random_fields; ++field_idx) {
    FieldRng rng(opt.seed * 0x1000003ull + static_cast<std::uint64_t>(field_idx));
    std::vector<double> field(nv);
    for (int v = 0; v < nv; ++v) field[v] = rng.normal();
    for (int order : orders) {
      double report[4];
      check(blt_bound_check(basis.ptr, field.data(), order, report));
      max_ratio = std::max(max_ratio, report[3]);
      checks.push_back(json{{"field", field_idx},
                            {"n", order},
                            {"residual_sq", report[0]},
                            {"dirichlet", report[1]},
                            {"lambda_next", report[2]},
                            {"ratio", report[3]}});
    }
  }
  return json{{"k", k}, {"checks", checks}, {"max_ratio", max_ratio}, {"bound_holds", max_ratio <= 1.0 + 1e-9}};
}

json run_audit(const Options& opt, json& outputs) {
  (void)outputs;
  MeshHandle mesh = load_mesh(opt);
  const int dim = opt.n_list.empty() ? 10 : opt.n_list.front();
  const int k = opt.k > 0 ? opt.k : dim + 1;
  BasisHandle basis = compute_basis(opt, mesh.ptr, k);
  const int nv = blt_basis_dimension(basis.ptr);

  // Reference rival: the leading eigenbasis itself attains ratio 1.
  std::vector<double> vectors(static_cast<std::size_t>(nv) * k);
  check(blt_basis_eigenvectors(basis.ptr, vectors.data()));
  std::vector<double> leading(static_cast<std::size_t>(nv) * dim);
  for (int v = 0; v < nv; ++v) {
    for (int j = 0; j < dim; ++j) leading[v * dim + j] = vectors[v * k + j];
  }
  double eigen_ratio = 0.0;
  check(blt_optimality_audit(basis.ptr, leading.data(), dim, &eigen_ratio));

  std::vector<double> ratios(opt.trials);
  double min_ratio = 0.0, mean_ratio = 0.0;
  check(blt_audit_random(basis.ptr, dim, opt.trials, opt.seed, ratios.data(), &min_ratio,
                         &mean_ratio));

  // Rivals that miss the constant mode have an unbounded ratio (+inf, the
  // ConstantFunction signal); JSON carries them as nulls plus a count.
  json ratio_list = json::array();
  int unbounded = 0;
  double min_finite = std::numeric_limits<double>::infinity();
  for (double r : ratios) {
    if (std::isfinite(r)) {
      ratio_list.push_back(r);
      min_finite = std::min(min_finite, r);
    } else {
      ratio_list.push_back(nullptr);
      ++unbounded;
    }
  }
  json result{{"n", dim},
              {"k", k},
              {"trials", opt.trials},
              {"worst_ratio_eigenbasis", eigen_ratio},
              {"unbounded_trials", unbounded},
              {"ratios", ratio_list},
              {"no_rival_beats_eigenbasis", min_ratio >= 1.0 - 1e-6}};
  result["min_finite_ratio"] =
      std::isfinite(min_finite) ? json(min_finite) : json(nullptr);
  result["mean_ratio"] = std::isfinite(mean_ratio) ? json(mean_ratio) : json(nullptr);
  return result;
}

json run_geodesic(const Options& opt, json& outputs) {
  MeshHandle mesh = load_mesh(opt);
  const int n = blt_mesh_vertex_count(mesh.ptr);

  std::vector<int32_t> sources;
  if (opt.samples > 0) {
    sources.resize(opt.samples);
    check(blt_farthest_point_sample(mesh.ptr, opt.samples, opt.source, sources.data()));
  } else {
    sources = {opt.source};
  }

  DistanceSetHandle set;
  check(blt_distance_rows(mesh.ptr, sources.data(), static_cast<int32_t>(sources.size()),
                          opt.refine ? 1 : 0, &set.ptr));
  const int p = blt_distance_set_sample_count(set.ptr);
  std::vector<double> data(static_cast<std::size_t>(p) * n);
  check(blt_distance_set_data(set.ptr, data.data()));
  write_matrix(opt, "distances", data, p, n, outputs);

  double max_distance = 0.0;
  for (double d : data) max_distance = std::max(max_distance, d);
  return json{{"sources", sources}, {"p", p}, {"max_distance", max_distance}};
}

void write_embedding_off(const Options& opt, const blt_mesh* mesh, const blt_embedding* embedding,
                         json& outputs) {
  const int n = blt_embedding_point_count(embedding);
  const int m = blt_embedding_dimension(embedding);
  std::vector<double> coords(static_cast<std::size_t>(n) * m);
  check(blt_embedding_coords(embedding, coords.data()));
  const int keep = std::min(m, 3);  // OFF is 3-d; extra columns dropped
  std::vector<double> pad(static_cast<std::size_t>(n) * keep);
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < keep; ++c) pad[v * keep + c] = coords[v * m + c];
  }
  blt_mesh* flat = nullptr;
  check(blt_mesh_with_vertices(mesh, pad.data(), keep, &flat));
  const std::string path = out_path(opt, "embedding.off");
  const blt_status s = blt_mesh_save_off(flat, path.c_str());
  blt_mesh_free(flat);
  check(s);
  outputs.push_back("embedding.off");
}

json run_canonical(const Options& opt, json& outputs) {
  MeshHandle mesh = load_mesh(opt);
  const int n = blt_mesh_vertex_count(mesh.ptr);

  if (opt.method == "classical") {
    std::vector<double> distances(static_cast<std::size_t>(n) * n);
    check(blt_all_pairs_distances(mesh.ptr, 0, distances.data()));
    EmbeddingHandle embedding;
    check(blt_classical_mds(distances.data(), n, opt.m, opt.dense_cap, &embedding.ptr));
    write_embedding_off(opt, mesh.ptr, embedding.ptr, outputs);
    json result{{"method", "classical"},
                {"stress", blt_embedding_stress(embedding.ptr)},
                {"p", n},
                {"k", nullptr},
                {"m", opt.m},
                {"degenerate", blt_embedding_degenerate(embedding.ptr) != 0}};
    if (opt.timings) result["elapsed_seconds"] = blt_embedding_elapsed_seconds(embedding.ptr);
    return result;
  }

  if (opt.method != "spectral") {
    throw CliError{BLT_ERR_INVALID_ARGUMENT, "method must be 'classical' or 'spectral'"};
  }
  const int p = opt.samples > 0 ? opt.samples : 50;
  const int k = opt.k > 0 ? opt.k : 100;

  BasisHandle basis = compute_basis(opt, mesh.ptr, k);
  std::vector<int32_t> samples(p);
  check(blt_farthest_point_sample(mesh.ptr, p, opt.source, samples.data()));
  DistanceSetHandle rows;
  check(blt_distance_rows(mesh.ptr, samples.data(), p, 0, &rows.ptr));

  std::vector<double> C(static_cast<std::size_t>(k) * k);
  int underdetermined = 0;
  int32_t cg_iterations = 0;
  check(blt_fit_coefficients(rows.ptr, basis.ptr, opt.eta, C.data(), &underdetermined,
                             &cg_iterations));

  EmbeddingHandle embedding;
  check(blt_spectral_mds(basis.ptr, C.data(), opt.m, rows.ptr, &embedding.ptr));
  write_embedding_off(opt, mesh.ptr, embedding.ptr, outputs);

  json result{{"method", "spectral"},
              {"stress", blt_embedding_stress(embedding.ptr)},
              {"stress_scope", "sampled_rows"},
              {"p", p},
              {"k", k},
              {"m", opt.m},
              {"underdetermined_fit", underdetermined != 0},
              {"cg_iterations", cg_iterations},
              {"degenerate", blt_embedding_degenerate(embedding.ptr) != 0}};
  if (opt.full_stress) {
    std::vector<double> distances(static_cast<std::size_t>(n) * n);
    check(blt_all_pairs_distances(mesh.ptr, 0, distances.data()));
    const int m_dim = blt_embedding_dimension(embedding.ptr);
    std::vector<double> coords(static_cast<std::size_t>(n) * m_dim);
    check(blt_embedding_coords(embedding.ptr, coords.data()));
    double stress_full = 0.0;
    check(blt_stress(coords.data(), n, m_dim, distances.data(), &stress_full));
    result["stress_full"] = stress_full;
  }
  if (opt.timings) result["elapsed_seconds"] = blt_embedding_elapsed_seconds(embedding.ptr);
  return result;
}

// --mu accepts a single scaled value ("0.5") or a log sweep "lo:hi:steps".
std::vector<double> parse_mu_spec(const std::string& spec) {
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) return {std::stod(spec)};
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw CliError{BLT_ERR_INVALID_ARGUMENT, "mu sweep must be lo:hi:steps"};
  }
  const double lo = std::stod(spec.substr(0, c1));
  const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const int steps = std::stoi(spec.substr(c2 + 1));
  if (lo <= 0.0 || hi <= lo || steps < 2) {
    throw CliError{BLT_ERR_INVALID_ARGUMENT, "mu sweep needs 0 < lo < hi and steps >= 2"};
  }
  std::vector<double> mus(steps);
  for (int i = 0; i < steps; ++i) {
    mus[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (steps - 1));
  }
  return mus;
}

json run_rpca(const Options& opt, json& outputs) {
  MeshHandle mesh = load_mesh(opt);
  const int n = blt_mesh_vertex_count(mesh.ptr);

  // Assemble the data matrix column-wise from --data specs.
  std::vector<double> data;  // row-major n x d
  int d = 0;
  bool coords_data = false;
  std::vector<std::vector<double>> blocks;
  std::vector<int> block_cols;
  for (const auto& spec : opt.data_specs) {
    double* raw = nullptr;
    int32_t rows = 0, cols = 0;
    if (spec == "coords") {
      coords_data = true;
      rows = n;
      cols = 3;
      raw = static_cast<double*>(nullptr);
      std::vector<double> xyz(static_cast<std::size_t>(n) * 3);
      check(blt_mesh_vertices(mesh.ptr, xyz.data()));
      blocks.push_back(std::move(xyz));
      block_cols.push_back(3);
      continue;
    }
    const bool spmx = spec.size() > 5 && spec.substr(spec.size() - 5) == ".spmx";
    check(spmx ? blt_read_spmx(spec.c_str(), &raw, &rows, &cols)
               : blt_read_matrix_csv(spec.c_str(), 0, &raw, &rows, &cols));
    std::unique_ptr<double, decltype(&blt_buffer_free)> guard(raw, &blt_buffer_free);
    if (rows != n) {
      throw CliError{BLT_ERR_DIMENSION_MISMATCH,
                     spec + ": data rows do not match mesh vertex count"};
    }
    blocks.emplace_back(raw, raw + static_cast<std::size_t>(rows) * cols);
    block_cols.push_back(cols);
  }
  if (blocks.empty()) throw CliError{BLT_ERR_INVALID_ARGUMENT, "rpca requires at least one --data"};
  for (int c : block_cols) d += c;
  data.resize(static_cast<std::size_t>(n) * d);
  int col_offset = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int v = 0; v < n; ++v) {
      for (int c = 0; c < block_cols[b]; ++c) {
        data[static_cast<std::size_t>(v) * d + col_offset + c] =
            blocks[b][static_cast<std::size_t>(v) * block_cols[b] + c];
      }
    }
    col_offset += block_cols[b];
  }

  const int m = opt.m;
  const std::vector<double> mu_hats = parse_mu_spec(opt.mu_spec);

  std::vector<double> terms;  // mu_hat, mu, projection_error, dirichlet per row
  json mu_report = json::array();
  for (std::size_t i = 0; i < mu_hats.size(); ++i) {
    double mu = 0.0;
    if (mu_hats[i] == 0.0) {
      mu = 0.0;
    } else {
      check(blt_mu_from_scaled(mesh.ptr, data.data(), d, mu_hats[i], &mu));
    }
    std::vector<double> basis(static_cast<std::size_t>(n) * m);
    double projection_error = 0.0, dirichlet = 0.0;
    check(blt_regularized_basis(mesh.ptr, data.data(), d, mu, m, basis.data(), &projection_error,
                                &dirichlet));
    const std::string stem = "basis_mu" + std::to_string(i);
    write_matrix(opt, stem, basis, n, m, outputs);
    terms.insert(terms.end(), {mu_hats[i], mu, projection_error, dirichlet});
    mu_report.push_back(json{{"mu_hat", mu_hats[i]},
                             {"mu", mu},
                             {"projection_error", projection_error},
                             {"dirichlet_energy", dirichlet}});

    if (coords_data) {
      // Reconstruct the coordinate functions through the basis and emit OFF.
      std::vector<double> recon(static_cast<std::size_t>(n) * 3);
      std::vector<double> field(n), out_field(n);
      for (int c = 0; c < 3; ++c) {
        for (int v = 0; v < n; ++v) field[v] = data[static_cast<std::size_t>(v) * d + c];
        check(blt_rpca_reconstruct(mesh.ptr, basis.data(), m, field.data(), out_field.data()));
        for (int v = 0; v < n; ++v) recon[static_cast<std::size_t>(v) * 3 + c] = out_field[v];
      }
      blt_mesh* rmesh = nullptr;
      check(blt_mesh_with_vertices(mesh.ptr, recon.data(), 3, &rmesh));
      const std::string off_name = "reconstruction_mu" + std::to_string(i) + ".off";
      const blt_status s = blt_mesh_save_off(rmesh, out_path(opt, off_name).c_str());
      blt_mesh_free(rmesh);
      check(s);
      outputs.push_back(off_name);
    }
  }

  check(blt_write_matrix_csv(out_path(opt, "objective_terms.csv").c_str(), terms.data(),
                             static_cast<int32_t>(mu_hats.size()), 4,
                             "mu_hat,mu,projection_error,dirichlet_energy"));
  outputs.push_back("objective_terms.csv");
  return json{{"m", m}, {"d", d}, {"sweep", mu_report}};
}

json config_echo(const std::string& sub, const Options& opt) {
  json config{{"mesh", opt.mesh_path}, {"out", opt.out_dir},     {"seed", opt.seed},
              {"threads", opt.threads}, {"format", opt.matrix_format}};
  if (sub == "curvature" || sub == "eigs" || sub == "bound-check" || sub == "audit" ||
      sub == "canonical") {
    config["alpha"] = opt.alpha;
    config["epsilon"] = opt.epsilon;
  }
  if (sub == "eigs" || sub == "bound-check" || sub == "audit" || sub == "canonical") {
    config["k"] = opt.k;
    config["tol"] = opt.tol;
    config["maxit"] = opt.maxit;
    config["dense"] = opt.dense;
  }
  if (sub == "bound-check") {
    config["n"] = opt.n_list.empty() ? std::vector<int>{20} : opt.n_list;
    config["random_fields"] = opt.random_fields;
  }
  if (sub == "audit") {
    config["n"] = opt.n_list.empty() ? 10 : opt.n_list.front();
    config["trials"] = opt.trials;
  }
  if (sub == "geodesic") {
    config["source"] = opt.source;
    config["samples"] = opt.samples;
    config["refine"] = opt.refine;
  }
  if (sub == "canonical") {
    config["method"] = opt.method;
    config["samples"] = opt.samples;
    config["m"] = opt.m;
    config["eta"] = opt.eta;
    config["dense_cap"] = opt.dense_cap;
    config["source"] = opt.source;
    config["full_stress"] = opt.full_stress;
  }
  if (sub == "rpca") {
    config["data"] = opt.data_specs;
    config["mu"] = opt.mu_spec;
    config["m"] = opt.m;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beltrami: spectral geometry processing on triangle meshes"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env_out = std::getenv("BELTRAMI_OUT_DIR")) opt.out_dir = env_out;

  // One Options struct backs every subcommand; shared defaults live in the
  // struct initializers and the few per-subcommand ones are resolved after
  // parsing (default_val would write through the shared storage at
  // registration time, in registration order).
  const auto add_common = [&](CLI::App* sub, bool needs_mesh = true) {
    if (needs_mesh) sub->add_option("--mesh", opt.mesh_path, "input mesh (.off/.obj)")->required();
    sub->add_option("--out", opt.out_dir, "output directory (env BELTRAMI_OUT_DIR)");
    sub->add_option("--seed", opt.seed, "RNG seed; fixed seed gives byte-identical outputs");
    sub->add_flag("--timings", opt.timings, "include wall-clock timings in the report");
    sub->add_option("--threads", opt.threads, "cap internal parallelism");
    sub->add_option("--format", opt.matrix_format, "matrix artifact format: csv | bin")
        ->check(CLI::IsMember({"csv", "bin"}));
  };
  const auto add_spectrum = [&](CLI::App* sub) {
    sub->add_option("--k", opt.k, "number of eigenpairs (0 = subcommand default)");
    sub->add_option("--alpha", opt.alpha, "metric interpolation in [0,1]");
    sub->add_option("--epsilon", opt.epsilon, "curvature floor (nondimensional)");
    sub->add_option("--tol", opt.tol, "eigensolver residual tolerance");
    sub->add_option("--maxit", opt.maxit, "eigensolver block-step cap");
    sub->add_flag("--dense", opt.dense, "force the dense fallback path");
  };

  auto* info = app.add_subcommand("info", "mesh statistics");
  add_common(info);

  auto* curvature = app.add_subcommand("curvature", "Gaussian curvature and metric weights CSV");
  add_common(curvature);
  curvature->add_option("--alpha", opt.alpha, "metric interpolation in [0,1]");
  curvature->add_option("--epsilon", opt.epsilon, "curvature floor (nondimensional)");

  auto* eigs = app.add_subcommand("eigs", "Laplace-Beltrami eigenpairs");
  add_common(eigs);
  add_spectrum(eigs);

  auto* bound = app.add_subcommand("bound-check", "representation error bound report");
  add_common(bound);
  add_spectrum(bound);
  bound->add_option("--n", opt.n_list, "truncation orders (repeatable)");
  bound->add_option("--random-fields", opt.random_fields, "number of seeded random fields");

  auto* audit = app.add_subcommand("audit", "eigenbasis optimality audit");
  add_common(audit);
  add_spectrum(audit);
  audit->add_option("--n", opt.n_list, "rival subspace dimension");
  audit->add_option("--trials", opt.trials, "number of random rival frames");

  auto* geodesic = app.add_subcommand("geodesic", "geodesic distance fields");
  add_common(geodesic);
  geodesic->add_option("--source", opt.source, "source vertex (FPS seed with --samples)");
  geodesic->add_option("--samples", opt.samples, "farthest-point sample count (0 = single source)");
  geodesic->add_flag("--refine", opt.refine, "triangle-unfolding refinement of graph distances");

  auto* canonical = app.add_subcommand("canonical", "flat embedding via classical or spectral MDS");
  add_common(canonical);
  add_spectrum(canonical);
  canonical->add_option("--method", opt.method, "classical | spectral")
      ->check(CLI::IsMember({"classical", "spectral"}));
  canonical->add_option("--samples", opt.samples, "sample count for the spectral path");
  canonical->add_option("--m", opt.m, "embedding dimension");
  canonical->add_option("--eta", opt.eta, "fit regularizer (negative = auto)");
  canonical->add_option("--dense-cap", opt.dense_cap, "classical MDS size cap");
  canonical->add_option("--source", opt.source, "FPS seed vertex");
  canonical->add_flag("--full-stress", opt.full_stress,
                      "also evaluate spectral stress against the full distance matrix");

  auto* rpca = app.add_subcommand("rpca", "regularized PCA basis");
  add_common(rpca);
  rpca->add_option("--data", opt.data_specs,
                   "data matrix file (.csv/.spmx) or 'coords'; repeatable, columns concatenated")
      ->required();
  rpca->add_option("--mu", opt.mu_spec, "scaled mu value or log sweep lo:hi:steps");
  rpca->add_option("--m", opt.m, "basis size")->required();

  std::string subcommand;
  try {
    app.parse(argc, argv);
    CLI::App* parsed = app.get_subcommands().front();
    subcommand = parsed->get_name();
    // Per-subcommand defaults for options backed by shared storage.
    if (subcommand == "curvature" && parsed->count("--alpha") == 0) opt.alpha = 1.0;
    if (subcommand == "eigs" && opt.k == 0) opt.k = 10;
    if (subcommand == "canonical" && opt.k == 0) opt.k = 100;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message; no report without a valid config
    return 1;     // bad flags are input errors
  }

  json report{{"version", blt_version()},
              {"subcommand", subcommand},
              {"config", config_echo(subcommand, opt)},
              {"status", "ok"},
              {"error", nullptr},
              {"outputs", json::array()}};

  int exit_code = 0;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::filesystem::create_directories(opt.out_dir);
    json outputs = json::array();
    json result;
    if (subcommand == "info") result = run_info(opt, outputs);
    else if (subcommand == "curvature") result = run_curvature(opt, outputs);
    else if (subcommand == "eigs") result = run_eigs(opt, outputs);
    else if (subcommand == "bound-check") result = run_bound_check(opt, outputs);
    else if (subcommand == "audit") result = run_audit(opt, outputs);
    else if (subcommand == "geodesic") result = run_geodesic(opt, outputs);
    else if (subcommand == "canonical") result = run_canonical(opt, outputs);
    else if (subcommand == "rpca") result = run_rpca(opt, outputs);
    report["outputs"] = outputs;
    report["result"] = result;
  } catch (const CliError& e) {
    report["status"] = "error";
    report["error"] = json{{"code", static_cast<int>(e.status)},
                           {"name", blt_status_name(e.status)},
                           {"message", e.message},
                           {"numerical", blt_status_is_numerical(e.status) != 0}};
    exit_code = blt_status_is_numerical(e.status) ? 2 : 1;
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = json{{"code", static_cast<int>(BLT_ERR_UNKNOWN)},
                           {"name", "Unknown"},
                           {"message", e.what()},
                           {"numerical", false}};
    exit_code = 1;
  }

  if (opt.timings) {
    report["timings"] = json{
        {"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  }

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  std::ofstream out(out_path(opt, "report.json"));
  out << report.dump(2) << "\n";
  if (!out) {
    std::fprintf(stderr, "failed to write report.json\n");
    return exit_code == 0 ? 1 : exit_code;
  }
  std::printf("%s: %s\n", subcommand.c_str(), report["status"].get<std::string>().c_str());
  return exit_code;
}
