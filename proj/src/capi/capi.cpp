#include "beltrami/beltrami.h"

#include <cstring>
#include <new>
#include <string>

#include "core/curvature.hpp"
#include "core/eigensolver.hpp"
#include "core/errors.hpp"
#include "core/geodesics.hpp"
#include "core/laplacian.hpp"
#include "core/matrix_io.hpp"
#include "core/mds.hpp"
#include "core/mesh.hpp"
#include "core/rpca.hpp"
#include "core/sampling.hpp"
#include "core/spectral.hpp"

struct blt_mesh {
  beltrami::Mesh impl;
};
struct blt_basis {
  beltrami::SpectralBasis impl;
};
struct blt_distance_set {
  beltrami::DistanceFieldSet impl;
};
struct blt_embedding {
  beltrami::EmbeddingResult impl;
};

namespace {

thread_local std::string g_last_error;

blt_status map_code(beltrami::ErrorCode code) {
  using EC = beltrami::ErrorCode;
  switch (code) {
    case EC::ParseError: return BLT_ERR_PARSE;
    case EC::NonManifold: return BLT_ERR_NONMANIFOLD;
    case EC::EmptyMesh: return BLT_ERR_EMPTY_MESH;
    case EC::InvalidCount: return BLT_ERR_INVALID_COUNT;
    case EC::InvalidAlpha: return BLT_ERR_INVALID_ALPHA;
    case EC::InvalidEpsilon: return BLT_ERR_INVALID_EPSILON;
    case EC::DimensionMismatch: return BLT_ERR_DIMENSION_MISMATCH;
    case EC::ConvergenceFailure: return BLT_ERR_CONVERGENCE;
    case EC::DisconnectedMesh: return BLT_ERR_DISCONNECTED;
    case EC::ConstantFunction: return BLT_ERR_CONSTANT_FUNCTION;
    case EC::RankDeficientRival: return BLT_ERR_RANK_DEFICIENT;
    case EC::DegenerateSampling: return BLT_ERR_DEGENERATE_SAMPLING;
    case EC::AsymmetricInput: return BLT_ERR_ASYMMETRIC_INPUT;
    case EC::TooLarge: return BLT_ERR_TOO_LARGE;
    case EC::NegativeMu: return BLT_ERR_NEGATIVE_MU;
    case EC::InvalidArgument: return BLT_ERR_INVALID_ARGUMENT;
    case EC::IoError: return BLT_ERR_IO;
  }
  return BLT_ERR_UNKNOWN;
}

template <typename Fn>
blt_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return BLT_OK;
  } catch (const beltrami::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BLT_ERR_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BLT_ERR_UNKNOWN;
  }
}

blt_status require(bool ok, const char* message) {
  if (ok) return BLT_OK;
  g_last_error = message;
  return BLT_ERR_INVALID_ARGUMENT;
}

void copy_row_major(const Eigen::MatrixXd& m, double* out) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out, m.rows(), m.cols()) = m;
}

Eigen::MatrixXd from_row_major(const double* data, int32_t rows, int32_t cols) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      data, rows, cols);
}

// Regular-metric mass for the RPCA entry points.
Eigen::VectorXd plain_mass(const beltrami::Mesh& mesh) { return beltrami::assemble_mass(mesh); }

}  // namespace

extern "C" {

const char* blt_version(void) { return "1.0.0"; }

const char* blt_last_error(void) { return g_last_error.c_str(); }

const char* blt_status_name(blt_status status) {
  switch (status) {
    case BLT_OK: return "Ok";
    case BLT_ERR_PARSE: return "ParseError";
    case BLT_ERR_NONMANIFOLD: return "NonManifold";
    case BLT_ERR_EMPTY_MESH: return "EmptyMesh";
    case BLT_ERR_INVALID_COUNT: return "InvalidCount";
    case BLT_ERR_INVALID_ALPHA: return "InvalidAlpha";
    case BLT_ERR_INVALID_EPSILON: return "InvalidEpsilon";
    case BLT_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case BLT_ERR_CONVERGENCE: return "ConvergenceFailure";
    case BLT_ERR_DISCONNECTED: return "DisconnectedMesh";
    case BLT_ERR_CONSTANT_FUNCTION: return "ConstantFunction";
    case BLT_ERR_RANK_DEFICIENT: return "RankDeficientRival";
    case BLT_ERR_DEGENERATE_SAMPLING: return "DegenerateSampling";
    case BLT_ERR_ASYMMETRIC_INPUT: return "AsymmetricInput";
    case BLT_ERR_TOO_LARGE: return "TooLarge";
    case BLT_ERR_NEGATIVE_MU: return "NegativeMu";
    case BLT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case BLT_ERR_IO: return "IoError";
    case BLT_ERR_UNKNOWN: return "Unknown";
  }
  return "Unknown";
}

int blt_status_is_numerical(blt_status status) { return status == BLT_ERR_CONVERGENCE ? 1 : 0; }

/* ---- mesh ---- */

blt_status blt_mesh_load(const char* path, blt_mesh_format format, blt_mesh** out,
                         int32_t* dropped_faces) {
  if (auto s = require(path && out, "path and out must be non-null")) return s;
  return guarded([&] {
    beltrami::LoadResult r =
        format == BLT_FORMAT_AUTO
            ? beltrami::load_mesh(path)
            : beltrami::load_mesh(path, format == BLT_FORMAT_OFF ? beltrami::MeshFormat::Off
                                                                 : beltrami::MeshFormat::Obj);
    if (dropped_faces) *dropped_faces = r.dropped_faces;
    *out = new blt_mesh{std::move(r.mesh)};
  });
}

void blt_mesh_free(blt_mesh* mesh) { delete mesh; }

int32_t blt_mesh_vertex_count(const blt_mesh* mesh) { return mesh ? mesh->impl.vertex_count() : 0; }
int32_t blt_mesh_face_count(const blt_mesh* mesh) { return mesh ? mesh->impl.face_count() : 0; }
int32_t blt_mesh_boundary_vertex_count(const blt_mesh* mesh) {
  return mesh ? mesh->impl.boundary_vertex_count() : 0;
}
int32_t blt_mesh_edge_count(const blt_mesh* mesh) { return mesh ? mesh->impl.edge_count() : 0; }
int32_t blt_mesh_euler_characteristic(const blt_mesh* mesh) {
  return mesh ? mesh->impl.euler_characteristic() : 0;
}
double blt_mesh_surface_area(const blt_mesh* mesh) { return mesh ? mesh->impl.surface_area() : 0.0; }

blt_status blt_mesh_vertices(const blt_mesh* mesh, double* out) {
  if (auto s = require(mesh && out, "mesh and out must be non-null")) return s;
  return guarded([&] { copy_row_major(mesh->impl.vertices, out); });
}

blt_status blt_mesh_faces(const blt_mesh* mesh, int32_t* out) {
  if (auto s = require(mesh && out, "mesh and out must be non-null")) return s;
  for (int f = 0; f < mesh->impl.face_count(); ++f) {
    for (int c = 0; c < 3; ++c) out[f * 3 + c] = mesh->impl.faces[f][c];
  }
  return BLT_OK;
}

blt_status blt_mesh_boundary_flags(const blt_mesh* mesh, int32_t* out) {
  if (auto s = require(mesh && out, "mesh and out must be non-null")) return s;
  for (int v = 0; v < mesh->impl.vertex_count(); ++v) out[v] = mesh->impl.boundary[v];
  return BLT_OK;
}

blt_status blt_mesh_save_off(const blt_mesh* mesh, const char* path) {
  if (auto s = require(mesh && path, "mesh and path must be non-null")) return s;
  return guarded([&] { beltrami::save_mesh_off(mesh->impl, path); });
}

blt_status blt_mesh_save_obj(const blt_mesh* mesh, const char* path) {
  if (auto s = require(mesh && path, "mesh and path must be non-null")) return s;
  return guarded([&] { beltrami::save_mesh_obj(mesh->impl, path); });
}

blt_status blt_mesh_with_vertices(const blt_mesh* mesh, const double* coords, int32_t m,
                                  blt_mesh** out) {
  if (auto s = require(mesh && coords && out, "mesh, coords, out must be non-null")) return s;
  return guarded([&] {
    *out = new blt_mesh{
        beltrami::with_vertices(mesh->impl, from_row_major(coords, mesh->impl.vertex_count(), m))};
  });
}

blt_status blt_mesh_scaled(const blt_mesh* mesh, double factor, blt_mesh** out) {
  if (auto s = require(mesh && out, "mesh and out must be non-null")) return s;
  return guarded([&] { *out = new blt_mesh{beltrami::scaled(mesh->impl, factor)}; });
}

/* ---- curvature ---- */

blt_status blt_curvature(const blt_mesh* mesh, double* curvature, double* vertex_area) {
  if (auto s = require(mesh != nullptr, "mesh must be non-null")) return s;
  return guarded([&] {
    const auto field = beltrami::gaussian_curvature(mesh->impl);
    const auto n = field.curvature.size();
    if (curvature) std::memcpy(curvature, field.curvature.data(), sizeof(double) * n);
    if (vertex_area) std::memcpy(vertex_area, field.vertex_area.data(), sizeof(double) * n);
  });
}

blt_status blt_metric_weights(const blt_mesh* mesh, double alpha, double epsilon, double* weights,
                              double* area_scale) {
  if (auto s = require(mesh && weights, "mesh and weights must be non-null")) return s;
  return guarded([&] {
    const auto w =
        beltrami::metric_weights(beltrami::gaussian_curvature(mesh->impl), alpha, epsilon);
    std::memcpy(weights, w.weights.data(), sizeof(double) * w.weights.size());
    if (area_scale) *area_scale = w.area_scale;
  });
}

/* ---- eigenpairs ---- */

blt_status blt_eigs(const blt_mesh* mesh, int32_t k, double alpha, double epsilon, double tol,
                    int32_t max_steps, uint64_t seed, int use_dense, blt_basis** out) {
  if (auto s = require(mesh && out, "mesh and out must be non-null")) return s;
  return guarded([&] {
    const auto curv = beltrami::gaussian_curvature(mesh->impl);
    const auto weights = beltrami::metric_weights(curv, alpha, epsilon);
    const auto L = beltrami::assemble_stiffness(mesh->impl);
    const auto mass = beltrami::assemble_mass(mesh->impl, weights);
    beltrami::EigenOptions opts;
    if (tol > 0.0) opts.tol = tol;
    if (max_steps > 0) opts.max_block_steps = max_steps;
    opts.seed = seed;
    *out = new blt_basis{use_dense ? beltrami::dense_eigenpairs(L, mass, k)
                                   : beltrami::smallest_eigenpairs(L, mass, k, opts)};
  });
}

void blt_basis_free(blt_basis* basis) { delete basis; }

int32_t blt_basis_size(const blt_basis* basis) { return basis ? basis->impl.size() : 0; }
int32_t blt_basis_dimension(const blt_basis* basis) { return basis ? basis->impl.dimension() : 0; }

blt_status blt_basis_eigenvalues(const blt_basis* basis, double* out) {
  if (auto s = require(basis && out, "basis and out must be non-null")) return s;
  std::memcpy(out, basis->impl.eigenvalues.data(), sizeof(double) * basis->impl.size());
  return BLT_OK;
}

blt_status blt_basis_eigenvectors(const blt_basis* basis, double* out) {
  if (auto s = require(basis && out, "basis and out must be non-null")) return s;
  copy_row_major(basis->impl.eigenvectors, out);
  return BLT_OK;
}

blt_status blt_basis_mass(const blt_basis* basis, double* out) {
  if (auto s = require(basis && out, "basis and out must be non-null")) return s;
  std::memcpy(out, basis->impl.mass.data(), sizeof(double) * basis->impl.dimension());
  return BLT_OK;
}

/* ---- spectral analysis ---- */

blt_status blt_project(const blt_basis* basis, const double* field, int32_t modes,
                       double* coefficients, double* reconstruction) {
  if (auto s = require(basis && field, "basis and field must be non-null")) return s;
  return guarded([&] {
    const Eigen::Map<const Eigen::VectorXd> f(field, basis->impl.dimension());
    const auto r = beltrami::project(f, basis->impl, modes);
    if (coefficients) std::memcpy(coefficients, r.coefficients.data(), sizeof(double) * modes);
    if (reconstruction) {
      std::memcpy(reconstruction, r.reconstruction.data(),
                  sizeof(double) * basis->impl.dimension());
    }
  });
}

blt_status blt_bound_check(const blt_basis* basis, const double* field, int32_t modes,
                           double out[4]) {
  if (auto s = require(basis && field && out, "basis, field, out must be non-null")) return s;
  return guarded([&] {
    const Eigen::Map<const Eigen::VectorXd> f(field, basis->impl.dimension());
    const auto report = beltrami::bound_check(f, basis->impl, modes);
    out[0] = report.residual_sq;
    out[1] = report.dirichlet;
    out[2] = report.lambda_next;
    out[3] = report.ratio;
  });
}

blt_status blt_optimality_audit(const blt_basis* basis, const double* rival, int32_t dim,
                                double* worst_ratio) {
  if (auto s = require(basis && rival && worst_ratio, "arguments must be non-null")) return s;
  return guarded([&] {
    *worst_ratio =
        beltrami::optimality_audit(basis->impl, from_row_major(rival, basis->impl.dimension(), dim));
  });
}

blt_status blt_audit_random(const blt_basis* basis, int32_t dim, int32_t trials, uint64_t seed,
                            double* ratios, double* min_ratio, double* mean_ratio) {
  if (auto s = require(basis != nullptr, "basis must be non-null")) return s;
  return guarded([&] {
    const auto sweep = beltrami::audit_random_rivals(basis->impl, dim, trials, seed);
    if (ratios) std::memcpy(ratios, sweep.ratios.data(), sizeof(double) * trials);
    if (min_ratio) *min_ratio = sweep.min_ratio;
    if (mean_ratio) *mean_ratio = sweep.mean_ratio;
  });
}

/* ---- geodesics and sampling ---- */

blt_status blt_distance_field(const blt_mesh* mesh, int32_t source, int refine, double* out) {
  if (auto s = require(mesh && out, "mesh and out must be non-null")) return s;
  return guarded([&] {
    const auto d = beltrami::distance_field(mesh->impl, source, refine != 0);
    std::memcpy(out, d.data(), sizeof(double) * d.size());
  });
}

blt_status blt_farthest_point_sample(const blt_mesh* mesh, int32_t count, int32_t seed_vertex,
                                     int32_t* out_indices) {
  if (auto s = require(mesh && out_indices, "mesh and out must be non-null")) return s;
  return guarded([&] {
    const auto set = beltrami::farthest_point_sample(mesh->impl, count, seed_vertex);
    for (int i = 0; i < count; ++i) out_indices[i] = set.indices[i];
  });
}

blt_status blt_distance_rows(const blt_mesh* mesh, const int32_t* samples, int32_t count,
                             int refine, blt_distance_set** out) {
  if (auto s = require(mesh && samples && out, "arguments must be non-null")) return s;
  return guarded([&] {
    beltrami::SampleSet set;
    set.method = beltrami::SampleSet::Method::Explicit;
    set.indices.assign(samples, samples + count);
    for (int idx : set.indices) {
      if (idx < 0 || idx >= mesh->impl.vertex_count()) {
        beltrami::fail(beltrami::ErrorCode::InvalidCount, "sample index out of range");
      }
    }
    *out = new blt_distance_set{beltrami::distance_rows(mesh->impl, set, refine != 0)};
  });
}

void blt_distance_set_free(blt_distance_set* set) { delete set; }

int32_t blt_distance_set_sample_count(const blt_distance_set* set) {
  return set ? set->impl.sample_count() : 0;
}
int32_t blt_distance_set_vertex_count(const blt_distance_set* set) {
  return set ? set->impl.vertex_count() : 0;
}

blt_status blt_distance_set_samples(const blt_distance_set* set, int32_t* out) {
  if (auto s = require(set && out, "set and out must be non-null")) return s;
  for (int i = 0; i < set->impl.sample_count(); ++i) out[i] = set->impl.sources.indices[i];
  return BLT_OK;
}

blt_status blt_distance_set_data(const blt_distance_set* set, double* out) {
  if (auto s = require(set && out, "set and out must be non-null")) return s;
  copy_row_major(set->impl.fields, out);
  return BLT_OK;
}

blt_status blt_all_pairs_distances(const blt_mesh* mesh, int refine, double* out) {
  if (auto s = require(mesh && out, "mesh and out must be non-null")) return s;
  return guarded([&] { copy_row_major(beltrami::all_pairs_distances(mesh->impl, refine != 0), out); });
}

/* ---- MDS ---- */

blt_status blt_classical_mds(const double* distances, int32_t n, int32_t m, int32_t dense_cap,
                             blt_embedding** out) {
  if (auto s = require(distances && out, "distances and out must be non-null")) return s;
  return guarded([&] {
    *out = new blt_embedding{beltrami::classical_mds(from_row_major(distances, n, n), m,
                                                     dense_cap > 0 ? dense_cap : 4000)};
  });
}

blt_status blt_fit_coefficients(const blt_distance_set* fields, const blt_basis* basis, double eta,
                                double* C_out, int* underdetermined, int32_t* cg_iterations) {
  if (auto s = require(fields && basis && C_out, "arguments must be non-null")) return s;
  return guarded([&] {
    const double eta_eff = eta < 0.0 ? beltrami::default_eta(fields->impl) : eta;
    const auto fit = beltrami::fit_coefficients(fields->impl, basis->impl, eta_eff);
    copy_row_major(fit.coefficients, C_out);
    if (underdetermined) *underdetermined = fit.underdetermined ? 1 : 0;
    if (cg_iterations) *cg_iterations = fit.cg_iterations;
  });
}

blt_status blt_spectral_mds(const blt_basis* basis, const double* C, int32_t m,
                            const blt_distance_set* stress_ref, blt_embedding** out) {
  if (auto s = require(basis && C && out, "arguments must be non-null")) return s;
  return guarded([&] {
    const auto k = basis->impl.size();
    *out = new blt_embedding{beltrami::spectral_mds(from_row_major(C, k, k), basis->impl, m,
                                                    stress_ref ? &stress_ref->impl : nullptr)};
  });
}

void blt_embedding_free(blt_embedding* embedding) { delete embedding; }

int32_t blt_embedding_point_count(const blt_embedding* e) {
  return e ? static_cast<int32_t>(e->impl.coordinates.rows()) : 0;
}
int32_t blt_embedding_dimension(const blt_embedding* e) {
  return e ? static_cast<int32_t>(e->impl.coordinates.cols()) : 0;
}

blt_status blt_embedding_coords(const blt_embedding* e, double* out) {
  if (auto s = require(e && out, "embedding and out must be non-null")) return s;
  copy_row_major(e->impl.coordinates, out);
  return BLT_OK;
}

void blt_embedding_beta_shape(const blt_embedding* e, int32_t* rows, int32_t* cols) {
  if (rows) *rows = e ? static_cast<int32_t>(e->impl.beta.rows()) : 0;
  if (cols) *cols = e ? static_cast<int32_t>(e->impl.beta.cols()) : 0;
}

blt_status blt_embedding_beta(const blt_embedding* e, double* out) {
  if (auto s = require(e && out, "embedding and out must be non-null")) return s;
  copy_row_major(e->impl.beta, out);
  return BLT_OK;
}

double blt_embedding_stress(const blt_embedding* e) { return e ? e->impl.stress : 0.0; }
double blt_embedding_elapsed_seconds(const blt_embedding* e) {
  return e ? e->impl.elapsed_seconds : 0.0;
}
int blt_embedding_degenerate(const blt_embedding* e) { return e && e->impl.degenerate ? 1 : 0; }

blt_status blt_stress(const double* coords, int32_t n, int32_t m, const double* distances,
                      double* out) {
  if (auto s = require(coords && distances && out, "arguments must be non-null")) return s;
  return guarded([&] {
    *out = beltrami::embedding_stress(from_row_major(coords, n, m), from_row_major(distances, n, n));
  });
}

/* ---- RPCA ---- */

blt_status blt_weighted_pca(const blt_mesh* mesh, const double* data, int32_t d, int32_t m,
                            double* basis_out, double* projection_error) {
  if (auto s = require(mesh && data && basis_out, "arguments must be non-null")) return s;
  return guarded([&] {
    const auto r = beltrami::weighted_pca(
        from_row_major(data, mesh->impl.vertex_count(), d), plain_mass(mesh->impl), m);
    copy_row_major(r.basis, basis_out);
    if (projection_error) *projection_error = r.projection_error;
  });
}

blt_status blt_regularized_basis(const blt_mesh* mesh, const double* data, int32_t d, double mu,
                                 int32_t m, double* basis_out, double* projection_error,
                                 double* dirichlet_energy) {
  if (auto s = require(mesh && data && basis_out, "arguments must be non-null")) return s;
  return guarded([&] {
    const auto r = beltrami::regularized_basis(from_row_major(data, mesh->impl.vertex_count(), d),
                                               beltrami::assemble_stiffness(mesh->impl),
                                               plain_mass(mesh->impl), mu, m);
    copy_row_major(r.basis, basis_out);
    if (projection_error) *projection_error = r.projection_error;
    if (dirichlet_energy) *dirichlet_energy = r.dirichlet_energy;
  });
}

blt_status blt_mu_from_scaled(const blt_mesh* mesh, const double* data, int32_t d, double mu_hat,
                              double* mu) {
  if (auto s = require(mesh && data && mu, "arguments must be non-null")) return s;
  return guarded([&] {
    *mu = beltrami::mu_from_scaled(mu_hat, from_row_major(data, mesh->impl.vertex_count(), d),
                                   beltrami::assemble_stiffness(mesh->impl), plain_mass(mesh->impl));
  });
}

blt_status blt_rpca_reconstruct(const blt_mesh* mesh, const double* basis, int32_t m,
                                const double* field, double* out) {
  if (auto s = require(mesh && basis && field && out, "arguments must be non-null")) return s;
  return guarded([&] {
    const int n = mesh->impl.vertex_count();
    beltrami::RegularizedBasis rb;
    rb.basis = from_row_major(basis, n, m);
    const Eigen::Map<const Eigen::VectorXd> f(field, n);
    const auto r = beltrami::rpca_reconstruct(f, rb, plain_mass(mesh->impl));
    std::memcpy(out, r.data(), sizeof(double) * n);
  });
}

/* ---- matrix files ---- */

blt_status blt_write_spmx(const char* path, const double* data, int32_t rows, int32_t cols) {
  if (auto s = require(path && data, "path and data must be non-null")) return s;
  return guarded([&] { beltrami::write_spmx(path, from_row_major(data, rows, cols)); });
}

blt_status blt_read_spmx(const char* path, double** data, int32_t* rows, int32_t* cols) {
  if (auto s = require(path && data && rows && cols, "arguments must be non-null")) return s;
  return guarded([&] {
    const Eigen::MatrixXd m = beltrami::read_spmx(path);
    *rows = static_cast<int32_t>(m.rows());
    *cols = static_cast<int32_t>(m.cols());
    *data = static_cast<double*>(::operator new(sizeof(double) * std::max<std::size_t>(m.size(), 1)));
    copy_row_major(m, *data);
  });
}

blt_status blt_write_matrix_csv(const char* path, const double* data, int32_t rows, int32_t cols,
                                const char* header) {
  if (auto s = require(path && data, "path and data must be non-null")) return s;
  return guarded([&] {
    std::vector<std::string> head;
    if (header && *header) {
      std::string h(header);
      std::size_t pos = 0;
      while (pos != std::string::npos) {
        const auto next = h.find(',', pos);
        head.push_back(h.substr(pos, next == std::string::npos ? next : next - pos));
        pos = next == std::string::npos ? next : next + 1;
      }
    }
    beltrami::write_matrix_csv(path, from_row_major(data, rows, cols), head);
  });
}

blt_status blt_read_matrix_csv(const char* path, int skip_header, double** data, int32_t* rows,
                               int32_t* cols) {
  if (auto s = require(path && data && rows && cols, "arguments must be non-null")) return s;
  return guarded([&] {
    const Eigen::MatrixXd m = beltrami::read_matrix_csv(path, skip_header != 0);
    *rows = static_cast<int32_t>(m.rows());
    *cols = static_cast<int32_t>(m.cols());
    *data = static_cast<double*>(::operator new(sizeof(double) * std::max<std::size_t>(m.size(), 1)));
    copy_row_major(m, *data);
  });
}

void blt_buffer_free(void* buffer) { ::operator delete(buffer); }

} /* extern "C" */
