/* beltrami: spectral geometry processing on triangle meshes.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed by the library; every fallible call returns a blt_status and
 * leaves a human-readable message in blt_last_error() (thread-local) on
 * failure. Buffers are caller-allocated unless stated otherwise; matrices
 * are row-major double arrays.
 */
#ifndef BELTRAMI_H
#define BELTRAMI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum blt_status {
  BLT_OK = 0,
  BLT_ERR_PARSE = 1,
  BLT_ERR_NONMANIFOLD = 2,
  BLT_ERR_EMPTY_MESH = 3,
  BLT_ERR_INVALID_COUNT = 4,
  BLT_ERR_INVALID_ALPHA = 5,
  BLT_ERR_INVALID_EPSILON = 6,
  BLT_ERR_DIMENSION_MISMATCH = 7,
  BLT_ERR_CONVERGENCE = 8,
  BLT_ERR_DISCONNECTED = 9,
  BLT_ERR_CONSTANT_FUNCTION = 10,
  BLT_ERR_RANK_DEFICIENT = 11,
  BLT_ERR_DEGENERATE_SAMPLING = 12,
  BLT_ERR_ASYMMETRIC_INPUT = 13,
  BLT_ERR_TOO_LARGE = 14,
  BLT_ERR_NEGATIVE_MU = 15,
  BLT_ERR_INVALID_ARGUMENT = 16,
  BLT_ERR_IO = 17,
  BLT_ERR_UNKNOWN = 18
} blt_status;

typedef enum blt_mesh_format {
  BLT_FORMAT_AUTO = -1,
  BLT_FORMAT_OFF = 0,
  BLT_FORMAT_OBJ = 1
} blt_mesh_format;

typedef struct blt_mesh blt_mesh;
typedef struct blt_basis blt_basis;
typedef struct blt_distance_set blt_distance_set;
typedef struct blt_embedding blt_embedding;

const char* blt_version(void);
const char* blt_last_error(void);
const char* blt_status_name(blt_status status);
/* Nonzero for numerical failures (CLI exit 2); zero for input errors. */
int blt_status_is_numerical(blt_status status);

/* ---- mesh ---- */

blt_status blt_mesh_load(const char* path, blt_mesh_format format, blt_mesh** out,
                         int32_t* dropped_faces);
void blt_mesh_free(blt_mesh* mesh);
int32_t blt_mesh_vertex_count(const blt_mesh* mesh);
int32_t blt_mesh_face_count(const blt_mesh* mesh);
int32_t blt_mesh_boundary_vertex_count(const blt_mesh* mesh);
int32_t blt_mesh_edge_count(const blt_mesh* mesh);
int32_t blt_mesh_euler_characteristic(const blt_mesh* mesh);
double blt_mesh_surface_area(const blt_mesh* mesh);
blt_status blt_mesh_vertices(const blt_mesh* mesh, double* out_xyz /* 3n */);
blt_status blt_mesh_faces(const blt_mesh* mesh, int32_t* out_indices /* 3f */);
blt_status blt_mesh_boundary_flags(const blt_mesh* mesh, int32_t* out /* n */);
blt_status blt_mesh_save_off(const blt_mesh* mesh, const char* path);
blt_status blt_mesh_save_obj(const blt_mesh* mesh, const char* path);
/* Same connectivity with replaced positions; coords is n x m row-major,
 * m in 1..3, missing coordinates zero-padded. */
blt_status blt_mesh_with_vertices(const blt_mesh* mesh, const double* coords, int32_t m,
                                  blt_mesh** out);
blt_status blt_mesh_scaled(const blt_mesh* mesh, double factor, blt_mesh** out);

/* ---- curvature and pseudometric weights ---- */

/* Angle-defect Gaussian curvature and barycentric vertex areas (each length
 * n; either output may be NULL). */
blt_status blt_curvature(const blt_mesh* mesh, double* curvature, double* vertex_area);
/* w_v = (max(|K_v| s^2, epsilon))^alpha with s^2 = area/(4 pi); area_scale
 * receives s^2 when non-NULL. */
blt_status blt_metric_weights(const blt_mesh* mesh, double alpha, double epsilon,
                              double* weights, double* area_scale);

/* ---- Laplace-Beltrami eigenpairs ---- */

/* k smallest eigenpairs of the LBO under the interpolated pseudometric.
 * tol <= 0 and max_steps <= 0 select the defaults (1e-9, 60). use_dense
 * forces the dense fallback path. */
blt_status blt_eigs(const blt_mesh* mesh, int32_t k, double alpha, double epsilon, double tol,
                    int32_t max_steps, uint64_t seed, int use_dense, blt_basis** out);
void blt_basis_free(blt_basis* basis);
int32_t blt_basis_size(const blt_basis* basis);
int32_t blt_basis_dimension(const blt_basis* basis);
blt_status blt_basis_eigenvalues(const blt_basis* basis, double* out /* k */);
/* Row-major n x k: out[v*k + i] = phi_i(v). */
blt_status blt_basis_eigenvectors(const blt_basis* basis, double* out);
blt_status blt_basis_mass(const blt_basis* basis, double* out /* n */);

/* ---- spectral analysis ---- */

blt_status blt_project(const blt_basis* basis, const double* field, int32_t modes,
                       double* coefficients /* modes, may be NULL */,
                       double* reconstruction /* n, may be NULL */);
/* out = {residual_sq, dirichlet, lambda_next, ratio}. */
blt_status blt_bound_check(const blt_basis* basis, const double* field, int32_t modes,
                           double out[4]);
/* rival: row-major n x dim (dim independent fields as columns). */
blt_status blt_optimality_audit(const blt_basis* basis, const double* rival, int32_t dim,
                                double* worst_ratio);
blt_status blt_audit_random(const blt_basis* basis, int32_t dim, int32_t trials, uint64_t seed,
                            double* ratios /* trials, may be NULL */, double* min_ratio,
                            double* mean_ratio);

/* ---- geodesic distances and sampling ---- */

blt_status blt_distance_field(const blt_mesh* mesh, int32_t source, int refine,
                              double* out /* n */);
blt_status blt_farthest_point_sample(const blt_mesh* mesh, int32_t count, int32_t seed_vertex,
                                     int32_t* out_indices /* count */);
blt_status blt_distance_rows(const blt_mesh* mesh, const int32_t* samples, int32_t count,
                             int refine, blt_distance_set** out);
void blt_distance_set_free(blt_distance_set* set);
int32_t blt_distance_set_sample_count(const blt_distance_set* set);
int32_t blt_distance_set_vertex_count(const blt_distance_set* set);
blt_status blt_distance_set_samples(const blt_distance_set* set, int32_t* out);
/* Row-major p x n. */
blt_status blt_distance_set_data(const blt_distance_set* set, double* out);
/* Full n x n matrix, row-major. */
blt_status blt_all_pairs_distances(const blt_mesh* mesh, int refine, double* out);

/* ---- multidimensional scaling ---- */

/* distances: row-major n x n, symmetric, zero diagonal. dense_cap <= 0
 * selects the default (4000). */
blt_status blt_classical_mds(const double* distances, int32_t n, int32_t m, int32_t dense_cap,
                             blt_embedding** out);
/* eta < 0 selects the default 1e-6 * mean(D2_pp). C_out: row-major k x k. */
blt_status blt_fit_coefficients(const blt_distance_set* fields, const blt_basis* basis,
                                double eta, double* C_out, int* underdetermined,
                                int32_t* cg_iterations);
/* stress_ref may be NULL (stress reported as NaN unless the embedding is
 * degenerate, which pins stress to 1). */
blt_status blt_spectral_mds(const blt_basis* basis, const double* C, int32_t m,
                            const blt_distance_set* stress_ref, blt_embedding** out);
void blt_embedding_free(blt_embedding* embedding);
int32_t blt_embedding_point_count(const blt_embedding* embedding);
int32_t blt_embedding_dimension(const blt_embedding* embedding);
blt_status blt_embedding_coords(const blt_embedding* embedding, double* out /* n x m */);
void blt_embedding_beta_shape(const blt_embedding* embedding, int32_t* rows, int32_t* cols);
blt_status blt_embedding_beta(const blt_embedding* embedding, double* out);
double blt_embedding_stress(const blt_embedding* embedding);
double blt_embedding_elapsed_seconds(const blt_embedding* embedding);
int blt_embedding_degenerate(const blt_embedding* embedding);
/* Normalized stress of arbitrary coordinates against a full distance matrix. */
blt_status blt_stress(const double* coords, int32_t n, int32_t m, const double* distances,
                      double* out);

/* ---- regularized PCA ---- */

/* data: row-major n x d, one per-vertex field per column. basis_out:
 * row-major n x m. Mass/stiffness are the regular-metric (alpha = 0) ones. */
blt_status blt_weighted_pca(const blt_mesh* mesh, const double* data, int32_t d, int32_t m,
                            double* basis_out, double* projection_error);
blt_status blt_regularized_basis(const blt_mesh* mesh, const double* data, int32_t d, double mu,
                                 int32_t m, double* basis_out, double* projection_error,
                                 double* dirichlet_energy);
blt_status blt_mu_from_scaled(const blt_mesh* mesh, const double* data, int32_t d, double mu_hat,
                              double* mu);
blt_status blt_rpca_reconstruct(const blt_mesh* mesh, const double* basis, int32_t m,
                                const double* field, double* out);

/* ---- matrix files ---- */

/* SPMX: 16-byte header (magic "SPMX", u32 rows, u32 cols, u32 reserved),
 * then row-major little-endian f64 payload. */
blt_status blt_write_spmx(const char* path, const double* data, int32_t rows, int32_t cols);
/* *data receives a library-allocated buffer; free with blt_buffer_free. */
blt_status blt_read_spmx(const char* path, double** data, int32_t* rows, int32_t* cols);
blt_status blt_write_matrix_csv(const char* path, const double* data, int32_t rows, int32_t cols,
                                const char* header /* comma-separated or NULL */);
blt_status blt_read_matrix_csv(const char* path, int skip_header, double** data, int32_t* rows,
                               int32_t* cols);
void blt_buffer_free(void* buffer);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BELTRAMI_H */
