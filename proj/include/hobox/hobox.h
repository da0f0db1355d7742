/* C interface to the confined-oscillator solver. All functions return a
 * hobox_status; on failure hobox_last_error() describes the problem for the
 * calling thread. Handles are opaque and must be released with the matching
 * *_free function. Array outputs take a capacity in elements and fail with
 * HOBOX_BUFFER_TOO_SMALL when it is insufficient. */
#ifndef HOBOX_HOBOX_H
#define HOBOX_HOBOX_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(HOBOX_BUILDING_LIBRARY)
#define HOBOX_API __declspec(dllexport)
#else
#define HOBOX_API __declspec(dllimport)
#endif
#else
#define HOBOX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HOBOX_OK = 0,
  HOBOX_INVALID_ARGUMENT = 1,
  HOBOX_DOMAIN = 2,
  HOBOX_NONCONFORMING = 3,
  HOBOX_NUMERICAL = 4,
  HOBOX_DEGENERATE_BASIS = 5,
  HOBOX_NOT_CONVERGED = 6,
  HOBOX_BUFFER_TOO_SMALL = 7,
  HOBOX_IO = 8,
  HOBOX_INTERNAL = 9
} hobox_status;

typedef enum {
  HOBOX_REGIME_OSCILLATOR_DOMINATED = 0,
  HOBOX_REGIME_TWO_GROUND_STATES = 1,
  HOBOX_REGIME_OSCILLATOR_GROUND_ONLY = 2,
  HOBOX_REGIME_PERTURBATIVE_BOX = 3
} hobox_regime;

typedef enum {
  HOBOX_MHO_POTENTIAL_WIDTH = 0,
  HOBOX_MHO_NODAL = 1,
  HOBOX_MHO_BOUNDARY_ADJUSTED = 2
} hobox_mho_strategy;

typedef struct {
  double m;
  double hbar;
  double omega;
  double L;
} hobox_params;

/* Gauss-Legendre order per panel and minimum panel count. */
typedef struct {
  int order;
  int panels;
} hobox_quadrature;

typedef struct hobox_basis hobox_basis;
typedef struct hobox_system hobox_system;
typedef struct hobox_spectrum hobox_spectrum;

HOBOX_API const char* hobox_last_error(void);
HOBOX_API const char* hobox_status_name(hobox_status status);
HOBOX_API const char* hobox_version(void);
HOBOX_API hobox_quadrature hobox_default_quadrature(void);

/* model */
HOBOX_API hobox_status hobox_params_validate(const hobox_params* p);
HOBOX_API hobox_status hobox_beta(const hobox_params* p, double* out);
HOBOX_API hobox_status hobox_box_energy(const hobox_params* p, int n, double* out);
HOBOX_API hobox_status hobox_ho_energy(const hobox_params* p, int n, double* out);
HOBOX_API hobox_status hobox_box_wavefunction(const hobox_params* p, int n, double q, double* out);
HOBOX_API hobox_status hobox_ho_wavefunction(const hobox_params* p, int n, double q, double* out);
HOBOX_API hobox_status hobox_critical_energy(const hobox_params* p, double* out);
HOBOX_API hobox_status hobox_n_max_ho(const hobox_params* p, double* out);
HOBOX_API hobox_status hobox_n_max_box(const hobox_params* p, double* out);
HOBOX_API hobox_status hobox_classify_regime(const hobox_params* p, hobox_regime* regime, double* beta);
HOBOX_API const char* hobox_regime_name(hobox_regime regime);
/* beta_c <= 0 selects the default pi/2. */
HOBOX_API hobox_status hobox_lambda_of_beta(double beta, double beta_c, double* out);

/* quadrature; q may be NULL for the default everywhere below */
HOBOX_API hobox_status hobox_quadrature_rule(int order, int panels, double a, double b, double* nodes,
                                             double* weights, size_t capacity);
HOBOX_API hobox_status hobox_box_q2_element(const hobox_params* p, int m, int n, double* out);
HOBOX_API hobox_status hobox_ho_onto_box_projection(const hobox_params* p, int ho_n, int box_j, int infinite_limits,
                                                    const hobox_quadrature* q, double* out);
HOBOX_API hobox_status hobox_projection_uses_infinite_limits(const hobox_params* p, int* out);

/* basis */
HOBOX_API hobox_status hobox_basis_box(const hobox_params* p, int n, hobox_basis** out);
HOBOX_API hobox_status hobox_basis_mho(const hobox_params* p, int n, hobox_mho_strategy strategy,
                                       const hobox_quadrature* q, hobox_basis** out);
HOBOX_API hobox_status hobox_basis_raw_oscillator(const hobox_params* p, int n, hobox_basis** out);
HOBOX_API hobox_status hobox_basis_concat(const hobox_basis* a, const hobox_basis* b, hobox_basis** out);
HOBOX_API void hobox_basis_free(hobox_basis* b);
HOBOX_API hobox_status hobox_basis_size(const hobox_basis* b, size_t* out);
/* Writes a NUL-terminated label; capacity in bytes. */
HOBOX_API hobox_status hobox_basis_label(const hobox_basis* b, size_t i, char* buf, size_t capacity);
HOBOX_API hobox_status hobox_basis_eval(const hobox_basis* b, size_t i, double q, double* value, double* derivative);
HOBOX_API hobox_status hobox_basis_conforming(const hobox_basis* b, size_t i, int* out);
HOBOX_API hobox_status hobox_momentum_boundary_defect(const hobox_params* p, const hobox_basis* b, size_t i, size_t j,
                                                      double* out);

/* assembly */
HOBOX_API hobox_status hobox_assemble(const hobox_params* p, const hobox_basis* b, const hobox_quadrature* q,
                                      int allow_nonconforming, hobox_system** out);
HOBOX_API void hobox_system_free(hobox_system* s);
HOBOX_API hobox_status hobox_system_dim(const hobox_system* s, size_t* out);
/* Row-major dim x dim copies; either pointer may be NULL. */
HOBOX_API hobox_status hobox_system_matrices(const hobox_system* s, double* hamiltonian, double* overlap,
                                             size_t capacity);
HOBOX_API hobox_status hobox_system_defects(const hobox_system* s, double* hamiltonian, double* overlap);
HOBOX_API hobox_status hobox_system_write_csv(const hobox_system* s, const char* hamiltonian_path,
                                              const char* overlap_path);
HOBOX_API hobox_status hobox_box_hamiltonian(const hobox_params* p, int n, double* out, size_t capacity);

/* eigen */
typedef struct {
  size_t size;
  size_t basis_dim;
  size_t effective_dim;
  size_t converged_count;
  double truncation_tol;
} hobox_spectrum_info;

/* trunc_tol < 0 selects the default 1e-12. */
HOBOX_API hobox_status hobox_gevp(const hobox_system* s, double trunc_tol, hobox_spectrum** out);
/* dim <= 0 selects the default 400. */
HOBOX_API hobox_status hobox_reference_spectrum(const hobox_params* p, int dim, hobox_spectrum** out);
HOBOX_API hobox_status hobox_sym_eigen(const double* a, size_t n, double* values, double* vectors);
HOBOX_API void hobox_spectrum_free(hobox_spectrum* s);
HOBOX_API hobox_status hobox_spectrum_info_get(const hobox_spectrum* s, hobox_spectrum_info* out);
HOBOX_API hobox_status hobox_spectrum_energies(const hobox_spectrum* s, double* out, size_t capacity);
HOBOX_API hobox_status hobox_spectrum_residuals(const hobox_spectrum* s, double* out, size_t capacity);
HOBOX_API hobox_status hobox_spectrum_vector(const hobox_spectrum* s, size_t i, double* out, size_t capacity);
HOBOX_API hobox_status hobox_spectrum_label(const hobox_spectrum* s, size_t i, char* buf, size_t capacity);
/* Columns: index, energy, residual. */
HOBOX_API hobox_status hobox_spectrum_write_csv(const hobox_spectrum* s, const char* path);

typedef double (*hobox_function)(double q, void* context);

typedef struct {
  int k;
  int expansion_dim;
  hobox_quadrature quadrature;
} hobox_lanczos_options;

typedef struct {
  int breakdown;
  int iterations;
  double max_boundary_ratio;
} hobox_lanczos_info;

/* start == NULL selects the default off-centre Gaussian. */
HOBOX_API hobox_status hobox_modified_lanczos(const hobox_params* p, const hobox_lanczos_options* options,
                                              hobox_function start, void* context, hobox_spectrum** out,
                                              hobox_lanczos_info* info);

/* analysis */
typedef struct {
  int n;
  double exact;
  double ho;
  double box;
  double pt;
  double d_ho;
  double d_box;
  double d_pt;
  double rel_ho;
  double rel_box;
  double rel_pt;
} hobox_deviation_row;

typedef struct {
  int a;
  int b;
  double similarity;
  int cross_parity;
} hobox_coherence_pair;

HOBOX_API hobox_status hobox_first_order_correction(const hobox_params* p, int n, double* out);
HOBOX_API hobox_status hobox_perturbed_box_energy(const hobox_params* p, int n, double* out);
HOBOX_API hobox_status hobox_pt_validity_threshold(const hobox_params* p, double* out);
/* rows needs n_last - n_first + 1 entries; count receives the rows written. */
HOBOX_API hobox_status hobox_deviation_table(const hobox_spectrum* reference, const hobox_params* p, int n_first,
                                             int n_last, hobox_deviation_row* rows, size_t capacity, size_t* count,
                                             int* truncated);
HOBOX_API hobox_status hobox_components(const hobox_spectrum* s, const hobox_params* p, int state, int box_dim,
                                        const hobox_quadrature* q, double* amplitudes, size_t capacity,
                                        double* norm_check);
HOBOX_API hobox_status hobox_ho_overlap(const hobox_spectrum* s, const hobox_params* p, int state, int n,
                                        const hobox_quadrature* q, double* out);
/* out needs count*(count-1)/2 entries. */
HOBOX_API hobox_status hobox_coherence_profile(const hobox_spectrum* s, const hobox_params* p, const int* indices,
                                               size_t count, int box_dim, const hobox_quadrature* q,
                                               hobox_coherence_pair* out, size_t capacity);
/* reference may be NULL; cap < 0 selects the default 200. */
HOBOX_API hobox_status hobox_alpha_study(const hobox_params* p, int n_target, double rel_tol,
                                         const hobox_spectrum* reference, int cap, int* out);
HOBOX_API hobox_status hobox_alpha_estimate(const hobox_params* p, double* out);
HOBOX_API hobox_status hobox_variational_ground_state(const hobox_params* p, double* energy, double* width);

#ifdef __cplusplus
}
#endif

#endif
