/*
 * C interface to the complex-oscillator library.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_destroy function. Functions return a cxosc_status; on failure
 * cxosc_last_error() describes the problem (thread-local, valid until the
 * next call on the same thread). Handles are immutable after creation and
 * may be shared between threads.
 */
#ifndef CXOSC_H
#define CXOSC_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CXOSC_BUILDING_LIBRARY)
#    define CXOSC_API __declspec(dllexport)
#  else
#    define CXOSC_API __declspec(dllimport)
#  endif
#else
#  define CXOSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cxosc_status {
    CXOSC_OK = 0,
    CXOSC_ERR_ARGUMENT = 1,
    CXOSC_ERR_PARAMETER_DOMAIN = 2,
    CXOSC_ERR_RESOLUTION = 3,
    CXOSC_ERR_SIZE = 4,
    CXOSC_ERR_NORMALIZATION = 5,
    CXOSC_ERR_CONSISTENCY = 6,
    CXOSC_ERR_UNSUPPORTED = 7,
    CXOSC_ERR_INTERNAL = 8
} cxosc_status;

typedef struct cxosc_params {
    double a;
    double b;
    double c;
    double lambda;
} cxosc_params;

typedef struct cxosc_phase_grid {
    double x_extent;
    double p_extent;
    int x_count;
    int p_count;
} cxosc_phase_grid;

typedef enum cxosc_frame_column {
    CXOSC_COLUMN_RHO_B_RE = 0,
    CXOSC_COLUMN_RHO_B_IM = 1,
    CXOSC_COLUMN_CURRENT_B_RE = 2,
    CXOSC_COLUMN_CURRENT_B_IM = 3,
    CXOSC_COLUMN_RHO = 4,
    CXOSC_COLUMN_CURRENT = 5
} cxosc_frame_column;

typedef struct cxosc_continuity_summary {
    double max_residual_b;          /* max |dJ_B/dx + d rho_B/dt| */
    double max_flux_divergence_b;   /* max |dJ_B/dx| */
    double max_residual;            /* max |dJ/dx + d rho/dt - 2 Im(V) rho| */
    double max_residual_unweighted; /* max |dJ/dx + d rho/dt - 2 Im(V)| */
    double max_flux_divergence;     /* max |dJ/dx| */
} cxosc_continuity_summary;

typedef struct cxosc_classicality {
    double min_value;
    double min_x;
    double min_p;
    double negative_volume;
} cxosc_classicality;

typedef struct cxosc_verify_options {
    cxosc_params params;      /* lambda drives the binorm and continuity suites */
    const double* lambdas;    /* NULL selects {0.5, 1, 2} */
    size_t lambda_count;
    double grid_step;         /* <= 0 selects 0.01 */
    double grid_extent;       /* <= 0 selects the per-suite default */
    const char* suites;       /* comma separated; NULL selects all, "" none */
    int workers;
} cxosc_verify_options;

typedef struct cxosc_grid cxosc_grid;
typedef struct cxosc_basis cxosc_basis;
typedef struct cxosc_coeffs cxosc_coeffs;
typedef struct cxosc_frame cxosc_frame;
typedef struct cxosc_wigner cxosc_wigner;

CXOSC_API const char* cxosc_last_error(void);
CXOSC_API const char* cxosc_version(void);

/* potential */
CXOSC_API int cxosc_validate_params(const cxosc_params* params);
/* lambda for which the psi_n are exact eigenfunctions, lambda^2 = (4ac - b^2)/pi,
 * and the gap lambda^2 - (4ac - b^2)/pi of params; either output may be NULL */
CXOSC_API int cxosc_consistent_lambda(const cxosc_params* params, double* lambda, double* gap);
CXOSC_API int cxosc_potential_values(const cxosc_params* params, const double* x, size_t count,
                                     double* re_out, double* im_out);
CXOSC_API int cxosc_alpha_values(const cxosc_params* params, const double* x, size_t count,
                                 double* out);

/* spatial grid */
CXOSC_API int cxosc_grid_create(double extent, double step, cxosc_grid** out);
CXOSC_API int cxosc_grid_create_default(int max_index, double step, cxosc_grid** out);
CXOSC_API void cxosc_grid_destroy(cxosc_grid* grid);
CXOSC_API size_t cxosc_grid_size(const cxosc_grid* grid);
CXOSC_API double cxosc_grid_extent(const cxosc_grid* grid);
CXOSC_API double cxosc_grid_step(const cxosc_grid* grid);
CXOSC_API int cxosc_grid_nodes(const cxosc_grid* grid, double* out, size_t capacity);

/* bi-orthogonal eigenbasis psi_0 .. psi_max_index */
CXOSC_API int cxosc_basis_build(const cxosc_params* params, int max_index, const cxosc_grid* grid,
                                cxosc_basis** out);
CXOSC_API void cxosc_basis_destroy(cxosc_basis* basis);
CXOSC_API int cxosc_basis_size(const cxosc_basis* basis);
CXOSC_API double cxosc_basis_energy(const cxosc_basis* basis, int n);
CXOSC_API double cxosc_basis_normalization_residual(const cxosc_basis* basis);
CXOSC_API int cxosc_basis_state(const cxosc_basis* basis, int n, double* re, double* im,
                                size_t capacity);
/* row-major size x size bi-product matrix */
CXOSC_API int cxosc_basis_gram(const cxosc_basis* basis, double* re, double* im, size_t capacity);
CXOSC_API int cxosc_basis_gram_deviation(const cxosc_basis* basis, double* out);

/* coefficient vectors */
CXOSC_API int cxosc_coeffs_binomial(int n, double p, int r, cxosc_coeffs** out);
CXOSC_API int cxosc_coeffs_poisson(double z_re, double z_im, int r, cxosc_coeffs** out);
CXOSC_API int cxosc_coeffs_single(int r, cxosc_coeffs** out);
CXOSC_API int cxosc_coeffs_create(int offset, const double* re, const double* im, size_t count,
                                  cxosc_coeffs** out);
/* c_k = int conj(psi_bar_k) phi dx for a field sampled on the basis grid */
CXOSC_API int cxosc_coeffs_analyze(const cxosc_basis* basis, const double* re, const double* im,
                                   size_t count, cxosc_coeffs** out);
CXOSC_API int cxosc_coeffs_evolve(const cxosc_coeffs* coeffs, double t, cxosc_coeffs** out);
CXOSC_API void cxosc_coeffs_destroy(cxosc_coeffs* coeffs);
CXOSC_API int cxosc_coeffs_count(const cxosc_coeffs* coeffs);
CXOSC_API int cxosc_coeffs_offset(const cxosc_coeffs* coeffs);
CXOSC_API int cxosc_coeffs_get(const cxosc_coeffs* coeffs, double* re, double* im, size_t capacity);
CXOSC_API int cxosc_coeffs_binorm(const cxosc_coeffs* coeffs, double* re, double* im);
CXOSC_API int cxosc_coeffs_energy(const cxosc_coeffs* coeffs, double* energy,
                                  double* energy_offset_free);
/* phi = sum c_k psi_{k+r} and phi_bar on the basis grid */
CXOSC_API int cxosc_coeffs_synthesize(const cxosc_coeffs* coeffs, const cxosc_basis* basis,
                                      double* re, double* im, double* dual_re, double* dual_im,
                                      size_t capacity);
/* sum c_k phi_{k+r} with oscillator (Fock) wave-functions */
CXOSC_API int cxosc_coeffs_oscillator_field(const cxosc_coeffs* coeffs, const cxosc_grid* grid,
                                            double* re, double* im, size_t capacity);

/* densities and currents */
CXOSC_API int cxosc_frame_compute(const cxosc_coeffs* coeffs, const cxosc_basis* basis, double t,
                                  cxosc_frame** out);
CXOSC_API void cxosc_frame_destroy(cxosc_frame* frame);
CXOSC_API int cxosc_frame_column_values(const cxosc_frame* frame, cxosc_frame_column column,
                                        double* out, size_t capacity);
/* int rho_B dx */
CXOSC_API int cxosc_frame_binorm(const cxosc_frame* frame, double* re, double* im);
CXOSC_API int cxosc_continuity(const cxosc_coeffs* coeffs, const cxosc_basis* basis, double t,
                               double dt, cxosc_continuity_summary* out);

/* Wigner distributions (oscillator limit only) */
CXOSC_API int cxosc_phase_grid_default(int max_index, double spatial_step, cxosc_phase_grid* out);
/* quadrature of the Fock superposition sum c_k phi_{k+r} sampled on grid */
CXOSC_API int cxosc_wigner_quadrature(const cxosc_coeffs* coeffs, const cxosc_grid* grid,
                                      const cxosc_phase_grid* phase, int workers,
                                      cxosc_wigner** out);
/* quadrature of an arbitrary normalized field sampled on grid */
CXOSC_API int cxosc_wigner_quadrature_field(const cxosc_grid* grid, const double* re,
                                            const double* im, size_t count,
                                            const cxosc_phase_grid* phase, int workers,
                                            cxosc_wigner** out);
CXOSC_API int cxosc_wigner_closed_form(const cxosc_coeffs* coeffs, const cxosc_phase_grid* phase,
                                       int workers, cxosc_wigner** out);
CXOSC_API void cxosc_wigner_destroy(cxosc_wigner* wigner);
CXOSC_API int cxosc_wigner_phase_grid(const cxosc_wigner* wigner, cxosc_phase_grid* out);
/* x-major: out[i * p_count + j] = W(x_i, p_j) */
CXOSC_API int cxosc_wigner_values(const cxosc_wigner* wigner, double* out, size_t capacity);
CXOSC_API double cxosc_wigner_imaginary_residue(const cxosc_wigner* wigner);
CXOSC_API int cxosc_wigner_classicality(const cxosc_wigner* wigner, cxosc_classicality* out);
CXOSC_API int cxosc_wigner_marginals(const cxosc_wigner* wigner, double* position,
                                     size_t x_capacity, double* momentum, size_t p_capacity);
CXOSC_API int cxosc_wigner_max_difference(const cxosc_wigner* lhs, const cxosc_wigner* rhs,
                                          double* out);
CXOSC_API int cxosc_photon_added_fidelity(double z_re, double z_im, const cxosc_coeffs* coeffs,
                                          double* out);

/* verification suites; *report is a JSON document freed with cxosc_string_free */
CXOSC_API int cxosc_verify(const cxosc_verify_options* options, char** report, int* all_passed);
CXOSC_API void cxosc_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* CXOSC_H */
