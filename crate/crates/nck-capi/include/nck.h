#ifndef NCK_H
#define NCK_H

/* This file is generated by cbindgen from nck-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every fallible entry point.
 */
typedef enum {
  NckOk = 0,
  NckNullPointer = 1,
  NckInvalidUtf8 = 2,
  NckInvalidInput = 3,
  NckConstructionFailed = 4,
  NckParseError = 5,
  NckInternalError = 6,
} NckStatus;

/**
 * Opaque family of piecewise-linear paths on a shared grid.
 */
typedef struct NckFamily NckFamily;

/**
 * Opaque finite point set in R^N.
 */
typedef struct NckPointSet NckPointSet;

/**
 * Jung inequality report over one point set.
 */
typedef struct {
  double diameter;
  double radius;
  double lower;
  double upper;
  double margin;
  /**
   * 1 when the two-sided bound holds within tolerance, 0 otherwise.
   */
  int pass;
} NckJungReport;

/**
 * Two-sided bracket certified by one net construction.
 */
typedef struct {
  double omega_hat;
  double lower;
  double upper;
  double achieved;
  double epsilon;
  /**
   * 1 when the realized covering radius meets the bound, 0 otherwise.
   */
  int pass;
} NckBracket;

/**
 * Message for the most recent failure on this thread. Never null; the
 * pointer stays valid until the next failing call on the same thread.
 */
const char *nck_last_error_message(void);

/**
 * Builds a point set from `n_points` rows of `dim` coordinates, row-major.
 *
 * # Safety
 * `coords` must point to `dim * n_points` readable doubles and `out` must
 * be a valid location for a handle.
 */
NckStatus nck_point_set_new(size_t dim, const double *coords, size_t n_points, NckPointSet **out);

/**
 * # Safety
 * `ps` must be a handle from [`nck_point_set_new`], not yet freed.
 */
void nck_point_set_free(NckPointSet *ps);

/**
 * # Safety
 * `ps` must be a live point-set handle; `out` must be writable.
 */
NckStatus nck_diameter(const NckPointSet *ps, double *out);

/**
 * Minimum enclosing ball. `center_out` receives `dim` doubles.
 *
 * # Safety
 * `ps` must be a live point-set handle; `center_out` must have room for
 * the set's dimension; `radius_out` must be writable.
 */
NckStatus nck_chebyshev_ball(const NckPointSet *ps,
                             double tol,
                             uint64_t seed,
                             double *center_out,
                             double *radius_out);

/**
 * Diameter, Chebyshev radius, and the two-sided Jung bound check.
 *
 * # Safety
 * `ps` must be a live point-set handle; `out` must be writable.
 */
NckStatus nck_jung_report(const NckPointSet *ps, double tol, NckJungReport *out);

/**
 * Parses a family from its JSON document form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
NckStatus nck_family_from_json(const char *json, NckFamily **out);

/**
 * Serializes a family to JSON. Free the string with [`nck_string_free`].
 *
 * # Safety
 * `fam` must be a live family handle; `out` must be writable.
 */
NckStatus nck_family_to_json(const NckFamily *fam, char **out);

/**
 * # Safety
 * `fam` must be a handle from this library, not yet freed.
 */
void nck_family_free(NckFamily *fam);

/**
 * # Safety
 * `s` must be a string returned by this library, not yet freed.
 */
void nck_string_free(char *s);

/**
 * # Safety
 * `fam` must be a live family handle; `out` must be writable.
 */
NckStatus nck_family_dim(const NckFamily *fam, size_t *out);

/**
 * # Safety
 * `fam` must be a live family handle; `out` must be writable.
 */
NckStatus nck_family_len(const NckFamily *fam, size_t *out);

/**
 * Family modulus of continuity at one scale.
 *
 * # Safety
 * `fam` must be a live family handle; `out` must be writable.
 */
NckStatus nck_modulus_omega(const NckFamily *fam, double delta, double *out);

/**
 * Covering radius of `net` over `fam`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
NckStatus nck_net_radius(const NckFamily *fam, const NckFamily *net, double *out);

/**
 * Builds the certified epsilon-net; the result is a new family handle.
 *
 * # Safety
 * `fam` must be a live family handle; `net_out` must be writable.
 */
NckStatus nck_build_net(const NckFamily *fam,
                        double delta,
                        double alpha,
                        double epsilon,
                        uint64_t seed,
                        double tol,
                        NckFamily **net_out);

/**
 * Measures `omega(delta)`, builds the net, and reports the two-sided
 * bracket with the realized covering radius.
 *
 * # Safety
 * `fam` must be a live family handle; `out` must be writable.
 */
NckStatus nck_theorem_bracket(const NckFamily *fam,
                              double delta,
                              double epsilon,
                              uint64_t seed,
                              double tol,
                              NckBracket *out);

#endif  /* NCK_H */
