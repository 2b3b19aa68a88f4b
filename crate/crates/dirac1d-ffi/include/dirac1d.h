#ifndef DIRAC1D_H
#define DIRAC1D_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Energy branch selector.
 */
typedef enum DiracEnergySign {
  Positive = 0,
  Negative = 1,
} DiracEnergySign;

/**
 * Initial-condition selector for `dirac_packet_new`.
 */
typedef enum DiracPacketKind {
  Gauss11 = 0,
  Gauss11Boosted = 1,
  Gauss10 = 2,
  PosNegPair = 3,
} DiracPacketKind;

/**
 * Status codes returned by every fallible call.
 */
typedef enum DiracStatus {
  Ok = 0,
  NullPointer = 1,
  Argument = 2,
  GridMismatch = 3,
  Resolution = 4,
  DegenerateState = 5,
  Tracking = 6,
  Config = 7,
  Io = 8,
} DiracStatus;

/**
 * Opaque position-space spinor field handle.
 */
typedef struct DiracField DiracField;

/**
 * Opaque grid handle.
 */
typedef struct DiracGrid DiracGrid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread. The pointer stays
 * valid until the next failing call on the same thread. Never null.
 */
const char *dirac_last_error_message(void);

/**
 * Create a grid with `n` samples (power of two, >= 16) on `[-l, l)`.
 * Returns null on failure; inspect `dirac_last_error_message`.
 */
struct DiracGrid *dirac_grid_new(uintptr_t n, double l);

/**
 * # Safety
 * `grid` must be a pointer from `dirac_grid_new`, not yet freed.
 */
void dirac_grid_free(struct DiracGrid *grid);

/**
 * Number of position samples, or 0 for a null grid.
 *
 * # Safety
 * `grid` must be null or a live pointer from `dirac_grid_new`.
 */
uintptr_t dirac_grid_size(const struct DiracGrid *grid);

/**
 * Position of sample `j` (NaN for a null grid or out-of-range index).
 *
 * # Safety
 * `grid` must be null or a live pointer from `dirac_grid_new`.
 */
double dirac_grid_position(const struct DiracGrid *grid, uintptr_t j);

/**
 * Construct one of the canonical initial packets on `grid`.
 * Returns null on failure.
 *
 * # Safety
 * `grid` must be a live pointer from `dirac_grid_new`.
 */
struct DiracField *dirac_packet_new(const struct DiracGrid *grid, enum DiracPacketKind kind);

/**
 * # Safety
 * `field` must be a pointer from this library, not yet freed.
 */
void dirac_field_free(struct DiracField *field);

/**
 * Evolve `field` by time `t` (exact propagator); returns a new handle or
 * null on failure. The input handle stays valid.
 *
 * # Safety
 * `field` must be a live pointer from this library.
 */
struct DiracField *dirac_field_evolve(const struct DiracField *field, double t);

/**
 * Parity transform sigma3 psi(-x); returns a new handle.
 *
 * # Safety
 * `field` must be a live pointer from this library.
 */
struct DiracField *dirac_field_parity(const struct DiracField *field);

/**
 * Project onto the chosen energy subspace; returns a new handle.
 *
 * # Safety
 * `field` must be a live pointer from this library.
 */
struct DiracField *dirac_field_project(const struct DiracField *field, enum DiracEnergySign sign);

/**
 * L2 norm of the field (NaN for a null handle).
 *
 * # Safety
 * `field` must be null or a live pointer from this library.
 */
double dirac_field_norm(const struct DiracField *field);

/**
 * Time stamp carried by the field (NaN for a null handle).
 *
 * # Safety
 * `field` must be null or a live pointer from this library.
 */
double dirac_field_time(const struct DiracField *field);

/**
 * Copy the position density into `out` (length `len` must equal the grid
 * size).
 *
 * # Safety
 * `field` must be a live pointer from this library; `out` must point to
 * `len` writable doubles.
 */
enum DiracStatus dirac_field_density(const struct DiracField *field, double *out, uintptr_t len);

/**
 * Mean position <x>.
 *
 * # Safety
 * `field` must be a live pointer from this library; `out` writable.
 */
enum DiracStatus dirac_field_mean_position(const struct DiracField *field, double *out);

/**
 * Mean momentum <p>.
 *
 * # Safety
 * `field` must be a live pointer from this library; `out` writable.
 */
enum DiracStatus dirac_field_mean_momentum(const struct DiracField *field, double *out);

/**
 * Mean of the classical velocity operator p H0^{-1}.
 *
 * # Safety
 * `field` must be a live pointer from this library; `out` writable.
 */
enum DiracStatus dirac_field_classical_velocity(const struct DiracField *field, double *out);

/**
 * Mean of the instantaneous velocity operator sigma1.
 *
 * # Safety
 * `field` must be a live pointer from this library; `out` writable.
 */
enum DiracStatus dirac_field_instantaneous_velocity(const struct DiracField *field, double *out);

/**
 * Expectation of the Zitterbewegung term Z(t), taking `field` as the
 * t = 0 state.
 *
 * # Safety
 * `field` must be a live pointer from this library; `out` writable.
 */
enum DiracStatus dirac_field_zbw_mean(const struct DiracField *field, double t, double *out);

/**
 * Relativistic dispersion lambda(p) = sqrt(p^2 + 1).
 */
double dirac_lambda(double p);

/**
 * Phase velocity sign(E) lambda(p)/p; fails for p = 0.
 */
enum DiracStatus dirac_phase_velocity(double p, enum DiracEnergySign sign, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRAC1D_H */
