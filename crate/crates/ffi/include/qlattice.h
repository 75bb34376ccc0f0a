#ifndef QLATTICE_H
#define QLATTICE_H

#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum ql_status {
  QL_STATUS_OK = 0,
  QL_STATUS_NULL_POINTER = 1,
  QL_STATUS_INVALID_ARGUMENT = 2,
  QL_STATUS_COMPUTATION_FAILED = 3,
  QL_STATUS_BUFFER_TOO_SMALL = 4,
  QL_STATUS_PANIC = 5,
} ql_status;

// A diagonalized Hamiltonian.
typedef struct ql_system ql_system;

// A coined quantum walk.
typedef struct ql_walk ql_walk;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the next call.
const char *ql_last_error(void);

// Library version as a static NUL-terminated string.
const char *ql_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ql_string_free(char *s);

// Builds a preset walk by name (`dirac1d`, `weyl3d_right`, ...).
// `extents` may be null for the preset's default lattice.
//
// # Safety
// `name` must be a NUL-terminated string, `extents` must point to `n_extents`
// values when non-null, and `out` must be writable.
enum ql_status ql_walk_preset(const char *name,
                              double mass,
                              double spacing,
                              const size_t *extents,
                              size_t n_extents,
                              struct ql_walk **out);

// Releases a walk. Null is ignored.
//
// # Safety
// `walk` must come from [`ql_walk_preset`] and not have been freed.
void ql_walk_free(struct ql_walk *walk);

// Spatial dimension of the walk, or 0 for null.
//
// # Safety
// `walk` must be null or a live walk.
size_t ql_walk_dims(const struct ql_walk *walk);

// Coin dimension of the walk, or 0 for null.
//
// # Safety
// `walk` must be null or a live walk.
size_t ql_walk_coin_dim(const struct ql_walk *walk);

// Quasi-energies at momentum `p` (length `dims`), written ascending into `out`.
// `capacity` must be at least the coin dimension.
//
// # Safety
// `walk` must be live, `p` must point to `n_p` values and `out` to `capacity` values.
enum ql_status ql_walk_quasi_energy(const struct ql_walk *walk,
                                    const double *p,
                                    size_t n_p,
                                    double *out,
                                    size_t capacity);

// Number of doublers on a `grid`-point-per-axis scan. A non-positive threshold
// selects the default of `0.05 / a`.
//
// # Safety
// `walk` must be live and `count` writable.
enum ql_status ql_walk_count_doublers(const struct ql_walk *walk,
                                      double threshold,
                                      size_t grid,
                                      size_t *count);

// Random-coupling Heisenberg chain of `spins` spins.
//
// # Safety
// `out` must be writable.
enum ql_status ql_heisenberg_chain(size_t spins, uint64_t seed, struct ql_system **out);

// Releases a system. Null is ignored.
//
// # Safety
// `sys` must come from this library and not have been freed.
void ql_system_free(struct ql_system *sys);

// Hilbert-space dimension, or 0 for null.
//
// # Safety
// `sys` must be null or a live system.
size_t ql_system_dimension(const struct ql_system *sys);

// Ascending eigenvalues, with multiplicity.
//
// # Safety
// `sys` must be live and `out` must hold `capacity` values.
enum ql_status ql_system_energies(const struct ql_system *sys, double *out, size_t capacity);

// Jordan–Wigner image of a fermion polynomial under the linear ordering of `modes`
// modes (0 means just enough for the expression). The result is one `re,im,paulis`
// line per term.
//
// # Safety
// `expr` must be a NUL-terminated string and `out` writable.
enum ql_status ql_jordan_wigner(const char *expr, size_t modes, char **out);

// Runs a command-line invocation (`argv[0]` is the program name) and returns its
// full report. Invalid arguments give `QL_STATUS_INVALID_ARGUMENT`; a report whose
// checks fail is still written to `out` and gives `QL_STATUS_COMPUTATION_FAILED`.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings and `out` must be writable.
enum ql_status ql_run(size_t argc, const char *const *argv, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLATTICE_H */
