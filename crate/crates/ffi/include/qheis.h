#ifndef QHEIS_H
#define QHEIS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Exact verification suites available through [`qheis_verify`].
typedef enum {
  QHEIS_CHECK_HOPF_AXIOMS = 0,
  QHEIS_CHECK_QUASITRIANGULAR = 1,
  QHEIS_CHECK_QYBE = 2,
  QHEIS_CHECK_TWIST_CONDITIONS = 3,
  QHEIS_CHECK_V_ELEMENT = 4,
  QHEIS_CHECK_CASIMIR = 5,
  QHEIS_CHECK_U_RIBBON = 6,
  QHEIS_CHECK_RTT = 7,
  QHEIS_CHECK_RTT_MUTATIONS = 8,
  QHEIS_CHECK_GROUP_HOPF = 9,
  QHEIS_CHECK_RTT_REDUCTIONS = 10,
} QheisCheck;

typedef enum {
  QHEIS_PRESET_STANDARD_H = 0,
  QHEIS_PRESET_NONSTANDARD_W = 1,
  QHEIS_PRESET_TWO_PARAMETER = 2,
} QheisPreset;

// Result of every fallible call.
typedef enum {
  QHEIS_STATUS_OK = 0,
  QHEIS_STATUS_NULL_POINTER = 1,
  QHEIS_STATUS_INVALID_ARGUMENT = 2,
  QHEIS_STATUS_PARSE_ERROR = 3,
  QHEIS_STATUS_OUT_OF_RANGE = 4,
  QHEIS_STATUS_INTERNAL = 5,
} QheisStatus;

// A parsed braid word (opaque).
typedef struct QheisBraid QheisBraid;

// A dense complex matrix (opaque).
typedef struct QheisMatrix QheisMatrix;

// Parameters of a truncated Fock module (opaque).
typedef struct QheisParams QheisParams;

// A complex number as two doubles.
typedef struct {
  double re;
  double im;
} QheisComplex;

// Value of the link invariant at a cutoff, with its tail `|P_D - P_{D-2}|`.
typedef struct {
  QheisComplex value;
  double tail;
  bool converged;
  int64_t writhe;
  uint64_t strands;
} QheisInvariant;

// Outcome of a verification suite.
typedef struct {
  bool pass;
  uint64_t residual_terms;
} QheisCheckResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated, truncated to
// `len`). Returns the full message length in bytes, excluding the terminator.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
uintptr_t qheis_last_error(char *buf, uintptr_t len);

// Creates Fock-module parameters; `cutoff` is the number of states and must be at least 2.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
QheisStatus qheis_params_new(QheisComplex h,
                             QheisComplex w,
                             QheisComplex e,
                             QheisComplex n,
                             uint64_t cutoff,
                             QheisParams **out);

// # Safety
// `p` must be null or a handle from [`qheis_params_new`] not yet freed.
void qheis_params_free(QheisParams *p);

// Parses a braid word such as `"B3: s1 s2^-1 s1"`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer to a handle slot.
QheisStatus qheis_braid_parse(const char *text, QheisBraid **out);

// # Safety
// `b` must be null or a handle from [`qheis_braid_parse`] not yet freed.
void qheis_braid_free(QheisBraid *b);

// Number of strands, or 0 for a null handle.
//
// # Safety
// `b` must be null or a live braid handle.
uint64_t qheis_braid_strands(const QheisBraid *b);

// Writhe (exponent sum), or 0 for a null handle.
//
// # Safety
// `b` must be null or a live braid handle.
int64_t qheis_braid_writhe(const QheisBraid *b);

// The R-matrix (or its inverse) between two Fock modules of equal cutoff, `D² × D²`.
//
// # Safety
// `p1`, `p2` must be live parameter handles and `out` a valid pointer to a handle slot.
QheisStatus qheis_rmatrix(const QheisParams *p1,
                          const QheisParams *p2,
                          bool inverse,
                          QheisMatrix **out);

// # Safety
// `m` must be null or a handle from [`qheis_rmatrix`] not yet freed.
void qheis_matrix_free(QheisMatrix *m);

// Number of rows, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live matrix handle.
uint64_t qheis_matrix_rows(const QheisMatrix *m);

// Number of columns, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live matrix handle.
uint64_t qheis_matrix_cols(const QheisMatrix *m);

// Reads entry `(row, col)`.
//
// # Safety
// `m` must be a live matrix handle and `out` a valid pointer.
QheisStatus qheis_matrix_get(const QheisMatrix *m, uint64_t row, uint64_t col, QheisComplex *out);

// `P(x)` at the parameters' cutoff on every strand. `converged` compares the tail with `tol`.
//
// # Safety
// `b`, `p` must be live handles and `out` a valid pointer.
QheisStatus qheis_link_invariant(const QheisBraid *b,
                                 const QheisParams *p,
                                 double tol,
                                 QheisInvariant *out);

// Runs an exact verification suite at truncation orders `kh`, `kw` (both at least 1). The
// twist suites always use the two-parameter algebra and the RTT suites ignore `preset`.
//
// # Safety
// `out` must be a valid pointer.
QheisStatus qheis_verify(QheisCheck check,
                         QheisPreset preset,
                         uint32_t kh,
                         uint32_t kw,
                         QheisCheckResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHEIS_H */
