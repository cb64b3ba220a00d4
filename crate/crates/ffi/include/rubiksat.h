#ifndef RUBIKSAT_H
#define RUBIKSAT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RubiksatStatus {
  RUBIKSAT_STATUS_OK = 0,
  RUBIKSAT_STATUS_NULL_POINTER = 1,
  RUBIKSAT_STATUS_INVALID_UTF8 = 2,
  RUBIKSAT_STATUS_PARSE = 3,
  RUBIKSAT_STATUS_CONFIG = 4,
  /**
   * No solution within the requested length.
   */
  RUBIKSAT_STATUS_UNSOLVED = 5,
  /**
   * Time limit reached.
   */
  RUBIKSAT_STATUS_UNKNOWN = 6,
  RUBIKSAT_STATUS_BACKEND = 7,
  RUBIKSAT_STATUS_BUFFER_TOO_SMALL = 8,
  RUBIKSAT_STATUS_VERIFICATION = 9,
  RUBIKSAT_STATUS_IO = 10,
  RUBIKSAT_STATUS_PANIC = 11,
} RubiksatStatus;

/**
 * Opaque cube state.
 */
typedef struct RubiksatCube RubiksatCube;

/**
 * Opaque CNF encoding.
 */
typedef struct RubiksatEncoding RubiksatEncoding;

/**
 * Encoding options. `phase1_len < 0` means no phase split.
 */
typedef struct RubiksatEncodingConfig {
  uint32_t n_states;
  bool at_most;
  int32_t phase1_len;
  bool two_bit_colors;
  bool prune_opposite;
  bool prune_same_face;
  bool last_move;
  bool pairwise_amo;
  bool frame_split;
} RubiksatEncodingConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *rubiksat_last_error(void);

struct RubiksatCube *rubiksat_cube_new_solved(void);

/**
 * Parses a 54-letter facelet string (faces F L B R U D).
 *
 * # Safety
 * `facelets` must be a NUL-terminated string; `out` must be writable.
 */
enum RubiksatStatus rubiksat_cube_parse(const char *facelets, struct RubiksatCube **out);

/**
 * Applies a maneuver such as `R U2 F'` in place.
 *
 * # Safety
 * `cube` must be a live handle; `maneuver` a NUL-terminated string.
 */
enum RubiksatStatus rubiksat_cube_apply(struct RubiksatCube *cube, const char *maneuver);

/**
 * Writes the 54-letter facelet string; `len` must be at least 55.
 *
 * # Safety
 * `cube` must be a live handle; `buf` must hold `len` bytes.
 */
enum RubiksatStatus rubiksat_cube_format(const struct RubiksatCube *cube, char *buf, size_t len);

/**
 * 1 if solved, 0 if not, -1 for a null handle.
 *
 * # Safety
 * `cube` must be null or a live handle.
 */
int rubiksat_cube_is_solved(const struct RubiksatCube *cube);

/**
 * 1 if the state lies in the phase-2 subgroup, 0 if not, -1 for null.
 *
 * # Safety
 * `cube` must be null or a live handle.
 */
int rubiksat_cube_is_h_state(const struct RubiksatCube *cube);

/**
 * # Safety
 * `cube` must be null or a handle not yet freed.
 */
void rubiksat_cube_free(struct RubiksatCube *cube);

/**
 * Defaults for an exact-length encoding of `moves` moves.
 */
struct RubiksatEncodingConfig rubiksat_encoding_config_default(uint32_t moves);

/**
 * # Safety
 * `cube` must be a live handle, `config` readable, `out` writable.
 */
enum RubiksatStatus rubiksat_encode(const struct RubiksatCube *cube,
                                    const struct RubiksatEncodingConfig *config,
                                    struct RubiksatEncoding **out);

/**
 * # Safety
 * `enc` must be null or a live handle.
 */
uint64_t rubiksat_encoding_num_vars(const struct RubiksatEncoding *enc);

/**
 * # Safety
 * `enc` must be null or a live handle.
 */
uint64_t rubiksat_encoding_num_clauses(const struct RubiksatEncoding *enc);

/**
 * Writes the formula as DIMACS to `path`.
 *
 * # Safety
 * `enc` must be a live handle; `path` a NUL-terminated string.
 */
enum RubiksatStatus rubiksat_encoding_write_dimacs(const struct RubiksatEncoding *enc,
                                                   const char *path);

/**
 * DIMACS text as a new string; release it with [`rubiksat_string_free`].
 * Null on a null handle.
 *
 * # Safety
 * `enc` must be null or a live handle.
 */
char *rubiksat_encoding_dimacs(const struct RubiksatEncoding *enc);

/**
 * # Safety
 * `enc` must be null or a handle not yet freed.
 */
void rubiksat_encoding_free(struct RubiksatEncoding *enc);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void rubiksat_string_free(char *s);

/**
 * Shortest solution of at most `max_length` (<= 13) moves, written as
 * text into `buf`. Each length gets `timeout_ms`.
 *
 * # Safety
 * `cube` must be a live handle; `buf` must hold `len` bytes.
 */
enum RubiksatStatus rubiksat_solve_optimal(const struct RubiksatCube *cube,
                                           uint32_t max_length,
                                           uint64_t timeout_ms,
                                           char *buf,
                                           size_t len);

/**
 * Two-phase search within `budget` moves, trying each phase-1 length in
 * `sweep` in order.
 *
 * # Safety
 * `cube` must be a live handle; `sweep` must hold `sweep_len` values;
 * `buf` must hold `len` bytes.
 */
enum RubiksatStatus rubiksat_solve_two_phase(const struct RubiksatCube *cube,
                                             uint32_t budget,
                                             const uint32_t *sweep,
                                             size_t sweep_len,
                                             uint64_t timeout_ms,
                                             char *buf,
                                             size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RUBIKSAT_H */
