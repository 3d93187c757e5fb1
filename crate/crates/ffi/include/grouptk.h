#ifndef GROUPTK_H
#define GROUPTK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GtkStatus {
  GTK_STATUS_OK = 0,
  GTK_STATUS_NULL_POINTER = 1,
  GTK_STATUS_INVALID_UTF8 = 2,
  GTK_STATUS_INVALID_INPUT = 3,
  GTK_STATUS_HYPOTHESIS = 4,
  GTK_STATUS_BUDGET = 5,
  GTK_STATUS_OUT_OF_RANGE = 6,
  GTK_STATUS_PANIC = 7,
} GtkStatus;

// A finite group, optionally remembering its catalog name.
typedef struct GtkGroup GtkGroup;

// Abelian invariants `Z^r ⊕ Z/d_1 ⊕ .. ⊕ Z/d_k`.
typedef struct GtkInvariants GtkInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message into `buf` (always nul-terminated when
// `len > 0`) and returns the full message length, or 0 if none.
//
// # Safety
// `buf` must point to `len` writable bytes or be null with `len == 0`.
uintptr_t gtk_last_error(char *buf, uintptr_t len);

// Looks up a catalog group such as `S3`, `C6` or `SG16_3`.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum GtkStatus gtk_group_catalog(const char *name, struct GtkGroup **out);

// Realizes a finite group from a presentation in the text format
// `gens: a, b | rels: a^3, b^2, (b*a)^2`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum GtkStatus gtk_group_from_presentation(const char *text, struct GtkGroup **out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum GtkStatus gtk_group_order(const struct GtkGroup *g, uint64_t *out);

// # Safety
// `g` must be null or a handle not yet freed.
void gtk_group_free(struct GtkGroup *g);

// `π_n` of the colimit for the comma-separated subgroup list; returns
// `GTK_STATUS_HYPOTHESIS` when the connectivity hypothesis fails.
//
// # Safety
// `g` must be a live handle, `subgroups` a nul-terminated string and
// `out` writable.
enum GtkStatus gtk_pi_n(const struct GtkGroup *g,
                        const char *subgroups,
                        struct GtkInvariants **out);

// The truncated Wu quotient for `π_{n+1}(S²)` at nilpotency class `class`.
//
// # Safety
// `out` must be writable.
enum GtkStatus gtk_wu(uint32_t n, uint32_t class_, struct GtkInvariants **out);

// # Safety
// `inv` must be a live handle.
uint64_t gtk_invariants_free_rank(const struct GtkInvariants *inv);

// # Safety
// `inv` must be a live handle.
uintptr_t gtk_invariants_torsion_len(const struct GtkInvariants *inv);

// # Safety
// `inv` must be a live handle; `out` must be writable.
enum GtkStatus gtk_invariants_torsion_at(const struct GtkInvariants *inv,
                                         uintptr_t index,
                                         uint64_t *out);

// # Safety
// `inv` must be null or a handle not yet freed.
void gtk_invariants_free(struct GtkInvariants *inv);

// Runs a command line (whitespace separated, without the program name)
// with JSON output. `*out_json` receives a string to release with
// [`gtk_string_free`]; `*exit_code` the process exit code of the CLI.
//
// # Safety
// `args` must be a nul-terminated string; the outputs must be writable.
enum GtkStatus gtk_run_json(const char *args, char **out_json, int32_t *exit_code);

// # Safety
// `s` must be null or a string returned by this library.
void gtk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROUPTK_H */
