#ifndef NPF_H
#define NPF_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes; the nonzero values mirror the CLI exit codes where they
// overlap.
typedef enum NpfStatus {
  NPF_STATUS_OK = 0,
  NPF_STATUS_INTERNAL = 1,
  NPF_STATUS_PRECONDITION = 2,
  NPF_STATUS_PARSE = 3,
  NPF_STATUS_GEOMETRY = 4,
  NPF_STATUS_NULL_POINTER = 5,
  NPF_STATUS_UTF8 = 6,
} NpfStatus;

// A parsed series with its variable names and field.
typedef struct NpfSeries NpfSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses the text (or JSON) series format.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum NpfStatus npf_series_parse(const char *text, struct NpfSeries **out);

// # Safety
// `s` must come from this library and not be freed twice; null is ignored.
void npf_series_free(struct NpfSeries *s);

// Canonical text form, including the header lines.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum NpfStatus npf_series_to_string(const struct NpfSeries *s, char **out);

// # Safety
// `s` must come from this library and not be freed twice; null is ignored.
void npf_string_free(char *s);

// Product `a * b`, truncated at total degree `trunc` when `trunc >= 0`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum NpfStatus npf_series_multiply(const struct NpfSeries *a,
                                   const struct NpfSeries *b,
                                   int64_t trunc,
                                   struct NpfSeries **out);

// Compact edges of the Newton polyhedron as JSON.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum NpfStatus npf_edges_json(const struct NpfSeries *s, char **out);

// Lifts the split `g_text || h_text` of `f` along the edge `[a, b]`
// (`n` coordinates each) to total degree `trunc`. `monic != 0` selects
// the monic lift.
//
// # Safety
// `a`, `b` must point to `n` readable values; strings must be
// nul-terminated; `out_g`, `out_h` must be writable.
enum NpfStatus npf_lift(const struct NpfSeries *f,
                        const int64_t *a,
                        const int64_t *b,
                        uintptr_t n,
                        const char *g_text,
                        const char *h_text,
                        uint32_t trunc,
                        int32_t monic,
                        struct NpfSeries **out_g,
                        struct NpfSeries **out_h);

// Screening verdict as JSON.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum NpfStatus npf_screen_json(const struct NpfSeries *s, uint32_t trunc, char **out);

// Message of the last failure on this thread (empty after a success).
// Valid until the next call into this library on the same thread.
const char *npf_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NPF_H */
