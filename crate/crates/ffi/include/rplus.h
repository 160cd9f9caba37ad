#ifndef RPLUS_H
#define RPLUS_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RplusStatus {
  RPLUS_STATUS_OK = 0,
  RPLUS_STATUS_NULL_POINTER = 1,
  RPLUS_STATUS_INVALID_UTF8 = 2,
  RPLUS_STATUS_PARSE = 3,
  RPLUS_STATUS_NOT_PRIME = 4,
  RPLUS_STATUS_PRECONDITION = 5,
  RPLUS_STATUS_REDUCIBLE = 6,
  RPLUS_STATUS_IRREDUCIBILITY_UNDETERMINED = 7,
  RPLUS_STATUS_DIVISION_BY_ZERO = 8,
  RPLUS_STATUS_DEPTH_CAP_EXCEEDED = 9,
  RPLUS_STATUS_BUDGET_EXHAUSTED = 10,
  RPLUS_STATUS_INTERNAL = 11,
  RPLUS_STATUS_PANIC = 12,
} RplusStatus;

/*
 Opaque number field handle.
 */
typedef struct RplusField RplusField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failing call on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *rplus_last_error(void);

/*
 Releases a string returned by this library. NULL is ignored.
 */
void rplus_string_free(char *s);

/*
 Parses a minimal polynomial such as `"x^2-2"` or `"2x-1"`. With `trusted`
 the irreducibility check is skipped.
 */
enum RplusStatus rplus_field_new(const char *poly, bool trusted, struct RplusField **out);

void rplus_field_free(struct RplusField *field);

/*
 Degree of the field, 0 for NULL.
 */
size_t rplus_field_degree(const struct RplusField *field);

enum RplusStatus rplus_field_json(const struct RplusField *field, char **out);

/*
 Whether β lies in the semiring generated by the defining element.
 β is a rational such as `"1/2"` or a coordinate list such as `"[1/2,1/7]"`.
 */
enum RplusStatus rplus_member(const struct RplusField *field, const char *beta, bool *out);

/*
 Full verdict as JSON, optionally with a certificate for members.
 */
enum RplusStatus rplus_member_json(const struct RplusField *field,
                                   const char *beta,
                                   bool certify,
                                   char **out);

/*
 Whether 1/p is a member.
 */
enum RplusStatus rplus_inverse_prime_in(const struct RplusField *field, uint64_t p, bool *out);

/*
 A certificate for −1 as JSON: `{"target": [...], "terms": [[k, a], ...]}`.
 */
enum RplusStatus rplus_neg_one_certificate_json(const struct RplusField *field, char **out);

/*
 Checks a certificate in the JSON format above by exact recomputation.
 */
enum RplusStatus rplus_verify_certificate_json(const struct RplusField *field,
                                               const char *cert,
                                               bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RPLUS_H */
