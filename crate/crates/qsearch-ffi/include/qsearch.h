/* qsearch C API: state-vector search experiments with query accounting. */

#ifndef QSEARCH_H
#define QSEARCH_H

/* Generated by cbindgen from qsearch-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum QsearchStatus {
  QsearchStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  QsearchStatus_NullPointer = 1,
  /**
   * Bad argument values (out-of-range indices, malformed rounds, …).
   */
  QsearchStatus_InvalidArgument = 2,
  /**
   * The requested register exceeds the qubit cap.
   */
  QsearchStatus_CapacityExceeded = 3,
  /**
   * Circuit text failed to parse.
   */
  QsearchStatus_ParseError = 4,
  /**
   * An asserted experiment invariant did not hold.
   */
  QsearchStatus_InvariantViolation = 5,
} QsearchStatus;

/**
 * A state vector together with its oracle-query ledger.
 */
typedef struct qsearch_state qsearch_state;

/**
 * Search outcome of [`qsearch_grover_run`].
 */
typedef struct QsearchGroverResult {
  /**
   * Probability of measuring the marked index afterwards.
   */
  double success_probability;
  /**
   * `sin²((2t+1)·arcsin(1/√N))` at the same iteration count.
   */
  double closed_form;
  /**
   * Iterations maximizing the closed form.
   */
  uint64_t optimal_iterations;
  /**
   * Oracle queries spent (equals the iteration count).
   */
  uint64_t queries;
} QsearchGroverResult;

/**
 * Outcome of [`qsearch_refute_run`].
 */
typedef struct QsearchRefuteResult {
  /**
   * Probability that the first ancilla register reads the marked index.
   */
  double reveal_probability;
  /**
   * 1/N.
   */
  double reveal_bound;
  /**
   * Optimal-guesser success from a full-register measurement.
   */
  double identification_probability;
  /**
   * 2/N.
   */
  double identification_bound;
  /**
   * Oracle queries spent (always 1).
   */
  uint64_t queries;
  /**
   * Marked index 0 coincides with the initial ancilla pattern; the
   * reveal probability is degenerate there.
   */
  bool degenerate_marked;
  /**
   * Both probabilities sat within their bounds (reveal skipped when
   * degenerate).
   */
  bool bounds_hold;
} QsearchRefuteResult;

/**
 * Outcome of [`qsearch_adversary_run`].
 */
typedef struct QsearchAdversaryResult {
  double max_success;
  double mean_success;
  /**
   * Best success any strategy with this many queries can reach.
   */
  double ceiling;
  uint64_t queries;
  uint64_t trials;
  bool ceiling_respected;
} QsearchAdversaryResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qsearch_version(void);

/**
 * Message of the last failure on this thread, or null if none. The pointer
 * stays valid until the next failing qsearch call on the same thread.
 */
const char *qsearch_last_error_message(void);

/**
 * Allocate a `num_qubits`-qubit state in the computational basis state
 * `basis_index`, with an empty query ledger.
 *
 * # Safety
 * `out` must be a valid pointer; on `Ok` it receives a handle that must be
 * released with [`qsearch_state_free`].
 */
enum QsearchStatus qsearch_state_new(uint32_t num_qubits,
                                     uint64_t basis_index,
                                     struct qsearch_state **out);

/**
 * Release a handle from [`qsearch_state_new`] or [`qsearch_circuit_run`].
 * Null is ignored.
 *
 * # Safety
 * `state` must be a handle returned by this library, not yet freed.
 */
void qsearch_state_free(struct qsearch_state *state);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum QsearchStatus qsearch_state_num_qubits(const struct qsearch_state *state, uint32_t *out);

/**
 * Oracle queries recorded on this handle so far.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum QsearchStatus qsearch_state_queries(const struct qsearch_state *state, uint64_t *out);

/**
 * Σ|amplitude|² of the state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum QsearchStatus qsearch_state_norm(const struct qsearch_state *state, double *out);

/**
 * Real and imaginary parts of one amplitude.
 *
 * # Safety
 * `state` must be a live handle; `out_re` and `out_im` must be valid for
 * writes.
 */
enum QsearchStatus qsearch_state_amplitude(const struct qsearch_state *state,
                                           uint64_t basis_index,
                                           double *out_re,
                                           double *out_im);

/**
 * Hadamard on one qubit.
 *
 * # Safety
 * `state` must be a live handle.
 */
enum QsearchStatus qsearch_state_apply_h(struct qsearch_state *state, uint32_t qubit);

/**
 * Bit flip on one qubit.
 *
 * # Safety
 * `state` must be a live handle.
 */
enum QsearchStatus qsearch_state_apply_x(struct qsearch_state *state, uint32_t qubit);

/**
 * CNOT.
 *
 * # Safety
 * `state` must be a live handle.
 */
enum QsearchStatus qsearch_state_apply_cnot(struct qsearch_state *state,
                                            uint32_t control,
                                            uint32_t target);

/**
 * Toffoli.
 *
 * # Safety
 * `state` must be a live handle.
 */
enum QsearchStatus qsearch_state_apply_ccx(struct qsearch_state *state,
                                           uint32_t control0,
                                           uint32_t control1,
                                           uint32_t target);

/**
 * Flip oracle on a state of exactly `index_width + 1` qubits: flips the
 * flag qubit (the last one) where the index register equals `marked`, and
 * records one query on the handle's ledger.
 *
 * # Safety
 * `state` must be a live handle.
 */
enum QsearchStatus qsearch_state_apply_oracle_flip(struct qsearch_state *state,
                                                   uint32_t index_width,
                                                   uint64_t marked);

/**
 * Phase oracle: negates every basis state whose low `index_width` qubits
 * equal `marked`, and records one query.
 *
 * # Safety
 * `state` must be a live handle.
 */
enum QsearchStatus qsearch_state_apply_oracle_phase(struct qsearch_state *state,
                                                    uint32_t index_width,
                                                    uint64_t marked);

/**
 * Probability that measuring the listed qubits yields `value` (bit `j` of
 * `value` is the outcome of `qubits[j]`).
 *
 * # Safety
 * `state` must be a live handle; `qubits` must point to `len` readable
 * `u32`s (or be unused when `len` is 0); `out` must be valid for writes.
 */
enum QsearchStatus qsearch_state_marginal(const struct qsearch_state *state,
                                          const uint32_t *qubits,
                                          size_t len,
                                          uint64_t value,
                                          double *out);

/**
 * `arcsin(1/√N)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsearchStatus qsearch_grover_angle(uint64_t num_items, double *out);

/**
 * `sin²((2t+1)·arcsin(1/√N))`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsearchStatus qsearch_grover_closed_form(uint64_t num_items, uint64_t iterations, double *out);

/**
 * Iterations maximizing the closed-form success, ties toward fewer.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsearchStatus qsearch_grover_optimal_iterations(uint64_t num_items, uint64_t *out);

/**
 * Simulate a Grover run over `2^index_width` items.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsearchStatus qsearch_grover_run(uint32_t index_width,
                                      uint64_t marked,
                                      uint64_t iterations,
                                      struct QsearchGroverResult *out);

/**
 * Run the ancilla-copy pipeline: prepare, copy round, then the rounds
 * described by `rounds` (same grammar as the CLI: comma list of
 * `identity`, `hadamard`, `random:<k>`; null or empty means none).
 *
 * # Safety
 * `rounds` must be null or a NUL-terminated string; `out` must be valid
 * for writes.
 */
enum QsearchStatus qsearch_refute_run(uint32_t index_width,
                                      uint64_t marked,
                                      uint32_t ancilla_registers,
                                      const char *rounds,
                                      uint64_t seed,
                                      struct QsearchRefuteResult *out);

/**
 * `⌈arcsin(√(2^-p))·√(2^(n+m))⌉`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsearchStatus qsearch_bound_query_estimate(uint32_t index_width,
                                                uint32_t ancilla_width,
                                                uint32_t exponent,
                                                uint64_t *out);

/**
 * The ⌈⌉-free core of the query estimate, with a real exponent.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsearchStatus qsearch_bound_query_estimate_real(uint32_t index_width,
                                                     uint32_t ancilla_width,
                                                     double exponent,
                                                     double *out);

/**
 * Seeded adversarial sweep: `trials` random circuits with `queries`
 * counted oracle calls each, scored with every ancilla pattern accepted.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsearchStatus qsearch_adversary_run(uint32_t index_width,
                                         uint32_t extra_qubits,
                                         uint64_t queries,
                                         uint64_t trials,
                                         uint64_t seed,
                                         struct QsearchAdversaryResult *out);

/**
 * Parse circuit text (the CLI grammar) and execute it from `|0…0⟩`,
 * returning a fresh state handle carrying the final state and ledger.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes
 * and on `Ok` receives a handle to free with [`qsearch_state_free`].
 */
enum QsearchStatus qsearch_circuit_run(const char *text, struct qsearch_state **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSEARCH_H */
