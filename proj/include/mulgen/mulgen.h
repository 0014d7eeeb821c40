/*
 * mulgen C API.
 *
 * Opaque handles own circuits and verification reports; every fallible call
 * returns a mulgen_status and leaves a thread-local message readable through
 * mulgen_last_error(). Strings returned through `char** out` are allocated
 * by the library and released with mulgen_string_free().
 */
#ifndef MULGEN_H
#define MULGEN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MULGEN_BUILDING)
#    define MULGEN_API __declspec(dllexport)
#  else
#    define MULGEN_API __declspec(dllimport)
#  endif
#else
#  define MULGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mulgen_circuit mulgen_circuit;
typedef struct mulgen_verify_report mulgen_verify_report;

typedef enum mulgen_status {
  MULGEN_OK = 0,
  MULGEN_ERR_INVALID_ARGUMENT = 1,
  MULGEN_ERR_SPEC = 2,
  MULGEN_ERR_PARSE = 3,
  MULGEN_ERR_INVALID_CIRCUIT = 4,
  MULGEN_ERR_OUT_OF_RANGE = 5,
  MULGEN_ERR_WIDTH_CAP = 6,
  MULGEN_ERR_IO = 7,
  MULGEN_ERR_INTERNAL = 8
} mulgen_status;

typedef enum mulgen_signedness {
  MULGEN_UNSIGNED = 0,
  MULGEN_SIGNED = 1,
  /* Verification only: take the signedness from the circuit's port. */
  MULGEN_SIGN_FROM_PORT = -1
} mulgen_signedness;

typedef enum mulgen_architecture {
  MULGEN_ARCH_BW = 0,
  MULGEN_ARCH_ARRAY = 1,
  MULGEN_ARCH_BOOTH4 = 2,
  MULGEN_ARCH_DECOMPOSED = 3
} mulgen_architecture;

typedef enum mulgen_combiner { MULGEN_COMBINER_CSA = 0, MULGEN_COMBINER_RIPPLE = 1 } mulgen_combiner;

typedef enum mulgen_split { MULGEN_SPLIT_HALVING = 0, MULGEN_SPLIT_GRID = 1 } mulgen_split;

typedef enum mulgen_verify_mode {
  MULGEN_VERIFY_EXHAUSTIVE = 0,
  MULGEN_VERIFY_RANDOM = 1
} mulgen_verify_mode;

typedef enum mulgen_format {
  MULGEN_FORMAT_TEXT = 0, /* verify reports */
  MULGEN_FORMAT_JSON = 1, /* verify reports */
  MULGEN_FORMAT_MARKDOWN = 2, /* comparison tables */
  MULGEN_FORMAT_CSV = 3 /* comparison tables */
} mulgen_format;

typedef struct mulgen_spec {
  uint32_t width;
  int sign_a;       /* mulgen_signedness */
  int sign_b;       /* mulgen_signedness */
  int architecture; /* mulgen_architecture */
  uint32_t leaf_width;
  int combiner;     /* mulgen_combiner */
  int split;        /* mulgen_split */
} mulgen_spec;

typedef struct mulgen_timing {
  int64_t delay_num; /* critical delay as an exact fraction */
  int64_t delay_den;
  double delay;
  uint32_t depth;    /* gate levels (unit model) */
  size_t path_length;
} mulgen_timing;

/* Gate kinds in JSON order: CONST0 CONST1 NOT BUF AND2 NAND2 OR2 NOR2 XOR2 XNOR2. */
#define MULGEN_GATE_KIND_COUNT 10

typedef struct mulgen_area {
  size_t counts[MULGEN_GATE_KIND_COUNT];
  size_t total_gates;
} mulgen_area;

MULGEN_API const char* mulgen_version(void);
MULGEN_API const char* mulgen_last_error(void);
MULGEN_API const char* mulgen_status_string(mulgen_status status);
MULGEN_API const char* mulgen_gate_kind_name(size_t kind);
MULGEN_API void mulgen_string_free(char* s);

/* Defaults: width 8, signed x signed, Baugh-Wooley, leaf 4, CSA, halving. */
MULGEN_API void mulgen_spec_init(mulgen_spec* spec);
/* "bw" | "array" | "booth4" | "decomposed" | "decomposed:K" | "decomposed:K:grid".
 * Sets architecture (and leaf/split), leaves the other fields untouched. */
MULGEN_API mulgen_status mulgen_spec_parse_arch(const char* token, mulgen_spec* spec);
MULGEN_API mulgen_status mulgen_spec_check(const mulgen_spec* spec);
MULGEN_API mulgen_status mulgen_spec_describe(const mulgen_spec* spec, char** out);

MULGEN_API mulgen_status mulgen_generate(const mulgen_spec* spec, mulgen_circuit** out);
MULGEN_API mulgen_status mulgen_circuit_from_json(const char* text, size_t length,
                                                  mulgen_circuit** out);
MULGEN_API mulgen_status mulgen_circuit_load(const char* path, mulgen_circuit** out);
MULGEN_API void mulgen_circuit_free(mulgen_circuit* circuit);

MULGEN_API const char* mulgen_circuit_name(const mulgen_circuit* circuit);
MULGEN_API size_t mulgen_circuit_gate_count(const mulgen_circuit* circuit);
MULGEN_API size_t mulgen_circuit_net_count(const mulgen_circuit* circuit);
/* Width and signedness of a named input or output port. */
MULGEN_API mulgen_status mulgen_circuit_port(const mulgen_circuit* circuit, const char* name,
                                             uint32_t* width, int* signedness);

MULGEN_API mulgen_status mulgen_circuit_to_json(const mulgen_circuit* circuit, char** out);
MULGEN_API mulgen_status mulgen_circuit_to_verilog(const mulgen_circuit* circuit, char** out);
/* Format chosen by extension: ".json" or ".v". */
MULGEN_API mulgen_status mulgen_circuit_save(const mulgen_circuit* circuit, const char* path);

/* model: "unit" or "tech-demo". */
MULGEN_API mulgen_status mulgen_circuit_timing(const mulgen_circuit* circuit, const char* model,
                                               mulgen_timing* out);
MULGEN_API mulgen_status mulgen_circuit_area(const mulgen_circuit* circuit, mulgen_area* out);

/* Evaluates with the named inputs and returns the value of one output port. */
MULGEN_API mulgen_status mulgen_evaluate(const mulgen_circuit* circuit, const char* const* names,
                                         const int64_t* values, size_t count,
                                         const char* output, int64_t* result);

/* Checks the circuit (ports A, B, P) against the integer product. Exhaustive
 * mode ignores count and seed; cap is the largest width allowed (0 = 8). */
MULGEN_API mulgen_status mulgen_verify(const mulgen_circuit* circuit, int sign_a, int sign_b,
                                       int mode, uint64_t count, uint64_t seed, uint32_t cap,
                                       mulgen_verify_report** out);
MULGEN_API int mulgen_report_passed(const mulgen_verify_report* report);
MULGEN_API uint64_t mulgen_report_total_vectors(const mulgen_verify_report* report);
MULGEN_API size_t mulgen_report_failure_count(const mulgen_verify_report* report);
MULGEN_API mulgen_status mulgen_report_render(const mulgen_verify_report* report, int format,
                                              char** out);
MULGEN_API void mulgen_report_free(mulgen_verify_report* report);

/* Generates each spec and renders the comparison table (markdown or csv). */
MULGEN_API mulgen_status mulgen_compare(const mulgen_spec* specs, const char* const* labels,
                                        size_t count, const char* model, int format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MULGEN_H */
