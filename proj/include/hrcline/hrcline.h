#ifndef HRCLINE_HRCLINE_H
#define HRCLINE_HRCLINE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HRCLINE_BUILDING_LIBRARY)
#    define HRC_API __declspec(dllexport)
#  else
#    define HRC_API __declspec(dllimport)
#  endif
#else
#  define HRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes for the command-line tool. */
typedef enum hrc_status {
  HRC_OK = 0,
  HRC_ERR_INTERNAL = 1,
  HRC_ERR_PARSE = 2,
  HRC_ERR_VALIDATION = 2,
  HRC_ERR_INFEASIBLE = 3,
  HRC_ERR_IO = 4,
  HRC_ERR_USAGE = 5
} hrc_status;

typedef enum hrc_format { HRC_FORMAT_TEXT = 0, HRC_FORMAT_JSON = 1, HRC_FORMAT_CSV = 2 } hrc_format;

typedef enum hrc_mode { HRC_MODE_DEFAULT = 0, HRC_MODE_SERIAL = 1, HRC_MODE_PIPELINED = 2 } hrc_mode;

typedef struct hrc_scenario hrc_scenario;

/* Options shared by the report functions. Zero-initialise, then set the
   fields you need; `has_*` flags select overrides of the scenario values. */
typedef struct hrc_options {
  hrc_format format;
  hrc_mode mode;
  int has_seed;
  uint64_t seed;
  int replications; /* 0: scenario value */
  int has_min_distance;
  double min_distance_m;
  unsigned threads; /* 0: hardware concurrency */
} hrc_options;

typedef struct hrc_plan_request {
  int has_demand;
  int64_t demand;
  int has_days;
  int64_t days;
  int has_throughput;
  double throughput;
} hrc_plan_request;

typedef struct hrc_plan {
  int64_t daily_demand;
  int64_t per_station_throughput;
  int64_t stations;
  int64_t planned_daily_output;
  int64_t planned_total;
} hrc_plan;

HRC_API const char* hrc_version(void);

/* Message of the last failed call on this thread, or "" when none. */
HRC_API const char* hrc_last_error(void);
/* Short name of a status: "ok", "invalid", "infeasible", "io", ... */
HRC_API const char* hrc_status_name(hrc_status status);

HRC_API hrc_status hrc_scenario_load_file(const char* path, hrc_scenario** out);
HRC_API hrc_status hrc_scenario_load_string(const char* text, size_t length, hrc_scenario** out);
HRC_API hrc_status hrc_scenario_load_bundled(hrc_scenario** out);
HRC_API void hrc_scenario_free(hrc_scenario* scenario);

/* Canonical JSON of a loaded scenario. */
HRC_API hrc_status hrc_scenario_serialize(const hrc_scenario* scenario, char** out);

/* Report documents. The returned string is owned by the caller and must be
   released with hrc_string_free. `options` may be NULL. */
HRC_API hrc_status hrc_report_allocate(const hrc_scenario* scenario, const hrc_options* options, char** out);
HRC_API hrc_status hrc_report_balance(const hrc_scenario* scenario, const hrc_options* options, char** out);
HRC_API hrc_status hrc_report_simulate(const hrc_scenario* scenario, const hrc_options* options, char** out);
HRC_API hrc_status hrc_report_check(const hrc_scenario* scenario, const hrc_options* options, char** out);
HRC_API hrc_status hrc_report_trace(const hrc_scenario* scenario, const hrc_options* options, char** out);
/* `scenario` may be NULL when demand, days and throughput are all given. */
HRC_API hrc_status hrc_report_plan(const hrc_scenario* scenario, const hrc_plan_request* request,
                                   const hrc_options* options, char** out);
HRC_API hrc_status hrc_report_demo(const hrc_options* options, char** out);

HRC_API void hrc_string_free(char* text);

/* Numeric helpers. */
HRC_API hrc_status hrc_takt_seconds(int64_t shift_s, int64_t daily_demand, int64_t* out);
HRC_API hrc_status hrc_plan_compute(int64_t total_demand, int64_t days, int64_t per_station_throughput,
                                    hrc_plan* out);
/* Mean daily throughput and 95 % half-width over `replications` runs. */
HRC_API hrc_status hrc_simulate_throughput(const hrc_scenario* scenario, const hrc_options* options,
                                           double* mean, double* half_width);

#ifdef __cplusplus
}
#endif

#endif
