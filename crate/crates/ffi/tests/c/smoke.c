#include <stdio.h>
#include <stdlib.h>

#include "aco_ffi.h"

#define CHECK(call)                                                            \
  do {                                                                         \
    AcoStatus s_ = (call);                                                     \
    if (s_ != ACO_STATUS_OK) {                                                 \
      fprintf(stderr, "%s -> %d: %s\n", #call, (int)s_,                        \
              aco_last_error_message());                                       \
      return 1;                                                                \
    }                                                                          \
  } while (0)

int main(void) {
  AcoObjective *sphere = NULL;
  CHECK(aco_objective_new(ACO_FUNCTION_SPHERE, 5, ACO_FORMULA_PAPER, &sphere));

  AcoRunParams params;
  CHECK(aco_params_improved(&params));
  params.max_iterations = 200;
  params.seed = 3;
  params.trace_iterations = 1;

  AcoTrial *trial = NULL;
  CHECK(aco_run(sphere, &params, &trial));
  double best = aco_trial_final_best(trial);
  size_t n = aco_trial_dimension(trial);
  double x[5];
  CHECK(aco_trial_copy_solution(trial, x, 5));
  double again = 0.0;
  CHECK(aco_objective_evaluate(sphere, x, n, &again));

  size_t traced = aco_trial_trace_len(trial);
  AcoSelectionRecord *records = malloc(traced * sizeof *records);
  CHECK(aco_trial_copy_trace(trial, records, traced));

  AcoStatus bad = aco_objective_new(ACO_FUNCTION_SPHERE, 0, ACO_FORMULA_PAPER, &sphere);

  printf("best=%.17g reeval=%.17g n=%zu traced=%zu first_rank=%zu bad=%d\n", best,
         again, n, traced, records[0].selected_rank, (int)bad);
  free(records);
  aco_trial_free(trial);
  aco_objective_free(sphere);
  return best == again && traced == 50 && bad == ACO_STATUS_CONFIG ? 0 : 2;
}
