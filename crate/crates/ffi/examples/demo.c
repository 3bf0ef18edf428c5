/* Generates an imbalanced dataset, balances it with SMOTE and prints the
 * class counts before and after. */
#include <stdio.h>
#include <stdlib.h>

#include "rebalance.h"

static int fail(RbStatus status) {
    char msg[256];
    rb_last_error_message(msg, sizeof msg);
    fprintf(stderr, "error %d: %s\n", (int)status, msg);
    return 1;
}

int main(int argc, char **argv) {
    const char *method = argc > 1 ? argv[1] : "smote";
    RbDataset *data = NULL;
    RbStatus st = rb_generate(1000, 5, 0.1, 0.9, 2.0, 1.0, 7, &data);
    if (st != RB_STATUS_OK) return fail(st);

    RbClassStats before, after;
    rb_dataset_stats(data, &before);

    RbResult *res = NULL;
    st = rb_resample(data, method, "auto", 42, &res);
    if (st != RB_STATUS_OK) {
        rb_dataset_free(data);
        return fail(st);
    }
    rb_dataset_stats(rb_result_dataset(res), &after);
    printf("%s: %zu/%zu -> %zu/%zu (%zu synthetic)\n", method, before.n_minority, before.n_majority,
           after.n_minority, after.n_majority, rb_result_n_synthetic(res));

    rb_result_free(res);
    rb_dataset_free(data);
    return 0;
}
