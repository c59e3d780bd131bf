#include <math.h>
#include <stdio.h>

#include "tanglebound.h"

int main(void) {
    double a[2] = {1.0, 0.0};
    TbState4 *s = NULL;
    if (tb_class_representative(5, a, 1, &s) != TbStatus_Ok) {
        fprintf(stderr, "representative: %s\n", tb_last_error());
        return 1;
    }
    double bound = 0.0;
    if (tb_best_bound(s, TbTriple_A1A2A3, &bound) != TbStatus_Ok) {
        fprintf(stderr, "bound: %s\n", tb_last_error());
        tb_state4_free(s);
        return 1;
    }
    char *json = NULL;
    tb_report_json(s, TbTriple_A1A2A3, &json);
    printf("%s\n", json);
    tb_string_free(json);
    tb_state4_free(s);
    return fabs(bound - 16.0 / 49.0) < 1e-9 ? 0 : 1;
}
