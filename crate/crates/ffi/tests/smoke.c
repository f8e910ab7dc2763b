#include <stdio.h>
#include <string.h>
#include "gapped_repeats.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s\n", #cond); return 1; } } while (0)

int main(void) {
    GrConstraint *con = NULL;
    CHECK(gr_constraint_parse("alpha:2", 5, &con) == GR_STATUS_OK);

    const char *w = "aabaa";
    GrRepeats *set = NULL;
    CHECK(gr_repeats_new((const uint8_t *)w, strlen(w), con, &set) == GR_STATUS_OK);
    CHECK(gr_repeats_len(set) == 2);
    GrRepeat rep;
    GrClass cls;
    CHECK(gr_repeats_get(set, 1, &rep, &cls) == GR_STATUS_OK);
    CHECK(rep.beg1 == 2 && rep.copy_len == 1 && rep.period == 2);
    gr_repeats_free(set);

    CHECK(gr_constraint_parse("nonsense", 5, &con) != GR_STATUS_OK);
    CHECK(gr_last_error() != NULL);

    uint8_t buf[16];
    size_t n = 0;
    CHECK(gr_generate(GR_GENERATOR_RANDOM, 16, 2, 42, NULL, 0, 0, buf, sizeof buf, &n) == GR_STATUS_OK);
    CHECK(n == 16 && memcmp(buf, "aaabaabaabaaaaab", 16) == 0);
    gr_constraint_free(con);
    puts("ok");
    return 0;
}
