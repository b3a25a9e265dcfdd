#include <stdio.h>
#include <string.h>
#include "clickbait.h"

int main(int argc, char **argv) {
    if (argc < 2) return 10;
    CbEngine *e = NULL;
    if (cb_engine_load(argv[1], &e) != CB_STATUS_OK) return 11;

    CbClassification c;
    if (cb_classify(e, "Which Real Housewife Are You Based On Your Birth Month", &c) != CB_STATUS_OK) return 12;
    if (c.label != CB_LABEL_CLICKBAIT) return 13;

    CbProfile *p = NULL;
    if (cb_profile_new(e, CB_METHOD_PATTERN, NULL, &p) != CB_STATUS_OK) return 14;
    int32_t inserted = 0;
    if (cb_profile_record(p, e, "l1", "Which Dead `Grey's Anatomy' Character Are You", CB_ACTION_BLOCKED, 1, &inserted) != CB_STATUS_OK)
        return 15;
    CbBlockDecision d;
    if (cb_profile_decide(p, e, "Which `Inside Amy Schumer' Character Are You", &d) != CB_STATUS_OK) return 16;
    if (!d.block) return 17;

    if (cb_classify(e, NULL, &c) != CB_STATUS_NULL_ARGUMENT) return 18;
    char msg[64];
    size_t n = cb_last_error(msg, sizeof msg);
    if (n == 0 || strlen(msg) != n) return 19;

    printf("ok %s %.3f %.3f\n", cb_version(), c.score, d.block_score);
    cb_profile_free(p);
    cb_engine_free(e);
    return 0;
}
