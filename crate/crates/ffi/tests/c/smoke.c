#include <stdio.h>
#include <string.h>

#include "unproj.h"

static const char *TOM =
    "{\"kind\":\"tom\",\"vars\":[\"x1\",\"x2\",\"x3\",\"x4\",\"z1\",\"z2\",\"z3\",\"z4\"],"
    "\"x\":[\"x1\",\"x2\",\"x3\",\"x4\"],\"z\":[\"z1\",\"z2\",\"z3\",\"z4\"],"
    "\"coeffs\":{\"a24_1\":\"1\",\"a25_2\":\"1\",\"a34_3\":\"1\",\"a35_4\":\"1\"}}";

int main(void) {
    UnprojResult *r = NULL;
    if (unproj_unproject(TOM, NULL, NULL, &r) != UNPROJ_STATUS_OK) {
        fprintf(stderr, "unproject: %s\n", unproj_last_error());
        return 1;
    }
    if (unproj_result_generator_count(r) != 9) return 2;
    if (strcmp(unproj_result_g(r, 0), "x1*x3") != 0) return 3;
    unproj_result_free(r);

    if (unproj_unproject("{", NULL, NULL, &r) != UNPROJ_STATUS_INPUT_ERROR) return 4;
    if (unproj_last_error() == NULL) return 5;

    char *out = NULL;
    if (unproj_pfaffian_json("{\"vars\":[\"a\"],\"size\":2,\"upper\":[\"a\"]}", &out) != UNPROJ_STATUS_OK) return 6;
    if (strstr(out, "\"a\"") == NULL) return 7;
    unproj_string_free(out);

    printf("ok %s\n", unproj_version());
    return 0;
}
