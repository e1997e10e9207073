#include <stdio.h>
#include <string.h>

#include "extremal.h"

int main(void) {
    const char *json = "{\"kind\":\"jump\",\"horizon\":[0,1],\"times\":[0.25,0.5],\"sizes\":[2,-1],\"initial\":0}";
    ExtPath *path = NULL;
    if (ext_path_from_json(json, &path) != EXT_STATUS_OK) return 1;

    double times[8];
    size_t len = 0;
    if (ext_extremal_times(path, 0, times, 8, &len) != EXT_STATUS_OK) return 2;
    if (len != 4 || times[1] != 0.25 || times[2] != 0.5) return 3;

    ExtMajorant *m = NULL;
    if (ext_majorant_of_path(path, &m) != EXT_STATUS_OK) return 4;
    double slope = 0.0;
    if (ext_majorant_slope(m, 0.25, EXT_SIDE_RIGHT, &slope) != EXT_STATUS_OK || slope != 0.0) return 5;

    if (ext_path_from_json("not json", &path) != EXT_STATUS_MALFORMED_CONFIG) return 6;
    if (ext_last_error_message() == NULL) return 7;

    ext_majorant_free(m);
    ext_path_free(path);
    puts("ok");
    return 0;
}
