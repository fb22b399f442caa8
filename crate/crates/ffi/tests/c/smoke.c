#include <stdio.h>
#include <string.h>
#include "wchar.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, wchar_last_error()); return 1; } } while (0)

int main(void) {
    WcharGrading *g = NULL;
    CHECK(wchar_grading_new("2,2", &g) == WCHAR_STATUS_OK);
    size_t dchi = 0;
    CHECK(wchar_grading_dchi(g, &dchi) == WCHAR_STATUS_OK && dchi == 4);
    wchar_grading_free(g);

    CHECK(wchar_grading_new("0,x", &g) == WCHAR_STATUS_PRECONDITION);
    CHECK(strlen(wchar_last_error()) > 0);

    char buf[16];
    size_t needed = 0;
    CHECK(wchar_exceptional_partition(5, 7, 2, buf, sizeof buf, &needed) == WCHAR_STATUS_OK);
    CHECK(strcmp(buf, "1,2,2") == 0 && needed == 6);
    CHECK(wchar_exceptional_partition(5, 7, 2, buf, 3, &needed) == WCHAR_STATUS_BUFFER_TOO_SMALL);

    WcharCharacter *ch = NULL;
    CHECK(wchar_character_new("2", 4, 3, "1", 6, 4, &ch) == WCHAR_STATUS_OK);
    int64_t series[7];
    size_t written = 0;
    CHECK(wchar_character_q_series(ch, series, 7, &written) == WCHAR_STATUS_OK && written == 7);
    int64_t ising[7] = {1, 0, 1, 1, 2, 2, 3};
    CHECK(memcmp(series, ising, sizeof ising) == 0);
    char *json = NULL;
    CHECK(wchar_character_json(ch, &json) == WCHAR_STATUS_OK && strstr(json, "\"schema\":1") != NULL);
    wchar_string_free(json);
    wchar_character_free(ch);

    printf("ok %s\n", wchar_version());
    return 0;
}
