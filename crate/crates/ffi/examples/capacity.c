/* Build: cc capacity.c -I../include -L<target>/debug -ldensecode_ffi */
#include <stdio.h>
#include "densecode.h"

int main(void) {
    DcState *state = NULL;
    DcLayout *layout = NULL;
    double capacity = 0.0, bound = 0.0;
    DcShell shell;

    if (dc_state_ghz(4, &state) != DC_STATUS_OK ||
        dc_layout_ghz(4, &layout) != DC_STATUS_OK) {
        fprintf(stderr, "setup failed: %s\n", dc_last_error());
        return 1;
    }
    if (dc_capacity(state, layout, &capacity, NULL) != DC_STATUS_OK ||
        dc_locc_upper_bound(state, layout, &bound) != DC_STATUS_OK ||
        dc_classify(state, layout, 1e-9, false, &shell, NULL) != DC_STATUS_OK) {
        fprintf(stderr, "query failed: %s\n", dc_last_error());
        return 1;
    }
    printf("capacity %.6f bound %.6f shell %d\n", capacity, bound, (int)shell);

    if (dc_state_werner(2.0, &state) != DC_STATUS_INVALID_INPUT) {
        return 1;
    }
    printf("error: %s\n", dc_last_error());

    dc_state_free(state);
    dc_layout_free(layout);
    return 0;
}
