#include <stdio.h>
#include <string.h>
#include "grouptk.h"

int main(void) {
    GtkGroup *g = NULL;
    if (gtk_group_catalog("S3", &g) != GTK_STATUS_OK) return 10;
    uint64_t order = 0;
    if (gtk_group_order(g, &order) != GTK_STATUS_OK || order != 6) return 11;
    GtkInvariants *inv = NULL;
    if (gtk_pi_n(g, "A3,A3,A3", &inv) != GTK_STATUS_OK) return 12;
    uint64_t t = 0;
    if (gtk_invariants_free_rank(inv) != 0 || gtk_invariants_torsion_len(inv) != 1) return 13;
    if (gtk_invariants_torsion_at(inv, 0, &t) != GTK_STATUS_OK || t != 3) return 14;
    gtk_invariants_free(inv);
    gtk_group_free(g);

    if (gtk_group_catalog("nosuch", &g) != GTK_STATUS_INVALID_INPUT) return 15;
    char buf[128];
    if (gtk_last_error(buf, sizeof buf) == 0 || strstr(buf, "nosuch") == NULL) return 16;

    char *json = NULL;
    int code = -1;
    if (gtk_run_json("akcheck --n 2", &json, &code) != GTK_STATUS_OK || code != 0) return 17;
    if (strstr(json, "\"trivial\": true") == NULL) return 18;
    gtk_string_free(json);
    puts("ok");
    return 0;
}
