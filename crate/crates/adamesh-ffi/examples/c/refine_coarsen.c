/* SPDX-License-Identifier: Apache-2.0 */

/* Refine the unit square twice with red-blue refinement, coarsen it back,
 * and print the element counts. Exits nonzero on any failure. */

#include <stdio.h>
#include <stdlib.h>

#include "adamesh.h"

static int check(AdmStatus s, const char *what) {
    if (s != ADM_STATUS_OK) {
        const char *msg = adm_last_error_message();
        fprintf(stderr, "%s failed (%d): %s\n", what, (int)s, msg ? msg : "");
        return 1;
    }
    return 0;
}

int main(void) {
    AdmMesh *mesh = NULL;
    if (check(adm_mesh_initial(ADM_STRATEGY_QRB, &mesh), "initial")) return 1;

    size_t first = 0;
    AdmMesh *fine = NULL;
    if (check(adm_refine(ADM_STRATEGY_QRB, mesh, &first, 1, &fine), "refine")) return 1;
    size_t corner = 0;
    AdmMesh *finer = NULL;
    if (check(adm_refine(ADM_STRATEGY_QRB, fine, &corner, 1, &finer), "refine")) return 1;
    printf("refined: %zu nodes, %zu elements\n", adm_mesh_num_nodes(finer),
           adm_mesh_num_triangles(finer) + adm_mesh_num_quads(finer));

    bool conforming = false;
    if (check(adm_mesh_is_conforming(finer, &conforming), "conforming")) return 1;
    if (!conforming) return 2;

    AdmMesh *current = finer;
    for (int step = 0; step < 10; ++step) {
        size_t n = adm_mesh_num_triangles(current) + adm_mesh_num_quads(current);
        size_t *all = malloc(n * sizeof *all);
        for (size_t i = 0; i < n; ++i) all[i] = i;
        AdmMesh *next = NULL;
        AdmStatus s = adm_coarsen(ADM_STRATEGY_QRB, current, all, n, ADM_POLICY_ANY_OF, &next);
        free(all);
        if (check(s, "coarsen")) return 1;
        adm_mesh_free(current);
        current = next;
    }
    printf("coarsened: %zu nodes, %zu elements\n", adm_mesh_num_nodes(current), adm_mesh_num_quads(current));

    /* Out-of-range marks are reported, not fatal. */
    size_t bad = 99;
    AdmMesh *unused = NULL;
    if (adm_refine(ADM_STRATEGY_QRB, current, &bad, 1, &unused) != ADM_STATUS_MARK_OUT_OF_RANGE) return 3;

    int ok = adm_mesh_num_nodes(current) == 4 && adm_mesh_num_quads(current) == 1;
    adm_mesh_free(current);
    adm_mesh_free(fine);
    adm_mesh_free(mesh);
    return ok ? 0 : 4;
}
