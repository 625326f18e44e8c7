#include <stdio.h>
#include "digraph_pfd.h"
int main(void) {
    size_t p2[] = {0, 1};
    size_t c3[] = {0, 1, 1, 2, 2, 0};
    DpfdGraph *a, *b, *g;
    DpfdFactorization *f;
    dpfd_graph_new(2, p2, 1, &a);
    dpfd_graph_new(3, c3, 3, &b);
    const DpfdGraph *fs[] = {a, b};
    if (dpfd_strong_product(fs, 2, &g) != DPFD_STATUS_OK) return 1;
    if (dpfd_strong_pfd(g, &f) != DPFD_STATUS_OK) return 2;
    printf("%zu factors of %zu vertices\n", dpfd_factorization_factor_count(f), dpfd_graph_vertex_count(g));
    dpfd_factorization_free(f); dpfd_graph_free(a); dpfd_graph_free(b); dpfd_graph_free(g);
    return 0;
}
