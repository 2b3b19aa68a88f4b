#include <stdio.h>
#include <math.h>
#include "dirac1d.h"

int main(void) {
    DiracGrid *grid = dirac_grid_new(2048, 128.0);
    if (!grid) return 1;
    DiracField *packet = dirac_packet_new(grid, Gauss11Boosted);
    if (!packet) return 2;
    DiracField *later = dirac_field_evolve(packet, 10.0);
    if (!later) return 3;
    double x = 0.0, p = 0.0, vcl = 0.0;
    if (dirac_field_mean_position(later, &x) != Ok) return 4;
    if (dirac_field_mean_momentum(later, &p) != Ok) return 5;
    if (dirac_field_classical_velocity(packet, &vcl) != Ok) return 6;
    if (fabs(dirac_field_norm(later) - 1.0) > 1e-10) return 7;
    if (fabs(p - 0.75) > 1e-9) return 8;
    double vph = 0.0;
    if (dirac_phase_velocity(0.75, Positive, &vph) != Ok) return 9;
    printf("mean_x(10) = %.4f  mean_p = %.4f  v_cl = %.4f  v_ph = %.4f  lambda = %.4f\n",
           x, p, vcl, vph, dirac_lambda(0.75));
    /* error path: null handle */
    if (dirac_field_mean_position(NULL, &x) != NullPointer) return 10;
    printf("last error: %s\n", dirac_last_error_message());
    dirac_field_free(later);
    dirac_field_free(packet);
    dirac_grid_free(grid);
    return 0;
}
