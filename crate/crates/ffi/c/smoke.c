/* Minimal C client: builds a series, prints the peak p-value. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "netextreme.h"

int main(void) {
    enum { T = 800 };
    double prices[T];
    double level = 100.0;
    for (int n = 0; n < T; n++) {
        /* slow sawtooth with a convex climb into each top */
        double u = (double)(n % 200) / 200.0;
        prices[n] = level * exp(0.3 * u * u) * (1.0 + 0.002 * sin(n * 1.7));
    }

    NxSeries *series = NULL;
    if (nx_series_from_prices(prices, T, &series) != NX_STATUS_OK) {
        fprintf(stderr, "series: %s\n", nx_last_error_message());
        return 1;
    }

    size_t needed = 0;
    if (nx_indicator(series, NX_KIND_PEAK, 100, NULL, 0, &needed) != NX_STATUS_BUFFER_TOO_SMALL || needed != T - 100) {
        fprintf(stderr, "unexpected sizing: %zu\n", needed);
        return 1;
    }

    double p = NAN;
    if (nx_p_value(series, NX_KIND_PEAK, 100, 50, 20, 0, &p) != NX_STATUS_OK) {
        fprintf(stderr, "p-value: %s\n", nx_last_error_message());
        return 1;
    }
    printf("%.17g\n", p);
    nx_series_free(series);
    return (p > 0.0 && p <= 1.0) ? 0 : 1;
}
