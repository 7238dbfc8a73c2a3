// Lower and upper bounds on exp_p(tau[1,n]S^0) next to the bound obtained from the
// vanishing function of a computed tau1 chart. Rows past the chart's reach print '-'.

#include <cstdio>

#include "exptk/bounds.hpp"

int main()
{
    using namespace exptk;
    for (int p : {2, 3}) {
        Prime prime(p);
        auto chart = compute_chart(prime, BuiltinModule::Tau1, 8, p == 2 ? 32 : 60);
        auto f = vanishing_function_from_chart(chart);

        std::printf("p = %d, tau1 chart s <= %d, t <= %d\n", p, chart.s_max, chart.t_max);
        std::printf("    n  lower  upper  from-chart\n");
        for (int n = 1; n <= 16; ++n) {
            auto b = exponent_bound_from_vanishing(f, n);
            std::printf("%5d %6d %6d", n, main_lower_value(prime, n), main_upper_value(prime, n));
            if (b.status == VanishingBound::Status::Found && !f.window_limited(b.m))
                std::printf(" %11d\n", b.m);
            else
                std::printf(" %11s\n", "-");
        }
        std::printf("\n");
    }
}
