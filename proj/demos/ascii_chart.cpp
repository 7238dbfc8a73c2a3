// Prints an Ext chart in Adams grid form: stem t - s across, s up.
//   ascii_chart [prime] [module] [max_s] [max_stem]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "exptk/resolution.hpp"

int main(int argc, char** argv)
{
    int p = argc > 1 ? std::atoi(argv[1]) : 2;
    std::string module = argc > 2 ? argv[2] : "sphere";
    int s_max = argc > 3 ? std::atoi(argv[3]) : 8;
    int stems = argc > 4 ? std::atoi(argv[4]) : 20;

    auto tag = exptk::parse_module(module);
    if (!tag) {
        std::fprintf(stderr, "unknown module %s\n", module.c_str());
        return 2;
    }
    auto chart = exptk::compute_chart(exptk::Prime(p), *tag, s_max, s_max + stems);

    for (int s = s_max; s >= 0; --s) {
        std::printf("%3d |", s);
        for (int stem = 0; stem <= stems; ++stem) {
            int d = chart.dim(s, s + stem);
            std::printf(" %c", d == 0 ? '.' : (d < 10 ? static_cast<char>('0' + d) : '*'));
        }
        std::printf("\n");
    }
    std::printf("    +");
    for (int stem = 0; stem <= stems; ++stem)
        std::printf("--");
    std::printf("\n     ");
    for (int stem = 0; stem <= stems; ++stem)
        std::printf("%2d", stem % 100);
    std::printf("\n");
}
