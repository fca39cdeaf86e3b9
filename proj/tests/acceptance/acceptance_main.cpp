// Acceptance suite: runs every validation criterion at its stated tolerance on
// the default 2^14-point grid and prints one pass/fail line per check.
#include <cstdio>
#include <cstring>

#include "pcwave/scenario.hpp"

int main(int argc, char** argv) {
    pcwave::ValidationOptions opt;
    opt.verbose = true;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) opt.out_dir = argv[++i];
        if (std::strcmp(argv[i], "--points") == 0 && i + 1 < argc)
            opt.n_points = std::atoi(argv[++i]);
    }
    const pcwave::ValidationReport rep = pcwave::validate_all(opt);
    int failed = 0;
    for (const auto& r : rep.records)
        if (!r.pass) ++failed;
    std::printf("%zu checks, %d failed\n", rep.records.size(), failed);
    return rep.all_pass() ? 0 : 1;
}
