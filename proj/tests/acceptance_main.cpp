#include <cstdio>
#include <iostream>

#include "shellmin/verify.hpp"

int main() {
    const auto results = shellmin::run_acceptance(std::cout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.passed) ++failed;
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    return shellmin::all_passed(results) ? 0 : 1;
}
