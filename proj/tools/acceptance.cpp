// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
// `jlf_acceptance N` runs criterion N alone.

#include <iostream>
#include <string>

#include "jlf/verify.hpp"

int main(int argc, char** argv)
{
    int only = 0;
    if (argc > 1)
        only = std::stoi(argv[1]);
    long passed = 0, run = 0;
    for (const auto& c : jlf::verify::checks()) {
        if (only && c.id != only)
            continue;
        const auto r = jlf::verify::run(c);
        std::cout << jlf::verify::format_line(r) << std::endl;
        ++run;
        passed += r.pass;
    }
    if (run == 0) {
        std::cerr << "no such criterion" << std::endl;
        return 2;
    }
    std::cout << passed << "/" << run << " criteria passed" << std::endl;
    return passed == run ? 0 : 1;
}
