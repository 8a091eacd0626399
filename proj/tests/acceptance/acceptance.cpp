#include <iostream>

#include "hydrostat/acceptance.hpp"
#include "hydrostat/config.hpp"

int main() {
    hydrostat::AcceptanceOptions opt;
    opt.threads = hydrostat::worker_threads();
    const auto results = hydrostat::run_acceptance(opt, std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
