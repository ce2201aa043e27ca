// Solve the bundled samples (or instance files given as arguments) with the
// default solver and compare against the brute-force optimum.

#include <fstream>
#include <iostream>
#include <iterator>

#include "mmgsc/report.hpp"

#ifndef MMGSC_SAMPLES_DIR
#define MMGSC_SAMPLES_DIR "samples"
#endif

int main(int argc, char** argv) {
    std::vector<std::string> files;
    for (int k = 1; k < argc; ++k) files.push_back(argv[k]);
    if (files.empty()) files = {MMGSC_SAMPLES_DIR "/squares_small.json", MMGSC_SAMPLES_DIR "/halfplanes_small.json"};

    for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "cannot read " << path << "\n";
            return 1;
        }
        const auto doc = mmgsc::parse_instance(std::string(std::istreambuf_iterator<char>(in), {}));
        mmgsc::SolveOptions opt;
        opt.with_oracle = true;
        const auto solver = *mmgsc::default_solver(doc.kind, mmgsc::Objective::Membership);
        const auto rep = mmgsc::run_solver(doc, solver, mmgsc::Objective::Membership, opt);
        std::cout << path << ": " << solver << " picks " << rep.size() << (rep.size() == 1 ? " range" : " ranges") << ", membership " << rep.value()
                  << ", optimum " << (rep.oracle_value ? std::to_string(*rep.oracle_value) : "?") << "\n";
    }
    return 0;
}
