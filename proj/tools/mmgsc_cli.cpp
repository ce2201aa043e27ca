#include "mmgsc/cli.hpp"

int main(int argc, char** argv) { return mmgsc::run_cli(argc, argv); }
