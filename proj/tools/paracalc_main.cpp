#include "paracalc/cli.hpp"

int main(int argc, char** argv) { return paracalc::run_cli(argc, argv); }
