#include "srf/io.hpp"

int main(int argc, char** argv) { return srf::run_cli(argc, argv); }
