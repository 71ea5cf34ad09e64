#include "geohydro/cli.hpp"

int main(int argc, char** argv) { return geohydro::run_cli(argc, argv); }
