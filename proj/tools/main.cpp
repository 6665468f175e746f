#include "btzgeo/cli.hpp"

int main(int argc, char** argv) { return btz::run_cli(argc, argv); }
