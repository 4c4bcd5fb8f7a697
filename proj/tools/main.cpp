#include "irsoff/cli.hpp"

int main(int argc, char** argv) { return irsoff::run_cli(argc, argv); }
