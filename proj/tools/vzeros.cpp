#include "vz/cli.hpp"

int main(int argc, char** argv) { return vz::cli::main(argc, argv); }
