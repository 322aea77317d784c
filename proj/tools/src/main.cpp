#include "cli.hpp"

int main(int argc, char** argv) { return ccrank::cli::main(argc, argv); }
