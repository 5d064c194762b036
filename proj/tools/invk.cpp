#include "invk/cli.hpp"

int main(int argc, char** argv) { return invk::cli::main(argc, argv); }
