#include "coxkl/cli.hpp"

int main(int argc, char** argv) { return coxkl::cli::run(argc, argv); }
