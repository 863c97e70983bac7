#include "gwplasma/cli.hpp"

int main(int argc, char** argv) { return gwplasma::cli::main_entry(argc, argv); }
