#include "patree/cli.hpp"

int main(int argc, char** argv) { return patree::cli::run_cli(argc, argv); }
