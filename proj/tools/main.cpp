#include "pcomb/cli.hpp"

int main(int argc, char** argv) { return pcomb::cli::run(argc, argv); }
