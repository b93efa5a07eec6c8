#include "omt/cli.hpp"

int main(int argc, char** argv) { return omt::cli::run(argc, argv); }
