#include "binq/cli.hpp"

int main(int argc, char** argv) { return binq::cli::run(argc, argv); }
