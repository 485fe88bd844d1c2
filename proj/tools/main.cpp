#include "partsmm/cli.hpp"

int main(int argc, char** argv) { return partsmm::cli::run(argc, argv); }
