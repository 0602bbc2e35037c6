#include "recordkit/cli.hpp"

int main(int argc, char** argv) { return recordkit::cli::run(argc, argv); }
