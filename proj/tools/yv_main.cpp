#include "yv/cli.hpp"

int main(int argc, char** argv) { return yv::cli::run(argc, argv); }
