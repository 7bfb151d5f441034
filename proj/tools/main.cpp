#include "scope/cli.hpp"

int main(int argc, char** argv) { return scope::cli::run(argc, argv); }
