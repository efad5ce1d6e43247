#include "subgc/cli.hpp"

int main(int argc, char** argv) { return subgc::run_cli(argc, argv); }
