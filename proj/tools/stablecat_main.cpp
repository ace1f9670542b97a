#include "stablecat/cli.hpp"

int main(int argc, char** argv) { return stablecat::run_cli(argc, argv); }
