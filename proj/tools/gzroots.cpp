#include "gzroots/cli.hpp"

int main(int argc, char** argv) { return gz::run_cli(argc, argv); }
